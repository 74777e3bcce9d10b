//! Actor-to-passive graph transformations.
//!
//! Three constructions are provided:
//!
//! - [`transform_vardhan_agha`]: two nodes per actor (object and mail queue),
//!   with acquaintance and inverse-acquaintance edges.
//! - [`transform_direct_backpointers`]: the actor graph plus a back pointer
//!   from every actor reachable from an unblocked or root actor straight back
//!   to that actor.
//! - [`transform_indirect_backpointers`]: the actor graph plus the reverse of
//!   every reference whose source is reachable from an unblocked or root actor.
//!
//! After any of them, plain root reachability decides actor liveness.

mod backpointer;
mod divergence;
mod va;

use core::fmt;
use core::str::FromStr;

use crate::graph::ActorGraph;
use crate::passive::{NodeMap, PassiveGraph};
use crate::ratio::Ratio;

pub use backpointer::{transform_direct_backpointers, transform_indirect_backpointers};
pub use divergence::{divergence_report, ActorVerdict, DivergenceClass, DivergenceReport};
pub use va::{
    mail_queue_node, object_node, transform_vardhan_agha, EdgeOverhead, RULE4_ALTERNATIVE,
    RULE4_INTERPRETATION,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Method {
    #[cfg_attr(feature = "serde", serde(rename = "va"))]
    VardhanAgha,
    #[cfg_attr(feature = "serde", serde(rename = "direct"))]
    DirectBackPointers,
    #[cfg_attr(feature = "serde", serde(rename = "indirect"))]
    IndirectBackPointers,
}

impl Method {
    pub const ALL: [Method; 3] =
        [Method::VardhanAgha, Method::DirectBackPointers, Method::IndirectBackPointers];

    pub fn name(self) -> &'static str {
        match self {
            Method::VardhanAgha => "va",
            Method::DirectBackPointers => "direct",
            Method::IndirectBackPointers => "indirect",
        }
    }

    /// The back-pointer methods keep the vertex set and agree with the oracle.
    pub fn is_vertex_preserving(self) -> bool {
        !matches!(self, Method::VardhanAgha)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownMethod;

impl fmt::Display for UnknownMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("expected one of: va, direct, indirect")
    }
}

impl core::error::Error for UnknownMethod {}

impl FromStr for Method {
    type Err = UnknownMethod;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "va" => Ok(Method::VardhanAgha),
            "direct" => Ok(Method::DirectBackPointers),
            "indirect" => Ok(Method::IndirectBackPointers),
            _ => Err(UnknownMethod),
        }
    }
}

/// Size overhead and work of one transformation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TransformStats {
    pub input_nodes: u64,
    pub input_edges: u64,
    pub output_nodes: u64,
    /// References emitted by the construction. For the vertex-preserving
    /// transforms this is the size of the edge set. For the dual-node
    /// transform it counts every rule firing, so a self-reference contributes
    /// two references even though they coincide with the actor's own
    /// object/queue edges in `PassiveGraph::edges`.
    pub output_edges: u64,
    /// output_nodes / input_nodes
    pub node_ratio: Ratio,
    /// output_edges / input_edges
    pub edge_ratio: Ratio,
    /// Forward traversals of the actor graph.
    pub traversal_passes: u64,
    /// Node visits and edge traversals during reachability precomputation,
    /// plus one per emitted node and edge.
    pub ops: u64,
}

impl TransformStats {
    pub(crate) fn new(
        input: (u64, u64),
        output: (u64, u64),
        traversal_passes: u64,
        traversal_ops: u64,
    ) -> Self {
        TransformStats {
            input_nodes: input.0,
            input_edges: input.1,
            output_nodes: output.0,
            output_edges: output.1,
            node_ratio: Ratio::new(output.0, input.0),
            edge_ratio: Ratio::new(output.1, input.1),
            traversal_passes,
            ops: traversal_ops + output.0 + output.1,
        }
    }
}

/// Output of a transformation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transformed {
    pub passive: PassiveGraph,
    pub map: NodeMap,
    pub stats: TransformStats,
}

pub fn transform(g: &ActorGraph, method: Method) -> Transformed {
    match method {
        Method::VardhanAgha => transform_vardhan_agha(g),
        Method::DirectBackPointers => transform_direct_backpointers(g),
        Method::IndirectBackPointers => transform_indirect_backpointers(g),
    }
}
