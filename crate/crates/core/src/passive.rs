//! Passive reference graphs and the actor-to-node mapping.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::csr::Csr;
use crate::ids::{ActorId, PassiveNodeId};

/// A graph of passive objects: a node is live iff it is reachable from a root.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PassiveGraph {
    pub nodes: BTreeSet<PassiveNodeId>,
    pub edges: BTreeSet<(PassiveNodeId, PassiveNodeId)>,
    pub roots: BTreeSet<PassiveNodeId>,
}

impl PassiveGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, src: impl Into<PassiveNodeId>, dst: impl Into<PassiveNodeId>) -> bool {
        self.edges.contains(&(src.into(), dst.into()))
    }

    /// True iff roots and edge endpoints are all nodes.
    pub fn is_valid(&self) -> bool {
        self.roots.is_subset(&self.nodes)
            && self
                .edges
                .iter()
                .all(|(s, d)| self.nodes.contains(s) && self.nodes.contains(d))
    }

    pub(crate) fn csr(&self) -> Csr<PassiveNodeId> {
        Csr::build(self.nodes.iter().copied(), self.edges.iter().copied())
    }
}

/// How one actor is represented in a transformed graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize), serde(rename_all = "snake_case"))]
pub enum NodeImage {
    /// Vertex-preserving transforms keep one node per actor.
    Single(PassiveNodeId),
    /// Object node `alpha` and mail-queue node `mu`.
    Pair { alpha: PassiveNodeId, mu: PassiveNodeId },
}

impl NodeImage {
    /// The node whose reachability decides the actor's liveness.
    pub fn decision_node(&self) -> PassiveNodeId {
        match *self {
            NodeImage::Single(n) => n,
            NodeImage::Pair { alpha, .. } => alpha,
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = PassiveNodeId> {
        let (first, second) = match *self {
            NodeImage::Single(n) => (n, None),
            NodeImage::Pair { alpha, mu } => (alpha, Some(mu)),
        };
        core::iter::once(first).chain(second)
    }
}

/// Mapping from each source actor to its node(s) in the passive graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NodeMap {
    images: BTreeMap<ActorId, NodeImage>,
}

impl NodeMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, actor: ActorId, image: NodeImage) {
        self.images.insert(actor, image);
    }

    pub fn get(&self, actor: ActorId) -> Option<&NodeImage> {
        self.images.get(&actor)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (ActorId, &NodeImage)> {
        self.images.iter().map(|(a, i)| (*a, i))
    }

    /// Actors whose decision node is in `marked`.
    pub fn live_actors(&self, marked: &BTreeSet<PassiveNodeId>) -> BTreeSet<ActorId> {
        self.iter()
            .filter(|(_, img)| marked.contains(&img.decision_node()))
            .map(|(a, _)| a)
            .collect()
    }

    /// Checks totality over `actors`, injectivity, and that the image is
    /// exactly `nodes`.
    pub fn is_bijective_onto(
        &self,
        actors: &BTreeSet<ActorId>,
        nodes: &BTreeSet<PassiveNodeId>,
    ) -> bool {
        if !self.images.keys().eq(actors.iter()) {
            return false;
        }
        let image: Vec<PassiveNodeId> = self.images.values().flat_map(|i| i.nodes()).collect();
        let distinct: BTreeSet<PassiveNodeId> = image.iter().copied().collect();
        distinct.len() == image.len() && &distinct == nodes
    }
}
