//! Transform, mark, and map marks back to actors.

use alloc::collections::BTreeSet;

use crate::graph::ActorGraph;
use crate::ids::ActorId;
use crate::mark::{self, Strategy};
use crate::transform::{transform, Method, TransformStats};

/// Marking cost without the marked set itself.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MarkStats {
    pub marked_nodes: u64,
    pub ops: u64,
    pub scans: u32,
    pub space: u64,
}

/// Outcome of one actor collection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Collection {
    pub method: Method,
    pub strategy: Strategy,
    pub live: BTreeSet<ActorId>,
    pub garbage: BTreeSet<ActorId>,
    pub transform: TransformStats,
    pub mark: MarkStats,
}

impl Collection {
    /// Transform plus marking work.
    pub fn ops(&self) -> u64 {
        self.transform.ops + self.mark.ops
    }
}

/// Runs `method`, marks the passive graph with `strategy` and reads actor
/// liveness off the decision node of each actor (the object node for the
/// dual-node transform).
pub fn collect(g: &ActorGraph, method: Method, strategy: Strategy) -> Collection {
    let t = transform(g, method);
    let m = mark::mark(&t.passive, strategy);
    let live = t.map.live_actors(&m.marked);
    let garbage = g.actors.difference(&live).copied().collect();
    Collection {
        method,
        strategy,
        live,
        garbage,
        transform: t.stats,
        mark: MarkStats {
            marked_nodes: m.marked.len() as u64,
            ops: m.ops,
            scans: m.scans,
            space: m.space,
        },
    }
}
