use crate::graph::ActorGraph;
use crate::ids::{ActorId, PassiveNodeId};
use crate::passive::{NodeImage, NodeMap, PassiveGraph};

use super::{TransformStats, Transformed};

/// How a reference `a -> b` is rendered in the dual-node graph.
pub const RULE4_INTERPRETATION: &str =
    "reference a->b yields alpha(a)->mu(b) (acquaintance) and mu(b)->alpha(a) (inverse acquaintance)";

/// A reading that is not implemented: it would add mu(a)->mu(b) per reference.
pub const RULE4_ALTERNATIVE: &str =
    "alternative reading (not implemented): also mu(a)->mu(b) per reference, giving |V|+|U|+3|E| edges";

/// Object node of actor `a`: `2a`.
pub fn object_node(a: ActorId) -> PassiveNodeId {
    PassiveNodeId(u64::from(a.0) * 2)
}

/// Mail-queue node of actor `a`: `2a + 1`.
pub fn mail_queue_node(a: ActorId) -> PassiveNodeId {
    PassiveNodeId(u64::from(a.0) * 2 + 1)
}

/// Edge count of the dual-node graph compared with the "three times the
/// references" estimate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EdgeOverhead {
    /// |V| + |U| + 2|E|
    pub exact_edges: u64,
    /// 3|E|
    pub estimated_edges: u64,
    /// exact - estimated
    pub delta: i64,
}

impl EdgeOverhead {
    pub fn of(g: &ActorGraph) -> Self {
        let v = g.actors.len() as u64;
        let u = g.actors.iter().filter(|a| g.unblocked.contains(a)).count() as u64;
        let e = g
            .references
            .iter()
            .filter(|(s, d)| g.actors.contains(s) && g.actors.contains(d))
            .count() as u64;
        let exact_edges = v + u + 2 * e;
        let estimated_edges = 3 * e;
        EdgeOverhead {
            exact_edges,
            estimated_edges,
            delta: exact_edges as i64 - estimated_edges as i64,
        }
    }
}

/// Dual-node transformation.
///
/// Every actor `a` becomes an object node `alpha(a)` and a mail-queue node
/// `mu(a)` with `alpha(a) -> mu(a)`. An unblocked actor also gets
/// `mu(a) -> alpha(a)`. A reference `a -> b` yields `alpha(a) -> mu(b)` and
/// `mu(b) -> alpha(a)`. The passive roots are the roots' mail queues, and an
/// actor is live iff its object node is reachable.
pub fn transform_vardhan_agha(g: &ActorGraph) -> Transformed {
    let mut passive = PassiveGraph::new();
    let mut map = NodeMap::new();
    // Rule firings. A self-reference's two edges coincide with the actor's own
    // object/queue edges, so the edge set can be smaller than this count.
    let mut emitted = 0u64;

    for &a in &g.actors {
        let (alpha, mu) = (object_node(a), mail_queue_node(a));
        passive.nodes.insert(alpha);
        passive.nodes.insert(mu);
        map.insert(a, NodeImage::Pair { alpha, mu });
        passive.edges.insert((alpha, mu));
        emitted += 1;
        if g.unblocked.contains(&a) {
            passive.edges.insert((mu, alpha));
            emitted += 1;
        }
    }
    let mut input_edges = 0;
    for &(a, b) in &g.references {
        if !(g.actors.contains(&a) && g.actors.contains(&b)) {
            continue;
        }
        input_edges += 1;
        passive.edges.insert((object_node(a), mail_queue_node(b)));
        passive.edges.insert((mail_queue_node(b), object_node(a)));
        emitted += 2;
    }
    for &r in &g.roots {
        if g.actors.contains(&r) {
            passive.roots.insert(mail_queue_node(r));
        }
    }

    let stats = TransformStats::new(
        (g.actors.len() as u64, input_edges),
        (passive.nodes.len() as u64, emitted),
        0,
        0,
    );
    Transformed { passive, map, stats }
}
