use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::ActorGraph;
use crate::ids::{ActorId, PassiveNodeId};
use crate::passive::{NodeImage, NodeMap, PassiveGraph};

use super::{TransformStats, Transformed};

/// Graph with the same vertex set, the actor references and the given extra
/// edges, rooted at the actor roots.
fn vertex_preserving(
    g: &ActorGraph,
    extra: impl IntoIterator<Item = (ActorId, ActorId)>,
) -> (PassiveGraph, NodeMap) {
    let mut passive = PassiveGraph::new();
    let mut map = NodeMap::new();
    for &a in &g.actors {
        passive.nodes.insert(a.into());
        map.insert(a, NodeImage::Single(a.into()));
    }
    let valid = |a: &ActorId| g.actors.contains(a);
    passive.edges = g
        .references
        .iter()
        .copied()
        .filter(|(s, d)| valid(s) && valid(d))
        .chain(extra)
        .map(|(s, d)| (PassiveNodeId::from(s), PassiveNodeId::from(d)))
        .collect();
    passive.roots = g.roots.iter().filter(|r| valid(r)).map(|&r| r.into()).collect();
    (passive, map)
}

/// Direct back pointers.
///
/// For every unblocked or root actor `u` and every actor `q` reachable from
/// `u` by a path of length at least one, adds `q -> u`. A self back pointer
/// `u -> u` therefore appears only when `u` lies on a cycle. Each seed needs
/// its own traversal because the added edges target that specific seed.
pub fn transform_direct_backpointers(g: &ActorGraph) -> Transformed {
    let csr = g.csr();
    let n = csr.len();
    let mut back: Vec<(ActorId, ActorId)> = Vec::new();
    let mut passes = 0u64;
    let mut ops = 0u64;

    // stamp[i] == k + 1 marks i as reached in the traversal from seed k
    let mut stamp = vec![0u32; n];
    let mut stack: Vec<u32> = Vec::new();
    for (k, seed) in g.seeds().enumerate() {
        let Some(s) = csr.index_of(seed) else { continue };
        passes += 1;
        let tag = k as u32 + 1;
        stack.clear();
        ops += 1;
        for &t in csr.successors(s) {
            ops += 1;
            if stamp[t as usize] != tag {
                stamp[t as usize] = tag;
                stack.push(t);
            }
        }
        while let Some(i) = stack.pop() {
            ops += 1;
            back.push((csr.id(i as usize), seed));
            for &t in csr.successors(i as usize) {
                ops += 1;
                if stamp[t as usize] != tag {
                    stamp[t as usize] = tag;
                    stack.push(t);
                }
            }
        }
    }

    let (passive, map) = vertex_preserving(g, back);
    let stats = TransformStats::new(
        (n as u64, csr.edge_count() as u64),
        (passive.nodes.len() as u64, passive.edges.len() as u64),
        passes,
        ops,
    );
    Transformed { passive, map, stats }
}

/// Indirect back pointers.
///
/// Adds the reverse `q -> p` of every reference `p -> q` whose source is an
/// unblocked or root actor or is reachable from one. One traversal from all
/// seeds at once suffices.
pub fn transform_indirect_backpointers(g: &ActorGraph) -> Transformed {
    let csr = g.csr();
    let n = csr.len();
    let mut reached = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut ops = 0u64;
    for seed in g.seeds() {
        if let Some(s) = csr.index_of(seed) {
            reached[s] = true;
            stack.push(s);
        }
    }
    let passes = u64::from(!stack.is_empty());
    let mut reversed: BTreeSet<(ActorId, ActorId)> = BTreeSet::new();
    while let Some(p) = stack.pop() {
        ops += 1;
        for &q in csr.successors(p) {
            ops += 1;
            let q = q as usize;
            reversed.insert((csr.id(q), csr.id(p)));
            if !reached[q] {
                reached[q] = true;
                stack.push(q);
            }
        }
    }

    let (passive, map) = vertex_preserving(g, reversed);
    let stats = TransformStats::new(
        (n as u64, csr.edge_count() as u64),
        (passive.nodes.len() as u64, passive.edges.len() as u64),
        passes,
        ops,
    );
    Transformed { passive, map, stats }
}
