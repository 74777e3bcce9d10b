#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use actorgc_core::{ActorGraph, ActorId, PassiveGraph, PassiveNodeId, Status};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn a(i: u32) -> ActorId {
    ActorId(i)
}

pub fn set(ids: &[u32]) -> BTreeSet<ActorId> {
    ids.iter().map(|&i| ActorId(i)).collect()
}

/// Per-actor state: 0 blocked, 1 unblocked, 2 unblocked root.
pub fn build(states: &[u8], edges: impl IntoIterator<Item = (u32, u32)>) -> ActorGraph {
    let mut g = ActorGraph::new();
    for (i, &s) in states.iter().enumerate() {
        let id = ActorId(i as u32);
        match s {
            0 => g.add_actor(id, Status::Blocked),
            1 => g.add_actor(id, Status::Unblocked),
            _ => g.add_root(id),
        }
    }
    for (s, d) in edges {
        g.add_reference(ActorId(s), ActorId(d));
    }
    g
}

/// Calls `f` on every graph over actors `0..n`: every subset of the n² ordered
/// pairs (self references included) times every blocked/unblocked/root
/// assignment. A blocked root is the same as an unblocked root once roots are
/// normalized, so three states per actor cover every case.
pub fn for_each_graph(n: usize, mut f: impl FnMut(&ActorGraph)) {
    let pairs: Vec<(u32, u32)> = (0..n as u32)
        .flat_map(|s| (0..n as u32).map(move |d| (s, d)))
        .collect();
    let assignments = 3usize.pow(n as u32);
    let mut states = vec![0u8; n];
    for mask in 0u64..(1u64 << pairs.len()) {
        let edges: Vec<(u32, u32)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        for code in 0..assignments {
            let mut c = code;
            for s in states.iter_mut() {
                *s = (c % 3) as u8;
                c /= 3;
            }
            f(&build(&states, edges.iter().copied()));
        }
    }
}

/// Textbook breadth-first reachability from the roots.
pub fn naive_reach(p: &PassiveGraph) -> BTreeSet<PassiveNodeId> {
    let mut seen: BTreeSet<PassiveNodeId> =
        p.roots.iter().filter(|r| p.nodes.contains(r)).copied().collect();
    let mut queue: VecDeque<PassiveNodeId> = seen.iter().copied().collect();
    while let Some(n) = queue.pop_front() {
        for &(s, d) in &p.edges {
            if s == n && seen.insert(d) {
                queue.push_back(d);
            }
        }
    }
    seen
}

pub fn random_passive(seed: u64, nodes: u64, density: f64, roots: u64) -> PassiveGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p = PassiveGraph::new();
    // sparse, non-contiguous ids
    let ids: Vec<PassiveNodeId> = (0..nodes).map(|i| PassiveNodeId(i * 3 + 1)).collect();
    p.nodes.extend(ids.iter().copied());
    for &s in &ids {
        for &d in &ids {
            if rng.random_bool(density) {
                p.edges.insert((s, d));
            }
        }
    }
    for _ in 0..roots.min(nodes) {
        p.roots.insert(ids[rng.random_range(0..ids.len())]);
    }
    p
}

/// Proptest strategy for actor graphs with up to `max` actors.
pub fn arb_graph(max: usize) -> impl Strategy<Value = ActorGraph> {
    (0..=max).prop_flat_map(|n| {
        let states = prop::collection::vec(0u8..3, n);
        let edges = if n == 0 {
            Just(Vec::new()).boxed()
        } else {
            prop::collection::vec((0..n as u32, 0..n as u32), 0..(3 * n + 1)).boxed()
        };
        (states, edges).prop_map(|(s, e)| build(&s, e))
    })
}
