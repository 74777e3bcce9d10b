//! Ground-truth actor liveness, computed directly from the semantics.
//!
//! An actor is *potentially active* if it is unblocked, a root, or reachable
//! from one: a message can reach it and make it run. The live set is the least
//! set `L` with
//!
//! - every root in `L`;
//! - `a ∈ L` and `a → b` implies `b ∈ L` (it can be manipulated);
//! - `a` potentially active, `a → b` and `b ∈ L` implies `a ∈ L` (it can
//!   manipulate something live).
//!
//! [`live_fixpoint`] and [`live_reachset`] compute this set by unrelated
//! algorithms over unrelated adjacency representations so each can serve as
//! the other's oracle.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::ActorGraph;
use crate::ids::ActorId;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LivenessResult {
    pub live: BTreeSet<ActorId>,
    pub garbage: BTreeSet<ActorId>,
    pub potentially_active: BTreeSet<ActorId>,
}

/// Worklist discipline for [`live_fixpoint_with`]. The result does not depend on it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WorklistOrder {
    Fifo,
    Lifo,
}

struct Worklist {
    items: VecDeque<usize>,
    order: WorklistOrder,
}

impl Worklist {
    fn new(order: WorklistOrder) -> Self {
        Worklist { items: VecDeque::new(), order }
    }

    fn push(&mut self, i: usize) {
        self.items.push_back(i);
    }

    fn pop(&mut self) -> Option<usize> {
        match self.order {
            WorklistOrder::Fifo => self.items.pop_front(),
            WorklistOrder::Lifo => self.items.pop_back(),
        }
    }
}

/// Forward closure of the unblocked and root actors.
pub fn potentially_active(g: &ActorGraph) -> BTreeSet<ActorId> {
    let csr = g.csr();
    let active = potentially_active_dense(g, &csr, WorklistOrder::Fifo);
    (0..csr.len()).filter(|&i| active[i]).map(|i| csr.id(i)).collect()
}

fn potentially_active_dense(
    g: &ActorGraph,
    csr: &crate::csr::Csr<ActorId>,
    order: WorklistOrder,
) -> Vec<bool> {
    let mut active = vec![false; csr.len()];
    let mut work = Worklist::new(order);
    for seed in g.seeds() {
        if let Some(i) = csr.index_of(seed) {
            active[i] = true;
            work.push(i);
        }
    }
    while let Some(i) = work.pop() {
        for &j in csr.successors(i) {
            let j = j as usize;
            if !active[j] {
                active[j] = true;
                work.push(j);
            }
        }
    }
    active
}

/// Least-fixpoint liveness by a FIFO worklist.
pub fn live_fixpoint(g: &ActorGraph) -> LivenessResult {
    live_fixpoint_with(g, WorklistOrder::Fifo)
}

/// Least-fixpoint liveness with an explicit worklist discipline.
pub fn live_fixpoint_with(g: &ActorGraph, order: WorklistOrder) -> LivenessResult {
    let succ = g.csr();
    let pred = succ.reversed();
    let active = potentially_active_dense(g, &succ, order);

    let mut live = vec![false; succ.len()];
    let mut work = Worklist::new(order);
    for &r in &g.roots {
        if let Some(i) = succ.index_of(r) {
            live[i] = true;
            work.push(i);
        }
    }
    while let Some(i) = work.pop() {
        // manipulated by a live actor
        for &j in succ.successors(i) {
            let j = j as usize;
            if !live[j] {
                live[j] = true;
                work.push(j);
            }
        }
        // able to manipulate a live actor
        for &j in pred.successors(i) {
            let j = j as usize;
            if active[j] && !live[j] {
                live[j] = true;
                work.push(j);
            }
        }
    }

    let mut result = LivenessResult::default();
    for i in 0..succ.len() {
        let id = succ.id(i);
        if live[i] {
            result.live.insert(id);
        } else {
            result.garbage.insert(id);
        }
        if active[i] {
            result.potentially_active.insert(id);
        }
    }
    result
}

/// Liveness as a closure over per-seed reach sets.
///
/// Starts from everything reachable from the roots, then repeatedly absorbs
/// the reach set of any unblocked or root actor whose reach set meets the
/// current set, until nothing changes.
pub fn live_reachset(g: &ActorGraph) -> LivenessResult {
    let mut adjacency: BTreeMap<ActorId, Vec<ActorId>> =
        g.actors.iter().map(|&a| (a, Vec::new())).collect();
    for &(src, dst) in &g.references {
        if g.actors.contains(&dst) {
            if let Some(out) = adjacency.get_mut(&src) {
                out.push(dst);
            }
        }
    }

    let reach_from = |start: &mut dyn Iterator<Item = ActorId>| -> BTreeSet<ActorId> {
        let mut seen = BTreeSet::new();
        let mut stack: Vec<ActorId> = Vec::new();
        for s in start {
            if g.actors.contains(&s) && seen.insert(s) {
                stack.push(s);
            }
        }
        while let Some(a) = stack.pop() {
            for &b in &adjacency[&a] {
                if seen.insert(b) {
                    stack.push(b);
                }
            }
        }
        seen
    };

    let seeds: Vec<ActorId> = g.seeds().collect();
    let seed_reach: Vec<BTreeSet<ActorId>> = seeds
        .iter()
        .map(|&u| reach_from(&mut core::iter::once(u)))
        .collect();

    let mut live = reach_from(&mut g.roots.iter().copied());
    let mut absorbed = vec![false; seeds.len()];
    loop {
        let mut changed = false;
        for (k, reach) in seed_reach.iter().enumerate() {
            if !absorbed[k] && !reach.is_disjoint(&live) {
                absorbed[k] = true;
                live.extend(reach.iter().copied());
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    let potentially_active: BTreeSet<ActorId> = seed_reach.into_iter().flatten().collect();
    let garbage = g.actors.difference(&live).copied().collect();
    LivenessResult { live, garbage, potentially_active }
}
