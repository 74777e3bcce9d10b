//! Actor reference graphs.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::csr::Csr;
use crate::ids::ActorId;

/// Whether an actor can act on its own.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize), serde(rename_all = "lowercase"))]
pub enum Status {
    /// All behaviors are blocked; the actor waits for a message.
    Blocked,
    /// At least one behavior is active, or a message is pending.
    Unblocked,
}

/// Directed acquaintance graph over actors.
///
/// Fields are plain sets so that malformed graphs can be represented and
/// reported by [`ActorGraph::validate`]. Every algorithm in this crate
/// ignores roots, unblocked marks and references that name unknown actors.
///
/// In-transit messages are not represented separately: an address carried by
/// a pending message counts as a reference, and an actor with a pending
/// message counts as unblocked.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ActorGraph {
    pub actors: BTreeSet<ActorId>,
    pub references: BTreeSet<(ActorId, ActorId)>,
    pub roots: BTreeSet<ActorId>,
    pub unblocked: BTreeSet<ActorId>,
}

/// A broken [`ActorGraph`] invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    RootNotActor(ActorId),
    UnblockedNotActor(ActorId),
    UnknownSource { src: ActorId, dst: ActorId },
    UnknownTarget { src: ActorId, dst: ActorId },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::RootNotActor(a) => write!(f, "root {a} not an actor"),
            Violation::UnblockedNotActor(a) => write!(f, "unblocked {a} not an actor"),
            Violation::UnknownSource { src, dst } => {
                write!(f, "reference {src}->{dst}: source {src} not an actor")
            }
            Violation::UnknownTarget { src, dst } => {
                write!(f, "reference {src}->{dst}: target {dst} not an actor")
            }
        }
    }
}

impl ActorGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_actor(&mut self, id: ActorId, status: Status) {
        self.actors.insert(id);
        match status {
            Status::Unblocked => self.unblocked.insert(id),
            Status::Blocked => self.unblocked.remove(&id),
        };
    }

    /// Adds `id` as an unblocked root actor.
    pub fn add_root(&mut self, id: ActorId) {
        self.add_actor(id, Status::Unblocked);
        self.roots.insert(id);
    }

    /// Returns `false` if the reference was already present.
    pub fn add_reference(&mut self, src: ActorId, dst: ActorId) -> bool {
        self.references.insert((src, dst))
    }

    pub fn status(&self, id: ActorId) -> Status {
        if self.unblocked.contains(&id) {
            Status::Unblocked
        } else {
            Status::Blocked
        }
    }

    pub fn is_root(&self, id: ActorId) -> bool {
        self.roots.contains(&id)
    }

    /// Unblocked or root, i.e. able to initiate sends.
    pub fn is_seed(&self, id: ActorId) -> bool {
        self.unblocked.contains(&id) || self.roots.contains(&id)
    }

    /// Actors that are unblocked or roots, in ascending order.
    pub fn seeds(&self) -> impl Iterator<Item = ActorId> + '_ {
        self.actors.iter().copied().filter(|a| self.is_seed(*a))
    }

    pub fn actor_count(&self) -> usize {
        self.actors.len()
    }

    pub fn reference_count(&self) -> usize {
        self.references.len()
    }

    pub fn is_empty(&self) -> bool {
        self.actors.is_empty()
    }

    /// Outgoing references of `id`, in ascending target order.
    pub fn acquaintances(&self, id: ActorId) -> impl Iterator<Item = ActorId> + '_ {
        self.references
            .range((id, ActorId(0))..=(id, ActorId(u32::MAX)))
            .map(|&(_, dst)| dst)
    }

    /// Removes the given actors and every reference touching them. Returns the
    /// number of references removed.
    pub fn remove_actors(&mut self, ids: &BTreeSet<ActorId>) -> usize {
        if ids.is_empty() {
            return 0;
        }
        let before = self.references.len();
        self.references
            .retain(|(s, d)| !ids.contains(s) && !ids.contains(d));
        for id in ids {
            self.actors.remove(id);
            self.roots.remove(id);
            self.unblocked.remove(id);
        }
        before - self.references.len()
    }

    /// The subgraph induced by `keep`.
    pub fn induced(&self, keep: &BTreeSet<ActorId>) -> ActorGraph {
        ActorGraph {
            actors: self.actors.intersection(keep).copied().collect(),
            references: self
                .references
                .iter()
                .filter(|(s, d)| keep.contains(s) && keep.contains(d))
                .copied()
                .collect(),
            roots: self.roots.intersection(keep).copied().collect(),
            unblocked: self.unblocked.intersection(keep).copied().collect(),
        }
    }

    /// All invariant violations, in a stable order. Empty iff well-formed.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for &r in &self.roots {
            if !self.actors.contains(&r) {
                out.push(Violation::RootNotActor(r));
            }
        }
        for &u in &self.unblocked {
            if !self.actors.contains(&u) {
                out.push(Violation::UnblockedNotActor(u));
            }
        }
        for &(src, dst) in &self.references {
            if !self.actors.contains(&src) {
                out.push(Violation::UnknownSource { src, dst });
            }
            if !self.actors.contains(&dst) {
                out.push(Violation::UnknownTarget { src, dst });
            }
        }
        out
    }

    /// Makes every root unblocked. Roots are always useful and can always
    /// initiate sends. Returns the roots that were blocked.
    pub fn normalize_roots(&mut self) -> Vec<ActorId> {
        let blocked: Vec<ActorId> = self
            .roots
            .iter()
            .copied()
            .filter(|r| self.actors.contains(r) && !self.unblocked.contains(r))
            .collect();
        self.unblocked.extend(blocked.iter().copied());
        blocked
    }

    pub(crate) fn csr(&self) -> Csr<ActorId> {
        Csr::build(self.actors.iter().copied(), self.references.iter().copied())
    }
}

/// Parameters for [`random_graph`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RandomGraphParams {
    pub n_actors: u32,
    /// Probability of each ordered pair (self pairs included) being a reference.
    pub edge_density: f64,
    pub p_unblocked: f64,
    pub n_roots: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub enum RandomGraphError {
    TooManyRoots { n_roots: u32, n_actors: u32 },
    ProbabilityOutOfRange { name: &'static str, value: f64 },
}

impl fmt::Display for RandomGraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RandomGraphError::TooManyRoots { n_roots, n_actors } => {
                write!(f, "{n_roots} roots requested for {n_actors} actors")
            }
            RandomGraphError::ProbabilityOutOfRange { name, value } => {
                write!(f, "{name} = {value} is outside [0, 1]")
            }
        }
    }
}

impl core::error::Error for RandomGraphError {}

/// Seeded random actor graph over ids `0..n_actors`.
///
/// The output is a pure function of the arguments. Roots are always
/// unblocked.
pub fn random_graph(seed: u64, params: &RandomGraphParams) -> Result<ActorGraph, RandomGraphError> {
    let RandomGraphParams { n_actors, edge_density, p_unblocked, n_roots } = *params;
    if n_roots > n_actors {
        return Err(RandomGraphError::TooManyRoots { n_roots, n_actors });
    }
    for (name, value) in [("edge_density", edge_density), ("p_unblocked", p_unblocked)] {
        if !(0.0..=1.0).contains(&value) {
            return Err(RandomGraphError::ProbabilityOutOfRange { name, value });
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = ActorGraph::new();
    for id in 0..n_actors {
        let status = if rng.random_bool(p_unblocked) {
            Status::Unblocked
        } else {
            Status::Blocked
        };
        g.add_actor(ActorId(id), status);
    }
    let mut roots: Vec<usize> =
        index::sample(&mut rng, n_actors as usize, n_roots as usize).into_vec();
    roots.sort_unstable();
    for r in roots {
        g.add_root(ActorId(r as u32));
    }
    if edge_density > 0.0 {
        for src in 0..n_actors {
            for dst in 0..n_actors {
                if rng.random_bool(edge_density) {
                    g.add_reference(ActorId(src), ActorId(dst));
                }
            }
        }
    }
    Ok(g)
}
