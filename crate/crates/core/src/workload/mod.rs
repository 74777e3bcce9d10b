//! Benchmark workloads as actor-graph mutation traces.

mod generate;
mod replay;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{ActorGraph, Status};
use crate::ids::ActorId;

pub use generate::{
    fib_actor_count, gen_fib_trace, gen_fib_trace_with_threshold, gen_matmul_trace,
    gen_nqueens_trace, nqueens_actor_count, Workload, WorkloadError, FIB_SEQUENTIAL_THRESHOLD,
};
pub use replay::{replay, CycleRecord, PrematureCollection, ReplayConfig, ReplayError, Replayer, RunReport};

/// One change to the actor graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize), serde(rename_all = "snake_case"))]
pub enum EventKind {
    /// `parent` creates `child` (unblocked) and holds a reference to it.
    Spawn { parent: ActorId, child: ActorId },
    AddRef { src: ActorId, dst: ActorId },
    DropRef { src: ActorId, dst: ActorId },
    /// `src` sends a message to its acquaintance `dst`, which becomes unblocked.
    Send { src: ActorId, dst: ActorId },
    Block(ActorId),
    Unblock(ActorId),
    /// The actor drops all of its references and blocks for good.
    Terminate(ActorId),
}

impl EventKind {
    pub fn name(&self) -> &'static str {
        match self {
            EventKind::Spawn { .. } => "spawn",
            EventKind::AddRef { .. } => "add_ref",
            EventKind::DropRef { .. } => "drop_ref",
            EventKind::Send { .. } => "send",
            EventKind::Block(_) => "block",
            EventKind::Unblock(_) => "unblock",
            EventKind::Terminate(_) => "terminate",
        }
    }

    /// Every actor the event touches.
    pub fn actors(&self) -> impl Iterator<Item = ActorId> {
        let (a, b) = match *self {
            EventKind::Spawn { parent, child } => (parent, Some(child)),
            EventKind::AddRef { src, dst }
            | EventKind::DropRef { src, dst }
            | EventKind::Send { src, dst } => (src, Some(dst)),
            EventKind::Block(a) | EventKind::Unblock(a) | EventKind::Terminate(a) => (a, None),
        };
        core::iter::once(a).chain(b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MutationEvent {
    pub step: u64,
    pub kind: EventKind,
}

/// Why an event cannot be applied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceError {
    UnknownActor { step: u64, actor: ActorId },
    ActorExists { step: u64, actor: ActorId },
    MissingReference { step: u64, src: ActorId, dst: ActorId },
    RootBlocked { step: u64, actor: ActorId },
    StepOrder { step: u64, previous: u64 },
    ActorTotal { expected: u64, actual: u64 },
}

impl fmt::Display for TraceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceError::UnknownActor { step, actor } => {
                write!(f, "step {step}: actor {actor} does not exist")
            }
            TraceError::ActorExists { step, actor } => {
                write!(f, "step {step}: spawned actor {actor} already exists")
            }
            TraceError::MissingReference { step, src, dst } => {
                write!(f, "step {step}: {src} holds no reference to {dst}")
            }
            TraceError::RootBlocked { step, actor } => {
                write!(f, "step {step}: root {actor} cannot block")
            }
            TraceError::StepOrder { step, previous } => {
                write!(f, "step {step} does not follow step {previous}")
            }
            TraceError::ActorTotal { expected, actual } => {
                write!(f, "trace declares {expected} actors but creates {actual}")
            }
        }
    }
}

impl core::error::Error for TraceError {}

/// Initial graph plus an ordered list of mutations.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MutationTrace {
    pub label: String,
    pub initial: ActorGraph,
    pub events: Vec<MutationEvent>,
    pub expected_actor_total: u64,
}

impl MutationTrace {
    /// Applies one event to `g`.
    pub fn apply(g: &mut ActorGraph, event: &MutationEvent) -> Result<(), TraceError> {
        let step = event.step;
        let exists = |g: &ActorGraph, a: ActorId| {
            if g.actors.contains(&a) {
                Ok(())
            } else {
                Err(TraceError::UnknownActor { step, actor: a })
            }
        };
        let not_root = |g: &ActorGraph, a: ActorId| {
            if g.is_root(a) {
                Err(TraceError::RootBlocked { step, actor: a })
            } else {
                Ok(())
            }
        };
        match event.kind {
            EventKind::Spawn { parent, child } => {
                exists(g, parent)?;
                if g.actors.contains(&child) {
                    return Err(TraceError::ActorExists { step, actor: child });
                }
                g.add_actor(child, Status::Unblocked);
                g.add_reference(parent, child);
            }
            EventKind::AddRef { src, dst } => {
                exists(g, src)?;
                exists(g, dst)?;
                g.add_reference(src, dst);
            }
            EventKind::DropRef { src, dst } => {
                exists(g, src)?;
                exists(g, dst)?;
                if !g.references.remove(&(src, dst)) {
                    return Err(TraceError::MissingReference { step, src, dst });
                }
            }
            EventKind::Send { src, dst } => {
                exists(g, src)?;
                exists(g, dst)?;
                if !g.references.contains(&(src, dst)) {
                    return Err(TraceError::MissingReference { step, src, dst });
                }
                g.unblocked.insert(dst);
            }
            EventKind::Block(a) => {
                exists(g, a)?;
                not_root(g, a)?;
                g.unblocked.remove(&a);
            }
            EventKind::Unblock(a) => {
                exists(g, a)?;
                g.unblocked.insert(a);
            }
            EventKind::Terminate(a) => {
                exists(g, a)?;
                not_root(g, a)?;
                let out: Vec<_> = g.acquaintances(a).collect();
                for b in out {
                    g.references.remove(&(a, b));
                }
                g.unblocked.remove(&a);
            }
        }
        Ok(())
    }

    /// Replays every event without collection, checking step order and the
    /// declared actor total. Returns the final graph.
    pub fn validate(&self) -> Result<ActorGraph, TraceError> {
        let mut g = self.initial.clone();
        let mut previous = 0;
        let mut created = self.initial.actors.len() as u64;
        for (i, e) in self.events.iter().enumerate() {
            if i > 0 && e.step <= previous {
                return Err(TraceError::StepOrder { step: e.step, previous });
            }
            previous = e.step;
            Self::apply(&mut g, e)?;
            if matches!(e.kind, EventKind::Spawn { .. }) {
                created += 1;
            }
        }
        if created != self.expected_actor_total {
            return Err(TraceError::ActorTotal { expected: self.expected_actor_total, actual: created });
        }
        Ok(g)
    }

    /// Every actor that ever exists in the trace.
    pub fn universe(&self) -> BTreeSet<ActorId> {
        let mut all = self.initial.actors.clone();
        for e in &self.events {
            if let EventKind::Spawn { child, .. } = e.kind {
                all.insert(child);
            }
        }
        all
    }

    /// Last step at which each actor appears in an event. Initial actors that
    /// never appear map to 0.
    pub fn last_use(&self) -> BTreeMap<ActorId, u64> {
        let mut last: BTreeMap<ActorId, u64> = self.initial.actors.iter().map(|&a| (a, 0)).collect();
        for e in &self.events {
            for a in e.kind.actors() {
                last.insert(a, e.step);
            }
        }
        last
    }

    /// Union over time of all actors and references, with the initial roots.
    /// Used to place actors on nodes before replay.
    pub fn cumulative_graph(&self) -> ActorGraph {
        let mut g = self.initial.clone();
        for e in &self.events {
            match e.kind {
                EventKind::Spawn { parent, child } => {
                    g.add_actor(child, Status::Unblocked);
                    g.add_reference(parent, child);
                }
                EventKind::AddRef { src, dst } => {
                    g.add_reference(src, dst);
                }
                _ => {}
            }
        }
        g
    }
}
