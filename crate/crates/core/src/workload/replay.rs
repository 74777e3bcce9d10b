use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::collect::collect;
use crate::graph::ActorGraph;
use crate::ids::ActorId;
use crate::mark::Strategy;
use crate::oracle::live_fixpoint;
use crate::ratio::Ratio;
use crate::transform::Method;

use super::{EventKind, MutationTrace, TraceError};

/// An actor collected at `step` although the trace still uses it at `last_use`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PrematureCollection {
    pub step: u64,
    pub actor: ActorId,
    pub last_use: u64,
}

impl fmt::Display for PrematureCollection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "actor {} collected after step {} but used at step {}",
            self.actor, self.step, self.last_use
        )
    }
}

/// Steps through a trace, applying events and removing collected actors.
///
/// Removal checks each actor against the trace's future: collecting an actor
/// that a later event touches is reported as a [`PrematureCollection`].
pub struct Replayer<'t> {
    trace: &'t MutationTrace,
    graph: ActorGraph,
    cursor: usize,
    last_use: BTreeMap<ActorId, u64>,
    created: u64,
    collected: u64,
}

impl<'t> Replayer<'t> {
    pub fn new(trace: &'t MutationTrace) -> Self {
        Replayer {
            trace,
            graph: trace.initial.clone(),
            cursor: 0,
            last_use: trace.last_use(),
            created: trace.initial.actors.len() as u64,
            collected: 0,
        }
    }

    pub fn graph(&self) -> &ActorGraph {
        &self.graph
    }

    pub fn is_finished(&self) -> bool {
        self.cursor == self.trace.events.len()
    }

    pub fn events_applied(&self) -> u64 {
        self.cursor as u64
    }

    /// Step of the last applied event, 0 before the first.
    pub fn current_step(&self) -> u64 {
        self.cursor
            .checked_sub(1)
            .map_or(0, |i| self.trace.events[i].step)
    }

    /// Actors that have existed so far.
    pub fn created(&self) -> u64 {
        self.created
    }

    pub fn collected(&self) -> u64 {
        self.collected
    }

    /// Applies the next event. `None` once the trace is exhausted.
    pub fn advance(&mut self) -> Option<Result<(), TraceError>> {
        let event = self.trace.events.get(self.cursor)?;
        self.cursor += 1;
        Some(MutationTrace::apply(&mut self.graph, event).map(|()| {
            if matches!(event.kind, EventKind::Spawn { .. }) {
                self.created += 1;
            }
        }))
    }

    /// Removes `ids` from the graph. Returns the number of references removed
    /// and every premature collection among `ids`. Prematurely collected
    /// actors are reported but kept, so the rest of the trace still applies.
    pub fn remove(&mut self, ids: &BTreeSet<ActorId>) -> (u64, Vec<PrematureCollection>) {
        let step = self.current_step();
        let premature: Vec<PrematureCollection> = ids
            .iter()
            .filter_map(|&actor| {
                let last_use = self.last_use.get(&actor).copied().unwrap_or(0);
                (last_use > step).then_some(PrematureCollection { step, actor, last_use })
            })
            .collect();
        let present: BTreeSet<ActorId> = ids
            .intersection(&self.graph.actors)
            .filter(|a| !premature.iter().any(|p| p.actor == **a))
            .copied()
            .collect();
        self.collected += present.len() as u64;
        let edges = self.graph.remove_actors(&present);
        (edges as u64, premature)
    }

    /// `collected + current actors == created`.
    pub fn conserves_actors(&self) -> bool {
        self.collected + self.graph.actors.len() as u64 == self.created
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ReplayConfig {
    /// Collect after every this many events; `None` never collects.
    pub gc_every: Option<u64>,
    pub method: Method,
    pub strategy: Strategy,
    /// Also collect whenever the actor count exceeds this.
    pub memory_threshold: Option<usize>,
    /// Run one more collection after the last event.
    pub final_collection: bool,
}

impl ReplayConfig {
    pub fn new(gc_every: Option<u64>, method: Method, strategy: Strategy) -> Self {
        ReplayConfig { gc_every, method, strategy, memory_threshold: None, final_collection: false }
    }

    pub(crate) fn due(&self, events_applied: u64, actors: usize) -> bool {
        self.gc_every.is_some_and(|n| n > 0 && events_applied.is_multiple_of(n))
            || self.memory_threshold.is_some_and(|t| actors > t)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CycleRecord {
    pub step: u64,
    pub live: u64,
    pub garbage: u64,
    pub cumulative_collected: u64,
    pub created: u64,
    /// Collector's live set equals the oracle's on this snapshot.
    pub matches_oracle: bool,
    /// collected + surviving == created
    pub conserved: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RunReport {
    pub label: String,
    pub config: ReplayConfig,
    pub events: u64,
    pub expected_actor_total: u64,
    pub cycles: Vec<CycleRecord>,
    pub total_collected: u64,
    pub surviving: u64,
    /// Oracle garbage left in the final graph.
    pub residual_garbage: u64,
    /// One per applied event.
    pub mutator_ops: u64,
    /// Transform, mark and removal work.
    pub gc_ops: u64,
    /// (mutator_ops + gc_ops) / mutator_ops
    pub overhead: Ratio,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReplayError {
    Trace(TraceError),
    Premature(PrematureCollection),
}

impl fmt::Display for ReplayError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReplayError::Trace(e) => write!(f, "invalid trace: {e}"),
            ReplayError::Premature(p) => write!(f, "safety violation: {p}"),
        }
    }
}

impl core::error::Error for ReplayError {}

impl From<TraceError> for ReplayError {
    fn from(e: TraceError) -> Self {
        ReplayError::Trace(e)
    }
}

fn run_cycle(
    r: &mut Replayer<'_>,
    config: &ReplayConfig,
    cycles: &mut Vec<CycleRecord>,
    gc_ops: &mut u64,
) -> Result<(), ReplayError> {
    let c = collect(r.graph(), config.method, config.strategy);
    let oracle = live_fixpoint(r.graph());
    let (edges, premature) = r.remove(&c.garbage);
    if let Some(p) = premature.first() {
        return Err(ReplayError::Premature(*p));
    }
    *gc_ops += c.ops() + c.garbage.len() as u64 + edges;
    cycles.push(CycleRecord {
        step: r.current_step(),
        live: c.live.len() as u64,
        garbage: c.garbage.len() as u64,
        cumulative_collected: r.collected(),
        created: r.created(),
        matches_oracle: c.live == oracle.live,
        conserved: r.conserves_actors(),
    });
    Ok(())
}

/// Replays `trace`, collecting the whole graph on the configured schedule.
///
/// Aborts at the first premature collection.
pub fn replay(trace: &MutationTrace, config: &ReplayConfig) -> Result<RunReport, ReplayError> {
    let mut r = Replayer::new(trace);
    let mut cycles = Vec::new();
    let mut gc_ops = 0u64;

    while let Some(applied) = r.advance() {
        applied?;
        if config.due(r.events_applied(), r.graph().actors.len()) {
            run_cycle(&mut r, config, &mut cycles, &mut gc_ops)?;
        }
    }
    let last_cycle_at_end = cycles.last().is_some_and(|c| c.step == r.current_step());
    if config.final_collection && config.gc_every.is_some() && !last_cycle_at_end {
        run_cycle(&mut r, config, &mut cycles, &mut gc_ops)?;
    }

    let mutator_ops = r.events_applied();
    let residual_garbage = live_fixpoint(r.graph()).garbage.len() as u64;
    Ok(RunReport {
        label: trace.label.clone(),
        config: *config,
        events: mutator_ops,
        expected_actor_total: trace.expected_actor_total,
        cycles,
        total_collected: r.collected(),
        surviving: r.graph().actors.len() as u64,
        residual_garbage,
        mutator_ops,
        gc_ops,
        overhead: Ratio::new(mutator_ops + gc_ops, mutator_ops),
    })
}
