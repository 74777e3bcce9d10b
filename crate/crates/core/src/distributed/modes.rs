//! NO-GC / GDP / LGC / CDGC replay of a trace over a partitioned graph.
//!
//! Wall-clock collection periods are expressed as event counts. Placement is
//! fixed up front from the trace's cumulative graph, so an actor lives on the
//! same node for its whole lifetime.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::ids::ActorId;
use crate::mark::Strategy;
use crate::oracle::live_fixpoint;
use crate::ratio::Ratio;
use crate::transform::Method;
use crate::workload::{MutationTrace, PrematureCollection, Replayer, TraceError};

use super::{global_collect, local_collect, place, FewerActorsThanNodes, NodeId, PartitionError, PartitionPolicy, PartitionedGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize), serde(rename_all = "lowercase"))]
pub enum Mode {
    /// No collection at all.
    NoGc,
    /// Local detection every period; nothing is reclaimed.
    Gdp,
    /// Local detection and reclamation.
    Lgc,
    /// Local collection plus periodic whole-graph collection.
    Cdgc,
}

impl Mode {
    pub const ALL: [Mode; 4] = [Mode::NoGc, Mode::Gdp, Mode::Lgc, Mode::Cdgc];

    pub fn name(self) -> &'static str {
        match self {
            Mode::NoGc => "nogc",
            Mode::Gdp => "gdp",
            Mode::Lgc => "lgc",
            Mode::Cdgc => "cdgc",
        }
    }

    /// Column heading in the mechanism tables.
    pub fn heading(self) -> &'static str {
        match self {
            Mode::NoGc => "NO-GC",
            Mode::Gdp => "GDP",
            Mode::Lgc => "LGC+GDP",
            Mode::Cdgc => "LGC+GDP+CDGC",
        }
    }

    fn detects(self) -> bool {
        self != Mode::NoGc
    }

    fn reclaims_locally(self) -> bool {
        matches!(self, Mode::Lgc | Mode::Cdgc)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownMode;

impl fmt::Display for UnknownMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("expected one of: nogc, gdp, lgc, cdgc")
    }
}

impl core::error::Error for UnknownMode {}

impl FromStr for Mode {
    type Err = UnknownMode;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "nogc" | "no-gc" => Ok(Mode::NoGc),
            "gdp" => Ok(Mode::Gdp),
            "lgc" => Ok(Mode::Lgc),
            "cdgc" => Ok(Mode::Cdgc),
            _ => Err(UnknownMode),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ModeConfig {
    pub n_nodes: u32,
    pub policy: PartitionPolicy,
    /// Local period in events; `None` disables local cycles.
    pub local_every: Option<u64>,
    /// Global period in events, used by CDGC only.
    pub global_every: Option<u64>,
    pub method: Method,
    pub strategy: Strategy,
    /// Extra local cycle whenever the actor count exceeds this.
    pub memory_threshold: Option<usize>,
}

impl Default for ModeConfig {
    /// Periods of 2 and 20 events keep the 1:10 local:global ratio.
    fn default() -> Self {
        ModeConfig {
            n_nodes: 1,
            policy: PartitionPolicy::Locality,
            local_every: Some(2),
            global_every: Some(20),
            method: Method::DirectBackPointers,
            strategy: Strategy::OneScan,
            memory_threshold: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize), serde(rename_all = "lowercase"))]
pub enum CycleKind {
    Local,
    Global,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ModeCycle {
    pub step: u64,
    pub kind: CycleKind,
    pub actors: u64,
    /// Actors found garbage in this cycle (reclaimed unless the mode is GDP).
    pub found_garbage: u64,
    pub globally_collectible: u64,
    pub oracle_garbage: u64,
    /// found ⊆ globally collectible
    pub within_global: bool,
    /// globally collectible ⊆ oracle garbage
    pub global_within_oracle: bool,
    /// globally collectible == oracle garbage
    pub global_equals_oracle: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ModeRun {
    pub mode: Mode,
    pub collected_local: u64,
    pub collected_global: u64,
    pub surviving: u64,
    /// Oracle garbage left at the end.
    pub residual_garbage: u64,
    /// Collected plus residual garbage.
    pub garbage_created: u64,
    pub mutator_ops: u64,
    pub gc_ops: u64,
    /// (mutator_ops + gc_ops) / mutator_ops
    pub overhead: Ratio,
    pub cycles: Vec<ModeCycle>,
    /// Live actors found by each local cycle, in order.
    pub detected_live: Vec<BTreeSet<ActorId>>,
    pub premature: Vec<PrematureCollection>,
    pub conserved: bool,
}

impl ModeRun {
    pub fn collected(&self) -> u64 {
        self.collected_local + self.collected_global
    }

    /// No premature collection, conservation held, and every cycle satisfied
    /// found ⊆ globally collectible ⊆ oracle garbage.
    pub fn is_safe(&self) -> bool {
        self.premature.is_empty()
            && self.conserved
            && self.cycles.iter().all(|c| c.within_global && c.global_within_oracle)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ModeReport {
    pub label: String,
    pub actor_total: u64,
    pub config: ModeConfig,
    pub nodes_used: u32,
    pub warning: Option<FewerActorsThanNodes>,
    /// Cross-node references in the cumulative graph.
    pub cross_edges: u64,
    pub runs: Vec<ModeRun>,
}

impl ModeReport {
    pub fn run(&self, mode: Mode) -> Option<&ModeRun> {
        self.runs.iter().find(|r| r.mode == mode)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModeError {
    Trace(TraceError),
    Partition(PartitionError),
}

impl fmt::Display for ModeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModeError::Trace(e) => write!(f, "invalid trace: {e}"),
            ModeError::Partition(e) => write!(f, "partitioning failed: {e}"),
        }
    }
}

impl core::error::Error for ModeError {}

impl From<TraceError> for ModeError {
    fn from(e: TraceError) -> Self {
        ModeError::Trace(e)
    }
}

impl From<PartitionError> for ModeError {
    fn from(e: PartitionError) -> Self {
        ModeError::Partition(e)
    }
}

struct Runner<'t> {
    replayer: Replayer<'t>,
    mode: Mode,
    config: ModeConfig,
    placement: &'t BTreeMap<ActorId, NodeId>,
    nodes: u32,
    run: ModeRun,
}

impl Runner<'_> {
    fn snapshot(&self) -> Result<PartitionedGraph, ModeError> {
        Ok(PartitionedGraph::from_placement(self.replayer.graph(), self.placement, self.nodes)?)
    }

    fn remove(&mut self, ids: &BTreeSet<ActorId>) -> u64 {
        let (edges, premature) = self.replayer.remove(ids);
        self.run.premature.extend(premature);
        ids.len() as u64 + edges
    }

    fn local_cycle(&mut self) -> Result<(), ModeError> {
        let pg = self.snapshot()?;
        let mut live = BTreeSet::new();
        let mut garbage = BTreeSet::new();
        for node in 0..self.nodes {
            let Some(lc) = local_collect(&pg, node, self.config.method, self.config.strategy) else {
                continue;
            };
            self.run.gc_ops += lc.ops;
            live.extend(lc.live);
            garbage.extend(lc.garbage);
        }
        let global = global_collect(&pg, self.config.method, self.config.strategy);
        let oracle = live_fixpoint(self.replayer.graph());
        self.run.cycles.push(ModeCycle {
            step: self.replayer.current_step(),
            kind: CycleKind::Local,
            actors: self.replayer.graph().actors.len() as u64,
            found_garbage: garbage.len() as u64,
            globally_collectible: global.garbage.len() as u64,
            oracle_garbage: oracle.garbage.len() as u64,
            within_global: garbage.is_subset(&global.garbage),
            global_within_oracle: global.garbage.is_subset(&oracle.garbage),
            global_equals_oracle: global.garbage == oracle.garbage,
        });
        self.run.detected_live.push(live);
        if self.mode.reclaims_locally() {
            self.run.gc_ops += self.remove(&garbage);
            self.run.collected_local += garbage.len() as u64;
        }
        self.run.conserved &= self.replayer.conserves_actors();
        Ok(())
    }

    fn global_cycle(&mut self) -> Result<(), ModeError> {
        let pg = self.snapshot()?;
        let global = global_collect(&pg, self.config.method, self.config.strategy);
        let oracle = live_fixpoint(self.replayer.graph());
        self.run.gc_ops += global.ops();
        self.run.cycles.push(ModeCycle {
            step: self.replayer.current_step(),
            kind: CycleKind::Global,
            actors: self.replayer.graph().actors.len() as u64,
            found_garbage: global.garbage.len() as u64,
            globally_collectible: global.garbage.len() as u64,
            oracle_garbage: oracle.garbage.len() as u64,
            within_global: true,
            global_within_oracle: global.garbage.is_subset(&oracle.garbage),
            global_equals_oracle: global.garbage == oracle.garbage,
        });
        self.run.gc_ops += self.remove(&global.garbage);
        self.run.collected_global += global.garbage.len() as u64;
        self.run.conserved &= self.replayer.conserves_actors();
        Ok(())
    }

    fn last_cycle_here(&self, kind: CycleKind) -> bool {
        let step = self.replayer.current_step();
        self.run.cycles.iter().rev().take_while(|c| c.step == step).any(|c| c.kind == kind)
    }
}

fn divides(period: Option<u64>, n: u64) -> bool {
    period.is_some_and(|p| p > 0 && n.is_multiple_of(p))
}

fn run_placed(
    trace: &MutationTrace,
    mode: Mode,
    config: &ModeConfig,
    placement: &BTreeMap<ActorId, NodeId>,
    nodes: u32,
) -> Result<ModeRun, ModeError> {
    let mut r = Runner {
        replayer: Replayer::new(trace),
        mode,
        config: *config,
        placement,
        nodes,
        run: ModeRun {
            mode,
            collected_local: 0,
            collected_global: 0,
            surviving: 0,
            residual_garbage: 0,
            garbage_created: 0,
            mutator_ops: 0,
            gc_ops: 0,
            overhead: Ratio::new(0, 0),
            cycles: Vec::new(),
            detected_live: Vec::new(),
            premature: Vec::new(),
            conserved: true,
        },
    };

    while let Some(applied) = r.replayer.advance() {
        applied?;
        let n = r.replayer.events_applied();
        let pressure = config
            .memory_threshold
            .is_some_and(|t| r.replayer.graph().actors.len() > t);
        if mode.detects() && (divides(config.local_every, n) || pressure) {
            r.local_cycle()?;
        }
        if mode == Mode::Cdgc && divides(config.global_every, n) {
            r.global_cycle()?;
        }
    }
    // quiescence: one last cycle of each kind the mode reclaims with
    if mode.reclaims_locally() && config.local_every.is_some() && !r.last_cycle_here(CycleKind::Local) {
        r.local_cycle()?;
    }
    if mode == Mode::Cdgc && config.global_every.is_some() && !r.last_cycle_here(CycleKind::Global) {
        r.global_cycle()?;
    }

    let final_graph = r.replayer.graph();
    let residual = live_fixpoint(final_graph).garbage.len() as u64;
    let mut run = r.run;
    run.surviving = final_graph.actors.len() as u64;
    run.residual_garbage = residual;
    run.garbage_created = run.collected() + residual;
    run.mutator_ops = r.replayer.events_applied();
    run.overhead = Ratio::new(run.mutator_ops + run.gc_ops, run.mutator_ops);
    Ok(run)
}

/// Replays `trace` under one mechanism.
pub fn run_mode(trace: &MutationTrace, mode: Mode, config: &ModeConfig) -> Result<ModeRun, ModeError> {
    let placement = place(&trace.cumulative_graph(), config.n_nodes, config.policy)?;
    run_placed(trace, mode, config, &placement.of, placement.nodes)
}

/// Replays `trace` under each of `modes` with a shared placement.
pub fn run_modes(trace: &MutationTrace, modes: &[Mode], config: &ModeConfig) -> Result<ModeReport, ModeError> {
    let cumulative = trace.cumulative_graph();
    let placement = place(&cumulative, config.n_nodes, config.policy)?;
    let cross_edges = PartitionedGraph::from_placement(&cumulative, &placement.of, placement.nodes)?
        .cross_edges
        .len() as u64;
    let runs = modes
        .iter()
        .map(|&m| run_placed(trace, m, config, &placement.of, placement.nodes))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ModeReport {
        label: trace.label.clone(),
        actor_total: trace.expected_actor_total,
        config: *config,
        nodes_used: placement.nodes,
        warning: placement.warning,
        cross_edges,
        runs,
    })
}
