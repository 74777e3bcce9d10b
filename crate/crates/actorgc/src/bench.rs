//! Benchmark suites: every workload crossed with every method, strategy and
//! mode, one report per cell and a combined table sorted by cell key.

use std::collections::BTreeMap;

use actorgc_core::distributed::{run_mode, Mode, ModeConfig, ModeRun, PartitionPolicy};
use actorgc_core::workload::{Workload, WorkloadError};
use actorgc_core::{Method, Ratio, Strategy};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::report::{ratio, Table, VERSION};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum WorkloadArgError {
    #[error("unknown workload `{0}`, expected fib, nq, mx or dmx")]
    Unknown(String),
    #[error("`{0}` is not a valid workload argument")]
    BadArgument(String),
    #[error("workload `{name}` takes {expected} arguments, got {found}")]
    Arity { name: String, expected: &'static str, found: usize },
    #[error(transparent)]
    Invalid(#[from] WorkloadError),
}

/// Reads `fib:12:1`, `fib:38`, `nq:13`, `mx:100` or `dmx:100`.
pub fn parse_workload(spec: &str) -> Result<Workload, WorkloadArgError> {
    let mut parts = spec.split(':');
    let name = parts.next().unwrap_or("").trim();
    let args: Vec<&str> = parts.collect();
    workload_from_args(name, &args)
}

/// Builds a workload from a name and its numeric arguments.
pub fn workload_from_args<S: AsRef<str>>(name: &str, args: &[S]) -> Result<Workload, WorkloadArgError> {
    let nums = args
        .iter()
        .map(|a| a.as_ref().trim().parse::<u32>().map_err(|_| WorkloadArgError::BadArgument(a.as_ref().to_string())))
        .collect::<Result<Vec<u32>, _>>()?;
    let arity = |expected: &'static str| WorkloadArgError::Arity { name: name.to_string(), expected, found: nums.len() };
    let w = match (name, nums[..].as_ref()) {
        ("fib", [k]) => Workload::Fib { k: *k, threshold: actorgc_core::workload::FIB_SEQUENTIAL_THRESHOLD },
        ("fib", [k, t]) => Workload::Fib { k: *k, threshold: *t },
        ("fib", _) => return Err(arity("1 or 2")),
        ("nq", [n]) => Workload::NQueens { n: *n },
        ("nq", _) => return Err(arity("1")),
        ("mx", [d]) => Workload::MatMul { dim: *d, distributed: false },
        ("dmx", [d]) => Workload::MatMul { dim: *d, distributed: true },
        ("mx" | "dmx", _) => return Err(arity("1")),
        _ => return Err(WorkloadArgError::Unknown(name.to_string())),
    };
    w.trace()?;
    Ok(w)
}

fn default_methods() -> Vec<Method> {
    Method::ALL.to_vec()
}

fn default_strategies() -> Vec<Strategy> {
    Strategy::ALL.to_vec()
}

fn default_modes() -> Vec<Mode> {
    vec![Mode::Lgc]
}

fn default_nodes() -> u32 {
    1
}

fn default_local_every() -> Option<u64> {
    Some(2)
}

fn default_global_every() -> Option<u64> {
    Some(20)
}

/// Suite description, read from JSON. Everything but `workloads` has a
/// default: all methods, both strategies, the LGC mode on one node with the
/// 2:20 local:global periods.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteSpec {
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub workloads: Vec<String>,
    #[serde(default = "default_methods")]
    pub methods: Vec<Method>,
    #[serde(default = "default_strategies")]
    pub strategies: Vec<Strategy>,
    #[serde(default = "default_modes")]
    pub modes: Vec<Mode>,
    #[serde(default = "default_nodes")]
    pub nodes: u32,
    #[serde(default)]
    pub policy: PartitionPolicy,
    #[serde(default = "default_local_every")]
    pub local_every: Option<u64>,
    #[serde(default = "default_global_every")]
    pub global_every: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellReport {
    pub key: String,
    pub version: &'static str,
    pub seed: u64,
    pub workload: String,
    pub actors: u64,
    pub method: Method,
    pub strategy: Strategy,
    pub mode: Mode,
    pub nodes: u32,
    pub policy: PartitionPolicy,
    pub collected: u64,
    pub surviving: u64,
    pub residual_garbage: u64,
    pub mutator_ops: u64,
    pub gc_ops: u64,
    pub overhead: Ratio,
    pub cycles: u64,
    /// Every global snapshot's collectible set equalled the oracle garbage.
    pub matches_oracle: bool,
    pub safe: bool,
    pub premature: u64,
    /// Invariant violations; these fail the suite.
    pub violations: Vec<String>,
    /// Expected departures of the dual-node method; reported only.
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub version: &'static str,
    pub seed: u64,
    pub cells: Vec<CellReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.cells.iter().all(|c| c.violations.is_empty())
    }

    pub fn table(&self) -> String {
        let mut t = Table::new([
            "cell", "actors", "collected", "residual", "mutator ops", "gc ops", "overhead", "oracle", "safe",
        ]);
        for c in &self.cells {
            t.row([
                c.key.clone(),
                c.actors.to_string(),
                c.collected.to_string(),
                c.residual_garbage.to_string(),
                c.mutator_ops.to_string(),
                c.gc_ops.to_string(),
                ratio(c.overhead),
                if c.matches_oracle { "yes" } else { "no" }.to_string(),
                if c.safe { "yes" } else { "no" }.to_string(),
            ]);
        }
        t.render()
    }
}

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("workload `{spec}`: {source}")]
    Workload { spec: String, source: WorkloadArgError },
    #[error("workload `{spec}`: {message}")]
    Run { spec: String, message: String },
}

fn cell_report(spec: &SuiteSpec, label: &str, actors: u64, config: &ModeConfig, run: ModeRun) -> CellReport {
    let matches_oracle = run
        .cycles
        .iter()
        .filter(|c| config.n_nodes == 1 || c.kind == actorgc_core::distributed::CycleKind::Global)
        .all(|c| c.global_equals_oracle);
    let mut issues = Vec::new();
    if let Some(p) = run.premature.first() {
        issues.push(format!("{} premature collections, first {p}", run.premature.len()));
    }
    if !run.conserved {
        issues.push("actor conservation failed".to_string());
    }
    if let Some(c) = run.cycles.iter().find(|c| !c.within_global) {
        issues.push(format!("step {}: local collection exceeded the global collectible set", c.step));
    }
    if let Some(c) = run.cycles.iter().find(|c| !c.global_within_oracle) {
        issues.push(format!("step {}: collected an actor the oracle keeps", c.step));
    }
    if !matches_oracle {
        issues.push("collectible set differs from the oracle".to_string());
    }
    let (violations, warnings) =
        if config.method == Method::VardhanAgha { (Vec::new(), issues) } else { (issues, Vec::new()) };
    CellReport {
        key: format!("{label}/{}/{}/{}", config.method.name(), config.strategy.name(), run.mode.name()),
        version: VERSION,
        seed: spec.seed,
        workload: label.to_string(),
        actors,
        method: config.method,
        strategy: config.strategy,
        mode: run.mode,
        nodes: config.n_nodes,
        policy: config.policy,
        collected: run.collected(),
        surviving: run.surviving,
        residual_garbage: run.residual_garbage,
        mutator_ops: run.mutator_ops,
        gc_ops: run.gc_ops,
        overhead: run.overhead,
        cycles: run.cycles.len() as u64,
        matches_oracle,
        safe: run.is_safe(),
        premature: run.premature.len() as u64,
        violations,
        warnings,
    }
}

pub fn run_suite(spec: &SuiteSpec) -> Result<SuiteReport, BenchError> {
    let mut cells = BTreeMap::new();
    for w in &spec.workloads {
        let workload = parse_workload(w).map_err(|source| BenchError::Workload { spec: w.clone(), source })?;
        let trace = workload
            .trace()
            .map_err(|e| BenchError::Workload { spec: w.clone(), source: e.into() })?;
        let label = workload.label();
        for &method in &spec.methods {
            for &strategy in &spec.strategies {
                let config = ModeConfig {
                    n_nodes: spec.nodes,
                    policy: spec.policy,
                    local_every: spec.local_every,
                    global_every: spec.global_every,
                    method,
                    strategy,
                    memory_threshold: None,
                };
                for &mode in &spec.modes {
                    let run = run_mode(&trace, mode, &config)
                        .map_err(|e| BenchError::Run { spec: w.clone(), message: e.to_string() })?;
                    let cell = cell_report(spec, &label, trace.expected_actor_total, &config, run);
                    cells.insert(cell.key.clone(), cell);
                }
            }
        }
    }
    Ok(SuiteReport { version: VERSION, seed: spec.seed, cells: cells.into_values().collect() })
}
