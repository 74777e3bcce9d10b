//! Command-line interface. `run` returns the process exit code: 0 on
//! success, 1 when an invariant was violated and 2 for usage, parse and I/O
//! errors.

use std::fs;
use std::path::{Path, PathBuf};

use actorgc_core::distributed::{run_modes, Mode, ModeConfig, PartitionPolicy};
use actorgc_core::workload::{replay, MutationTrace, ReplayConfig, ReplayError};
use actorgc_core::{
    divergence_report, live_fixpoint, live_reachset, potentially_active, random_graph, transform, ActorGraph,
    Method, RandomGraphParams, Strategy,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::bench::{parse_workload, run_suite, workload_from_args, SuiteSpec};
use crate::dot::{actor_graph_to_dot, passive_graph_to_dot};
use crate::format::{parse_graph, parse_trace, serialize_graph, serialize_passive, serialize_trace};
use crate::report::{divergence_table, mode_table, run_table, GcReport, Table, VERSION};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    #[default]
    Table,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "actorgc", version, about = "Collect unreachable actors by rewriting actor graphs into passive graphs")]
pub struct Cli {
    /// Seed for every randomized step; echoed in reports.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write outputs into this directory instead of standard output.
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a random actor graph or a workload trace.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Compute the live set from the liveness semantics alone.
    Oracle {
        file: PathBuf,
    },
    /// Transform an actor graph into a passive graph.
    Transform {
        file: PathBuf,
        #[arg(long, default_value = "direct")]
        method: Method,
    },
    /// Transform, mark and report live and garbage actors.
    Collect {
        file: PathBuf,
        #[arg(long, default_value = "direct")]
        method: Method,
        #[arg(long, default_value = "one_scan")]
        strategy: Strategy,
    },
    /// Compare every method against the oracle actor by actor.
    Diff {
        file: PathBuf,
    },
    /// Replay a workload trace with periodic whole-graph collection.
    Sim {
        #[command(flatten)]
        source: TraceSource,
        /// Collect every N events; never when omitted.
        #[arg(long, value_name = "N")]
        gc_every: Option<u64>,
        #[arg(long, default_value = "direct")]
        method: Method,
        #[arg(long, default_value = "one_scan")]
        strategy: Strategy,
        /// Also collect once after the last event.
        #[arg(long)]
        final_collection: bool,
        /// Write the replayed trace to this file.
        #[arg(long, value_name = "FILE")]
        export: Option<PathBuf>,
    },
    /// Replay a workload trace across simulated nodes under each mechanism.
    Dsim {
        #[command(flatten)]
        source: TraceSource,
        #[arg(long, default_value_t = 4)]
        nodes: u32,
        #[arg(long, default_value = "locality")]
        policy: PartitionPolicy,
        #[arg(long, default_value_t = 2)]
        local_every: u64,
        #[arg(long, default_value_t = 20)]
        global_every: u64,
        /// nogc, gdp, lgc, cdgc or all.
        #[arg(long, default_value = "all")]
        mode: String,
        #[arg(long, default_value = "direct")]
        method: Method,
        #[arg(long, default_value = "one_scan")]
        strategy: Strategy,
    },
    /// Run a benchmark suite described by a JSON file.
    Bench {
        suite: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// Seeded random actor graph.
    Graph {
        #[arg(long, default_value_t = 50)]
        actors: u32,
        #[arg(long, default_value_t = 0.05)]
        density: f64,
        #[arg(long, default_value_t = 0.3)]
        p_unblocked: f64,
        #[arg(long, default_value_t = 1)]
        roots: u32,
    },
    /// Mutation trace of a workload.
    Trace {
        #[command(flatten)]
        source: TraceSource,
    },
}

/// A workload as `fib:12:1`, as `--workload fib --args 12,1`, or a trace file.
#[derive(Debug, Args)]
pub struct TraceSource {
    /// fib, nq, mx or dmx, optionally with `:`-separated arguments.
    #[arg(long, conflicts_with = "trace")]
    pub workload: Option<String>,
    /// Comma-separated workload arguments.
    #[arg(long, requires = "workload")]
    pub args: Option<String>,
    /// Trace file to replay instead of a generated workload.
    #[arg(long, value_name = "FILE")]
    pub trace: Option<PathBuf>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("{0}")]
    Usage(String),
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn load_graph(path: &Path) -> Result<ActorGraph, CliError> {
    let parsed = parse_graph(&read(path)?)
        .map_err(|e| CliError::Parse { path: path.to_path_buf(), message: e.to_string() })?;
    for w in &parsed.warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(parsed.value)
}

fn load_trace(source: &TraceSource) -> Result<MutationTrace, CliError> {
    if let Some(path) = &source.trace {
        let parsed = parse_trace(&read(path)?)
            .map_err(|e| CliError::Parse { path: path.clone(), message: e.to_string() })?;
        for w in &parsed.warnings {
            eprintln!("warning: {}: {w}", path.display());
        }
        return Ok(parsed.value);
    }
    let Some(spec) = &source.workload else {
        return Err(CliError::Usage("give --workload or --trace".to_string()));
    };
    let workload = match &source.args {
        Some(args) => workload_from_args(spec, &args.split(',').collect::<Vec<_>>()),
        None => parse_workload(spec),
    }
    .map_err(|e| CliError::Usage(e.to_string()))?;
    workload.trace().map_err(|e| CliError::Usage(e.to_string()))
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

/// Where results go: files under `--out`, or standard output.
struct Sink {
    dir: Option<PathBuf>,
}

impl Sink {
    fn new(dir: Option<PathBuf>) -> Result<Self, CliError> {
        if let Some(d) = &dir {
            fs::create_dir_all(d).map_err(|source| CliError::Io { path: d.clone(), source })?;
        }
        Ok(Sink { dir })
    }

    fn emit(&self, name: &str, content: &str) -> Result<(), CliError> {
        match &self.dir {
            Some(d) => {
                let path = d.join(name);
                fs::write(&path, content).map_err(|source| CliError::Io { path, source })
            }
            None => {
                print!("{content}");
                Ok(())
            }
        }
    }
}

fn dot_unsupported(command: &str) -> CliError {
    CliError::Usage(format!("`{command}` has no DOT output; use json or table"))
}

#[derive(Serialize)]
struct OracleReport<'a> {
    version: &'static str,
    seed: u64,
    live: &'a std::collections::BTreeSet<actorgc_core::ActorId>,
    garbage: &'a std::collections::BTreeSet<actorgc_core::ActorId>,
    potentially_active: &'a std::collections::BTreeSet<actorgc_core::ActorId>,
    algorithms_agree: bool,
}

pub fn run(cli: Cli) -> Result<u8, CliError> {
    let sink = Sink::new(cli.out.clone())?;
    let format = cli.format;
    let seed = cli.seed;
    match cli.command {
        Command::Gen(GenCommand::Graph { actors, density, p_unblocked, roots }) => {
            let params = RandomGraphParams { n_actors: actors, edge_density: density, p_unblocked, n_roots: roots };
            let g = random_graph(seed, &params).map_err(|e| CliError::Usage(e.to_string()))?;
            match format {
                Format::Table => sink.emit("graph.txt", &serialize_graph(&g))?,
                Format::Json => sink.emit("graph.json", &json(&g))?,
                Format::Dot => sink.emit("graph.dot", &actor_graph_to_dot(&g))?,
            }
            Ok(EXIT_OK)
        }
        Command::Gen(GenCommand::Trace { source }) => {
            let t = load_trace(&source)?;
            match format {
                Format::Table => sink.emit("trace.txt", &serialize_trace(&t))?,
                Format::Json => sink.emit("trace.json", &json(&t))?,
                Format::Dot => sink.emit("trace.dot", &actor_graph_to_dot(&t.cumulative_graph()))?,
            }
            Ok(EXIT_OK)
        }
        Command::Oracle { file } => {
            let g = load_graph(&file)?;
            let fix = live_fixpoint(&g);
            let agree = live_reachset(&g).live == fix.live;
            let p = potentially_active(&g);
            match format {
                Format::Json => sink.emit(
                    "oracle.json",
                    &json(&OracleReport {
                        version: VERSION,
                        seed,
                        live: &fix.live,
                        garbage: &fix.garbage,
                        potentially_active: &p,
                        algorithms_agree: agree,
                    }),
                )?,
                Format::Table => {
                    let mut t = Table::new(["actor", "verdict", "potentially active"]);
                    for a in &g.actors {
                        let verdict = if fix.live.contains(a) { "live" } else { "garbage" };
                        t.row([a.to_string(), verdict.to_string(), if p.contains(a) { "yes" } else { "no" }.to_string()]);
                    }
                    sink.emit("oracle.txt", &t.render())?;
                }
                Format::Dot => return Err(dot_unsupported("oracle")),
            }
            if agree {
                Ok(EXIT_OK)
            } else {
                eprintln!("error: the two oracle algorithms disagree");
                Ok(EXIT_VIOLATION)
            }
        }
        Command::Transform { file, method } => {
            let g = load_graph(&file)?;
            let t = transform(&g, method);
            match format {
                Format::Table => sink.emit("passive.txt", &serialize_passive(&t.passive, Some(&t.map)))?,
                Format::Json => sink.emit("transform.json", &json(&t.stats))?,
                Format::Dot => sink.emit("passive.dot", &passive_graph_to_dot(&t.passive, Some(&t.map)))?,
            }
            Ok(EXIT_OK)
        }
        Command::Collect { file, method, strategy } => {
            let g = load_graph(&file)?;
            let report = GcReport::new(&g, method, strategy, Some(seed));
            match format {
                Format::Json => sink.emit("collect.json", &json(&report))?,
                Format::Table => {
                    let mut out = report.table();
                    out.push_str(&format!("live:{}\n", join(&report.live)));
                    out.push_str(&format!("garbage:{}\n", join(&report.garbage)));
                    sink.emit("collect.txt", &out)?;
                }
                Format::Dot => return Err(dot_unsupported("collect")),
            }
            if method != Method::VardhanAgha && !report.oracle_agrees {
                eprintln!("error: {} disagrees with the oracle", method.name());
                return Ok(EXIT_VIOLATION);
            }
            Ok(EXIT_OK)
        }
        Command::Diff { file } => {
            let g = load_graph(&file)?;
            let r = divergence_report(&g);
            match format {
                Format::Json => sink.emit("diff.json", &json(&r))?,
                Format::Table => sink.emit("diff.txt", &divergence_table(&r))?,
                Format::Dot => return Err(dot_unsupported("diff")),
            }
            for row in r.divergences() {
                let class = row.divergence.map_or("", |c| c.label());
                eprintln!("warning: dual-node method differs from the oracle on actor {} ({class})", row.actor);
            }
            if r.back_pointers_agree {
                Ok(EXIT_OK)
            } else {
                eprintln!("error: a back-pointer method disagrees with the oracle");
                Ok(EXIT_VIOLATION)
            }
        }
        Command::Sim { source, gc_every, method, strategy, final_collection, export } => {
            let trace = load_trace(&source)?;
            if let Some(path) = &export {
                fs::write(path, serialize_trace(&trace)).map_err(|source| CliError::Io { path: path.clone(), source })?;
            }
            let mut cfg = ReplayConfig::new(gc_every, method, strategy);
            cfg.final_collection = final_collection;
            match replay(&trace, &cfg) {
                Ok(r) => {
                    match format {
                        Format::Json => sink.emit("sim.json", &json(&r))?,
                        Format::Table => sink.emit("sim.txt", &run_table(&r))?,
                        Format::Dot => return Err(dot_unsupported("sim")),
                    }
                    let oracle_ok = r.cycles.iter().all(|c| c.matches_oracle && c.conserved);
                    if method != Method::VardhanAgha && !oracle_ok {
                        eprintln!("error: a collection cycle disagreed with the oracle");
                        return Ok(EXIT_VIOLATION);
                    }
                    Ok(EXIT_OK)
                }
                Err(ReplayError::Premature(p)) if method == Method::VardhanAgha => {
                    eprintln!("warning: dual-node method collected early: {p}");
                    Ok(EXIT_OK)
                }
                Err(ReplayError::Premature(p)) => {
                    eprintln!("error: safety violation: {p}");
                    Ok(EXIT_VIOLATION)
                }
                Err(e) => Err(CliError::Usage(e.to_string())),
            }
        }
        Command::Dsim { source, nodes, policy, local_every, global_every, mode, method, strategy } => {
            let trace = load_trace(&source)?;
            let modes: Vec<Mode> = if mode == "all" {
                Mode::ALL.to_vec()
            } else {
                vec![mode.parse().map_err(|_| CliError::Usage(format!("unknown mode `{mode}`")))?]
            };
            let cfg = ModeConfig {
                n_nodes: nodes,
                policy,
                local_every: Some(local_every),
                global_every: Some(global_every),
                method,
                strategy,
                memory_threshold: None,
            };
            let report = run_modes(&trace, &modes, &cfg).map_err(|e| CliError::Usage(e.to_string()))?;
            if let Some(w) = &report.warning {
                eprintln!("warning: {w}");
            }
            match format {
                Format::Json => sink.emit("dsim.json", &json(&report))?,
                Format::Table => sink.emit("dsim.txt", &mode_table(std::slice::from_ref(&report)))?,
                Format::Dot => return Err(dot_unsupported("dsim")),
            }
            let unsafe_runs: Vec<&str> = report.runs.iter().filter(|r| !r.is_safe()).map(|r| r.mode.name()).collect();
            if unsafe_runs.is_empty() {
                Ok(EXIT_OK)
            } else if method == Method::VardhanAgha {
                eprintln!("warning: dual-node method unsafe under {}", unsafe_runs.join(", "));
                Ok(EXIT_OK)
            } else {
                eprintln!("error: invariant violated under {}", unsafe_runs.join(", "));
                Ok(EXIT_VIOLATION)
            }
        }
        Command::Bench { suite } => {
            let text = read(&suite)?;
            let mut spec: SuiteSpec = serde_json::from_str(&text)
                .map_err(|e| CliError::Parse { path: suite.clone(), message: e.to_string() })?;
            if seed != 0 {
                spec.seed = seed;
            }
            let report = run_suite(&spec).map_err(|e| CliError::Usage(e.to_string()))?;
            if sink.dir.is_some() {
                for cell in &report.cells {
                    sink.emit(&format!("{}.json", file_stem(&cell.key)), &json(cell))?;
                }
                sink.emit("combined.json", &json(&report))?;
                sink.emit("combined.txt", &report.table())?;
            } else {
                match format {
                    Format::Json => sink.emit("combined.json", &json(&report))?,
                    Format::Table => sink.emit("combined.txt", &report.table())?,
                    Format::Dot => return Err(dot_unsupported("bench")),
                }
            }
            for cell in &report.cells {
                for w in &cell.warnings {
                    eprintln!("warning: {}: {w}", cell.key);
                }
                for v in &cell.violations {
                    eprintln!("error: {}: {v}", cell.key);
                }
            }
            Ok(if report.passed() { EXIT_OK } else { EXIT_VIOLATION })
        }
    }
}

fn join(ids: &std::collections::BTreeSet<actorgc_core::ActorId>) -> String {
    ids.iter().map(|a| format!(" {a}")).collect()
}

/// Cell keys as file names: `fib(12,1)/direct/one_scan/lgc` becomes
/// `fib-12-1-direct-one_scan-lgc`.
pub fn file_stem(key: &str) -> String {
    let mut out = String::new();
    for c in key.chars() {
        if c.is_ascii_alphanumeric() || c == '_' {
            out.push(c);
        } else if !out.ends_with('-') {
            out.push('-');
        }
    }
    out.trim_end_matches('-').to_string()
}
