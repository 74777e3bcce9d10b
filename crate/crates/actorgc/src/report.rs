//! Structured reports and their aligned plain-text tables.
//!
//! Ratios are always carried as numerator and denominator; the tables print
//! the quotient next to them for reading only.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use actorgc_core::distributed::{Mode, ModeReport};
use actorgc_core::mark::Strategy;
use actorgc_core::transform::{DivergenceClass, DivergenceReport, EdgeOverhead};
use actorgc_core::workload::RunReport;
use actorgc_core::collect::MarkStats;
use actorgc_core::{collect, divergence_report, live_fixpoint, ActorGraph, ActorId, Method, Ratio, TransformStats};
use serde::Serialize;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GraphStats {
    pub actors: u64,
    pub references: u64,
    pub roots: u64,
    pub unblocked: u64,
}

impl GraphStats {
    pub fn of(g: &ActorGraph) -> Self {
        GraphStats {
            actors: g.actors.len() as u64,
            references: g.references.len() as u64,
            roots: g.roots.len() as u64,
            unblocked: g.unblocked.len() as u64,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ModeOverhead {
    pub mode: Mode,
    pub overhead: Ratio,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DivergenceSummary {
    pub back_pointers_agree: bool,
    pub va_divergences: u64,
    pub blocked_receiver: u64,
    pub inactive_referencer: u64,
    pub unclassified: u64,
    pub va_edges: EdgeOverhead,
}

impl DivergenceSummary {
    pub fn of(r: &DivergenceReport) -> Self {
        DivergenceSummary {
            back_pointers_agree: r.back_pointers_agree,
            va_divergences: r.va_divergences as u64,
            blocked_receiver: r.count(DivergenceClass::BlockedReceiver) as u64,
            inactive_referencer: r.count(DivergenceClass::InactiveReferencer) as u64,
            unclassified: r.count(DivergenceClass::Unclassified) as u64,
            va_edges: r.va_edges,
        }
    }
}

/// One collection of one graph.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GcReport {
    pub version: &'static str,
    pub seed: Option<u64>,
    pub graph: GraphStats,
    pub method: Method,
    pub strategy: Strategy,
    pub transform: TransformStats,
    pub mark: MarkStats,
    pub live_count: u64,
    pub garbage_count: u64,
    pub live: BTreeSet<ActorId>,
    pub garbage: BTreeSet<ActorId>,
    pub oracle_agrees: bool,
    /// Exact dual-node edge count against the 3|E| estimate.
    pub va_edges: Option<EdgeOverhead>,
    pub modes: Vec<ModeOverhead>,
    pub divergence: DivergenceSummary,
}

impl GcReport {
    pub fn new(g: &ActorGraph, method: Method, strategy: Strategy, seed: Option<u64>) -> Self {
        let c = collect(g, method, strategy);
        let oracle = live_fixpoint(g);
        GcReport {
            version: VERSION,
            seed,
            graph: GraphStats::of(g),
            method,
            strategy,
            transform: c.transform,
            mark: c.mark,
            live_count: c.live.len() as u64,
            garbage_count: c.garbage.len() as u64,
            oracle_agrees: c.live == oracle.live,
            live: c.live,
            garbage: c.garbage,
            va_edges: (method == Method::VardhanAgha).then(|| EdgeOverhead::of(g)),
            modes: Vec::new(),
            divergence: DivergenceSummary::of(&divergence_report(g)),
        }
    }

    pub fn table(&self) -> String {
        let mut t = Table::new(["field", "value"]);
        let g = &self.graph;
        t.row(["method", self.method.name()]);
        t.row(["strategy", self.strategy.name()]);
        t.row(["actors |V|", &g.actors.to_string()]);
        t.row(["references |E|", &g.references.to_string()]);
        t.row(["roots |R|", &g.roots.to_string()]);
        t.row(["unblocked |U|", &g.unblocked.to_string()]);
        t.row(["passive nodes", &self.transform.output_nodes.to_string()]);
        t.row(["passive edges", &self.transform.output_edges.to_string()]);
        t.row(["node ratio", &ratio(self.transform.node_ratio)]);
        t.row(["edge ratio", &ratio(self.transform.edge_ratio)]);
        t.row(["traversal passes", &self.transform.traversal_passes.to_string()]);
        t.row(["transform ops", &self.transform.ops.to_string()]);
        t.row(["mark ops", &self.mark.ops.to_string()]);
        t.row(["mark scans", &self.mark.scans.to_string()]);
        t.row(["live", &self.live_count.to_string()]);
        t.row(["garbage", &self.garbage_count.to_string()]);
        t.row(["oracle agrees", yes_no(self.oracle_agrees)]);
        if let Some(e) = self.va_edges {
            t.row(["edges vs 3|E|", &format!("{} vs {} (delta {})", e.exact_edges, e.estimated_edges, e.delta)]);
        }
        for m in &self.modes {
            t.row([&format!("{} overhead", m.mode.heading()), &ratio(m.overhead)]);
        }
        let d = &self.divergence;
        t.row(["dual-node divergences", &d.va_divergences.to_string()]);
        if let Some(seed) = self.seed {
            t.row(["seed", &seed.to_string()]);
        }
        t.row(["version", self.version]);
        t.render()
    }
}

/// `n/d (q)` with the quotient to three places, or `n/0`.
pub fn ratio(r: Ratio) -> String {
    match r.value() {
        Some(v) => format!("{r} ({v:.3})"),
        None => r.to_string(),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Plain-text table: first column left-aligned, the rest right-aligned.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    headers: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: AsRef<str>>(headers: impl IntoIterator<Item = S>) -> Self {
        Table { headers: headers.into_iter().map(|h| h.as_ref().to_string()).collect(), rows: Vec::new() }
    }

    pub fn row<S: AsRef<str>>(&mut self, cells: impl IntoIterator<Item = S>) {
        self.rows.push(cells.into_iter().map(|c| c.as_ref().to_string()).collect());
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn render(&self) -> String {
        let columns = self.headers.len();
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate().take(columns) {
                widths[i] = widths[i].max(cell.chars().count());
            }
        }
        let mut out = String::new();
        let line = |out: &mut String, cells: &[String]| {
            let mut text = String::new();
            for (i, w) in widths.iter().enumerate() {
                let cell = cells.get(i).map(String::as_str).unwrap_or("");
                if i > 0 {
                    text.push_str("  ");
                }
                if i == 0 {
                    let _ = write!(text, "{cell:<w$}");
                } else {
                    let _ = write!(text, "{cell:>w$}");
                }
            }
            out.push_str(text.trim_end());
            out.push('\n');
        };
        line(&mut out, &self.headers);
        let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
        line(&mut out, &rule);
        for row in &self.rows {
            line(&mut out, row);
        }
        out
    }
}

/// Per-mode table: one row per mechanism with collected counts, operation
/// counts and the overhead ratio against the mutator alone.
pub fn mode_table(reports: &[ModeReport]) -> String {
    let mut t = Table::new([
        "workload", "actors", "nodes", "mode", "collected", "residual", "mutator ops", "gc ops", "overhead", "safe",
    ]);
    for r in reports {
        for run in &r.runs {
            t.row([
                r.label.clone(),
                r.actor_total.to_string(),
                r.nodes_used.to_string(),
                run.mode.heading().to_string(),
                run.collected().to_string(),
                run.residual_garbage.to_string(),
                run.mutator_ops.to_string(),
                run.gc_ops.to_string(),
                ratio(run.overhead),
                yes_no(run.is_safe()).to_string(),
            ]);
        }
    }
    t.render()
}

pub fn run_table(r: &RunReport) -> String {
    let mut t = Table::new(["step", "live", "garbage", "collected", "created", "oracle", "conserved"]);
    for c in &r.cycles {
        t.row([
            c.step.to_string(),
            c.live.to_string(),
            c.garbage.to_string(),
            c.cumulative_collected.to_string(),
            c.created.to_string(),
            yes_no(c.matches_oracle).to_string(),
            yes_no(c.conserved).to_string(),
        ]);
    }
    let mut out = format!(
        "{}: {} actors, {} events, gc every {}\n",
        r.label,
        r.expected_actor_total,
        r.events,
        r.config.gc_every.map_or("never".to_string(), |n| format!("{n} events"))
    );
    out.push_str(&t.render());
    let _ = writeln!(
        out,
        "collected {}  surviving {}  residual garbage {}  mutator ops {}  gc ops {}  overhead {}",
        r.total_collected,
        r.surviving,
        r.residual_garbage,
        r.mutator_ops,
        r.gc_ops,
        ratio(r.overhead)
    );
    out
}

pub fn divergence_table(r: &DivergenceReport) -> String {
    let mut t = Table::new(["actor", "oracle", "direct", "indirect", "dual-node", "class"]);
    let verdict = |b: bool| if b { "live" } else { "garbage" };
    for row in &r.rows {
        t.row([
            row.actor.to_string(),
            verdict(row.oracle).to_string(),
            verdict(row.direct).to_string(),
            verdict(row.indirect).to_string(),
            verdict(row.vardhan_agha).to_string(),
            row.divergence.map_or(String::new(), |c| c.label().to_string()),
        ]);
    }
    let mut out = format!("# rule 4: {}\n# alternative: {}\n", r.interpretation, r.alternative);
    out.push_str(&t.render());
    out
}
