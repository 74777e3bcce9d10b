//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use actorgc::report::GcReport;
use actorgc_core::distributed::{
    global_collect, local_collect, run_modes, CycleKind, Mode, ModeConfig, PartitionPolicy, PartitionedGraph,
};
use actorgc_core::mark::{mark_one_scan, mark_two_scan, ONE_SCAN_OPS_BOUND, TWO_SCAN_OPS_BOUND};
use actorgc_core::oracle::{live_fixpoint_with, WorklistOrder};
use actorgc_core::transform::{DivergenceClass, EdgeOverhead, RULE4_INTERPRETATION};
use actorgc_core::workload::{
    gen_fib_trace, gen_fib_trace_with_threshold, gen_matmul_trace, gen_nqueens_trace, replay, EventKind,
    MutationEvent, MutationTrace, ReplayConfig,
};
use actorgc_core::{
    collect, divergence_report, live_fixpoint, live_reachset, random_graph, transform_direct_backpointers,
    transform_indirect_backpointers, transform_vardhan_agha, ActorGraph, ActorId, Method, PassiveGraph,
    PassiveNodeId, RandomGraphParams, Status, Strategy,
};
use tempfile::TempDir;

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn a(i: u32) -> ActorId {
    ActorId(i)
}

/// Every graph over actors `0..n`: each subset of the n² ordered pairs times
/// each blocked / unblocked / unblocked-root assignment.
fn for_each_graph(n: u32, mut f: impl FnMut(&ActorGraph) -> Result<(), String>) -> Result<u64, String> {
    graphs_in(n, 0..1u64 << (n * n), &mut f)
}

fn graphs_in(
    n: u32,
    masks: std::ops::Range<u64>,
    f: &mut impl FnMut(&ActorGraph) -> Result<(), String>,
) -> Result<u64, String> {
    let pairs: Vec<(ActorId, ActorId)> = (0..n).flat_map(|s| (0..n).map(move |d| (a(s), a(d)))).collect();
    let assignments = 3u32.pow(n);
    let mut count = 0u64;
    for mask in masks {
        let references: BTreeSet<(ActorId, ActorId)> =
            pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
        for code in 0..assignments {
            let mut g = ActorGraph::new();
            g.references = references.clone();
            let mut c = code;
            for i in 0..n {
                match c % 3 {
                    0 => g.add_actor(a(i), Status::Blocked),
                    1 => g.add_actor(a(i), Status::Unblocked),
                    _ => g.add_root(a(i)),
                }
                c /= 3;
            }
            f(&g)?;
            count += 1;
        }
    }
    Ok(count)
}

/// `for_each_graph` with `all_agree`, the edge subsets split across threads.
fn all_agree_exhaustive(n: u32) -> Result<u64, String> {
    let masks = 1u64 << (n * n);
    let threads = std::thread::available_parallelism().map_or(1, |t| t.get() as u64).min(masks);
    let chunk = masks.div_ceil(threads);
    std::thread::scope(|s| {
        let workers: Vec<_> = (0..threads)
            .map(|t| s.spawn(move || graphs_in(n, t * chunk..((t + 1) * chunk).min(masks), &mut all_agree)))
            .collect();
        workers.into_iter().map(|w| w.join().map_err(|_| "worker panicked".to_string())?).sum()
    })
}

fn all_agree(g: &ActorGraph) -> Result<(), String> {
    let oracle = live_fixpoint(g).live;
    let same = live_reachset(g).live == oracle
        && live_fixpoint_with(g, WorklistOrder::Fifo).live == oracle
        && collect(g, Method::DirectBackPointers, Strategy::TwoScan).live == oracle
        && collect(g, Method::IndirectBackPointers, Strategy::OneScan).live == oracle;
    check(same, || format!("disagreement on {g:?}"))
}

fn random_params(i: u64) -> RandomGraphParams {
    let n = 1 + (i % 200) as u32;
    let degree = [0.5, 1.0, 2.0, 4.0][(i / 200 % 4) as usize];
    RandomGraphParams {
        n_actors: n,
        edge_density: (degree / f64::from(n)).min(1.0),
        p_unblocked: [0.05, 0.2, 0.5][(i % 3) as usize],
        n_roots: ((i % 4) as u32).min(n),
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut exhaustive = 0;
    for n in 0..=4 {
        exhaustive += all_agree_exhaustive(n)?;
    }
    let expected: u64 = (0..=4u32).map(|n| (1u64 << (n * n)) * 3u64.pow(n)).sum();
    check(exhaustive == expected, || format!("enumerated {exhaustive}, expected {expected}"))?;
    let random = 10_000u64;
    for i in 0..random {
        let g = random_graph(i, &random_params(i)).map_err(|e| e.to_string())?;
        all_agree(&g).map_err(|e| format!("seed {i}: {e}"))?;
    }
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(120), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{exhaustive} exhaustive graphs (<= 4 actors) and {random} random graphs (<= 200 actors) agree in {:.1}s",
        elapsed.as_secs_f64()
    ))
}

fn criterion_2() -> Outcome {
    let mut g = ActorGraph::new();
    for i in 1..=13 {
        g.add_actor(a(i), Status::Blocked);
    }
    g.add_actor(a(1), Status::Unblocked);
    g.add_actor(a(13), Status::Unblocked);
    g.add_root(a(9));
    for (s, d) in [(1, 2), (2, 3), (5, 3), (9, 10), (10, 11), (13, 11)] {
        g.add_reference(a(s), a(d));
    }
    let direct = transform_direct_backpointers(&g).passive;
    for (s, d) in [(2, 1), (3, 1), (11, 9), (11, 13)] {
        check(direct.has_edge(a(s), a(d)), || format!("direct: missing {s}->{d}"))?;
    }
    check(!direct.has_edge(a(3), a(5)), || "direct: unexpected 3->5".into())?;

    let mut chain = ActorGraph::new();
    chain.add_actor(a(1), Status::Unblocked);
    chain.add_actor(a(2), Status::Blocked);
    chain.add_actor(a(3), Status::Blocked);
    chain.add_reference(a(1), a(2));
    chain.add_reference(a(2), a(3));
    let indirect = transform_indirect_backpointers(&chain).passive;
    let added: BTreeSet<(PassiveNodeId, PassiveNodeId)> = indirect
        .edges
        .iter()
        .filter(|&&(s, d)| !chain.references.contains(&(ActorId(s.0 as u32), ActorId(d.0 as u32))))
        .copied()
        .collect();
    let expected: BTreeSet<(PassiveNodeId, PassiveNodeId)> =
        [(a(2).into(), a(1).into()), (a(3).into(), a(2).into())].into();
    check(added == expected, || format!("indirect added {added:?}"))?;
    let direct_chain = transform_direct_backpointers(&chain).passive;
    check(direct_chain.has_edge(a(2), a(1)) && direct_chain.has_edge(a(3), a(1)), || "direct chain".into())?;
    Ok("direct: 2->1, 3->1, 11->9, 11->13, no 3->5; indirect: exactly 2->1, 3->2".into())
}

fn criterion_3() -> Outcome {
    let mut graphs = 0u64;
    let mut verify = |g: &ActorGraph| -> Result<(), String> {
        let t = transform_vardhan_agha(g);
        let (v, u, e) = (g.actors.len() as u64, g.unblocked.len() as u64, g.references.len() as u64);
        check(t.stats.output_nodes == 2 * v && t.passive.nodes.len() as u64 == 2 * v, || {
            format!("nodes {} for |V|={v}", t.stats.output_nodes)
        })?;
        check(t.stats.output_edges == v + u + 2 * e, || format!("edges {} on {g:?}", t.stats.output_edges))?;
        let overhead = EdgeOverhead::of(g);
        check(overhead.exact_edges == v + u + 2 * e && overhead.estimated_edges == 3 * e, || "overhead".into())?;
        check(overhead.delta == (v + u) as i64 - e as i64, || "delta".into())?;
        graphs += 1;
        Ok(())
    };
    for n in 0..=3 {
        for_each_graph(n, &mut verify)?;
    }
    for i in 0..2_000u64 {
        verify(&random_graph(i, &random_params(i * 7)).map_err(|e| e.to_string())?)?;
    }
    let g = random_graph(3, &random_params(150)).map_err(|e| e.to_string())?;
    let report = GcReport::new(&g, Method::VardhanAgha, Strategy::OneScan, Some(3));
    let flagged = report.va_edges.ok_or("report lacks the edge delta")?;
    check(flagged == EdgeOverhead::of(&g), || "report delta".into())?;
    check(divergence_report(&g).interpretation == RULE4_INTERPRETATION, || "interpretation header".into())?;
    Ok(format!(
        "{graphs} graphs: nodes == 2|V|, edges == |V|+|U|+2|E|; report flags delta vs 3|E| (e.g. {} vs {})",
        flagged.exact_edges, flagged.estimated_edges
    ))
}

fn criterion_4() -> Outcome {
    let cells: Vec<(&str, MutationTrace, u64)> = vec![
        ("Fib(38)", gen_fib_trace(38).map_err(|e| e.to_string())?, 109),
        ("Fib(41)", gen_fib_trace(41).map_err(|e| e.to_string())?, 465),
        ("Dfibr(39)", gen_fib_trace(39).map_err(|e| e.to_string())?, 177),
        ("Dfibr(42)", gen_fib_trace(42).map_err(|e| e.to_string())?, 753),
        ("NQ(13)", gen_nqueens_trace(13).map_err(|e| e.to_string())?, 133),
        ("NQ(15)", gen_nqueens_trace(15).map_err(|e| e.to_string())?, 183),
        ("DNQ(16)", gen_nqueens_trace(16).map_err(|e| e.to_string())?, 211),
        ("DNQ(18)", gen_nqueens_trace(18).map_err(|e| e.to_string())?, 273),
        ("MX", gen_matmul_trace(100, false).map_err(|e| e.to_string())?, 3),
        ("DMX", gen_matmul_trace(100, true).map_err(|e| e.to_string())?, 5),
    ];
    let mut shown = Vec::new();
    for (name, t, expected) in &cells {
        t.validate().map_err(|e| format!("{name}: {e}"))?;
        let spawned = t.universe().len() as u64;
        check(spawned == *expected && t.expected_actor_total == *expected, || {
            format!("{name}: {spawned} actors, expected {expected}")
        })?;
        shown.push(format!("{name}={spawned}"));
    }
    Ok(shown.join(" "))
}

fn chain(size: u64) -> PassiveGraph {
    let mut p = PassiveGraph::new();
    p.nodes.extend((0..size).map(PassiveNodeId));
    p.edges.extend((1..size).map(|i| (PassiveNodeId(i - 1), PassiveNodeId(i))));
    p.roots.insert(PassiveNodeId(0));
    p
}

fn tree(size: u64) -> PassiveGraph {
    let mut p = PassiveGraph::new();
    p.nodes.extend((0..size).map(PassiveNodeId));
    p.edges.extend((1..size).map(|i| (PassiveNodeId((i - 1) / 2), PassiveNodeId(i))));
    p.roots.insert(PassiveNodeId(0));
    p
}

fn dense(size: u64) -> PassiveGraph {
    let mut p = PassiveGraph::new();
    p.nodes.extend((0..size).map(PassiveNodeId));
    for i in 0..size {
        for k in 1..=16 {
            p.edges.insert((PassiveNodeId(i), PassiveNodeId((i * 31 + k * 17) % size)));
        }
    }
    p.roots.insert(PassiveNodeId(0));
    p
}

fn as_passive(g: &ActorGraph) -> PassiveGraph {
    let mut p = PassiveGraph::new();
    p.nodes.extend(g.actors.iter().map(|&x| PassiveNodeId::from(x)));
    p.edges.extend(g.references.iter().map(|&(s, d)| (s.into(), d.into())));
    p.roots.extend(g.roots.iter().map(|&r| PassiveNodeId::from(r)));
    p
}

fn criterion_5() -> Outcome {
    let graphs = 1_000u64;
    for i in 0..graphs {
        let p = as_passive(&random_graph(i, &random_params(i * 13 + 5)).map_err(|e| e.to_string())?);
        check(mark_one_scan(&p).marked == mark_two_scan(&p).marked, || format!("seed {i}: marked sets differ"))?;
    }
    let mut worst = [0f64; 2];
    for (name, family) in [("chain", chain as fn(u64) -> PassiveGraph), ("tree", tree), ("dense", dense)] {
        for size in [100u64, 1_000, 10_000] {
            let p = family(size);
            let work = (p.nodes.len() + p.edges.len()) as f64;
            let two = mark_two_scan(&p).ops as f64 / work;
            let one = mark_one_scan(&p).ops as f64 / work;
            check(two <= TWO_SCAN_OPS_BOUND as f64, || format!("{name} {size}: two-scan ops ratio {two}"))?;
            check(one <= ONE_SCAN_OPS_BOUND as f64, || format!("{name} {size}: one-scan ops ratio {one}"))?;
            worst[0] = worst[0].max(two);
            worst[1] = worst[1].max(one);
        }
    }
    Ok(format!(
        "{graphs} random graphs mark identically; ops/(|V|+|E|) max {:.3} (two-scan, bound {TWO_SCAN_OPS_BOUND}) and {:.3} (one-scan, bound {ONE_SCAN_OPS_BOUND}) on chain/tree/dense at 10^2..10^4",
        worst[0], worst[1]
    ))
}

fn safety_traces(max_fib: u32) -> Result<Vec<MutationTrace>, String> {
    let mut traces = Vec::new();
    for k in [2, 4, 8, 10, 12].into_iter().filter(|&k| k <= max_fib) {
        traces.push(gen_fib_trace_with_threshold(k, 1).map_err(|e| e.to_string())?);
    }
    for n in [3, 5, 8] {
        traces.push(gen_nqueens_trace(n).map_err(|e| e.to_string())?);
    }
    traces.push(gen_matmul_trace(100, false).map_err(|e| e.to_string())?);
    traces.push(gen_matmul_trace(100, true).map_err(|e| e.to_string())?);
    Ok(traces)
}

const PERIODS: [u64; 3] = [1, 5, 25];

fn criterion_6() -> Outcome {
    let mut runs = 0;
    let mut cycles = 0;
    for t in safety_traces(12)? {
        for (i, &every) in PERIODS.iter().enumerate() {
            for m in [Method::DirectBackPointers, Method::IndirectBackPointers] {
                let mut cfg = ReplayConfig::new(Some(every), m, Strategy::ALL[i % 2]);
                cfg.final_collection = true;
                let ctx = format!("{} every {every} {}", t.label, m.name());
                let r = replay(&t, &cfg).map_err(|e| format!("{ctx}: {e}"))?;
                check(r.cycles.iter().all(|c| c.conserved), || format!("{ctx}: conservation"))?;
                check(r.total_collected + r.surviving == t.expected_actor_total, || format!("{ctx}: accounting"))?;
                check(r.residual_garbage == 0, || format!("{ctx}: {} garbage left", r.residual_garbage))?;
                runs += 1;
                cycles += r.cycles.len();
            }
        }
    }
    Ok(format!(
        "{runs} replays (fib k<=12, nq n<=8, mx, dmx; gc every 1/5/25; direct, indirect), {cycles} cycles, 0 premature, all actors accounted"
    ))
}

/// Two blocked actors on different nodes referencing each other, orphaned
/// by the root.
fn remote_cycle_trace() -> MutationTrace {
    let mut initial = ActorGraph::new();
    initial.add_root(a(0));
    let kinds = [
        EventKind::Spawn { parent: a(0), child: a(1) },
        EventKind::Spawn { parent: a(0), child: a(2) },
        EventKind::AddRef { src: a(1), dst: a(2) },
        EventKind::AddRef { src: a(2), dst: a(1) },
        EventKind::Block(a(1)),
        EventKind::Block(a(2)),
        EventKind::DropRef { src: a(0), dst: a(1) },
        EventKind::DropRef { src: a(0), dst: a(2) },
    ];
    let events = kinds.into_iter().enumerate().map(|(i, kind)| MutationEvent { step: i as u64 + 1, kind }).collect();
    MutationTrace { label: "remote-cycle".into(), initial, events, expected_actor_total: 3 }
}

fn criterion_7() -> Outcome {
    let mut runs = 0;
    let mut cycles = 0;
    for t in safety_traces(10)? {
        for nodes in [2, 4] {
            for policy in [PartitionPolicy::Locality, PartitionPolicy::RoundRobinBfs] {
                for (i, &every) in PERIODS.iter().enumerate() {
                    for m in [Method::DirectBackPointers, Method::IndirectBackPointers] {
                        let cfg = ModeConfig {
                            n_nodes: nodes,
                            policy,
                            local_every: Some(every),
                            global_every: Some(every * 10),
                            method: m,
                            strategy: Strategy::ALL[i % 2],
                            memory_threshold: None,
                        };
                        let ctx = format!("{} {nodes} nodes {} every {every} {}", t.label, policy.name(), m.name());
                        let report = run_modes(&t, &[Mode::Lgc, Mode::Cdgc], &cfg).map_err(|e| format!("{ctx}: {e}"))?;
                        for run in &report.runs {
                            check(run.is_safe(), || format!("{ctx} {}: unsafe", run.mode.name()))?;
                            cycles += run.cycles.len();
                        }
                        let lgc = report.run(Mode::Lgc).ok_or("missing LGC")?;
                        let cdgc = report.run(Mode::Cdgc).ok_or("missing CDGC")?;
                        check(cdgc.residual_garbage == 0, || format!("{ctx}: CDGC left {}", cdgc.residual_garbage))?;
                        check(cdgc.residual_garbage <= lgc.residual_garbage, || format!("{ctx}: CDGC > LGC"))?;
                        runs += 1;
                    }
                }
            }
        }
    }

    let t = remote_cycle_trace();
    t.validate().map_err(|e| e.to_string())?;
    let cfg = ModeConfig { n_nodes: 2, local_every: Some(1), global_every: Some(100), ..ModeConfig::default() };
    let report = run_modes(&t, &[Mode::Lgc, Mode::Cdgc], &cfg).map_err(|e| e.to_string())?;
    let lgc = report.run(Mode::Lgc).ok_or("missing LGC")?;
    let cdgc = report.run(Mode::Cdgc).ok_or("missing CDGC")?;
    check(report.cross_edges == 3, || format!("fixture has {} cross edges", report.cross_edges))?;
    check(lgc.collected() == 0 && lgc.residual_garbage == 2, || "LGC collected the remote cycle".into())?;
    check(cdgc.collected_global == 2 && cdgc.residual_garbage == 0, || "CDGC kept the remote cycle".into())?;
    check(cdgc.cycles.iter().any(|c| c.kind == CycleKind::Global), || "no global cycle".into())?;

    let g = t.validate().map_err(|e| e.to_string())?;
    let placement = [(a(0), 0), (a(1), 0), (a(2), 1)].into();
    let pg = PartitionedGraph::from_placement(&g, &placement, 2).map_err(|e| e.to_string())?;
    for node in [0, 1] {
        let lc = local_collect(&pg, node, Method::DirectBackPointers, Strategy::OneScan).ok_or("node missing")?;
        check(lc.garbage.is_empty(), || format!("node {node} collected {:?}", lc.garbage))?;
    }
    let global = global_collect(&pg, Method::IndirectBackPointers, Strategy::TwoScan);
    check(global.garbage == [a(1), a(2)].into(), || "global kept the cycle".into())?;
    Ok(format!(
        "{runs} partitioned runs (fib k<=10, nq n<=8, mx, dmx; 2/4 nodes, both policies), {cycles} cycles with local <= global <= oracle; remote cycle kept by LGC, collected by CDGC; CDGC residual 0"
    ))
}

fn bench_run(dir: &std::path::Path, suite: &std::path::Path) -> Result<Vec<(String, Vec<u8>)>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_actorgc"))
        .args(["--seed", "42", "--out"])
        .arg(dir)
        .arg("bench")
        .arg(suite)
        .output()
        .map_err(|e| e.to_string())?;
    check(out.status.success(), || String::from_utf8_lossy(&out.stderr).into_owned())?;
    let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir)
        .map_err(|e| e.to_string())?
        .map(|e| {
            let e = e.map_err(|e| e.to_string())?;
            let bytes = std::fs::read(e.path()).map_err(|e| e.to_string())?;
            Ok((e.file_name().to_string_lossy().into_owned(), bytes))
        })
        .collect::<Result<_, String>>()?;
    files.sort();
    Ok(files)
}

fn criterion_8() -> Outcome {
    let mut ratios = Vec::new();
    for t in [
        gen_fib_trace_with_threshold(8, 1).map_err(|e| e.to_string())?,
        gen_nqueens_trace(8).map_err(|e| e.to_string())?,
        gen_matmul_trace(100, true).map_err(|e| e.to_string())?,
    ] {
        let cfg = ModeConfig { n_nodes: 2, ..ModeConfig::default() };
        let report = run_modes(&t, &Mode::ALL, &cfg).map_err(|e| e.to_string())?;
        let nogc = report.run(Mode::NoGc).ok_or("missing NO-GC")?;
        check(nogc.overhead.equals(1, 1), || format!("{}: NO-GC overhead {}", t.label, nogc.overhead))?;
        check(nogc.garbage_created > 0, || format!("{}: no garbage produced", t.label))?;
        for run in report.runs.iter().filter(|r| r.mode != Mode::NoGc) {
            check(run.overhead.exceeds_one(), || format!("{} {}: overhead {}", t.label, run.mode.name(), run.overhead))?;
        }
        let cdgc = report.run(Mode::Cdgc).ok_or("missing CDGC")?;
        ratios.push(format!("{} {:.2}", t.label, cdgc.overhead.value().unwrap_or(0.0)));
    }

    let g = random_graph(8, &random_params(120)).map_err(|e| e.to_string())?;
    let report = serde_json::to_value(GcReport::new(&g, Method::DirectBackPointers, Strategy::OneScan, Some(8)))
        .map_err(|e| e.to_string())?;
    for field in ["graph", "transform", "mark", "live_count", "garbage_count", "modes", "divergence", "version", "seed"] {
        check(report.get(field).is_some(), || format!("report lacks `{field}`"))?;
    }
    check(report["transform"]["edge_ratio"]["denominator"].is_u64(), || "ratio lacks its denominator".into())?;

    let tmp = TempDir::new().map_err(|e| e.to_string())?;
    let suite = tmp.path().join("suite.json");
    std::fs::write(
        &suite,
        r#"{"workloads": ["fib:8:1", "nq:6", "dmx:100"], "modes": ["nogc", "gdp", "lgc", "cdgc"], "nodes": 2}"#,
    )
    .map_err(|e| e.to_string())?;
    let first = bench_run(&tmp.path().join("a"), &suite)?;
    let second = bench_run(&tmp.path().join("b"), &suite)?;
    check(first.len() == 3 * 3 * 2 * 4 + 2, || format!("{} report files", first.len()))?;
    check(first == second, || "reports differ between runs".into())?;
    Ok(format!(
        "wall-clock seconds and percentages are not reproduced; op-count overhead GC/NO-GC > 1 ({}); {} report files byte-identical across runs",
        ratios.join(", "),
        first.len()
    ))
}

fn criterion_9() -> Outcome {
    let mut sink = ActorGraph::new();
    sink.add_root(a(0));
    sink.add_actor(a(1), Status::Blocked);
    sink.add_reference(a(0), a(1));
    let r = divergence_report(&sink);
    let row = r.rows.iter().find(|v| v.actor == a(1)).ok_or("row missing")?;
    check(row.oracle && !row.vardhan_agha, || "blocked receiver verdicts".into())?;
    check(row.divergence == Some(DivergenceClass::BlockedReceiver), || format!("class {:?}", row.divergence))?;

    let mut referencer = sink.clone();
    referencer.add_actor(a(2), Status::Blocked);
    referencer.add_reference(a(2), a(1));
    let r = divergence_report(&referencer);
    let row = r.rows.iter().find(|v| v.actor == a(2)).ok_or("row missing")?;
    check(!row.oracle && row.vardhan_agha, || "inactive referencer verdicts".into())?;
    check(row.divergence == Some(DivergenceClass::InactiveReferencer), || format!("class {:?}", row.divergence))?;

    let tmp = TempDir::new().map_err(|e| e.to_string())?;
    for (name, g) in [("sink.txt", &sink), ("referencer.txt", &referencer)] {
        let path = tmp.path().join(name);
        std::fs::write(&path, actorgc::format::serialize_graph(g)).map_err(|e| e.to_string())?;
        let out = Command::new(env!("CARGO_BIN_EXE_actorgc")).arg("diff").arg(&path).output().map_err(|e| e.to_string())?;
        let stderr = String::from_utf8_lossy(&out.stderr);
        check(out.status.code() == Some(0), || format!("diff {name} exited {:?}", out.status.code()))?;
        check(stderr.contains("warning"), || format!("diff {name} gave no warning"))?;
    }
    Ok("blocked receiver -> class a, inactive referencer -> class b; `diff` exits 0 with warnings".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (1, "transformation equivalence", criterion_1),
        (2, "back-pointer fixtures", criterion_2),
        (3, "dual-node overhead accounting", criterion_3),
        (4, "workload actor counts", criterion_4),
        (5, "marking strategies", criterion_5),
        (6, "trace safety", criterion_6),
        (7, "distributed safety and subsumption", criterion_7),
        (8, "operation-count overhead and reproducible reports", criterion_8),
        (9, "divergence characterization", criterion_9),
    ];
    let mut failed = 0;
    for (n, name, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|p| Err(p.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into())));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {n}. {name}: {detail} [{secs:.1}s]"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {n}. {name}: {why} [{secs:.1}s]");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
