mod common;

use std::collections::BTreeSet;

use actorgc_core::mark::mark_two_scan;
use actorgc_core::transform::{mail_queue_node, object_node, DivergenceClass, EdgeOverhead};
use actorgc_core::{
    divergence_report, live_fixpoint, random_graph, transform, transform_direct_backpointers,
    transform_indirect_backpointers, transform_vardhan_agha, ActorGraph, ActorId, Method, NodeImage,
    PassiveNodeId, RandomGraphParams, Status, Transformed,
};
use common::*;
use proptest::prelude::*;

fn marked_actors(t: &Transformed) -> BTreeSet<ActorId> {
    t.map.live_actors(&mark_two_scan(&t.passive).marked)
}

/// Prose-confirmed fragment of the direct back-pointer example: unblocked 1
/// reaches 2 and 3, root 9 and unblocked 13 both reach 11, blocked 5 reaches 3.
fn direct_fixture() -> ActorGraph {
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
    g
}

#[test]
fn direct_fixture_back_pointers() {
    let g = direct_fixture();
    let t = transform_direct_backpointers(&g);
    for (s, d) in [(2, 1), (3, 1), (11, 9), (11, 13), (10, 9)] {
        assert!(t.passive.has_edge(a(s), a(d)), "{s}->{d} missing");
    }
    assert!(!t.passive.has_edge(a(3), a(5)));
    let added: BTreeSet<_> = t
        .passive
        .edges
        .iter()
        .filter(|&&(s, d)| !g.references.contains(&(ActorId(s.0 as u32), ActorId(d.0 as u32))))
        .collect();
    assert_eq!(added.len(), 5);
}

#[test]
fn indirect_fixture_back_pointers() {
    let g = direct_fixture();
    let t = transform_indirect_backpointers(&g);
    assert!(t.passive.has_edge(a(2), a(1)));
    assert!(t.passive.has_edge(a(3), a(2)));
    assert!(!t.passive.has_edge(a(3), a(1)));
    // counter-directional paths 11 -> 10 -> 9 and 11 -> 13
    assert!(t.passive.has_edge(a(11), a(10)));
    assert!(t.passive.has_edge(a(10), a(9)));
    assert!(t.passive.has_edge(a(11), a(13)));
    // 5 is never reached from a seed
    assert!(!t.passive.has_edge(a(3), a(5)));
}

#[test]
fn blocked_root_paths_and_fixture_liveness() {
    let g = direct_fixture();
    let oracle = live_fixpoint(&g);
    // the 1 -> 2 -> 3 component has no root, so only the root's side is live
    assert_eq!(oracle.live, set(&[9, 10, 11, 13]));
    for m in [Method::DirectBackPointers, Method::IndirectBackPointers] {
        assert_eq!(marked_actors(&transform(&g, m)), oracle.live);
    }
}

#[test]
fn dual_node_divergence_fixtures() {
    // r -> b, b a blocked sink
    let mut g = ActorGraph::new();
    g.add_root(a(0));
    g.add_actor(a(1), Status::Blocked);
    g.add_reference(a(0), a(1));
    let r = divergence_report(&g);
    assert!(r.back_pointers_agree);
    let row = r.rows.iter().find(|v| v.actor == a(1)).unwrap();
    assert!(row.oracle && !row.vardhan_agha);
    assert_eq!(row.divergence, Some(DivergenceClass::BlockedReceiver));

    // blocked unreferenced x -> b <- r
    let mut g = ActorGraph::new();
    g.add_root(a(0));
    g.add_actor(a(1), Status::Blocked);
    g.add_actor(a(2), Status::Blocked);
    g.add_reference(a(0), a(1));
    g.add_reference(a(2), a(1));
    let r = divergence_report(&g);
    let row = r.rows.iter().find(|v| v.actor == a(2)).unwrap();
    assert!(!row.oracle && row.vardhan_agha);
    assert_eq!(row.divergence, Some(DivergenceClass::InactiveReferencer));
    assert!(r.back_pointers_agree);
}

#[test]
fn queue_reachable_but_object_not() {
    // an actor whose mail queue is reachable but whose object node is not
    let mut g = ActorGraph::new();
    g.add_root(a(1));
    g.add_actor(a(7), Status::Blocked);
    g.add_reference(a(1), a(7));
    let t = transform_vardhan_agha(&g);
    let marked = mark_two_scan(&t.passive).marked;
    assert!(marked.contains(&mail_queue_node(a(7))));
    assert!(!marked.contains(&object_node(a(7))));
    assert_eq!(t.map.get(a(7)), Some(&NodeImage::Pair { alpha: object_node(a(7)), mu: mail_queue_node(a(7)) }));
    assert_eq!(object_node(a(7)), PassiveNodeId(14));
}

#[test]
fn back_pointer_transforms_match_oracle_on_every_graph_up_to_three_actors() {
    for n in 0..=3 {
        for_each_graph(n, |g| {
            let oracle = live_fixpoint(g).live;
            assert_eq!(marked_actors(&transform_direct_backpointers(g)), oracle, "{g:?}");
            assert_eq!(marked_actors(&transform_indirect_backpointers(g)), oracle, "{g:?}");
        });
    }
}

#[test]
fn transforms_are_deterministic() {
    let p = RandomGraphParams { n_actors: 60, edge_density: 0.04, p_unblocked: 0.2, n_roots: 2 };
    let g = random_graph(3, &p).unwrap();
    for m in Method::ALL {
        assert_eq!(transform(&g, m), transform(&g, m));
    }
}

proptest! {
    #[test]
    fn structural_invariants(g in arb_graph(9)) {
        let v = g.actors.len() as u64;
        let e = g.references.len() as u64;
        let u = g.unblocked.len() as u64;
        for m in [Method::DirectBackPointers, Method::IndirectBackPointers] {
            let t = transform(&g, m);
            prop_assert_eq!(t.stats.output_nodes, v);
            prop_assert_eq!(t.stats.input_nodes, v);
            prop_assert!(t.passive.is_valid());
            prop_assert!(t.map.is_bijective_onto(&g.actors, &t.passive.nodes));
            prop_assert_eq!(t.stats.output_edges, t.passive.edges.len() as u64);
            for &(s, d) in &g.references {
                prop_assert!(t.passive.has_edge(s, d));
            }
            prop_assert!(t.stats.edge_ratio.equals(t.stats.output_edges, e));
        }
        let t = transform_vardhan_agha(&g);
        prop_assert_eq!(t.stats.output_nodes, 2 * v);
        prop_assert_eq!(t.stats.output_edges, v + u + 2 * e);
        prop_assert_eq!(EdgeOverhead::of(&g).exact_edges, t.stats.output_edges);
        prop_assert!(t.passive.is_valid());
        prop_assert!(t.map.is_bijective_onto(&g.actors, &t.passive.nodes));
        let self_refs = g.references.iter().filter(|(s, d)| s == d);
        let collisions: u64 = self_refs.map(|(s, _)| 1 + u64::from(g.unblocked.contains(s))).sum();
        prop_assert_eq!(t.passive.edges.len() as u64, t.stats.output_edges - collisions);
    }

    #[test]
    fn indirect_only_grows_root_reachability(g in arb_graph(9)) {
        let t = transform_indirect_backpointers(&g);
        let plain = transform(&g, Method::IndirectBackPointers);
        prop_assert_eq!(&t, &plain);
        let before: BTreeSet<ActorId> = {
            let mut seen = g.roots.clone();
            loop {
                let n = seen.len();
                let next: Vec<_> = g.references.iter().filter(|(s, _)| seen.contains(s)).map(|&(_, d)| d).collect();
                seen.extend(next);
                if seen.len() == n { break seen; }
            }
        };
        prop_assert!(before.is_subset(&marked_actors(&t)));
    }

    #[test]
    fn direct_adds_no_trivial_self_pointers(g in arb_graph(8)) {
        let t = transform_direct_backpointers(&g);
        for &u in &g.actors {
            let on_cycle = {
                let mut seen: BTreeSet<ActorId> = g.acquaintances(u).collect();
                loop {
                    let n = seen.len();
                    let next: Vec<_> = seen.iter().flat_map(|&x| g.acquaintances(x)).collect();
                    seen.extend(next);
                    if seen.len() == n { break seen.contains(&u); }
                }
            };
            let expected = g.references.contains(&(u, u)) || (g.is_seed(u) && on_cycle);
            prop_assert_eq!(t.passive.has_edge(u, u), expected);
        }
    }

    #[test]
    fn divergence_rows_cover_every_actor(g in arb_graph(8)) {
        let r = divergence_report(&g);
        prop_assert!(r.back_pointers_agree);
        prop_assert_eq!(r.rows.len(), g.actors.len());
        prop_assert_eq!(r.va_divergences, r.rows.iter().filter(|v| v.oracle != v.vardhan_agha).count());
    }
}
