use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::ActorGraph;
use crate::ids::ActorId;
use crate::mark::mark_two_scan;
use crate::oracle::live_fixpoint;

use super::va::{EdgeOverhead, RULE4_ALTERNATIVE, RULE4_INTERPRETATION};
use super::{
    transform_direct_backpointers, transform_indirect_backpointers, transform_vardhan_agha,
    Transformed,
};

/// Why the dual-node verdict for an actor differs from the oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize), serde(rename_all = "snake_case"))]
pub enum DivergenceClass {
    /// Blocked actor kept live by the oracle (something live can send to it)
    /// whose object node is unreachable.
    BlockedReceiver,
    /// Actor that can never run, holding a reference to a live actor, made
    /// reachable through the inverse-acquaintance edge.
    InactiveReferencer,
    Unclassified,
}

impl DivergenceClass {
    pub fn label(self) -> &'static str {
        match self {
            DivergenceClass::BlockedReceiver => "a: blocked receiver judged garbage",
            DivergenceClass::InactiveReferencer => "b: inactive referencer judged live",
            DivergenceClass::Unclassified => "c: unclassified",
        }
    }
}

impl fmt::Display for DivergenceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Liveness of one actor under every method.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ActorVerdict {
    pub actor: ActorId,
    pub oracle: bool,
    pub direct: bool,
    pub indirect: bool,
    pub vardhan_agha: bool,
    pub divergence: Option<DivergenceClass>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct DivergenceReport {
    pub interpretation: &'static str,
    pub alternative: &'static str,
    pub rows: Vec<ActorVerdict>,
    /// Direct and indirect back pointers both match the oracle on every actor.
    pub back_pointers_agree: bool,
    pub va_divergences: usize,
    pub va_edges: EdgeOverhead,
}

impl DivergenceReport {
    pub fn divergences(&self) -> impl Iterator<Item = &ActorVerdict> {
        self.rows.iter().filter(|r| r.divergence.is_some())
    }

    pub fn count(&self, class: DivergenceClass) -> usize {
        self.divergences().filter(|r| r.divergence == Some(class)).count()
    }
}

fn marked_live(t: &Transformed) -> BTreeSet<ActorId> {
    t.map.live_actors(&mark_two_scan(&t.passive).marked)
}

/// Per-actor agreement matrix of the oracle and all three transforms, with
/// every dual-node divergence classified.
pub fn divergence_report(g: &ActorGraph) -> DivergenceReport {
    let oracle = live_fixpoint(g);
    let direct = marked_live(&transform_direct_backpointers(g));
    let indirect = marked_live(&transform_indirect_backpointers(g));
    let va = marked_live(&transform_vardhan_agha(g));

    let classify = |a: ActorId| -> Option<DivergenceClass> {
        let o = oracle.live.contains(&a);
        if o == va.contains(&a) {
            return None;
        }
        let class = if o && !g.is_seed(a) {
            DivergenceClass::BlockedReceiver
        } else if !o
            && !oracle.potentially_active.contains(&a)
            && g.acquaintances(a).any(|b| oracle.live.contains(&b))
        {
            DivergenceClass::InactiveReferencer
        } else {
            DivergenceClass::Unclassified
        };
        Some(class)
    };

    let rows: Vec<ActorVerdict> = g
        .actors
        .iter()
        .map(|&a| ActorVerdict {
            actor: a,
            oracle: oracle.live.contains(&a),
            direct: direct.contains(&a),
            indirect: indirect.contains(&a),
            vardhan_agha: va.contains(&a),
            divergence: classify(a),
        })
        .collect();

    DivergenceReport {
        interpretation: RULE4_INTERPRETATION,
        alternative: RULE4_ALTERNATIVE,
        back_pointers_agree: rows.iter().all(|r| r.direct == r.oracle && r.indirect == r.oracle),
        va_divergences: rows.iter().filter(|r| r.divergence.is_some()).count(),
        va_edges: EdgeOverhead::of(g),
        rows,
    }
}
