//! Reachability marking over passive graphs.
//!
//! Two strategies are offered. [`mark_two_scan`] traverses from the roots
//! setting a provisional mark, then scans every node once more to finalize
//! marks and count the unmarked ones. [`EpochMarker`] keeps one extra mark
//! variable per node (the epoch of the last collection that reached it), so a
//! collection is a single traversal and marks never need resetting.
//!
//! `ops` counts node visits plus edge traversals. It is bounded by
//! `TWO_SCAN_OPS_BOUND * (|nodes| + |edges|)` and
//! `ONE_SCAN_OPS_BOUND * (|nodes| + |edges|)` respectively.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::csr::Csr;
use crate::ids::PassiveNodeId;
use crate::passive::PassiveGraph;

/// Two-scan marking visits each node at most twice and each edge at most once.
pub const TWO_SCAN_OPS_BOUND: u64 = 2;
/// One-scan marking visits each node and edge at most once.
pub const ONE_SCAN_OPS_BOUND: u64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize), serde(rename_all = "snake_case"))]
pub enum Strategy {
    TwoScan,
    OneScan,
}

impl Strategy {
    pub const ALL: [Strategy; 2] = [Strategy::TwoScan, Strategy::OneScan];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::TwoScan => "two_scan",
            Strategy::OneScan => "one_scan",
        }
    }

    pub fn ops_bound(self) -> u64 {
        match self {
            Strategy::TwoScan => TWO_SCAN_OPS_BOUND,
            Strategy::OneScan => ONE_SCAN_OPS_BOUND,
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownStrategy;

impl fmt::Display for UnknownStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("expected one of: two_scan, one_scan")
    }
}

impl core::error::Error for UnknownStrategy {}

impl FromStr for Strategy {
    type Err = UnknownStrategy;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "two_scan" | "two-scan" => Ok(Strategy::TwoScan),
            "one_scan" | "one-scan" => Ok(Strategy::OneScan),
            _ => Err(UnknownStrategy),
        }
    }
}

/// Frontier discipline. Does not affect the marked set.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Frontier {
    Fifo,
    #[default]
    Lifo,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MarkResult {
    pub marked: BTreeSet<PassiveNodeId>,
    pub ops: u64,
    pub scans: u32,
    /// Peak frontier length plus one mark slot per node.
    pub space: u64,
}

struct Queue {
    items: VecDeque<u32>,
    frontier: Frontier,
    peak: usize,
}

impl Queue {
    fn new(frontier: Frontier) -> Self {
        Queue { items: VecDeque::new(), frontier, peak: 0 }
    }

    fn push(&mut self, i: u32) {
        self.items.push_back(i);
        self.peak = self.peak.max(self.items.len());
    }

    fn pop(&mut self) -> Option<u32> {
        match self.frontier {
            Frontier::Fifo => self.items.pop_front(),
            Frontier::Lifo => self.items.pop_back(),
        }
    }
}

trait MarkStore {
    fn is_marked(&self, i: usize) -> bool;
    fn set_mark(&mut self, i: usize);
}

/// Root-seeded traversal. Returns (ops, peak frontier length).
fn traverse(
    csr: &Csr<PassiveNodeId>,
    roots: &BTreeSet<PassiveNodeId>,
    frontier: Frontier,
    store: &mut impl MarkStore,
) -> (u64, usize) {
    let mut queue = Queue::new(frontier);
    let mut ops = 0u64;
    for &r in roots {
        if let Some(i) = csr.index_of(r) {
            if !store.is_marked(i) {
                store.set_mark(i);
                queue.push(i as u32);
            }
        }
    }
    while let Some(i) = queue.pop() {
        ops += 1;
        for &j in csr.successors(i as usize) {
            ops += 1;
            if !store.is_marked(j as usize) {
                store.set_mark(j as usize);
                queue.push(j);
            }
        }
    }
    (ops, queue.peak)
}

const UNMARKED: u8 = 0;
const PROVISIONAL: u8 = 1;
const FINAL: u8 = 2;

struct ScanMarks(Vec<u8>);

impl MarkStore for ScanMarks {
    fn is_marked(&self, i: usize) -> bool {
        self.0[i] != UNMARKED
    }

    fn set_mark(&mut self, i: usize) {
        self.0[i] = PROVISIONAL;
    }
}

struct EpochMarks<'a> {
    epochs: &'a mut [u32],
    epoch: u32,
    csr: &'a Csr<PassiveNodeId>,
    marked: BTreeSet<PassiveNodeId>,
}

impl MarkStore for EpochMarks<'_> {
    fn is_marked(&self, i: usize) -> bool {
        self.epochs[i] == self.epoch
    }

    fn set_mark(&mut self, i: usize) {
        self.epochs[i] = self.epoch;
        self.marked.insert(self.csr.id(i));
    }
}

pub fn mark_two_scan(p: &PassiveGraph) -> MarkResult {
    mark_two_scan_with(p, Frontier::default())
}

pub fn mark_two_scan_with(p: &PassiveGraph, frontier: Frontier) -> MarkResult {
    let csr = p.csr();
    let n = csr.len();
    let mut marks = ScanMarks(vec![UNMARKED; n]);
    let (mut ops, peak) = traverse(&csr, &p.roots, frontier, &mut marks);

    let mut marked = BTreeSet::new();
    let mut unmarked = 0usize;
    for (i, m) in marks.0.iter_mut().enumerate() {
        ops += 1;
        if *m == PROVISIONAL {
            *m = FINAL;
            marked.insert(csr.id(i));
        } else {
            unmarked += 1;
        }
    }
    debug_assert_eq!(marked.len() + unmarked, n);
    MarkResult { marked, ops, scans: 2, space: (peak + n) as u64 }
}

/// One-scan marker with a per-node epoch as the extra mark variable.
///
/// A node is marked in the current collection iff its epoch equals the
/// current epoch, so consecutive collections need no reset pass. The marker is
/// bound to the node set of the graph it last marked; a different node count
/// reallocates the epochs.
#[derive(Clone, Debug, Default)]
pub struct EpochMarker {
    epochs: Vec<u32>,
    current: u32,
    frontier: Frontier,
}

impl EpochMarker {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_frontier(frontier: Frontier) -> Self {
        EpochMarker { frontier, ..Self::default() }
    }

    pub fn mark(&mut self, p: &PassiveGraph) -> MarkResult {
        let csr = p.csr();
        let n = csr.len();
        if self.epochs.len() != n {
            self.epochs = vec![0; n];
            self.current = 0;
        }
        if self.current == u32::MAX {
            self.epochs.iter_mut().for_each(|e| *e = 0);
            self.current = 0;
        }
        self.current += 1;
        let epoch = self.current;

        let mut store = EpochMarks {
            epochs: &mut self.epochs,
            epoch,
            csr: &csr,
            marked: BTreeSet::new(),
        };
        let (ops, peak) = traverse(&csr, &p.roots, self.frontier, &mut store);
        MarkResult { marked: store.marked, ops, scans: 1, space: (peak + n) as u64 }
    }
}

pub fn mark_one_scan(p: &PassiveGraph) -> MarkResult {
    EpochMarker::new().mark(p)
}

pub fn mark_one_scan_with(p: &PassiveGraph, frontier: Frontier) -> MarkResult {
    EpochMarker::with_frontier(frontier).mark(p)
}

pub fn mark(p: &PassiveGraph, strategy: Strategy) -> MarkResult {
    match strategy {
        Strategy::TwoScan => mark_two_scan(p),
        Strategy::OneScan => mark_one_scan(p),
    }
}
