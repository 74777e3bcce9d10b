use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::ActorGraph;
use crate::ids::ActorId;

use super::{EventKind, MutationEvent, MutationTrace};

/// Arguments at or below this are computed inline without spawning.
pub const FIB_SEQUENTIAL_THRESHOLD: u32 = 30;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WorkloadError {
    FibArgument(u32),
    FibThreshold(u32),
    QueensBoard(u32),
    MatrixDimension(u32),
}

impl fmt::Display for WorkloadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WorkloadError::FibArgument(k) => write!(f, "fib argument must be at least 1, got {k}"),
            WorkloadError::FibThreshold(t) => write!(f, "fib threshold must be at least 1, got {t}"),
            WorkloadError::QueensBoard(n) => write!(f, "n-queens board must be at least 3, got {n}"),
            WorkloadError::MatrixDimension(d) => {
                write!(f, "matrix dimension must be at least 1, got {d}")
            }
        }
    }
}

impl core::error::Error for WorkloadError {}

/// A benchmark application with its arguments.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize), serde(rename_all = "snake_case"))]
pub enum Workload {
    Fib { k: u32, threshold: u32 },
    NQueens { n: u32 },
    MatMul { dim: u32, distributed: bool },
}

impl Workload {
    pub fn label(&self) -> String {
        match *self {
            Workload::Fib { k, threshold } if threshold == FIB_SEQUENTIAL_THRESHOLD => {
                format!("fib({k})")
            }
            Workload::Fib { k, threshold } => format!("fib({k},{threshold})"),
            Workload::NQueens { n } => format!("nq({n})"),
            Workload::MatMul { dim, distributed: false } => format!("mx({dim}^2)"),
            Workload::MatMul { dim, distributed: true } => format!("dmx({dim}^2)"),
        }
    }

    pub fn trace(&self) -> Result<MutationTrace, WorkloadError> {
        match *self {
            Workload::Fib { k, threshold } => gen_fib_trace_with_threshold(k, threshold),
            Workload::NQueens { n } => gen_nqueens_trace(n),
            Workload::MatMul { dim, distributed } => gen_matmul_trace(dim, distributed),
        }
    }
}

/// Actors created by the Fibonacci workload: one per call whose argument
/// exceeds the threshold, plus one per leaf call they spawn.
pub fn fib_actor_count(k: u32, threshold: u32) -> u64 {
    // iterative over j = 0..=k with A(j) = 1 for j <= threshold
    let mut counts: Vec<u64> = vec![1; k as usize + 1];
    for j in (threshold as usize + 1)..=k as usize {
        counts[j] = 1 + counts[j - 1] + counts[j - 2];
    }
    counts[k as usize]
}

pub fn nqueens_actor_count(n: u32) -> u64 {
    let n = u64::from(n);
    (n - 1) * (n - 2) + 1
}

struct TraceBuilder {
    events: Vec<MutationEvent>,
    next_id: u32,
}

impl TraceBuilder {
    fn new() -> Self {
        // actor 0 is the root in every workload
        TraceBuilder { events: Vec::new(), next_id: 1 }
    }

    fn push(&mut self, kind: EventKind) {
        let step = self.events.len() as u64 + 1;
        self.events.push(MutationEvent { step, kind });
    }

    /// Spawns a child that also learns its parent's address for replies.
    fn spawn_child(&mut self, parent: ActorId) -> ActorId {
        let child = ActorId(self.next_id);
        self.next_id += 1;
        self.push(EventKind::Spawn { parent, child });
        self.push(EventKind::AddRef { src: child, dst: parent });
        child
    }

    /// Reply to the parent, then terminate.
    fn reply_and_finish(&mut self, child: ActorId, parent: ActorId) {
        self.push(EventKind::Send { src: child, dst: parent });
        self.push(EventKind::Terminate(child));
    }

    fn finish(self, label: String) -> MutationTrace {
        let mut initial = ActorGraph::new();
        initial.add_root(ActorId(0));
        MutationTrace {
            label,
            initial,
            expected_actor_total: u64::from(self.next_id),
            events: self.events,
        }
    }
}

/// Fibonacci with the default sequential threshold.
pub fn gen_fib_trace(k: u32) -> Result<MutationTrace, WorkloadError> {
    gen_fib_trace_with_threshold(k, FIB_SEQUENTIAL_THRESHOLD)
}

/// Tree-structured Fibonacci computation.
///
/// An actor for argument `j > threshold` spawns children for `j - 1` and
/// `j - 2`, sends each its argument and blocks until both have replied. An
/// actor at or below the threshold computes inline, replies and terminates.
/// A parent drops its reference to each child when the reply arrives, so
/// finished subtrees become garbage. Scheduling is FIFO over pending messages.
pub fn gen_fib_trace_with_threshold(k: u32, threshold: u32) -> Result<MutationTrace, WorkloadError> {
    if k == 0 {
        return Err(WorkloadError::FibArgument(k));
    }
    if threshold == 0 {
        return Err(WorkloadError::FibThreshold(threshold));
    }

    enum Task {
        Compute(ActorId),
        Reply { to: ActorId, from: ActorId },
    }
    struct Call {
        arg: u32,
        parent: Option<ActorId>,
        pending: u8,
    }

    let mut b = TraceBuilder::new();
    let mut calls: Vec<Call> = vec![Call { arg: k, parent: None, pending: 0 }];
    let mut queue = VecDeque::from([Task::Compute(ActorId(0))]);

    while let Some(task) = queue.pop_front() {
        match task {
            Task::Compute(a) => {
                let call = &calls[a.0 as usize];
                let (arg, parent) = (call.arg, call.parent);
                if arg <= threshold {
                    if let Some(p) = parent {
                        b.reply_and_finish(a, p);
                        queue.push_back(Task::Reply { to: p, from: a });
                    }
                    continue;
                }
                let c1 = b.spawn_child(a);
                calls.push(Call { arg: arg - 1, parent: Some(a), pending: 0 });
                let c2 = b.spawn_child(a);
                calls.push(Call { arg: arg - 2, parent: Some(a), pending: 0 });
                calls[a.0 as usize].pending = 2;
                b.push(EventKind::Send { src: a, dst: c1 });
                b.push(EventKind::Send { src: a, dst: c2 });
                if parent.is_some() {
                    b.push(EventKind::Block(a));
                }
                queue.push_back(Task::Compute(c1));
                queue.push_back(Task::Compute(c2));
            }
            Task::Reply { to, from } => {
                b.push(EventKind::DropRef { src: to, dst: from });
                let call = &mut calls[to.0 as usize];
                call.pending -= 1;
                let parent = call.parent;
                match (call.pending, parent) {
                    (0, Some(p)) => {
                        b.reply_and_finish(to, p);
                        queue.push_back(Task::Reply { to: p, from: to });
                    }
                    (0, None) => {}
                    (_, Some(_)) => b.push(EventKind::Block(to)),
                    (_, None) => {}
                }
            }
        }
    }
    Ok(b.finish(Workload::Fib { k, threshold }.label()))
}

/// Star-shaped fan-out: a root coordinator and `workers` children that each
/// reply once and terminate.
fn fan_out(b: &mut TraceBuilder, workers: u32) {
    let root = ActorId(0);
    let children: Vec<ActorId> = (0..workers).map(|_| b.spawn_child(root)).collect();
    for &c in &children {
        b.push(EventKind::Send { src: root, dst: c });
    }
    for &c in &children {
        b.reply_and_finish(c, root);
    }
    for &c in &children {
        b.push(EventKind::DropRef { src: root, dst: c });
    }
}

/// N-queens: one coordinator and `(n-1)(n-2)` workers that report solutions
/// back and terminate.
pub fn gen_nqueens_trace(n: u32) -> Result<MutationTrace, WorkloadError> {
    if n < 3 {
        return Err(WorkloadError::QueensBoard(n));
    }
    let mut b = TraceBuilder::new();
    fan_out(&mut b, (n - 1) * (n - 2));
    Ok(b.finish(Workload::NQueens { n }.label()))
}

/// Matrix multiplication. The local variant is an initiator with two matrix
/// loaders; the distributed variant is an initiator/merger with four
/// sub-matrix workers. The dimension does not change the graph shape.
pub fn gen_matmul_trace(dim: u32, distributed: bool) -> Result<MutationTrace, WorkloadError> {
    if dim == 0 {
        return Err(WorkloadError::MatrixDimension(dim));
    }
    let mut b = TraceBuilder::new();
    fan_out(&mut b, if distributed { 4 } else { 2 });
    Ok(b.finish(Workload::MatMul { dim, distributed }.label()))
}
