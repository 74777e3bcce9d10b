//! Actor garbage collection through actor-to-passive graph transformations.
//!
//! An actor reference graph is rewritten into a passive reference graph whose
//! plain root reachability identifies the live actors. The crate provides:
//!
//! - [`graph`]: actor graphs, validation and seeded random generation.
//! - [`passive`]: passive graphs and the actor-to-node mapping.
//! - [`oracle`]: two independent ground-truth liveness algorithms.
//! - [`transform`]: the dual-node (object/mail queue) transformation and the
//!   two vertex-preserving back-pointer transformations, plus a divergence
//!   report comparing them with the oracle.
//! - [`mark`] and [`collect`]: passive marking with operation counting, and
//!   the transform-then-mark collection pipeline.
//! - [`workload`]: benchmark-shaped mutation traces and a safety-checked replayer.
//! - [`distributed`]: partitioned graphs, local/global collection and the
//!   NO-GC/GDP/LGC/CDGC mode runner.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod csr;

pub mod collect;
pub mod distributed;
pub mod graph;
pub mod ids;
pub mod mark;
pub mod oracle;
pub mod passive;
pub mod ratio;
pub mod transform;
pub mod workload;

pub use collect::{collect, Collection};
pub use graph::{random_graph, ActorGraph, RandomGraphError, RandomGraphParams, Status, Violation};
pub use ids::{ActorId, PassiveNodeId};
pub use mark::{mark_one_scan, mark_two_scan, EpochMarker, Frontier, MarkResult, Strategy};
pub use oracle::{live_fixpoint, live_reachset, potentially_active, LivenessResult};
pub use passive::{NodeImage, NodeMap, PassiveGraph};
pub use ratio::Ratio;
pub use transform::{
    divergence_report, transform, transform_direct_backpointers, transform_indirect_backpointers,
    transform_vardhan_agha, DivergenceReport, Method, TransformStats, Transformed,
};
