//! Actor graphs partitioned across simulated nodes.
//!
//! Local collection treats every actor referenced from another node as a
//! pseudo-root and every remote target of an outgoing reference as a live
//! stub, so it never collects an actor that whole-graph collection keeps.
//! Global collection reassembles the graph and collects it as a whole.

mod modes;

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::collect::{collect, Collection};
use crate::graph::{ActorGraph, Status};
use crate::ids::ActorId;
use crate::mark::Strategy;
use crate::transform::Method;

pub use modes::{
    run_mode, run_modes, CycleKind, Mode, ModeConfig, ModeCycle, ModeError, ModeReport, ModeRun,
};

pub type NodeId = u32;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize), serde(rename_all = "snake_case"))]
pub enum PartitionPolicy {
    /// Contiguous runs of a depth-first order, so subtrees stay together.
    #[default]
    Locality,
    /// Breadth-first order dealt out to nodes in turn.
    #[cfg_attr(feature = "serde", serde(rename = "bfs", alias = "round_robin_bfs"))]
    RoundRobinBfs,
}

impl PartitionPolicy {
    pub fn name(self) -> &'static str {
        match self {
            PartitionPolicy::Locality => "locality",
            PartitionPolicy::RoundRobinBfs => "bfs",
        }
    }
}

impl fmt::Display for PartitionPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownPolicy;

impl fmt::Display for UnknownPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("expected one of: locality, bfs")
    }
}

impl core::error::Error for UnknownPolicy {}

impl FromStr for PartitionPolicy {
    type Err = UnknownPolicy;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "locality" => Ok(PartitionPolicy::Locality),
            "bfs" | "round_robin_bfs" => Ok(PartitionPolicy::RoundRobinBfs),
            _ => Err(UnknownPolicy),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartitionError {
    NoNodes,
    Unplaced(ActorId),
    NodeOutOfRange { actor: ActorId, node: NodeId },
}

impl fmt::Display for PartitionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartitionError::NoNodes => f.write_str("at least one node is required"),
            PartitionError::Unplaced(a) => write!(f, "actor {a} has no node"),
            PartitionError::NodeOutOfRange { actor, node } => {
                write!(f, "actor {actor} placed on unknown node {node}")
            }
        }
    }
}

impl core::error::Error for PartitionError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FewerActorsThanNodes {
    pub requested: u32,
    pub used: u32,
}

impl fmt::Display for FewerActorsThanNodes {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} nodes requested, only {} used", self.requested, self.used)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PartitionedGraph {
    pub partitions: Vec<(NodeId, ActorGraph)>,
    pub cross_edges: BTreeSet<(ActorId, ActorId)>,
    pub placement: BTreeMap<ActorId, NodeId>,
}

/// Placement of every actor, and the warning when fewer nodes were usable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Placement {
    pub nodes: u32,
    pub of: BTreeMap<ActorId, NodeId>,
    pub warning: Option<FewerActorsThanNodes>,
}

/// Visit order: roots first, then any unvisited actor in ascending order,
/// each start expanding depth- or breadth-first over ascending acquaintances.
fn visit_order(g: &ActorGraph, depth_first: bool) -> Vec<ActorId> {
    let mut seen = BTreeSet::new();
    let mut order = Vec::with_capacity(g.actors.len());
    let starts = g.roots.iter().filter(|r| g.actors.contains(r)).chain(g.actors.iter());
    for &start in starts {
        if seen.contains(&start) {
            continue;
        }
        if depth_first {
            let mut stack = alloc::vec![start];
            while let Some(a) = stack.pop() {
                if !seen.insert(a) {
                    continue;
                }
                order.push(a);
                let next: Vec<ActorId> = g
                    .acquaintances(a)
                    .filter(|b| g.actors.contains(b) && !seen.contains(b))
                    .collect();
                stack.extend(next.into_iter().rev());
            }
        } else {
            seen.insert(start);
            let mut queue = VecDeque::from([start]);
            while let Some(a) = queue.pop_front() {
                order.push(a);
                for b in g.acquaintances(a) {
                    if g.actors.contains(&b) && seen.insert(b) {
                        queue.push_back(b);
                    }
                }
            }
        }
    }
    order
}

/// Assigns every actor of `g` to one of at most `n_nodes` nodes.
pub fn place(g: &ActorGraph, n_nodes: u32, policy: PartitionPolicy) -> Result<Placement, PartitionError> {
    if n_nodes == 0 {
        return Err(PartitionError::NoNodes);
    }
    let n_actors = g.actors.len();
    let used = if n_actors == 0 { 1 } else { n_nodes.min(n_actors as u32) };
    let warning = (used < n_nodes).then_some(FewerActorsThanNodes { requested: n_nodes, used });
    let order = visit_order(g, policy == PartitionPolicy::Locality);
    debug_assert_eq!(order.len(), n_actors);
    let of = order
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            let node = match policy {
                PartitionPolicy::Locality => (i as u64 * u64::from(used) / n_actors as u64) as NodeId,
                PartitionPolicy::RoundRobinBfs => (i as u64 % u64::from(used)) as NodeId,
            };
            (a, node)
        })
        .collect();
    Ok(Placement { nodes: used, of, warning })
}

/// Partition of `g` plus any warning about unused nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partitioning {
    pub graph: PartitionedGraph,
    pub warning: Option<FewerActorsThanNodes>,
}

pub fn partition(g: &ActorGraph, n_nodes: u32, policy: PartitionPolicy) -> Result<Partitioning, PartitionError> {
    let placement = place(g, n_nodes, policy)?;
    let graph = PartitionedGraph::from_placement(g, &placement.of, placement.nodes)?;
    Ok(Partitioning { graph, warning: placement.warning })
}

impl PartitionedGraph {
    /// Splits `g` across nodes `0..n_nodes`. Every actor must be placed.
    /// Placements of actors not in `g` are ignored.
    pub fn from_placement(
        g: &ActorGraph,
        placement: &BTreeMap<ActorId, NodeId>,
        n_nodes: u32,
    ) -> Result<Self, PartitionError> {
        let mut members: Vec<BTreeSet<ActorId>> = (0..n_nodes).map(|_| BTreeSet::new()).collect();
        let mut local_placement = BTreeMap::new();
        for &a in &g.actors {
            let node = *placement.get(&a).ok_or(PartitionError::Unplaced(a))?;
            members
                .get_mut(node as usize)
                .ok_or(PartitionError::NodeOutOfRange { actor: a, node })?
                .insert(a);
            local_placement.insert(a, node);
        }
        let cross_edges = g
            .references
            .iter()
            .filter(|(s, d)| {
                matches!((local_placement.get(s), local_placement.get(d)), (Some(x), Some(y)) if x != y)
            })
            .copied()
            .collect();
        let partitions = members
            .iter()
            .enumerate()
            .map(|(node, keep)| (node as NodeId, g.induced(keep)))
            .collect();
        Ok(PartitionedGraph { partitions, cross_edges, placement: local_placement })
    }

    pub fn node(&self, node: NodeId) -> Option<&ActorGraph> {
        self.partitions.iter().find(|(n, _)| *n == node).map(|(_, g)| g)
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.partitions.iter().map(|(n, _)| *n)
    }

    /// Union of the partitions and the cross edges.
    pub fn reassemble(&self) -> ActorGraph {
        let mut g = ActorGraph::new();
        for (_, part) in &self.partitions {
            g.actors.extend(part.actors.iter().copied());
            g.references.extend(part.references.iter().copied());
            g.roots.extend(part.roots.iter().copied());
            g.unblocked.extend(part.unblocked.iter().copied());
        }
        g.references.extend(self.cross_edges.iter().copied());
        g
    }

    /// The graph a node collects: its own actors, remotely referenced actors
    /// promoted to roots, and one live stub per remote acquaintance.
    /// Returns the graph with the pseudo-root and stub counts.
    pub fn local_view(&self, node: NodeId) -> Option<(ActorGraph, u64, u64)> {
        let part = self.node(node)?;
        let mut view = part.clone();
        let mut pseudo_roots = 0;
        let mut stubs = 0;
        for &(src, dst) in &self.cross_edges {
            let src_here = part.actors.contains(&src);
            let dst_here = part.actors.contains(&dst);
            if dst_here && !src_here && !view.roots.contains(&dst) {
                view.add_root(dst);
                pseudo_roots += 1;
            }
            if src_here && !dst_here {
                if !view.actors.contains(&dst) {
                    view.add_actor(dst, Status::Unblocked);
                    view.roots.insert(dst);
                    stubs += 1;
                }
                view.add_reference(src, dst);
            }
        }
        Some((view, pseudo_roots, stubs))
    }
}

/// Result of collecting one node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalCollection {
    pub node: NodeId,
    pub live: BTreeSet<ActorId>,
    pub garbage: BTreeSet<ActorId>,
    pub pseudo_roots: u64,
    pub stubs: u64,
    pub ops: u64,
}

/// Collects one node conservatively. `None` if the node does not exist.
pub fn local_collect(
    pg: &PartitionedGraph,
    node: NodeId,
    method: Method,
    strategy: Strategy,
) -> Option<LocalCollection> {
    let (view, pseudo_roots, stubs) = pg.local_view(node)?;
    let own = &pg.node(node)?.actors;
    let c = collect(&view, method, strategy);
    Some(LocalCollection {
        node,
        live: c.live.intersection(own).copied().collect(),
        garbage: c.garbage.intersection(own).copied().collect(),
        pseudo_roots,
        stubs,
        ops: c.ops(),
    })
}

/// Collects the reassembled graph.
pub fn global_collect(pg: &PartitionedGraph, method: Method, strategy: Strategy) -> Collection {
    collect(&pg.reassemble(), method, strategy)
}
