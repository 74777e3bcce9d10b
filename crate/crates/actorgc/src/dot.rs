//! Graphviz DOT export. Roots are triangles and everything else a circle;
//! unblocked actors are bold and blocked ones dashed.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use actorgc_core::{ActorGraph, NodeImage, NodeMap, PassiveGraph, PassiveNodeId};

pub fn actor_graph_to_dot(g: &ActorGraph) -> String {
    let mut out = String::from("digraph actors {\n");
    for &a in &g.actors {
        let shape = if g.is_root(a) { "triangle" } else { "circle" };
        let style = if g.unblocked.contains(&a) || g.is_root(a) { "bold" } else { "dashed" };
        let _ = writeln!(out, "  \"{a}\" [shape={shape}, style={style}];");
    }
    for (s, d) in &g.references {
        let _ = writeln!(out, "  \"{s}\" -> \"{d}\";");
    }
    out.push_str("}\n");
    out
}

/// Passive nodes are labelled with the actor they stand for when a map is
/// given: `a` for a single node, `alpha(a)` and `mu(a)` for a pair.
pub fn passive_graph_to_dot(p: &PassiveGraph, map: Option<&NodeMap>) -> String {
    let mut labels: BTreeMap<PassiveNodeId, String> = BTreeMap::new();
    for (a, image) in map.into_iter().flat_map(|m| m.iter()) {
        match *image {
            NodeImage::Single(n) => {
                labels.insert(n, a.to_string());
            }
            NodeImage::Pair { alpha, mu } => {
                labels.insert(alpha, format!("alpha({a})"));
                labels.insert(mu, format!("mu({a})"));
            }
        }
    }
    let label = |n: PassiveNodeId| labels.get(&n).cloned().unwrap_or_else(|| n.to_string());
    let mut out = String::from("digraph passive {\n");
    for &n in &p.nodes {
        let shape = if p.roots.contains(&n) { "triangle" } else { "circle" };
        let _ = writeln!(out, "  \"{n}\" [shape={shape}, label=\"{}\"];", label(n));
    }
    for (s, d) in &p.edges {
        let _ = writeln!(out, "  \"{s}\" -> \"{d}\";");
    }
    out.push_str("}\n");
    out
}
