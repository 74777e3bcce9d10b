//! Line-oriented text formats for actor graphs, passive graphs and traces.
//!
//! Graph files:
//!
//! ```text
//! actors 2
//! 1 unblocked root
//! 2 blocked
//! edges
//! 1 2
//! ```
//!
//! `#` starts a comment that runs to the end of the line and blank lines are
//! ignored. A blocked root is read as unblocked and reported as a warning.
//! Duplicate edges collapse.
//!
//! Trace files put a `trace <label>` line and a `total <count>` line before
//! the initial graph, then an `events` line followed by one
//! `<step> <kind> <args...>` line per event.

use std::fmt::Write as _;

use actorgc_core::workload::{EventKind, MutationEvent, MutationTrace};
use actorgc_core::{ActorGraph, ActorId, NodeImage, NodeMap, PassiveGraph, Status};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected `{expected}`, found `{found}`")]
    Expected { expected: &'static str, found: String },
    #[error("`{0}` is not a valid id")]
    BadId(String),
    #[error("`{0}` is not a valid count")]
    BadCount(String),
    #[error("unknown actor state `{0}`")]
    BadState(String),
    #[error("actor {0} declared twice")]
    DuplicateActor(ActorId),
    #[error("actor {0} undeclared")]
    Undeclared(ActorId),
    #[error("{declared} actors declared but {found} listed")]
    CountMismatch { declared: usize, found: usize },
    #[error("unknown event kind `{0}`")]
    BadEvent(String),
    #[error("event `{kind}` takes {expected} actors, found {found}")]
    EventArity { kind: String, expected: usize, found: usize },
    #[error("unexpected end of input, expected `{0}`")]
    Eof(&'static str),
}

/// A parsed graph with the warnings produced while normalizing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parsed<T> {
    pub value: T,
    pub warnings: Vec<String>,
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

/// Non-blank lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_id(line: usize, s: &str) -> Result<ActorId, ParseError> {
    s.parse().map(ActorId).map_err(|_| err(line, ParseErrorKind::BadId(s.to_string())))
}

fn parse_count(line: usize, s: &str) -> Result<usize, ParseError> {
    s.parse().map_err(|_| err(line, ParseErrorKind::BadCount(s.to_string())))
}

fn expected(line: usize, expected: &'static str, found: &str) -> ParseError {
    err(line, ParseErrorKind::Expected { expected, found: found.to_string() })
}

/// Reads the graph body from `lines`, stopping before a line equal to `stop`.
fn parse_graph_lines<'a>(
    lines: &mut std::iter::Peekable<impl Iterator<Item = (usize, &'a str)>>,
    stop: Option<&str>,
    warnings: &mut Vec<String>,
) -> Result<ActorGraph, ParseError> {
    let mut g = ActorGraph::new();
    let mut declared = 0;
    let mut listed = 0;
    let mut header_line = 0;

    if let Some(&(n, line)) = lines.peek() {
        let words: Vec<&str> = line.split_whitespace().collect();
        if words.first() == Some(&"actors") {
            lines.next();
            if words.len() != 2 {
                return Err(expected(n, "actors <count>", line));
            }
            declared = parse_count(n, words[1])?;
            header_line = n;
        }
    }

    let mut in_edges = false;
    while let Some(&(n, line)) = lines.peek() {
        if stop == Some(line) {
            break;
        }
        lines.next();
        if !in_edges {
            if line == "edges" {
                if listed != declared {
                    return Err(err(header_line.max(1), ParseErrorKind::CountMismatch { declared, found: listed }));
                }
                in_edges = true;
                continue;
            }
            let words: Vec<&str> = line.split_whitespace().collect();
            let id = parse_id(n, words[0])?;
            let status = match words.get(1) {
                Some(&"blocked") => Status::Blocked,
                Some(&"unblocked") => Status::Unblocked,
                Some(other) => return Err(err(n, ParseErrorKind::BadState(other.to_string()))),
                None => return Err(expected(n, "<id> blocked|unblocked [root]", line)),
            };
            let root = match words.get(2..) {
                Some([]) => false,
                Some(["root"]) => true,
                _ => return Err(expected(n, "<id> blocked|unblocked [root]", line)),
            };
            if g.actors.contains(&id) {
                return Err(err(n, ParseErrorKind::DuplicateActor(id)));
            }
            listed += 1;
            if root {
                if status == Status::Blocked {
                    warnings.push(format!("line {n}: blocked root {id} treated as unblocked"));
                }
                g.add_root(id);
            } else {
                g.add_actor(id, status);
            }
        } else {
            let words: Vec<&str> = line.split_whitespace().collect();
            let [s, d] = words[..] else {
                return Err(expected(n, "<src> <dst>", line));
            };
            let (s, d) = (parse_id(n, s)?, parse_id(n, d)?);
            for x in [s, d] {
                if !g.actors.contains(&x) {
                    return Err(err(n, ParseErrorKind::Undeclared(x)));
                }
            }
            g.add_reference(s, d);
        }
    }
    if !in_edges {
        if listed != declared {
            return Err(err(header_line.max(1), ParseErrorKind::CountMismatch { declared, found: listed }));
        }
        if declared > 0 || header_line > 0 {
            return Err(err(0, ParseErrorKind::Eof("edges")));
        }
        return Err(err(0, ParseErrorKind::Eof("actors")));
    }
    Ok(g)
}

pub fn parse_graph(text: &str) -> Result<Parsed<ActorGraph>, ParseError> {
    let mut warnings = Vec::new();
    let mut lines = content_lines(text).peekable();
    let g = parse_graph_lines(&mut lines, None, &mut warnings)?;
    Ok(Parsed { value: g, warnings })
}

fn write_graph(out: &mut String, g: &ActorGraph) {
    let _ = writeln!(out, "actors {}", g.actors.len());
    for &a in &g.actors {
        let state = if g.unblocked.contains(&a) || g.roots.contains(&a) { "unblocked" } else { "blocked" };
        let root = if g.roots.contains(&a) { " root" } else { "" };
        let _ = writeln!(out, "{a} {state}{root}");
    }
    out.push_str("edges\n");
    for (s, d) in &g.references {
        let _ = writeln!(out, "{s} {d}");
    }
}

pub fn serialize_graph(g: &ActorGraph) -> String {
    let mut out = String::new();
    write_graph(&mut out, g);
    out
}

/// Writes a passive graph in the actor graph format: every node is a blocked
/// actor and every root an unblocked root, so liveness of the parsed graph is
/// plain reachability. The node map, when given, follows as comments.
pub fn serialize_passive(p: &PassiveGraph, map: Option<&NodeMap>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "actors {}", p.nodes.len());
    for n in &p.nodes {
        if p.roots.contains(n) {
            let _ = writeln!(out, "{n} unblocked root");
        } else {
            let _ = writeln!(out, "{n} blocked");
        }
    }
    out.push_str("edges\n");
    for (s, d) in &p.edges {
        let _ = writeln!(out, "{s} {d}");
    }
    if let Some(map) = map {
        out.push_str("# node map: actor -> node\n");
        for (a, image) in map.iter() {
            match *image {
                NodeImage::Single(n) => {
                    let _ = writeln!(out, "# {a} -> {n}");
                }
                NodeImage::Pair { alpha, mu } => {
                    let _ = writeln!(out, "# {a} -> alpha {alpha} mu {mu}");
                }
            }
        }
    }
    out
}

fn event_args(kind: &EventKind) -> Vec<ActorId> {
    kind.actors().collect()
}

fn event_from(line: usize, name: &str, ids: &[ActorId]) -> Result<EventKind, ParseError> {
    let arity = |expected: usize| {
        if ids.len() == expected {
            Ok(())
        } else {
            Err(err(line, ParseErrorKind::EventArity { kind: name.to_string(), expected, found: ids.len() }))
        }
    };
    let kind = match name {
        "spawn" => {
            arity(2)?;
            EventKind::Spawn { parent: ids[0], child: ids[1] }
        }
        "add_ref" => {
            arity(2)?;
            EventKind::AddRef { src: ids[0], dst: ids[1] }
        }
        "drop_ref" => {
            arity(2)?;
            EventKind::DropRef { src: ids[0], dst: ids[1] }
        }
        "send" => {
            arity(2)?;
            EventKind::Send { src: ids[0], dst: ids[1] }
        }
        "block" => {
            arity(1)?;
            EventKind::Block(ids[0])
        }
        "unblock" => {
            arity(1)?;
            EventKind::Unblock(ids[0])
        }
        "terminate" => {
            arity(1)?;
            EventKind::Terminate(ids[0])
        }
        other => return Err(err(line, ParseErrorKind::BadEvent(other.to_string()))),
    };
    Ok(kind)
}

pub fn serialize_trace(t: &MutationTrace) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "trace {}", t.label);
    let _ = writeln!(out, "total {}", t.expected_actor_total);
    write_graph(&mut out, &t.initial);
    out.push_str("events\n");
    for ev in &t.events {
        let _ = write!(out, "{} {}", ev.step, ev.kind.name());
        for a in event_args(&ev.kind) {
            let _ = write!(out, " {a}");
        }
        out.push('\n');
    }
    out
}

pub fn parse_trace(text: &str) -> Result<Parsed<MutationTrace>, ParseError> {
    let mut lines = content_lines(text).peekable();
    let mut warnings = Vec::new();

    let (n, line) = lines.next().ok_or(err(0, ParseErrorKind::Eof("trace <label>")))?;
    let label = line
        .strip_prefix("trace ")
        .map(|l| l.trim().to_string())
        .ok_or_else(|| expected(n, "trace <label>", line))?;
    let (n, line) = lines.next().ok_or(err(0, ParseErrorKind::Eof("total <count>")))?;
    let total = match line.split_whitespace().collect::<Vec<_>>()[..] {
        ["total", c] => parse_count(n, c)? as u64,
        _ => return Err(expected(n, "total <count>", line)),
    };
    let initial = parse_graph_lines(&mut lines, Some("events"), &mut warnings)?;
    if lines.next().is_none() {
        return Err(err(0, ParseErrorKind::Eof("events")));
    }
    let mut events = Vec::new();
    for (n, line) in lines {
        let words: Vec<&str> = line.split_whitespace().collect();
        if words.len() < 2 {
            return Err(expected(n, "<step> <kind> <args...>", line));
        }
        let step = parse_count(n, words[0])? as u64;
        let ids = words[2..].iter().map(|w| parse_id(n, w)).collect::<Result<Vec<_>, _>>()?;
        events.push(MutationEvent { step, kind: event_from(n, words[1], &ids)? });
    }
    Ok(Parsed { value: MutationTrace { label, initial, events, expected_actor_total: total }, warnings })
}
