//! Line-oriented text format for stacks.
//!
//! ```text
//! # anything after '#' is ignored
//! point n=5 3
//! partition n=5 | 1 2 | 3 4 5
//! digraph n=4 extra=5 6
//! v 1 w:white
//! v 5 b:black
//! a 1 5 b:black
//! ```
//!
//! A `digraph` header is followed by `v <vertex> <label>` and
//! `a <from> <to> <label>` lines. Without `extra=` the vertex set must be
//! exactly `1..=n`. Several objects in one file form a stack; mixed kinds are
//! lifted to the finest kind present.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::objects::{ExtendedGraph, LabelledDigraph, OrderedPartition, Stack, StackEntry, StackKind};

pub(crate) fn write_body(f: &mut impl fmt::Write, d: &LabelledDigraph) -> fmt::Result {
    for (v, label) in d.vertex_labels() {
        writeln!(f, "v {v} {label}")?;
    }
    for ((a, b), label) in d.arcs() {
        writeln!(f, "a {a} {b} {label}")?;
    }
    Ok(())
}

/// Renders one stack entry; the output parses back to an equal entry.
pub fn format_entry(degree: usize, entry: &StackEntry) -> String {
    let mut out = String::new();
    match entry {
        StackEntry::Point(p) => out.push_str(&format!("point n={degree} {p}\n")),
        StackEntry::Partition(p) => out.push_str(&format!("{p}\n")),
        StackEntry::Digraph(d) => {
            out.push_str(&format!("digraph n={degree}\n"));
            write_body(&mut out, d).expect("writing to a String cannot fail");
        }
        StackEntry::Extended(e) => out.push_str(&e.to_string()),
    }
    out
}

pub fn format_stack(stack: &Stack) -> String {
    stack
        .entries()
        .iter()
        .map(|e| format_entry(stack.degree(), e))
        .collect()
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn number(line: usize, word: &str) -> Result<usize> {
    word.parse()
        .map_err(|_| err(line, format!("expected a number, found {word:?}")))
}

fn degree_field(line: usize, word: Option<&str>) -> Result<usize> {
    match word.and_then(|w| w.strip_prefix("n=")) {
        Some(n) => number(line, n),
        None => Err(err(line, "expected n=<degree>")),
    }
}

struct PendingDigraph {
    line: usize,
    degree: usize,
    extra: Option<BTreeSet<usize>>,
    graph: LabelledDigraph,
}

impl PendingDigraph {
    fn finish(self) -> Result<StackEntry> {
        let expected: BTreeSet<usize> = (1..=self.degree)
            .chain(self.extra.iter().flatten().copied())
            .collect();
        let actual: BTreeSet<usize> = self.graph.vertices().collect();
        if let Some(v) = expected.difference(&actual).next() {
            return Err(err(self.line, format!("vertex {v} has no label")));
        }
        if let Some(v) = actual.difference(&expected).next() {
            return Err(err(self.line, format!("vertex {v} is not declared")));
        }
        let wrap = |e: Error| err(self.line, e.to_string());
        match self.extra {
            None => Ok(StackEntry::Digraph(self.graph)),
            Some(_) => Ok(StackEntry::Extended(
                ExtendedGraph::new(self.degree, self.graph).map_err(wrap)?,
            )),
        }
    }
}

/// Parses the objects of a stack file in order, with their common degree.
pub fn parse_entries(text: &str) -> Result<(usize, Vec<StackEntry>)> {
    let mut entries = Vec::new();
    let mut degree: Option<usize> = None;
    let mut pending: Option<PendingDigraph> = None;
    let mut set_degree = |line: usize, n: usize| -> Result<()> {
        match degree {
            Some(d) if d != n => Err(err(line, format!("degree {n} differs from earlier degree {d}"))),
            _ => {
                degree = Some(n);
                Ok(())
            }
        }
    };
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut words = content.split_whitespace();
        let head = words.next().unwrap_or_default();
        match head {
            "v" | "a" => {
                let Some(d) = pending.as_mut() else {
                    return Err(err(line, "vertex or arc line outside a digraph"));
                };
                let wrap = |e: Error| err(line, e.to_string());
                if head == "v" {
                    let v = number(line, words.next().unwrap_or_default())?;
                    let label = words.collect::<Vec<_>>().join(" ");
                    if label.is_empty() {
                        return Err(err(line, "missing vertex label"));
                    }
                    if d.graph.has_vertex(v) {
                        return Err(err(line, format!("vertex {v} labelled twice")));
                    }
                    d.graph.add_vertex(v, &label).map_err(wrap)?;
                } else {
                    let a = number(line, words.next().unwrap_or_default())?;
                    let b = number(line, words.next().unwrap_or_default())?;
                    let label = words.collect::<Vec<_>>().join(" ");
                    if label.is_empty() {
                        return Err(err(line, "missing arc label"));
                    }
                    if d.graph.arc_label(a, b).is_some() {
                        return Err(err(line, format!("arc ({a}, {b}) labelled twice")));
                    }
                    d.graph.add_arc(a, b, &label).map_err(wrap)?;
                }
            }
            "point" | "partition" | "digraph" => {
                if let Some(d) = pending.take() {
                    entries.push(d.finish()?);
                }
                let n = degree_field(line, words.next())?;
                if n == 0 {
                    return Err(err(line, "degree must be positive"));
                }
                set_degree(line, n)?;
                match head {
                    "point" => {
                        let p = number(line, words.next().unwrap_or_default())?;
                        if p == 0 || p > n {
                            return Err(err(line, format!("point {p} is outside 1..={n}")));
                        }
                        entries.push(StackEntry::Point(p));
                    }
                    "partition" => {
                        let rest = content.split_once('|').map_or("", |x| x.1);
                        let cells = rest
                            .split('|')
                            .map(|cell| {
                                cell.split_whitespace()
                                    .map(|w| number(line, w))
                                    .collect::<Result<BTreeSet<usize>>>()
                            })
                            .collect::<Result<Vec<_>>>()?;
                        let p = OrderedPartition::new(n, cells).map_err(|e| err(line, e.to_string()))?;
                        entries.push(StackEntry::Partition(p));
                    }
                    _ => {
                        let extra = match words.next() {
                            None => None,
                            Some(w) => {
                                let Some(first) = w.strip_prefix("extra=") else {
                                    return Err(err(line, format!("unexpected {w:?}")));
                                };
                                let mut set = BTreeSet::new();
                                for word in std::iter::once(first).chain(words.by_ref()).filter(|w| !w.is_empty()) {
                                    let v = number(line, word)?;
                                    if v <= n {
                                        return Err(err(line, format!("extra vertex {v} lies in 1..={n}")));
                                    }
                                    set.insert(v);
                                }
                                Some(set)
                            }
                        };
                        pending = Some(PendingDigraph {
                            line,
                            degree: n,
                            extra,
                            graph: LabelledDigraph::uniform(std::iter::empty(), ""),
                        });
                    }
                }
            }
            other => return Err(err(line, format!("unknown directive {other:?}"))),
        }
    }
    if let Some(d) = pending.take() {
        entries.push(d.finish()?);
    }
    let degree = degree.ok_or_else(|| err(0, "no objects found"))?;
    Ok((degree, entries))
}

/// Parses a stack file, lifting all entries to the finest kind present.
pub fn parse_stack(text: &str) -> Result<Stack> {
    let (degree, entries) = parse_entries(text)?;
    let kind = entries
        .iter()
        .map(StackEntry::kind)
        .max()
        .unwrap_or(StackKind::Point);
    let mut stack = Stack::empty(degree, kind);
    for e in entries {
        let single = Stack::from_entries(degree, e.kind(), vec![e])?.lift(kind)?;
        stack = stack.concat(&single)?;
    }
    Ok(stack)
}
