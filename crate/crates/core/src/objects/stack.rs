use std::collections::BTreeSet;

use crate::action::Action;
use crate::error::{Error, Result};
use crate::objects::{ExtendedGraph, LabelledDigraph, OrderedPartition};
use crate::perm::Permutation;

/// The object kinds a search can be organised around, from coarsest to finest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StackKind {
    Point,
    Partition,
    Digraph,
    Extended,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StackEntry {
    Point(usize),
    Partition(OrderedPartition),
    Digraph(LabelledDigraph),
    Extended(ExtendedGraph),
}

impl StackEntry {
    pub fn kind(&self) -> StackKind {
        match self {
            StackEntry::Point(_) => StackKind::Point,
            StackEntry::Partition(_) => StackKind::Partition,
            StackEntry::Digraph(_) => StackKind::Digraph,
            StackEntry::Extended(_) => StackKind::Extended,
        }
    }

    fn check(&self, degree: usize) -> Result<()> {
        match self {
            StackEntry::Point(p) => {
                if *p == 0 || *p > degree {
                    return Err(Error::PointOutOfRange { point: *p, degree });
                }
            }
            StackEntry::Partition(p) => {
                if p.degree() != degree {
                    return Err(Error::DegreeMismatch(p.degree(), degree));
                }
            }
            StackEntry::Digraph(d) => {
                if d.vertices().ne(1..=degree) {
                    return Err(Error::InvalidObject(format!(
                        "stack digraph must have vertex set 1..={degree}"
                    )));
                }
            }
            StackEntry::Extended(e) => {
                if e.omega() != degree {
                    return Err(Error::DegreeMismatch(e.omega(), degree));
                }
            }
        }
        Ok(())
    }

    /// The image of this entry under the injective invariant map into `kind`.
    fn lift(&self, degree: usize, kind: StackKind) -> Result<StackEntry> {
        if self.kind() == kind {
            return Ok(self.clone());
        }
        if self.kind() > kind {
            return Err(Error::KindMismatch(self.kind(), kind));
        }
        let next = match self {
            StackEntry::Point(p) => {
                let rest: BTreeSet<usize> = (1..=degree).filter(|q| q != p).collect();
                let cells = if rest.is_empty() {
                    vec![[*p].into()]
                } else {
                    vec![[*p].into(), rest]
                };
                StackEntry::Partition(OrderedPartition::new(degree, cells)?)
            }
            StackEntry::Partition(p) => {
                let mut d = LabelledDigraph::uniform(1..=degree, "");
                for (i, cell) in p.cells().iter().enumerate() {
                    for &v in cell {
                        d.add_vertex(v, &format!("cell:{i}"))?;
                    }
                }
                StackEntry::Digraph(d)
            }
            StackEntry::Digraph(d) => {
                StackEntry::Extended(ExtendedGraph::from_digraph(degree, d.clone())?)
            }
            StackEntry::Extended(_) => unreachable!("extended is the finest kind"),
        };
        next.lift(degree, kind)
    }
}

impl Action for StackEntry {
    fn act(&self, g: &Permutation) -> Result<Self> {
        Ok(match self {
            StackEntry::Point(p) => StackEntry::Point(p.act(g)?),
            StackEntry::Partition(p) => StackEntry::Partition(p.act(g)?),
            StackEntry::Digraph(d) => StackEntry::Digraph(d.act(g)?),
            StackEntry::Extended(e) => StackEntry::Extended(e.act(g)?),
        })
    }
}

/// A finite list of objects of one kind over `Ω = {1, ..., degree}`.
///
/// Equality is entrywise; extended-graph entries compare as orbits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stack {
    degree: usize,
    kind: StackKind,
    entries: Vec<StackEntry>,
}

impl Stack {
    pub fn empty(degree: usize, kind: StackKind) -> Self {
        Stack {
            degree,
            kind,
            entries: Vec::new(),
        }
    }

    pub fn from_entries(degree: usize, kind: StackKind, entries: Vec<StackEntry>) -> Result<Self> {
        let mut stack = Stack::empty(degree, kind);
        for e in entries {
            stack.push(e)?;
        }
        Ok(stack)
    }

    pub fn partitions(degree: usize, entries: Vec<OrderedPartition>) -> Result<Self> {
        Self::from_entries(degree, StackKind::Partition, entries.into_iter().map(StackEntry::Partition).collect())
    }

    pub fn digraphs(degree: usize, entries: Vec<LabelledDigraph>) -> Result<Self> {
        Self::from_entries(degree, StackKind::Digraph, entries.into_iter().map(StackEntry::Digraph).collect())
    }

    pub fn extended(degree: usize, entries: Vec<ExtendedGraph>) -> Result<Self> {
        Self::from_entries(degree, StackKind::Extended, entries.into_iter().map(StackEntry::Extended).collect())
    }

    pub fn push(&mut self, entry: StackEntry) -> Result<()> {
        if entry.kind() != self.kind {
            return Err(Error::KindMismatch(self.kind, entry.kind()));
        }
        entry.check(self.degree)?;
        self.entries.push(entry);
        Ok(())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn kind(&self) -> StackKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[StackEntry] {
        &self.entries
    }

    /// `self ‖ other`. An empty stack concatenates with a stack of any kind.
    pub fn concat(&self, other: &Stack) -> Result<Stack> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        if self.is_empty() {
            return Ok(other.clone());
        }
        if other.is_empty() {
            return Ok(self.clone());
        }
        if self.kind != other.kind {
            return Err(Error::KindMismatch(self.kind, other.kind));
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(Stack {
            degree: self.degree,
            kind: self.kind,
            entries,
        })
    }

    /// Concatenation after lifting both stacks to the finer of their kinds.
    pub fn concat_lifted(&self, other: &Stack) -> Result<Stack> {
        let kind = match (self.is_empty(), other.is_empty()) {
            (true, _) => other.kind,
            (_, true) => self.kind,
            _ => self.kind.max(other.kind),
        };
        self.lift(kind)?.concat(&other.lift(kind)?)
    }

    /// Re-expresses every entry in a finer kind (points become partitions,
    /// partitions become vertex-labelled digraphs, digraphs become extended
    /// graphs without extra vertices). Stabilisers and transporters are unchanged.
    pub fn lift(&self, kind: StackKind) -> Result<Stack> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.lift(self.degree, kind))
            .collect::<Result<Vec<_>>>()?;
        if self.kind > kind && !self.entries.is_empty() {
            return Err(Error::KindMismatch(self.kind, kind));
        }
        Ok(Stack {
            degree: self.degree,
            kind,
            entries,
        })
    }

    /// The labelled-digraph entries, after lifting if needed. Fails for extended stacks.
    pub fn as_digraphs(&self) -> Result<Vec<LabelledDigraph>> {
        self.lift(StackKind::Digraph)?
            .entries
            .into_iter()
            .map(|e| match e {
                StackEntry::Digraph(d) => Ok(d),
                other => Err(Error::KindMismatch(StackKind::Digraph, other.kind())),
            })
            .collect()
    }

    /// The extended-graph entries, after lifting.
    pub fn as_extended(&self) -> Result<Vec<ExtendedGraph>> {
        self.lift(StackKind::Extended)?
            .entries
            .into_iter()
            .map(|e| match e {
                StackEntry::Extended(x) => Ok(x),
                other => Err(Error::KindMismatch(StackKind::Extended, other.kind())),
            })
            .collect()
    }
}

impl Action for Stack {
    fn act(&self, g: &Permutation) -> Result<Self> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch(g.degree(), self.degree));
        }
        Ok(Stack {
            degree: self.degree,
            kind: self.kind,
            entries: self.entries.act(g)?,
        })
    }
}

pub fn stack_concat(s: &Stack, t: &Stack) -> Result<Stack> {
    s.concat(t)
}
