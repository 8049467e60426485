use std::collections::{BTreeMap, BTreeSet};

use crate::action::Action;
use crate::error::{Error, Result};
use crate::perm::Permutation;

pub type Label = String;

/// A simple graph on `{1, ..., n}`; edges are stored as `(min, max)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            for p in [a, b] {
                if p == 0 || p > n {
                    return Err(Error::PointOutOfRange { point: p, degree: n });
                }
            }
            if a == b {
                return Err(Error::InvalidObject(format!("edge {{{a}, {a}}} is not a 2-subset")));
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(Graph { n, edges: set })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }
}

impl Action for Graph {
    fn act(&self, g: &Permutation) -> Result<Self> {
        Graph::new(
            self.n,
            self.edges
                .iter()
                .map(|&(a, b)| Ok((g.try_image(a)?, g.try_image(b)?)))
                .collect::<Result<Vec<_>>>()?,
        )
    }
}

/// A digraph on `{1, ..., n}`; loops are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Digraph {
    n: usize,
    arcs: BTreeSet<(usize, usize)>,
}

impl Digraph {
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let arcs: BTreeSet<_> = arcs.into_iter().collect();
        for &(a, b) in &arcs {
            for p in [a, b] {
                if p == 0 || p > n {
                    return Err(Error::PointOutOfRange { point: p, degree: n });
                }
            }
        }
        Ok(Digraph { n, arcs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &BTreeSet<(usize, usize)> {
        &self.arcs
    }
}

impl Action for Digraph {
    fn act(&self, g: &Permutation) -> Result<Self> {
        Ok(Digraph {
            n: self.n,
            arcs: self.arcs.act(g)?,
        })
    }
}

/// A digraph with exactly one label on every vertex and every arc.
///
/// Vertices are arbitrary positive integers; digraphs "on Ω" use `{1, ..., n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelledDigraph {
    vertex_labels: BTreeMap<usize, Label>,
    arcs: BTreeMap<(usize, usize), Label>,
}

impl LabelledDigraph {
    /// Every vertex of `vertices` labelled `label`, no arcs.
    pub fn uniform(vertices: impl IntoIterator<Item = usize>, label: &str) -> Self {
        LabelledDigraph {
            vertex_labels: vertices.into_iter().map(|v| (v, label.to_string())).collect(),
            arcs: BTreeMap::new(),
        }
    }

    /// Checks the four parts of a labelled digraph for consistency: both label
    /// maps must be total and every arc endpoint must be a vertex.
    pub fn from_parts(
        vertices: BTreeSet<usize>,
        vertex_labels: BTreeMap<usize, Label>,
        arcs: BTreeSet<(usize, usize)>,
        arc_labels: BTreeMap<(usize, usize), Label>,
    ) -> Result<Self> {
        if vertices.contains(&0) {
            return Err(Error::InvalidObject("vertex 0 is not allowed".into()));
        }
        for v in &vertices {
            if !vertex_labels.contains_key(v) {
                return Err(Error::InvalidObject(format!("vertex {v} has no label")));
            }
        }
        if let Some(v) = vertex_labels.keys().find(|v| !vertices.contains(v)) {
            return Err(Error::InvalidObject(format!("label given for non-vertex {v}")));
        }
        for &(a, b) in &arcs {
            if !vertices.contains(&a) || !vertices.contains(&b) {
                return Err(Error::InvalidObject(format!("arc ({a}, {b}) leaves the vertex set")));
            }
            if !arc_labels.contains_key(&(a, b)) {
                return Err(Error::InvalidObject(format!("arc ({a}, {b}) has no label")));
            }
        }
        if let Some((a, b)) = arc_labels.keys().find(|arc| !arcs.contains(arc)) {
            return Err(Error::InvalidObject(format!("label given for non-arc ({a}, {b})")));
        }
        Ok(LabelledDigraph {
            vertex_labels,
            arcs: arc_labels,
        })
    }

    pub fn add_vertex(&mut self, v: usize, label: &str) -> Result<()> {
        if v == 0 {
            return Err(Error::InvalidObject("vertex 0 is not allowed".into()));
        }
        self.vertex_labels.insert(v, label.to_string());
        Ok(())
    }

    pub fn add_arc(&mut self, from: usize, to: usize, label: &str) -> Result<()> {
        for v in [from, to] {
            if !self.vertex_labels.contains_key(&v) {
                return Err(Error::InvalidObject(format!(
                    "arc ({from}, {to}) leaves the vertex set"
                )));
            }
        }
        self.arcs.insert((from, to), label.to_string());
        Ok(())
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.vertex_labels.keys().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn has_vertex(&self, v: usize) -> bool {
        self.vertex_labels.contains_key(&v)
    }

    pub fn vertex_label(&self, v: usize) -> Option<&str> {
        self.vertex_labels.get(&v).map(String::as_str)
    }

    pub fn vertex_labels(&self) -> &BTreeMap<usize, Label> {
        &self.vertex_labels
    }

    pub fn arcs(&self) -> &BTreeMap<(usize, usize), Label> {
        &self.arcs
    }

    pub fn arc_label(&self, from: usize, to: usize) -> Option<&str> {
        self.arcs.get(&(from, to)).map(String::as_str)
    }

    /// Relabels every vertex through `f`, keeping labels. `f` must be injective
    /// on the vertex set.
    pub fn map_vertices(&self, mut f: impl FnMut(usize) -> usize) -> LabelledDigraph {
        LabelledDigraph {
            vertex_labels: self
                .vertex_labels
                .iter()
                .map(|(&v, l)| (f(v), l.clone()))
                .collect(),
            arcs: self
                .arcs
                .iter()
                .map(|(&(a, b), l)| ((f(a), f(b)), l.clone()))
                .collect(),
        }
    }
}

impl Action for LabelledDigraph {
    fn act(&self, g: &Permutation) -> Result<Self> {
        if let Some(v) = self.vertices().find(|&v| v > g.degree()) {
            return Err(Error::PointOutOfRange {
                point: v,
                degree: g.degree(),
            });
        }
        Ok(self.map_vertices(|v| g.image(v)))
    }
}
