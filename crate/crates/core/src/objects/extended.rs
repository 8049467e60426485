use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::action::Action;
use crate::error::{Error, Result};
use crate::objects::LabelledDigraph;
use crate::perm::Permutation;
use crate::search::engine::{Problem, SearchStats};

/// An orbit of `Sym(V \ Ω)` on labelled digraphs on `V ⊇ Ω`, stored by one
/// representative.
///
/// Equality is orbit equality: two extended graphs are equal when their
/// representatives differ by a label-preserving renaming of the extra
/// vertices. The representative itself is only one member of the orbit.
#[derive(Debug, Clone)]
pub struct ExtendedGraph {
    omega: usize,
    representative: LabelledDigraph,
}

impl ExtendedGraph {
    pub fn new(omega: usize, representative: LabelledDigraph) -> Result<Self> {
        ExtendedGraph {
            omega,
            representative,
        }
        .validate()
    }

    /// A labelled digraph on `Ω` seen as an extended graph without extra vertices.
    pub fn from_digraph(omega: usize, digraph: LabelledDigraph) -> Result<Self> {
        Self::new(omega, digraph)
    }

    pub fn validate(self) -> Result<Self> {
        let n = self.omega;
        if n == 0 {
            return Err(Error::InvalidObject("domain must be nonempty".into()));
        }
        for p in 1..=n {
            if !self.representative.has_vertex(p) {
                return Err(Error::InvalidObject(format!(
                    "extended graph is missing domain vertex {p}"
                )));
            }
        }
        let omega_labels: BTreeSet<&str> = (1..=n)
            .filter_map(|p| self.representative.vertex_label(p))
            .collect();
        for v in self.extra() {
            let label = self.representative.vertex_label(v).unwrap_or_default();
            if omega_labels.contains(label) {
                return Err(Error::InvalidObject(format!(
                    "extra vertex {v} reuses domain label {label:?}"
                )));
            }
        }
        Ok(self)
    }

    pub fn omega(&self) -> usize {
        self.omega
    }

    pub fn representative(&self) -> &LabelledDigraph {
        &self.representative
    }

    /// `V \ Ω`.
    pub fn extra(&self) -> BTreeSet<usize> {
        self.representative.vertices().filter(|&v| v > self.omega).collect()
    }

    pub fn extra_count(&self) -> usize {
        self.representative.vertex_count() - self.omega
    }

    /// The member of the orbit whose extra vertices are `n + 1, n + 2, ...`,
    /// keeping their relative order.
    pub fn normalised(&self) -> LabelledDigraph {
        self.relocated(self.omega + 1)
    }

    /// The member of the orbit whose extra vertices start at `first`.
    pub(crate) fn relocated(&self, first: usize) -> LabelledDigraph {
        let rename: BTreeMap<usize, usize> = self
            .extra()
            .into_iter()
            .enumerate()
            .map(|(i, v)| (v, first + i))
            .collect();
        self.representative
            .map_vertices(|v| rename.get(&v).copied().unwrap_or(v))
    }
}

impl Action for ExtendedGraph {
    /// `Sym(Ω)` moves the domain vertices and fixes every extra vertex.
    fn act(&self, g: &Permutation) -> Result<Self> {
        if g.degree() != self.omega {
            return Err(Error::DegreeMismatch(g.degree(), self.omega));
        }
        Ok(ExtendedGraph {
            omega: self.omega,
            representative: self.representative.map_vertices(|v| g.image(v)),
        })
    }
}

impl PartialEq for ExtendedGraph {
    fn eq(&self, other: &Self) -> bool {
        extended_equal(self, other)
    }
}

impl Eq for ExtendedGraph {}

/// Per-vertex view used to reject unequal orbits before searching.
fn local_signature(d: &LabelledDigraph, v: usize, omega: usize) -> Vec<(u8, String, String, usize)> {
    let tag = |u: usize| if u <= omega { u } else { 0 };
    let mut sig: Vec<(u8, String, String, usize)> = Vec::new();
    for (&(a, b), label) in d.arcs() {
        if a == v {
            sig.push((0, label.clone(), d.vertex_label(b).unwrap_or_default().to_string(), tag(b)));
        }
        if b == v {
            sig.push((1, label.clone(), d.vertex_label(a).unwrap_or_default().to_string(), tag(a)));
        }
    }
    sig.sort();
    sig
}

/// Orbit equality of extended graphs: true iff some permutation of the extra
/// vertices maps one representative onto the other, preserving labels.
pub fn extended_equal(a: &ExtendedGraph, b: &ExtendedGraph) -> bool {
    let n = a.omega;
    if n != b.omega
        || a.extra_count() != b.extra_count()
        || a.representative.arcs().len() != b.representative.arcs().len()
    {
        return false;
    }
    let left = a.normalised();
    let right = b.normalised();
    if left == right {
        return true;
    }
    for p in 1..=n {
        if left.vertex_label(p) != right.vertex_label(p)
            || local_signature(&left, p, n) != local_signature(&right, p, n)
        {
            return false;
        }
    }
    let mut left_labels: Vec<&String> = left.vertex_labels().values().collect();
    let mut right_labels: Vec<&String> = right.vertex_labels().values().collect();
    left_labels.sort();
    right_labels.sort();
    if left_labels != right_labels {
        return false;
    }
    // Domain vertices are pinned in singleton cells; the extra vertices share one cell.
    let size = left.vertex_count();
    let base: Vec<u32> = (0..size).map(|i| i.min(n) as u32).collect();
    let problem = Problem::new(size, &base, &base, &[left], &[right], |v| v - 1);
    let mut stats = SearchStats::default();
    problem.transporter(&|_: &[usize]| true, &mut stats).is_some()
}

impl fmt::Display for ExtendedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "digraph n={}", self.omega)?;
        let extra = self.extra();
        if !extra.is_empty() {
            f.write_str(" extra=")?;
            let parts: Vec<String> = extra.iter().map(|v| v.to_string()).collect();
            f.write_str(&parts.join(" "))?;
        }
        writeln!(f)?;
        crate::objects::text::write_body(f, &self.representative)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// A representative of `{{1,4},{2,3}}` with extra vertices 5, 6.
    fn gamma() -> ExtendedGraph {
        let mut d = LabelledDigraph::uniform(1..=4, "w:white");
        d.add_vertex(5, "b:black").unwrap();
        d.add_vertex(6, "b:black").unwrap();
        for (a, b) in [(1, 4), (4, 1), (2, 3), (3, 2), (1, 5), (4, 5), (2, 6), (3, 6)] {
            d.add_arc(a, b, "b:black").unwrap();
        }
        ExtendedGraph::new(4, d).unwrap()
    }

    #[test]
    fn swapping_extra_vertices_gives_the_same_extended_graph() {
        let g = gamma();
        let swapped = g.representative().map_vertices(|v| match v {
            5 => 6,
            6 => 5,
            v => v,
        });
        let other = ExtendedGraph::new(4, swapped).unwrap();
        assert_ne!(g.representative(), other.representative());
        assert!(extended_equal(&g, &other));
        assert!(extended_equal(&g, &g));
    }

    #[test]
    fn different_extra_counts_differ() {
        let g = gamma();
        let mut d = g.representative().clone();
        d.add_vertex(7, "b:black").unwrap();
        let bigger = ExtendedGraph::new(4, d).unwrap();
        assert!(!extended_equal(&g, &bigger));
    }

    #[test]
    fn moving_domain_vertices_changes_the_orbit() {
        let g = gamma();
        let h = g.act(&Permutation::parse("(1 2)", 4).unwrap()).unwrap();
        assert!(!extended_equal(&g, &h));
        let k = g.act(&Permutation::parse("(1 4)", 4).unwrap()).unwrap();
        assert!(extended_equal(&g, &k));
    }

    #[test]
    fn extra_labels_must_avoid_domain_labels() {
        let mut d = LabelledDigraph::uniform(1..=2, "w:white");
        d.add_vertex(3, "w:white").unwrap();
        assert!(ExtendedGraph::new(2, d).is_err());
        let d = LabelledDigraph::uniform(1..=1, "w");
        assert!(ExtendedGraph::new(2, d).is_err());
    }

    #[test]
    fn extra_vertices_can_be_sparse() {
        let mut d = LabelledDigraph::uniform(1..=2, "w");
        d.add_vertex(10, "b").unwrap();
        d.add_arc(1, 10, "x").unwrap();
        let sparse = ExtendedGraph::new(2, d).unwrap();
        let mut e = LabelledDigraph::uniform(1..=2, "w");
        e.add_vertex(3, "b").unwrap();
        e.add_arc(1, 3, "x").unwrap();
        let dense = ExtendedGraph::new(2, e).unwrap();
        assert_eq!(sparse, dense);
        assert_eq!(sparse.extra(), [10].into());
    }
}
