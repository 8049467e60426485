//! Injective `Sym(Ω)`-invariant encodings of combinatorial objects as stacks,
//! and the constant refiners they give for stabilisers and transporters.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::action::Action;
use crate::error::{Error, Result};
use crate::objects::{Digraph, ExtendedGraph, Graph, LabelledDigraph, OrderedPartition, Stack, StackEntry, StackKind};
use crate::perm::{PermGroup, Permutation};
use crate::refiner::{constant_refiner, list_refiner, random_digraph, random_partition, RefinerPair, TargetSet};
use crate::search::{is_two_closed, two_closure};

/// Label for vertices and arcs of encodings that need only one label.
pub const PLAIN: &str = "x";
/// Domain vertices of gadget encodings; the `w:` prefix is kept for the domain.
pub const WHITE: &str = "w:white";
/// Extra vertices of gadget encodings and the arcs touching them.
pub const BLACK: &str = "b:black";
/// The `#` label: domain vertices, and arcs into the domain, in set-of-digraphs encodings.
pub const HASH: &str = "hash";
/// The `⊛` label: anchor vertices, and arcs into anchors, in set-of-digraphs encodings.
pub const ANCHOR: &str = "anchor";

const GROUP_CAP: usize = 40_320;

fn check_point(p: usize, n: usize) -> Result<()> {
    if p == 0 || p > n {
        return Err(Error::PointOutOfRange { point: p, degree: n });
    }
    Ok(())
}

fn check_set(a: &BTreeSet<usize>, n: usize) -> Result<()> {
    a.iter().try_for_each(|&p| check_point(p, n))
}

fn check_on_domain(d: &LabelledDigraph, n: usize) -> Result<()> {
    if d.vertices().ne(1..=n) {
        return Err(Error::InvalidObject(format!("digraph vertex set must be 1..={n}")));
    }
    Ok(())
}

/// `∅ ↦ []`, `Ω ↦ [[Ω]]`, otherwise `[[A, Ω \ A]]`.
pub fn encode_subset(n: usize, a: &BTreeSet<usize>) -> Result<Stack> {
    check_set(a, n)?;
    let mut stack = Stack::empty(n, StackKind::Partition);
    if a.is_empty() {
        return Ok(stack);
    }
    let rest: BTreeSet<usize> = (1..=n).filter(|p| !a.contains(p)).collect();
    let cells = if rest.is_empty() { vec![a.clone()] } else { vec![a.clone(), rest] };
    stack.push(StackEntry::Partition(OrderedPartition::new(n, cells)?))?;
    Ok(stack)
}

/// Orders a family of sets with pairwise distinct sizes by increasing size.
pub fn encode_distinct_sizes(a: &BTreeSet<BTreeSet<usize>>) -> Result<Vec<BTreeSet<usize>>> {
    let mut members: Vec<BTreeSet<usize>> = a.iter().cloned().collect();
    members.sort_by_key(BTreeSet::len);
    if let Some(w) = members.windows(2).find(|w| w[0].len() == w[1].len()) {
        return Err(Error::InvalidObject(format!("two members have size {}", w[0].len())));
    }
    Ok(members)
}

/// Each edge becomes a pair of opposite arcs; everything is labelled [`PLAIN`].
pub fn graph_to_labelled(g: &Graph) -> LabelledDigraph {
    let mut d = LabelledDigraph::uniform(1..=g.n(), PLAIN);
    for &(a, b) in g.edges() {
        d.add_arc(a, b, PLAIN).expect("edge endpoints are vertices");
        d.add_arc(b, a, PLAIN).expect("edge endpoints are vertices");
    }
    d
}

/// Labels every vertex and arc with [`PLAIN`].
pub fn digraph_to_labelled(g: &Digraph) -> LabelledDigraph {
    let mut d = LabelledDigraph::uniform(1..=g.n(), PLAIN);
    for &(a, b) in g.arcs() {
        d.add_arc(a, b, PLAIN).expect("arc endpoints are vertices");
    }
    d
}

/// A clique with loops on every member. Injective on families of nonempty
/// pairwise disjoint sets.
pub fn encode_disjoint_sets(n: usize, a: &BTreeSet<BTreeSet<usize>>) -> Result<LabelledDigraph> {
    let mut d = LabelledDigraph::uniform(1..=n, PLAIN);
    for member in a {
        check_set(member, n)?;
        for &p in member {
            for &q in member {
                d.add_arc(p, q, PLAIN)?;
            }
        }
    }
    Ok(d)
}

/// Whether the members are nonempty and pairwise disjoint.
pub fn is_disjoint_family(a: &BTreeSet<BTreeSet<usize>>) -> bool {
    let mut seen = BTreeSet::new();
    a.iter().all(|m| !m.is_empty() && m.iter().all(|&p| seen.insert(p)))
}

/// The functional digraph of `g`: an arc `(α, α^g)` for every point.
pub fn encode_perm_conj(g: &Permutation) -> LabelledDigraph {
    let n = g.degree();
    let mut d = LabelledDigraph::uniform(1..=n, PLAIN);
    for p in 1..=n {
        d.add_arc(p, g.image(p), PLAIN).expect("images are vertices");
    }
    d
}

/// Members sorted by size, then contents.
fn ordered<T: Ord + Clone, C: IntoIterator<Item = T>>(members: C, len: impl Fn(&T) -> usize) -> Vec<T> {
    let mut v: Vec<T> = members.into_iter().collect();
    v.sort_by(|a, b| len(a).cmp(&len(b)).then_with(|| a.cmp(b)));
    v
}

/// One black vertex per member, with arcs from each member's points.
pub fn encode_set_of_sets(n: usize, a: &BTreeSet<BTreeSet<usize>>) -> Result<ExtendedGraph> {
    let mut d = LabelledDigraph::uniform(1..=n, WHITE);
    for (i, member) in ordered(a.iter().cloned(), BTreeSet::len).into_iter().enumerate() {
        check_set(&member, n)?;
        let beta = n + 1 + i;
        d.add_vertex(beta, BLACK)?;
        for p in member {
            d.add_arc(p, beta, BLACK)?;
        }
    }
    ExtendedGraph::new(n, d)
}

/// One black vertex per list position, pointing at its entry and at the next
/// position; the empty list adds one isolated black vertex at the end.
pub fn encode_set_of_lists(n: usize, a: &BTreeSet<Vec<usize>>) -> Result<ExtendedGraph> {
    let mut d = LabelledDigraph::uniform(1..=n, WHITE);
    let mut next = n + 1;
    for list in ordered(a.iter().filter(|l| !l.is_empty()).cloned(), Vec::len) {
        for (j, &p) in list.iter().enumerate() {
            check_point(p, n)?;
            d.add_vertex(next, BLACK)?;
            d.add_arc(next, p, BLACK)?;
            if j > 0 {
                d.add_arc(next - 1, next, BLACK)?;
            }
            next += 1;
        }
    }
    if a.contains(&Vec::new()) {
        d.add_vertex(next, BLACK)?;
    }
    ExtendedGraph::new(n, d)
}

fn check_reserved(d: &LabelledDigraph) -> Result<()> {
    for label in d.vertex_labels().values().chain(d.arcs().values()) {
        if label == HASH || label == ANCHOR {
            return Err(Error::ReservedLabel(label.clone()));
        }
    }
    Ok(())
}

/// A copy of each member on fresh vertices, joined to the domain and to one
/// anchor vertex per copy. Duplicates in `a` are ignored.
pub fn encode_set_of_digraphs(n: usize, a: &[LabelledDigraph]) -> Result<ExtendedGraph> {
    let members: BTreeSet<&LabelledDigraph> = a.iter().collect();
    for m in &members {
        check_on_domain(m, n)?;
        check_reserved(m)?;
    }
    let members = ordered(members, |d| d.arcs().len());
    let k = members.len();
    let mut d = LabelledDigraph::uniform(1..=n, HASH);
    for (i, member) in members.iter().enumerate() {
        let tau = |p: usize| n + i * n + p;
        let anchor = n + k * n + 1 + i;
        d.add_vertex(anchor, ANCHOR)?;
        for (&p, label) in member.vertex_labels() {
            d.add_vertex(tau(p), label)?;
            d.add_arc(tau(p), p, HASH)?;
            d.add_arc(tau(p), anchor, ANCHOR)?;
        }
        for (&(p, q), label) in member.arcs() {
            d.add_arc(tau(p), tau(q), label)?;
        }
    }
    ExtendedGraph::new(n, d)
}

/// One labelled digraph recording a whole stack: each vertex and arc label
/// lists the `(position, label)` pairs of the entries where it occurs.
pub fn flatten_stack(s: &Stack) -> Result<LabelledDigraph> {
    let n = s.degree();
    let entries = s.as_digraphs()?;
    let mut vertex: BTreeMap<usize, Vec<(usize, String)>> = (1..=n).map(|v| (v, Vec::new())).collect();
    let mut arcs: BTreeMap<(usize, usize), Vec<(usize, String)>> = BTreeMap::new();
    for (i, e) in entries.iter().enumerate() {
        for (&v, l) in e.vertex_labels() {
            vertex.get_mut(&v).expect("stack digraphs live on Ω").push((i, l.clone()));
        }
        for (&arc, l) in e.arcs() {
            arcs.entry(arc).or_default().push((i, l.clone()));
        }
    }
    let json = |v: &Vec<(usize, String)>| serde_json::to_string(v).expect("pairs serialise");
    let mut d = LabelledDigraph::uniform(std::iter::empty(), "");
    for (v, l) in &vertex {
        d.add_vertex(*v, &json(l))?;
    }
    for ((a, b), l) in &arcs {
        d.add_arc(*a, *b, &json(l))?;
    }
    Ok(d)
}

/// The set-of-digraphs encoding of the flattened stacks.
pub fn encode_set_of_stacks(n: usize, a: &[Stack]) -> Result<ExtendedGraph> {
    let flat = a.iter().map(flatten_stack).collect::<Result<Vec<_>>>()?;
    encode_set_of_digraphs(n, &flat)
}

/// The orbits of `⟨g⟩` on `Ω × Ω` as uniformly labelled digraphs, diagonal
/// orbits included, ordered by least base pair.
pub fn orbital_graphs(g: &PermGroup) -> Vec<LabelledDigraph> {
    let n = g.degree();
    let mut seen = vec![vec![false; n + 1]; n + 1];
    let mut out = Vec::new();
    for a in 1..=n {
        for b in 1..=n {
            if seen[a][b] {
                continue;
            }
            seen[a][b] = true;
            let mut orbit = vec![(a, b)];
            let mut i = 0;
            while i < orbit.len() {
                let (x, y) = orbit[i];
                for s in g.generators() {
                    let (u, v) = (s.image(x), s.image(y));
                    if !seen[u][v] {
                        seen[u][v] = true;
                        orbit.push((u, v));
                    }
                }
                i += 1;
            }
            let mut d = LabelledDigraph::uniform(1..=n, PLAIN);
            for (x, y) in orbit {
                d.add_arc(x, y, PLAIN).expect("points are vertices");
            }
            out.push(d);
        }
    }
    out
}

/// The orbit of the list `[1, ..., n]` under `⟨g⟩`; its stabiliser is `⟨g⟩`.
pub fn group_as_set_of_lists(g: &PermGroup, cap: usize) -> Result<BTreeSet<Vec<usize>>> {
    let base: Vec<usize> = (1..=g.degree()).collect();
    g.elements(cap)?.iter().map(|x| base.act(x)).collect()
}

/// The objects that stabiliser and transporter queries can be asked about.
///
/// Equality is structural: groups compare by generators.
#[derive(Debug, Clone, PartialEq)]
pub enum SourceObject {
    Point(usize),
    PointList(Vec<usize>),
    Partition(OrderedPartition),
    PartitionList(Vec<OrderedPartition>),
    Subset(BTreeSet<usize>),
    SubsetList(Vec<BTreeSet<usize>>),
    /// A set of subsets with pairwise distinct sizes.
    DistinctSizes(BTreeSet<BTreeSet<usize>>),
    LabelledDigraph(LabelledDigraph),
    Graph(Graph),
    Digraph(Digraph),
    DisjointSets(BTreeSet<BTreeSet<usize>>),
    UnorderedPartition(BTreeSet<BTreeSet<usize>>),
    /// A permutation, acted on by conjugation.
    PermConj(Permutation),
    PermList(Vec<Permutation>),
    SetOfSets(BTreeSet<BTreeSet<usize>>),
    SetOfLists(BTreeSet<Vec<usize>>),
    SetOfDigraphs(BTreeSet<LabelledDigraph>),
    /// A set of labelled-digraph stacks; duplicates are ignored.
    SetOfStacks(Vec<Stack>),
    /// A subgroup given by generators, acted on by conjugation.
    Group(PermGroup),
}

impl SourceObject {
    /// The command-line name of this object's kind.
    pub fn kind_name(&self) -> &'static str {
        use SourceObject::*;
        match self {
            Point(_) => "point",
            PointList(_) => "point-list",
            Partition(_) => "partition",
            PartitionList(_) => "partition-list",
            Subset(_) => "set",
            SubsetList(_) => "set-list",
            DistinctSizes(_) => "distinct-sizes",
            LabelledDigraph(_) => "labelled-digraph",
            Graph(_) => "graph",
            Digraph(_) => "digraph",
            DisjointSets(_) => "disjoint-sets",
            UnorderedPartition(_) => "unordered-partition",
            PermConj(_) => "perm-conj",
            PermList(_) => "perm-list",
            SetOfSets(_) => "set-of-sets",
            SetOfLists(_) => "set-of-lists",
            SetOfDigraphs(_) => "set-of-digraphs",
            SetOfStacks(_) => "set-of-stacks",
            Group(_) => "group",
        }
    }

    fn stack_key(&self) -> Result<BTreeSet<LabelledDigraph>> {
        match self {
            SourceObject::SetOfStacks(v) => v.iter().map(flatten_stack).collect(),
            _ => unreachable!("only called for sets of stacks"),
        }
    }

    /// Checks the object against `Ω = {1, ..., n}` and the kind's own rules.
    pub fn validate(&self, n: usize) -> Result<()> {
        use SourceObject::*;
        let degree_of = |d: usize| if d == n { Ok(()) } else { Err(Error::DegreeMismatch(d, n)) };
        match self {
            Point(p) => check_point(*p, n),
            PointList(v) => v.iter().try_for_each(|&p| check_point(p, n)),
            Partition(p) => degree_of(p.degree()),
            PartitionList(v) => v.iter().try_for_each(|p| degree_of(p.degree())),
            Subset(a) => check_set(a, n),
            SubsetList(v) => v.iter().try_for_each(|a| check_set(a, n)),
            DistinctSizes(a) => {
                a.iter().try_for_each(|m| check_set(m, n))?;
                encode_distinct_sizes(a).map(drop)
            }
            LabelledDigraph(d) => check_on_domain(d, n),
            Graph(g) => degree_of(g.n()),
            Digraph(g) => degree_of(g.n()),
            DisjointSets(a) | SetOfSets(a) => a.iter().try_for_each(|m| check_set(m, n)),
            UnorderedPartition(a) => {
                a.iter().try_for_each(|m| check_set(m, n))?;
                let covered: usize = a.iter().map(BTreeSet::len).sum();
                if !is_disjoint_family(a) || covered != n {
                    return Err(Error::InvalidObject("not a partition of the domain".into()));
                }
                Ok(())
            }
            PermConj(g) => degree_of(g.degree()),
            PermList(v) => v.iter().try_for_each(|g| degree_of(g.degree())),
            SetOfLists(a) => a.iter().flatten().try_for_each(|&p| check_point(p, n)),
            SetOfDigraphs(a) => a.iter().try_for_each(|d| {
                check_on_domain(d, n)?;
                check_reserved(d)
            }),
            SetOfStacks(v) => v.iter().try_for_each(|s| {
                degree_of(s.degree())?;
                s.as_digraphs().map(drop)
            }),
            Group(g) => degree_of(g.degree()),
        }
    }

    /// `x^g == y`, with set semantics for sets of stacks and groups.
    pub fn maps_to(&self, g: &Permutation, y: &SourceObject) -> bool {
        match (self, y) {
            (SourceObject::Group(a), SourceObject::Group(b)) => {
                let (Ok(ea), Ok(eb)) = (a.elements(GROUP_CAP), b.elements(GROUP_CAP)) else {
                    return false;
                };
                let eb: BTreeSet<Permutation> = eb.into_iter().collect();
                ea.len() == eb.len() && a.generators().iter().all(|s| s.act(g).is_ok_and(|t| eb.contains(&t)))
            }
            (SourceObject::SetOfStacks(_), SourceObject::SetOfStacks(_)) => {
                let (Ok(image), Ok(target)) = (self.act(g).and_then(|i| i.stack_key()), y.stack_key()) else {
                    return false;
                };
                image == target
            }
            _ => self.act(g).is_ok_and(|image| image.same_as(y)),
        }
    }

    fn same_as(&self, other: &SourceObject) -> bool {
        use SourceObject::*;
        match (self, other) {
            (Point(a), Point(b)) => a == b,
            (PointList(a), PointList(b)) => a == b,
            (Partition(a), Partition(b)) => a == b,
            (PartitionList(a), PartitionList(b)) => a == b,
            (Subset(a), Subset(b)) => a == b,
            (SubsetList(a), SubsetList(b)) => a == b,
            (DistinctSizes(a), DistinctSizes(b))
            | (DisjointSets(a), DisjointSets(b))
            | (UnorderedPartition(a), UnorderedPartition(b))
            | (SetOfSets(a), SetOfSets(b)) => a == b,
            (LabelledDigraph(a), LabelledDigraph(b)) => a == b,
            (Graph(a), Graph(b)) => a == b,
            (Digraph(a), Digraph(b)) => a == b,
            (PermConj(a), PermConj(b)) => a == b,
            (PermList(a), PermList(b)) => a == b,
            (SetOfLists(a), SetOfLists(b)) => a == b,
            (SetOfDigraphs(a), SetOfDigraphs(b)) => a == b,
            _ => false,
        }
    }
}

impl Action for SourceObject {
    fn act(&self, g: &Permutation) -> Result<Self> {
        use SourceObject::*;
        Ok(match self {
            Point(p) => Point(p.act(g)?),
            PointList(v) => PointList(v.act(g)?),
            Partition(p) => Partition(p.act(g)?),
            PartitionList(v) => PartitionList(v.act(g)?),
            Subset(a) => Subset(a.act(g)?),
            SubsetList(v) => SubsetList(v.act(g)?),
            DistinctSizes(a) => DistinctSizes(a.act(g)?),
            LabelledDigraph(d) => LabelledDigraph(d.act(g)?),
            Graph(x) => Graph(x.act(g)?),
            Digraph(x) => Digraph(x.act(g)?),
            DisjointSets(a) => DisjointSets(a.act(g)?),
            UnorderedPartition(a) => UnorderedPartition(a.act(g)?),
            PermConj(p) => PermConj(p.act(g)?),
            PermList(v) => PermList(v.act(g)?),
            SetOfSets(a) => SetOfSets(a.act(g)?),
            SetOfLists(a) => SetOfLists(a.act(g)?),
            SetOfDigraphs(a) => SetOfDigraphs(a.iter().map(|d| d.act(g)).collect::<Result<_>>()?),
            SetOfStacks(v) => SetOfStacks(v.act(g)?),
            Group(h) => Group(PermGroup::new(
                h.degree(),
                h.generators().iter().map(|s| s.act(g)).collect::<Result<_>>()?,
            )?),
        })
    }
}

/// A stabiliser (`y` absent) or transporter question about source objects.
#[derive(Debug, Clone)]
pub struct Query {
    pub degree: usize,
    pub x: SourceObject,
    pub y: Option<SourceObject>,
}

impl Query {
    pub fn stabiliser(degree: usize, x: SourceObject) -> Result<Query> {
        x.validate(degree)?;
        Ok(Query { degree, x, y: None })
    }

    pub fn transporter(degree: usize, x: SourceObject, y: SourceObject) -> Result<Query> {
        if x.kind_name() != y.kind_name() {
            return Err(Error::Unsupported(format!(
                "transporter from {} to {}",
                x.kind_name(),
                y.kind_name()
            )));
        }
        x.validate(degree)?;
        y.validate(degree)?;
        Ok(Query { degree, x, y: Some(y) })
    }

    pub fn is_transporter(&self) -> bool {
        self.y.is_some()
    }

    pub fn target(&self) -> &SourceObject {
        self.y.as_ref().unwrap_or(&self.x)
    }
}

fn single(n: usize, entry: StackEntry) -> Result<Stack> {
    Stack::from_entries(n, entry.kind(), vec![entry])
}

/// The components of a source object's encoding. List-like objects give one
/// stack per list entry; everything else gives a single stack.
fn components(n: usize, x: &SourceObject) -> Result<Vec<Stack>> {
    use SourceObject::*;
    let digraph = |d: crate::objects::LabelledDigraph| single(n, StackEntry::Digraph(d));
    let extended = |e: ExtendedGraph| single(n, StackEntry::Extended(e));
    Ok(match x {
        Point(p) => vec![single(n, StackEntry::Point(*p))?],
        PointList(v) => v.iter().map(|&p| single(n, StackEntry::Point(p))).collect::<Result<_>>()?,
        Partition(p) => vec![single(n, StackEntry::Partition(p.clone()))?],
        PartitionList(v) => v
            .iter()
            .map(|p| single(n, StackEntry::Partition(p.clone())))
            .collect::<Result<_>>()?,
        Subset(a) => vec![encode_subset(n, a)?],
        SubsetList(v) => v.iter().map(|a| encode_subset(n, a)).collect::<Result<_>>()?,
        DistinctSizes(a) => encode_distinct_sizes(a)?
            .iter()
            .map(|m| encode_subset(n, m))
            .collect::<Result<_>>()?,
        LabelledDigraph(d) => vec![digraph(d.clone())?],
        Graph(g) => vec![digraph(graph_to_labelled(g))?],
        Digraph(g) => vec![digraph(digraph_to_labelled(g))?],
        DisjointSets(a) | UnorderedPartition(a) => vec![digraph(encode_disjoint_sets(n, a)?)?],
        PermConj(g) => vec![digraph(encode_perm_conj(g))?],
        PermList(v) => v.iter().map(|g| digraph(encode_perm_conj(g))).collect::<Result<_>>()?,
        SetOfSets(a) => vec![extended(encode_set_of_sets(n, a)?)?],
        SetOfLists(a) => vec![extended(encode_set_of_lists(n, a)?)?],
        SetOfDigraphs(a) => vec![extended(encode_set_of_digraphs(n, &a.iter().cloned().collect::<Vec<_>>())?)?],
        SetOfStacks(v) => vec![extended(encode_set_of_stacks(n, v)?)?],
        Group(g) => vec![extended(encode_set_of_digraphs(n, &orbital_graphs(g))?)?],
    })
}

/// The stack that encodes a source object.
pub fn encode_object(n: usize, x: &SourceObject) -> Result<Stack> {
    let parts = components(n, x)?;
    let mut stack = Stack::empty(n, StackKind::Point);
    for p in parts {
        stack = stack.concat_lifted(&p)?;
    }
    Ok(stack)
}

/// Whether the encoding used by [`refiner_for`] is injective on this object,
/// so that the refiner is perfect.
fn encoding_is_injective(x: &SourceObject) -> Result<bool> {
    Ok(match x {
        SourceObject::DisjointSets(a) => is_disjoint_family(a),
        SourceObject::Group(g) => is_two_closed(g, GROUP_CAP)?,
        _ => true,
    })
}

fn empty_refiner(n: usize, kind: StackKind, target: TargetSet) -> Result<RefinerPair> {
    let kind = kind.max(StackKind::Partition);
    let one = Stack::partitions(n, vec![OrderedPartition::unit(n)])?.lift(kind)?;
    Ok(constant_refiner(&Stack::empty(n, kind), &one, target)?.with_name("length-mismatch"))
}

/// A constant refiner for `Iso(x, y)` (or `Stab(x)`) built from the
/// encodings above. List-like objects are refined entry by entry; if some
/// pair of entries already encodes to stacks of different lengths the
/// transporter is empty and a refiner with mismatched constant lengths is
/// returned, so that other entries cannot compensate.
pub fn refiner_for(q: &Query) -> Result<RefinerPair> {
    let n = q.degree;
    let (x, y) = (&q.x, q.target());
    let target = if let (SourceObject::Group(g), SourceObject::Group(h)) = (x, y) {
        conjugacy_target(g, h)?
    } else {
        let (x, y) = (x.clone(), y.clone());
        let name = if q.is_transporter() {
            format!("{} transporter", x.kind_name())
        } else {
            format!("{} stabiliser", x.kind_name())
        };
        TargetSet::predicate(n, &name, move |g| x.maps_to(g, &y))
    };
    let perfect = encoding_is_injective(x)? && encoding_is_injective(y)?;
    let (cx, cy) = (components(n, x)?, components(n, y)?);
    let kind = cx
        .iter()
        .chain(&cy)
        .filter(|s| !s.is_empty())
        .map(Stack::kind)
        .max()
        .unwrap_or(StackKind::Partition);
    let name = format!("{} refiner", x.kind_name());
    if cx.len() != cy.len() || cx.iter().zip(&cy).any(|(a, b)| a.len() != b.len()) {
        return Ok(empty_refiner(n, kind, target)?.with_perfect_claim(true));
    }
    let parts = cx
        .iter()
        .zip(&cy)
        .map(|(a, b)| constant_refiner(&a.lift(kind)?, &b.lift(kind)?, TargetSet::symmetric(n)))
        .collect::<Result<Vec<_>>>()?;
    let combined = if parts.is_empty() {
        constant_refiner(&Stack::empty(n, kind), &Stack::empty(n, kind), TargetSet::symmetric(n))?
    } else {
        list_refiner(&parts)?
    };
    Ok(combined.with_target(target).with_perfect_claim(perfect).with_name(&name))
}

/// `{x : G^x = H}` as a predicate target. Both groups are enumerated once.
pub fn conjugacy_target(g: &PermGroup, h: &PermGroup) -> Result<TargetSet> {
    let order = g.order(GROUP_CAP)?;
    let h_elements: BTreeSet<Permutation> = h.elements(GROUP_CAP)?.into_iter().collect();
    let gens = g.generators().to_vec();
    Ok(TargetSet::predicate(g.degree(), "group conjugacy", move |x| {
        order == h_elements.len() && gens.iter().all(|s| s.act(x).is_ok_and(|t| h_elements.contains(&t)))
    }))
}

/// Names of the source-object kinds, in the order of [`random_source`].
pub const SOURCE_KINDS: &[&str] = &[
    "point",
    "point-list",
    "partition",
    "partition-list",
    "set",
    "set-list",
    "distinct-sizes",
    "labelled-digraph",
    "graph",
    "digraph",
    "disjoint-sets",
    "unordered-partition",
    "perm-conj",
    "perm-list",
    "set-of-sets",
    "set-of-lists",
    "set-of-digraphs",
    "set-of-stacks",
    "group",
];

fn random_set(rng: &mut impl Rng, n: usize) -> BTreeSet<usize> {
    (1..=n).filter(|_| rng.gen_bool(0.5)).collect()
}

fn random_perm(rng: &mut impl Rng, n: usize) -> Permutation {
    let mut images: Vec<usize> = (1..=n).collect();
    images.shuffle(rng);
    Permutation::from_images(&images).expect("shuffled images")
}

fn random_plain_digraph(rng: &mut impl Rng, n: usize) -> LabelledDigraph {
    let mut d = LabelledDigraph::uniform(1..=n, PLAIN);
    for a in 1..=n {
        for b in 1..=n {
            if rng.gen_bool(0.3) {
                d.add_arc(a, b, PLAIN).expect("points are vertices");
            }
        }
    }
    d
}

/// A random object of the named kind on `Ω = {1, ..., n}`. Groups are
/// replaced by their 2-closure, so that their refiners are perfect.
pub fn random_source(rng: &mut impl Rng, n: usize, kind: &str) -> Result<SourceObject> {
    use SourceObject as S;
    let count = |rng: &mut dyn rand::RngCore, max: usize| rng.gen_range(0..=max);
    Ok(match kind {
        "point" => S::Point(rng.gen_range(1..=n)),
        "point-list" => S::PointList((0..count(rng, 3)).map(|_| rng.gen_range(1..=n)).collect()),
        "partition" => S::Partition(random_partition(rng, n)),
        "partition-list" => S::PartitionList((0..count(rng, 2)).map(|_| random_partition(rng, n)).collect()),
        "set" => S::Subset(random_set(rng, n)),
        "set-list" => S::SubsetList((0..count(rng, 3)).map(|_| random_set(rng, n)).collect()),
        "distinct-sizes" => {
            let mut sizes: Vec<usize> = (0..=n).collect();
            sizes.shuffle(rng);
            let k = count(rng, 3);
            S::DistinctSizes(
                sizes[..k]
                    .iter()
                    .map(|&size| {
                        let mut pts: Vec<usize> = (1..=n).collect();
                        pts.shuffle(rng);
                        pts[..size].iter().copied().collect()
                    })
                    .collect(),
            )
        }
        "labelled-digraph" => S::LabelledDigraph(random_digraph(rng, n)),
        "graph" => S::Graph(Graph::new(
            n,
            (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b))).filter(|_| rng.gen_bool(0.4)).collect::<Vec<_>>(),
        )?),
        "digraph" => S::Digraph(Digraph::new(
            n,
            (1..=n).flat_map(|a| (1..=n).map(move |b| (a, b))).filter(|_| rng.gen_bool(0.3)).collect::<Vec<_>>(),
        )?),
        "disjoint-sets" => {
            let p = random_partition(rng, n);
            S::DisjointSets(p.cells().iter().filter(|_| rng.gen_bool(0.7)).cloned().collect())
        }
        "unordered-partition" => S::UnorderedPartition(random_partition(rng, n).cells().iter().cloned().collect()),
        "perm-conj" => S::PermConj(random_perm(rng, n)),
        "perm-list" => S::PermList((0..count(rng, 2)).map(|_| random_perm(rng, n)).collect()),
        "set-of-sets" => S::SetOfSets((0..count(rng, 4)).map(|_| random_set(rng, n)).collect()),
        "set-of-lists" => S::SetOfLists(
            (0..count(rng, 3))
                .map(|_| (0..count(rng, 3)).map(|_| rng.gen_range(1..=n)).collect())
                .collect(),
        ),
        "set-of-digraphs" => S::SetOfDigraphs((0..count(rng, 3)).map(|_| random_plain_digraph(rng, n)).collect()),
        "set-of-stacks" => S::SetOfStacks(
            (0..count(rng, 2))
                .map(|_| {
                    let entries = (0..count(rng, 2)).map(|_| random_plain_digraph(rng, n)).collect();
                    Stack::digraphs(n, entries)
                })
                .collect::<Result<_>>()?,
        ),
        "group" => {
            let gens = (0..rng.gen_range(1..=2)).map(|_| random_perm(rng, n)).collect();
            S::Group(two_closure(&PermGroup::new(n, gens)?)?.subgroup())
        }
        other => return Err(Error::Unsupported(format!("object kind {other:?}"))),
    })
}
