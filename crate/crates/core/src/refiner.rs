//! Refiners: pairs of stack functions `(f_L, f_R)` with
//! `U ∩ Iso(S, T) ⊆ Iso(f_L(S), f_R(T))` for a target set `U`, and sampled
//! checks of that condition and of its perfect (equality) form.

use std::collections::HashSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::action::Action;
use crate::error::{Error, Result};
use crate::objects::{ExtendedGraph, LabelledDigraph, OrderedPartition, Stack, StackEntry, StackKind};
use crate::oracle::{self, OracleConfig, SetShape};
use crate::perm::{GroupCoset, PermGroup, Permutation};

/// A function from stacks to stacks.
pub type StackFn = Arc<dyn Fn(&Stack) -> Result<Stack> + Send + Sync>;

type Membership = Arc<dyn Fn(&Permutation) -> bool + Send + Sync>;

#[derive(Clone)]
enum TargetMode {
    Empty,
    Subgroup(PermGroup),
    Coset(GroupCoset),
    Predicate(String, Membership),
}

/// The subset of `Sym(Ω)` a refiner is declared for.
#[derive(Clone)]
pub struct TargetSet {
    degree: usize,
    mode: TargetMode,
    members: Arc<OnceLock<Result<HashSet<Permutation>>>>,
}

impl fmt::Debug for TargetSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TargetSet({} on {})", self.describe(), self.degree)
    }
}

/// Group enumeration bound used for membership tests: `8!`.
const MEMBER_CAP: usize = 40_320;

impl TargetSet {
    fn with_mode(degree: usize, mode: TargetMode) -> Self {
        TargetSet {
            degree,
            mode,
            members: Arc::new(OnceLock::new()),
        }
    }

    pub fn empty(degree: usize) -> Self {
        Self::with_mode(degree, TargetMode::Empty)
    }

    pub fn subgroup(group: PermGroup) -> Self {
        Self::with_mode(group.degree(), TargetMode::Subgroup(group))
    }

    pub fn symmetric(degree: usize) -> Self {
        Self::subgroup(PermGroup::symmetric(degree))
    }

    pub fn coset(coset: GroupCoset) -> Self {
        let degree = coset.degree();
        if coset.is_empty() {
            Self::empty(degree)
        } else if coset.representative().is_none() {
            Self::subgroup(coset.subgroup())
        } else {
            Self::with_mode(degree, TargetMode::Coset(coset))
        }
    }

    /// A set given only by a membership test.
    pub fn predicate(degree: usize, name: &str, test: impl Fn(&Permutation) -> bool + Send + Sync + 'static) -> Self {
        Self::with_mode(degree, TargetMode::Predicate(name.to_string(), Arc::new(test)))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_subgroup(&self) -> bool {
        matches!(self.mode, TargetMode::Subgroup(_))
    }

    pub fn as_subgroup(&self) -> Option<&PermGroup> {
        match &self.mode {
            TargetMode::Subgroup(g) => Some(g),
            _ => None,
        }
    }

    /// `empty`, `subgroup`, `coset` or `predicate <name>`.
    pub fn describe(&self) -> String {
        match &self.mode {
            TargetMode::Empty => "empty".into(),
            TargetMode::Subgroup(_) => "subgroup".into(),
            TargetMode::Coset(_) => "coset".into(),
            TargetMode::Predicate(name, _) => format!("predicate {name}"),
        }
    }

    fn members(&self) -> Result<&HashSet<Permutation>> {
        self.members
            .get_or_init(|| {
                let elements = match &self.mode {
                    TargetMode::Empty => Vec::new(),
                    TargetMode::Subgroup(g) => g.elements(MEMBER_CAP)?,
                    TargetMode::Coset(c) => c.elements(MEMBER_CAP)?,
                    TargetMode::Predicate(..) => unreachable!("predicates are tested directly"),
                };
                Ok(elements.into_iter().collect())
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        match &self.mode {
            TargetMode::Empty => false,
            TargetMode::Predicate(_, test) => test(g),
            _ => self.members().is_ok_and(|m| m.contains(g)),
        }
    }

    /// All members, sorted. Predicate targets are enumerated through the oracle.
    pub fn elements(&self, config: &OracleConfig) -> Result<Vec<Permutation>> {
        let mut elements: Vec<Permutation> = match &self.mode {
            TargetMode::Predicate(_, test) => oracle::brute_filter(|g| test(g), self.degree, config)?,
            _ => self.members()?.iter().cloned().collect(),
        };
        elements.sort();
        Ok(elements)
    }

    /// `self ∩ other`. Two group-like targets are intersected explicitly so the
    /// result stays a subgroup or coset; otherwise membership is combined.
    pub fn intersect(&self, other: &TargetSet) -> TargetSet {
        let degree = self.degree;
        match (&self.mode, &other.mode) {
            (TargetMode::Empty, _) | (_, TargetMode::Empty) => TargetSet::empty(degree),
            (TargetMode::Predicate(..), _) | (_, TargetMode::Predicate(..)) => {
                let (a, b) = (self.clone(), other.clone());
                let name = format!("({} ∩ {})", a.describe(), b.describe());
                TargetSet::predicate(degree, &name, move |g| a.contains(g) && b.contains(g))
            }
            _ => match (self.members(), other.members()) {
                (Ok(a), Ok(b)) => {
                    let both: Vec<Permutation> = a.intersection(b).cloned().collect();
                    TargetSet::coset(oracle::coset_from_elements(degree, &both).expect("degrees agree"))
                }
                _ => {
                    let (a, b) = (self.clone(), other.clone());
                    TargetSet::predicate(degree, "intersection", move |g| a.contains(g) && b.contains(g))
                }
            },
        }
    }
}

/// A refiner `(f_L, f_R)` for a declared target set.
#[derive(Clone)]
pub struct RefinerPair {
    name: String,
    degree: usize,
    kind: StackKind,
    left: StackFn,
    right: StackFn,
    target: TargetSet,
    perfect: bool,
}

impl fmt::Debug for RefinerPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RefinerPair")
            .field("name", &self.name)
            .field("degree", &self.degree)
            .field("kind", &self.kind)
            .field("target", &self.target)
            .field("perfect", &self.perfect)
            .finish()
    }
}

impl RefinerPair {
    /// A refiner from arbitrary functions whose outputs have kind `kind`.
    pub fn new(name: &str, degree: usize, kind: StackKind, left: StackFn, right: StackFn, target: TargetSet) -> Self {
        RefinerPair {
            name: name.to_string(),
            degree,
            kind,
            left,
            right,
            target,
            perfect: false,
        }
    }

    /// `(ι, ι)`, mapping every stack to itself; a refiner for any target.
    pub fn identity(degree: usize, kind: StackKind, target: TargetSet) -> Self {
        let f: StackFn = Arc::new(move |s: &Stack| s.lift(kind));
        Self::new("identity", degree, kind, f.clone(), f, target)
    }

    /// `(ε, ε)`, mapping every stack to the empty stack; a refiner for any target.
    pub fn empty_image(degree: usize, kind: StackKind, target: TargetSet) -> Self {
        let f: StackFn = Arc::new(move |_: &Stack| Ok(Stack::empty(degree, kind)));
        Self::new("empty-image", degree, kind, f.clone(), f, target)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn kind(&self) -> StackKind {
        self.kind
    }

    pub fn target(&self) -> &TargetSet {
        &self.target
    }

    /// Whether the constructor of this refiner asserts that it is perfect.
    pub fn claims_perfect(&self) -> bool {
        self.perfect
    }

    pub fn with_perfect_claim(mut self, perfect: bool) -> Self {
        self.perfect = perfect;
        self
    }

    pub fn with_target(mut self, target: TargetSet) -> Self {
        self.target = target;
        self
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn left_fn(&self) -> &StackFn {
        &self.left
    }

    pub fn right_fn(&self) -> &StackFn {
        &self.right
    }

    pub fn apply_left(&self, s: &Stack) -> Result<Stack> {
        (self.left)(s)
    }

    pub fn apply_right(&self, s: &Stack) -> Result<Stack> {
        (self.right)(s)
    }

    /// The same refiner with outputs lifted to the finer kind `kind`.
    pub fn lifted(&self, kind: StackKind) -> Result<RefinerPair> {
        if kind < self.kind {
            return Err(Error::KindMismatch(self.kind, kind));
        }
        let wrap = |f: &StackFn| -> StackFn {
            let f = f.clone();
            Arc::new(move |s: &Stack| f(s)?.lift(kind))
        };
        Ok(RefinerPair {
            kind,
            left: wrap(&self.left),
            right: wrap(&self.right),
            ..self.clone()
        })
    }
}

/// The constant refiner `(S ↦ A, T ↦ B)`. It is a refiner for every subset of
/// `Iso(A, B)` and perfect for `Iso(A, B)` itself; `target` is the caller's claim.
pub fn constant_refiner(a: &Stack, b: &Stack, target: TargetSet) -> Result<RefinerPair> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch(a.degree(), b.degree()));
    }
    if target.degree() != a.degree() {
        return Err(Error::DegreeMismatch(target.degree(), a.degree()));
    }
    if !a.is_empty() && !b.is_empty() && a.kind() != b.kind() {
        return Err(Error::KindMismatch(a.kind(), b.kind()));
    }
    let kind = if a.is_empty() { b.kind() } else { a.kind() };
    let (a, b) = (a.lift(kind)?, b.lift(kind)?);
    Ok(RefinerPair::new(
        "constant",
        a.degree(),
        kind,
        Arc::new(move |_: &Stack| Ok(a.clone())),
        Arc::new(move |_: &Stack| Ok(b.clone())),
        target,
    ))
}

/// `f^x : S ↦ f(S^(x⁻¹))^x`.
pub fn conjugate_refiner(f: &StackFn, x: &Permutation) -> StackFn {
    let f = f.clone();
    let x = x.clone();
    let inv = x.inverse();
    Arc::new(move |s: &Stack| f(&s.act(&inv)?)?.act(&x))
}

/// `(f_L, f_L^x)` for the coset `Gx`, from a refiner for the subgroup `G`.
pub fn coset_refiner(group_refiner: &RefinerPair, x: &Permutation) -> Result<RefinerPair> {
    let Some(group) = group_refiner.target.as_subgroup() else {
        return Err(Error::NotASubgroup);
    };
    if x.degree() != group_refiner.degree {
        return Err(Error::DegreeMismatch(x.degree(), group_refiner.degree));
    }
    let target = if x.is_identity() {
        TargetSet::subgroup(group.clone())
    } else {
        TargetSet::coset(GroupCoset::coset(group.clone(), x.clone())?)
    };
    Ok(RefinerPair {
        name: format!("{}^x", group_refiner.name),
        right: conjugate_refiner(&group_refiner.left, x),
        target,
        ..group_refiner.clone()
    })
}

/// `(f ‖ g, σ ‖ τ)`, a refiner for the intersection of the two targets.
pub fn concat_refiners(r1: &RefinerPair, r2: &RefinerPair) -> Result<RefinerPair> {
    if r1.degree != r2.degree {
        return Err(Error::DegreeMismatch(r1.degree, r2.degree));
    }
    if r1.kind != r2.kind {
        return Err(Error::KindMismatch(r1.kind, r2.kind));
    }
    let join = |f: &StackFn, g: &StackFn| -> StackFn {
        let (f, g) = (f.clone(), g.clone());
        Arc::new(move |s: &Stack| f(s)?.concat(&g(s)?))
    };
    Ok(RefinerPair {
        name: format!("{} ‖ {}", r1.name, r2.name),
        degree: r1.degree,
        kind: r1.kind,
        left: join(&r1.left, &r2.left),
        right: join(&r1.right, &r2.right),
        target: r1.target.intersect(&r2.target),
        perfect: r1.perfect && r2.perfect,
    })
}

/// The left fold of [`concat_refiners`] over `rs`. Components of different
/// kinds are lifted to the finest kind first.
pub fn list_refiner(rs: &[RefinerPair]) -> Result<RefinerPair> {
    let Some(kind) = rs.iter().map(|r| r.kind).max() else {
        return Err(Error::EmptyRefinerList);
    };
    let mut acc = rs[0].lifted(kind)?;
    for r in &rs[1..] {
        acc = concat_refiners(&acc, &r.lifted(kind)?)?;
    }
    Ok(acc)
}

/// One failed sample of a refiner check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub sample: usize,
    pub lhs: usize,
    pub rhs: usize,
    pub witness: Option<Permutation>,
}

/// Outcome of [`check_sound`] or [`check_perfect`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub samples: usize,
    pub violations: Vec<Violation>,
    /// Shape of the enumerated target set.
    pub target_shape: SetShape,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return f.write_str("PASS");
        }
        let lines: Vec<String> = self
            .violations
            .iter()
            .map(|v| {
                let witness = v.witness.as_ref().map(|w| format!(" witness {w}")).unwrap_or_default();
                format!("FAIL sample={} |lhs|={} |rhs|={}{witness}", v.sample, v.lhs, v.rhs)
            })
            .collect();
        f.write_str(&lines.join("\n"))
    }
}

/// Random objects of each stack kind, for sampling.
pub fn random_entry(rng: &mut impl Rng, degree: usize, kind: StackKind) -> StackEntry {
    match kind {
        StackKind::Point => StackEntry::Point(rng.gen_range(1..=degree)),
        StackKind::Partition => StackEntry::Partition(random_partition(rng, degree)),
        StackKind::Digraph => StackEntry::Digraph(random_digraph(rng, degree)),
        StackKind::Extended => {
            let mut d = random_digraph(rng, degree);
            let extra = rng.gen_range(0..=2);
            for k in 0..extra {
                let v = degree + 1 + k;
                d.add_vertex(v, "e").expect("positive vertex");
                for p in 1..=degree {
                    if rng.gen_bool(0.4) {
                        d.add_arc(p, v, "x").expect("both endpoints exist");
                    }
                }
            }
            StackEntry::Extended(ExtendedGraph::new(degree, d).expect("extra labels avoid domain labels"))
        }
    }
}

/// A random ordered partition with one to three cells.
pub fn random_partition(rng: &mut impl Rng, degree: usize) -> OrderedPartition {
    let mut points: Vec<usize> = (1..=degree).collect();
    points.shuffle(rng);
    let cells = rng.gen_range(1..=degree.min(3));
    let mut split: Vec<usize> = (1..degree).collect();
    split.shuffle(rng);
    let mut cuts: Vec<usize> = split.into_iter().take(cells - 1).collect();
    cuts.sort();
    let mut out = Vec::new();
    let mut start = 0;
    for cut in cuts.into_iter().chain([degree]) {
        out.push(points[start..cut].iter().copied().collect());
        start = cut;
    }
    OrderedPartition::new(degree, out).expect("cuts give a partition")
}

/// A random labelled digraph on `Ω` using two vertex labels and two arc labels.
pub fn random_digraph(rng: &mut impl Rng, degree: usize) -> LabelledDigraph {
    let mut d = LabelledDigraph::uniform(1..=degree, "p");
    for v in 1..=degree {
        if rng.gen_bool(0.3) {
            d.add_vertex(v, "q").expect("positive vertex");
        }
    }
    for a in 1..=degree {
        for b in 1..=degree {
            if rng.gen_bool(0.25) {
                let label = if rng.gen_bool(0.5) { "x" } else { "y" };
                d.add_arc(a, b, label).expect("both endpoints exist");
            }
        }
    }
    d
}

/// A random stack of `len` entries of `kind`.
pub fn random_stack(rng: &mut impl Rng, degree: usize, kind: StackKind, len: usize) -> Stack {
    let entries = (0..len).map(|_| random_entry(rng, degree, kind)).collect();
    Stack::from_entries(degree, kind, entries).expect("random entries fit the domain")
}

/// The stack pairs used by the checks: sample 0 is the pair of empty stacks,
/// later samples have lengths 0 to 3 and `T` is a random image of `S` about
/// half of the time.
pub fn sample_pairs(degree: usize, kind: StackKind, samples: usize, seed: u64) -> Vec<(Stack, Stack)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = vec![(Stack::empty(degree, kind), Stack::empty(degree, kind))];
    for _ in 1..samples {
        let len = rng.gen_range(0..=3);
        let s = random_stack(&mut rng, degree, kind, len);
        let t = if rng.gen_bool(0.5) {
            let mut images: Vec<usize> = (1..=degree).collect();
            images.shuffle(&mut rng);
            let h = Permutation::from_images(&images).expect("shuffled images");
            s.act(&h).expect("degrees agree")
        } else {
            random_stack(&mut rng, degree, kind, len)
        };
        pairs.push((s, t));
    }
    pairs
}

fn iso_within(candidates: &[Permutation], s: &Stack, t: &Stack) -> Result<Vec<Permutation>> {
    let mut out = Vec::new();
    for g in candidates {
        if &s.act(g)? == t {
            out.push(g.clone());
        }
    }
    Ok(out)
}

enum Condition {
    Sound,
    Perfect,
}

fn check(r: &RefinerPair, samples: usize, seed: u64, condition: Condition) -> Result<Report> {
    let config = OracleConfig::default();
    let n = r.degree;
    let all = oracle::symmetric_elements(n, &config)?;
    let target = r.target.elements(&config)?;
    let target_set: HashSet<&Permutation> = target.iter().collect();
    let mut violations = Vec::new();
    let pairs = sample_pairs(n, r.kind, samples.max(1), seed);
    for (k, (s, t)) in pairs.iter().enumerate() {
        let iso_st = iso_within(&all, s, t)?;
        let lhs: Vec<Permutation> = iso_st.iter().filter(|g| target_set.contains(g)).cloned().collect();
        let (fs, ft) = (r.apply_left(s)?, r.apply_right(t)?);
        let violation = match condition {
            Condition::Sound => {
                let rhs = iso_within(&lhs, &fs, &ft)?;
                (rhs.len() != lhs.len()).then(|| {
                    let witness = lhs.iter().find(|g| !rhs.contains(g)).cloned();
                    let rhs_total = iso_within(&all, &fs, &ft).map_or(rhs.len(), |v| v.len());
                    Violation {
                        sample: k,
                        lhs: lhs.len(),
                        rhs: rhs_total,
                        witness,
                    }
                })
            }
            Condition::Perfect => {
                let (sl, tr) = (s.concat_lifted(&fs)?, t.concat_lifted(&ft)?);
                // Iso(S ‖ f(S), T ‖ f(T)) lies inside Iso(S, T).
                let rhs = if sl.len() == tr.len() { iso_within(&iso_st, &sl, &tr)? } else { Vec::new() };
                (rhs != lhs).then(|| {
                    let witness = lhs
                        .iter()
                        .find(|g| !rhs.contains(g))
                        .or_else(|| rhs.iter().find(|g| !lhs.contains(g)))
                        .cloned();
                    Violation {
                        sample: k,
                        lhs: lhs.len(),
                        rhs: rhs.len(),
                        witness,
                    }
                })
            }
        };
        violations.extend(violation);
    }
    Ok(Report {
        samples: pairs.len(),
        violations,
        target_shape: oracle::classify(&target),
    })
}

/// Tests `U ∩ Iso(S, T) ⊆ Iso(f_L(S), f_R(T))` on sampled pairs by enumeration.
pub fn check_sound(r: &RefinerPair, samples: usize, seed: u64) -> Result<Report> {
    check(r, samples, seed, Condition::Sound)
}

/// Tests `U ∩ Iso(S, T) = Iso(S ‖ f_L(S), T ‖ f_R(T))` on sampled pairs by
/// enumeration, starting with the pair of empty stacks.
pub fn check_perfect(r: &RefinerPair, samples: usize, seed: u64) -> Result<Report> {
    check(r, samples, seed, Condition::Perfect)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encode::encode_subset;

    fn subset_refiner(n: usize, set: &[usize]) -> RefinerPair {
        let a = encode_subset(n, &set.iter().copied().collect()).unwrap();
        let target = oracle::brute_transporter(
            &set.iter().copied().collect::<std::collections::BTreeSet<usize>>(),
            &set.iter().copied().collect(),
            n,
            &OracleConfig::default(),
        )
        .unwrap();
        constant_refiner(&a, &a, TargetSet::coset(target)).unwrap().with_perfect_claim(true)
    }

    #[test]
    fn trivial_refiners_are_sound() {
        let t = TargetSet::subgroup(PermGroup::parse(4, &["(1 2)"]).unwrap());
        for r in [
            RefinerPair::identity(4, StackKind::Partition, t.clone()),
            RefinerPair::empty_image(4, StackKind::Partition, t.clone()),
        ] {
            assert!(check_sound(&r, 10, 1).unwrap().passed());
        }
    }

    #[test]
    fn corrupted_right_function_is_caught() {
        let r = subset_refiner(4, &[1, 2]);
        let other = encode_subset(4, &[1, 2, 3].into()).unwrap();
        let bad = RefinerPair::new(
            "corrupt",
            4,
            r.kind(),
            r.left_fn().clone(),
            Arc::new(move |_: &Stack| Ok(other.clone())),
            r.target().clone(),
        );
        let report = check_sound(&bad, 3, 0).unwrap();
        assert!(!report.passed());
        assert!(report.to_string().starts_with("FAIL sample=0"));
    }

    #[test]
    fn constant_refiner_for_its_own_transporter_is_perfect() {
        let r = subset_refiner(5, &[1, 2]);
        let report = check_perfect(&r, 6, 3).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.target_shape, SetShape::Subgroup);
    }

    #[test]
    fn proper_subgroup_target_is_not_perfect() {
        let r = subset_refiner(4, &[1, 2]).with_target(TargetSet::subgroup(PermGroup::parse(4, &["(1 2)"]).unwrap()));
        assert!(check_sound(&r, 5, 0).unwrap().passed());
        assert!(!check_perfect(&r, 5, 0).unwrap().passed());
    }

    #[test]
    fn concatenation_intersects_targets() {
        let r = concat_refiners(&subset_refiner(5, &[1, 2]), &subset_refiner(5, &[2, 3])).unwrap();
        assert!(r.claims_perfect());
        assert_eq!(r.target().elements(&OracleConfig::default()).unwrap().len(), 2);
        assert!(check_perfect(&r, 6, 9).unwrap().passed());
    }

    #[test]
    fn coset_refiner_needs_a_subgroup() {
        let r = subset_refiner(4, &[1, 2]);
        let x = Permutation::parse("(2 3)", 4).unwrap();
        let c = coset_refiner(&r, &x).unwrap();
        assert_eq!(c.target().elements(&OracleConfig::default()).unwrap().len(), 4);
        assert!(check_perfect(&c, 6, 4).unwrap().passed());
        assert_eq!(coset_refiner(&c, &x).unwrap_err(), Error::NotASubgroup);
    }

    #[test]
    fn empty_list_is_rejected() {
        assert_eq!(list_refiner(&[]).unwrap_err(), Error::EmptyRefinerList);
    }

    /// Two perfect refiners for the empty set whose constant lengths are 0/1
    /// and 1/0 concatenate to lengths 1/1, which no longer rules anything out.
    #[test]
    fn compensating_lengths_break_perfectness() {
        let n = 3;
        let none = TargetSet::empty(n);
        let unit = Stack::partitions(n, vec![crate::objects::OrderedPartition::unit(n)]).unwrap();
        let empty = Stack::empty(n, StackKind::Partition);
        let r1 = constant_refiner(&empty, &unit, none.clone()).unwrap();
        let r2 = constant_refiner(&unit, &empty, none).unwrap();
        assert!(check_perfect(&r1, 3, 0).unwrap().passed());
        assert!(check_perfect(&r2, 3, 0).unwrap().passed());
        let joined = concat_refiners(&r1, &r2).unwrap();
        assert!(!check_perfect(&joined, 3, 0).unwrap().passed());
        // Keeping the shorter constant on the left in both restores perfectness.
        let r2 = constant_refiner(&empty, &unit, TargetSet::empty(n)).unwrap();
        assert!(check_perfect(&concat_refiners(&r1, &r2).unwrap(), 3, 0).unwrap().passed());
    }
}
