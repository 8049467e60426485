//! Permutations of `{1, ..., n}` stored as dense image tables, with the
//! right-action convention used throughout the crate: `α^(pq) = (α^p)^q`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// The ground set `Ω = {1, ..., n}`.
///
/// Points above `n` form the pool of extra vertices used by extended graphs;
/// they are handed out in ascending order starting at `n + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Domain {
    n: usize,
}

impl Domain {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidObject("domain must be nonempty".into()));
        }
        Ok(Domain { n })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn contains(&self, point: usize) -> bool {
        (1..=self.n).contains(&point)
    }

    /// The `k`-th extra vertex (0-based), i.e. `n + 1 + k`.
    pub fn extra_vertex(&self, k: usize) -> usize {
        self.n + 1 + k
    }

    pub fn points(&self) -> impl Iterator<Item = usize> {
        1..=self.n
    }
}

/// A bijection of `{1, ..., degree}`.
///
/// Ordering is lexicographic on the image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // 0-based image table
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from 1-based images: `images[i - 1]` is the image of `i`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        let mut zero_based = Vec::with_capacity(degree);
        for &img in images {
            if img == 0 || img > degree {
                return Err(Error::PointOutOfRange { point: img, degree });
            }
            if std::mem::replace(&mut seen[img - 1], true) {
                return Err(Error::InvalidObject(format!(
                    "image {img} appears twice in image list"
                )));
            }
            zero_based.push(img - 1);
        }
        Ok(Permutation { images: zero_based })
    }

    pub(crate) fn from_zero_based(images: Vec<usize>) -> Self {
        debug_assert!({
            let mut sorted = images.clone();
            sorted.sort_unstable();
            sorted.iter().enumerate().all(|(i, &x)| i == x)
        });
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 1-based image list.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i + 1).collect()
    }

    /// Image of a 1-based point. Points above the degree are fixed.
    pub fn image(&self, point: usize) -> usize {
        match point.checked_sub(1).and_then(|i| self.images.get(i)) {
            Some(&img) => img + 1,
            None => point,
        }
    }

    /// Image of a point that must lie in the domain of the permutation.
    pub fn try_image(&self, point: usize) -> Result<usize> {
        if point == 0 || point > self.degree() {
            return Err(Error::PointOutOfRange {
                point,
                degree: self.degree(),
            });
        }
        Ok(self.images[point - 1] + 1)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.then(other))
    }

    pub(crate) fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    /// `g^-1 · self · g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Result<Permutation> {
        g.inverse().compose(self)?.compose(g)
    }

    /// Extends to a larger degree, fixing the new points.
    pub fn extend_to(&self, degree: usize) -> Permutation {
        let mut images = self.images.clone();
        images.extend(self.degree()..degree.max(self.degree()));
        Permutation { images }
    }

    /// Disjoint cycles (1-based), each starting at its least point, ordered by
    /// least point. Fixed points are omitted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut cycles = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x];
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Parses cycle notation such as `(1 2)(3 6 5)`; cycles are composed left to right.
    pub fn parse(text: &str, degree: usize) -> Result<Permutation> {
        parse_perm(text, degree)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses cycle notation over `{1, ..., degree}`. Points may be separated by
/// whitespace or commas. `()` is the identity.
pub fn parse_perm(text: &str, degree: usize) -> Result<Permutation> {
    let malformed = || Error::MalformedCycle(text.to_string());
    let mut result = Permutation::identity(degree);
    let mut rest = text.trim();
    if rest.is_empty() {
        return Err(malformed());
    }
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(malformed)?;
        let close = body.find(')').ok_or_else(malformed)?;
        let inner = &body[..close];
        if inner.contains('(') {
            return Err(malformed());
        }
        let mut points = Vec::new();
        for token in inner.split(|c: char| c.is_whitespace() || c == ',') {
            if token.is_empty() {
                continue;
            }
            let point: usize = token.parse().map_err(|_| malformed())?;
            if point == 0 || point > degree {
                return Err(Error::PointOutOfRange { point, degree });
            }
            if points.contains(&point) {
                return Err(Error::RepeatedPoint(point));
            }
            points.push(point);
        }
        let mut cycle: Vec<usize> = (0..degree).collect();
        for (i, &p) in points.iter().enumerate() {
            cycle[p - 1] = points[(i + 1) % points.len()] - 1;
        }
        result = result.then(&Permutation { images: cycle });
        rest = body[close + 1..].trim_start();
    }
    Ok(result)
}

pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation> {
    p.compose(q)
}

pub fn inverse(p: &Permutation) -> Permutation {
    p.inverse()
}

/// Restricts a permutation of a larger vertex set to `Ω = {1, ..., omega.size()}`.
pub fn restrict(p: &Permutation, omega: Domain) -> Result<Permutation> {
    let n = omega.size();
    if n > p.degree() {
        return Err(Error::DegreeMismatch(p.degree(), n));
    }
    let images = &p.images[..n];
    if images.iter().any(|&x| x >= n) {
        return Err(Error::NotSetwiseInvariant(n));
    }
    Ok(Permutation {
        images: images.to_vec(),
    })
}

/// All elements of `<gens>` in lexicographic order, or an overflow error if
/// the group has more than `cap` elements.
pub fn enumerate_group(degree: usize, gens: &[Permutation], cap: usize) -> Result<Vec<Permutation>> {
    for g in gens {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch(degree, g.degree()));
        }
    }
    let identity = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(identity.clone());
    queue.push_back(identity);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.then(g);
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Err(Error::GroupOverflow { cap });
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    if seen.len() > cap {
        return Err(Error::GroupOverflow { cap });
    }
    let mut elements: Vec<Permutation> = seen.into_iter().collect();
    elements.sort();
    Ok(elements)
}

/// A small generating set for a subgroup given by its full element list.
/// Elements are scanned in order and kept whenever they are not yet generated.
pub fn generators_for(degree: usize, elements: &[Permutation]) -> Vec<Permutation> {
    let mut gens: Vec<Permutation> = Vec::new();
    let mut generated: HashSet<Permutation> = HashSet::new();
    generated.insert(Permutation::identity(degree));
    for e in elements {
        if generated.contains(e) {
            continue;
        }
        gens.push(e.clone());
        let closure = enumerate_group(degree, &gens, usize::MAX)
            .expect("generators share the degree of the element list");
        generated = closure.into_iter().collect();
    }
    gens
}

/// Generators of `Sym({1, ..., n})`.
pub fn symmetric_generators(n: usize) -> Vec<Permutation> {
    let mut gens = Vec::new();
    if n >= 2 {
        let mut transposition: Vec<usize> = (0..n).collect();
        transposition.swap(0, 1);
        gens.push(Permutation { images: transposition });
    }
    if n >= 3 {
        gens.push(Permutation {
            images: (0..n).map(|i| (i + 1) % n).collect(),
        });
    }
    gens
}

/// A permutation group on `{1, ..., degree}` given by generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        Ok(PermGroup { degree, generators })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
        }
    }

    pub fn symmetric(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: symmetric_generators(degree),
        }
    }

    /// Parses a list of cycle-notation generators.
    pub fn parse<S: AsRef<str>>(degree: usize, gens: &[S]) -> Result<Self> {
        let generators = gens
            .iter()
            .map(|g| parse_perm(g.as_ref(), degree))
            .collect::<Result<Vec<_>>>()?;
        Ok(PermGroup { degree, generators })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self, cap: usize) -> Result<Vec<Permutation>> {
        enumerate_group(self.degree, &self.generators, cap)
    }

    pub fn order(&self, cap: usize) -> Result<usize> {
        Ok(self.elements(cap)?.len())
    }
}

/// The empty set, a subgroup `G`, or a right coset `Gx` of `Sym({1, ..., degree})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupCoset {
    degree: usize,
    generators: Vec<Permutation>,
    representative: Option<Permutation>,
    empty: bool,
}

impl GroupCoset {
    pub fn empty(degree: usize) -> Self {
        GroupCoset {
            degree,
            generators: Vec::new(),
            representative: None,
            empty: true,
        }
    }

    pub fn group(group: PermGroup) -> Self {
        GroupCoset {
            degree: group.degree,
            generators: group.generators,
            representative: None,
            empty: false,
        }
    }

    pub fn coset(group: PermGroup, representative: Permutation) -> Result<Self> {
        if representative.degree() != group.degree {
            return Err(Error::DegreeMismatch(group.degree, representative.degree()));
        }
        Ok(GroupCoset {
            degree: group.degree,
            generators: group.generators,
            representative: Some(representative),
            empty: false,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_empty(&self) -> bool {
        self.empty
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn representative(&self) -> Option<&Permutation> {
        self.representative.as_ref()
    }

    /// The subgroup part `G` of `Gx` (meaningless when empty).
    pub fn subgroup(&self) -> PermGroup {
        PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
        }
    }

    /// All elements, sorted lexicographically.
    pub fn elements(&self, cap: usize) -> Result<Vec<Permutation>> {
        if self.empty {
            return Ok(Vec::new());
        }
        let mut elements = enumerate_group(self.degree, &self.generators, cap)?;
        if let Some(rep) = &self.representative {
            elements = elements.iter().map(|g| g.then(rep)).collect();
            elements.sort();
        }
        Ok(elements)
    }

    pub fn order(&self, cap: usize) -> Result<usize> {
        if self.empty {
            return Ok(0);
        }
        enumerate_group(self.degree, &self.generators, cap).map(|e| e.len())
    }
}

impl fmt::Display for GroupCoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.empty {
            return writeln!(f, "empty");
        }
        for g in &self.generators {
            writeln!(f, "gen {g}")?;
        }
        if let Some(rep) = &self.representative {
            writeln!(f, "rep {rep}")?;
        }
        Ok(())
    }
}
