//! Individualise-refine backtracking over pairs of labelled-digraph stacks.
//!
//! Vertices are dense indices `0..size`. The caller maps its own vertex names
//! through `index` when building a [`Problem`]; a vertex missing from some
//! stack entry is treated as carrying a reserved "absent" label there.

use std::collections::{HashMap, VecDeque};

use crate::objects::LabelledDigraph;

/// Counters collected while searching.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Search-tree nodes created, including the root and dead children.
    pub nodes: usize,
    /// Nodes discarded because refinement showed the two sides incompatible.
    pub dead_ends: usize,
    /// Discrete nodes whose mapping was tested.
    pub leaves: usize,
}

impl SearchStats {
    pub fn absorb(&mut self, other: SearchStats) {
        self.nodes += other.nodes;
        self.dead_ends += other.dead_ends;
        self.leaves += other.leaves;
    }
}

const ABSENT: u32 = 0;

struct Layer {
    label: Vec<u32>,
    loop_label: Vec<u32>,
    cycle: Vec<u32>,
    out: Vec<Vec<(u32, usize)>>,
    inn: Vec<Vec<(u32, usize)>>,
    arcs: HashMap<(usize, usize), u32>,
}

impl Layer {
    fn build(
        size: usize,
        d: &LabelledDigraph,
        index: &dyn Fn(usize) -> usize,
        intern: &mut HashMap<String, u32>,
    ) -> Layer {
        let mut id = |s: &str| {
            let next = intern.len() as u32 + 1;
            *intern.entry(s.to_string()).or_insert(next)
        };
        let mut layer = Layer {
            label: vec![ABSENT; size],
            loop_label: vec![0; size],
            cycle: vec![0; size],
            out: vec![Vec::new(); size],
            inn: vec![Vec::new(); size],
            arcs: HashMap::new(),
        };
        for (&v, l) in d.vertex_labels() {
            layer.label[index(v)] = id(l);
        }
        for (&(a, b), l) in d.arcs() {
            let (a, b, l) = (index(a), index(b), id(l));
            layer.arcs.insert((a, b), l);
            if a == b {
                layer.loop_label[a] = l;
            } else {
                layer.out[a].push((l, b));
                layer.inn[b].push((l, a));
            }
        }
        for v in 0..size {
            layer.cycle[v] = layer.shortest_cycle(v);
        }
        layer
    }

    /// Length of the shortest directed cycle of length ≥ 2 through `v`, or 0.
    fn shortest_cycle(&self, v: usize) -> u32 {
        if self.out[v].is_empty() || self.inn[v].is_empty() {
            return 0;
        }
        let mut dist: HashMap<usize, u32> = HashMap::new();
        let mut queue = VecDeque::new();
        for &(_, w) in &self.out[v] {
            if dist.insert(w, 1).is_none() {
                queue.push_back(w);
            }
        }
        while let Some(u) = queue.pop_front() {
            let d = dist[&u];
            for &(_, w) in &self.out[u] {
                if w == v {
                    return d + 1;
                }
                if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(w) {
                    e.insert(d + 1);
                    queue.push_back(w);
                }
            }
        }
        0
    }
}

/// A search for maps from the left stack onto the right stack.
pub(crate) struct Problem {
    size: usize,
    left: Vec<Layer>,
    right: Vec<Layer>,
    initial: Option<Vec<u32>>,
}

impl Problem {
    /// `base_left`/`base_right` give an initial colouring that every mapping
    /// must preserve; stacks of different lengths give an empty search.
    pub(crate) fn new(
        size: usize,
        base_left: &[u32],
        base_right: &[u32],
        left: &[LabelledDigraph],
        right: &[LabelledDigraph],
        index: impl Fn(usize) -> usize,
    ) -> Problem {
        let mut intern = HashMap::new();
        let left: Vec<Layer> = left.iter().map(|d| Layer::build(size, d, &index, &mut intern)).collect();
        let right: Vec<Layer> = right.iter().map(|d| Layer::build(size, d, &index, &mut intern)).collect();
        let mut problem = Problem {
            size,
            left,
            right,
            initial: None,
        };
        if problem.left.len() == problem.right.len() {
            let sigs: Vec<Vec<u32>> = (0..2 * size)
                .map(|i| {
                    let (base, layers, v) = if i < size {
                        (base_left[i], &problem.left, i)
                    } else {
                        (base_right[i - size], &problem.right, i - size)
                    };
                    let mut sig = vec![base];
                    for layer in layers {
                        sig.extend([layer.label[v], layer.loop_label[v], layer.cycle[v]]);
                    }
                    sig
                })
                .collect();
            let mut colours = vec![0; 2 * size];
            if rank(&sigs, &mut colours, size) {
                problem.initial = Some(colours);
            }
        }
        problem
    }

    fn layers(&self, side: usize) -> &[Layer] {
        if side == 0 {
            &self.left
        } else {
            &self.right
        }
    }

    fn signature(&self, i: usize, colours: &[u32]) -> Vec<u32> {
        let side = i / self.size;
        let v = i % self.size;
        let offset = side * self.size;
        let mut parts: Vec<[u32; 4]> = Vec::new();
        for (l, layer) in self.layers(side).iter().enumerate() {
            for &(lab, w) in &layer.out[v] {
                parts.push([l as u32, 0, lab, colours[offset + w]]);
            }
            for &(lab, w) in &layer.inn[v] {
                parts.push([l as u32, 1, lab, colours[offset + w]]);
            }
        }
        parts.sort_unstable();
        let mut sig = Vec::with_capacity(1 + 4 * parts.len());
        sig.push(colours[i]);
        sig.extend(parts.into_iter().flatten());
        sig
    }

    /// One-dimensional colour refinement to a fixpoint, applied jointly to both
    /// sides. Returns false when the sides become incompatible.
    pub(crate) fn refine(&self, colours: &mut [u32]) -> bool {
        let mut classes = class_count(&colours[..self.size]);
        loop {
            let sigs: Vec<Vec<u32>> = (0..2 * self.size).map(|i| self.signature(i, colours)).collect();
            if !rank(&sigs, colours, self.size) {
                return false;
            }
            let now = class_count(&colours[..self.size]);
            if now == classes {
                return true;
            }
            classes = now;
        }
    }

    /// The refined root colouring, or `None` if the root is already dead.
    pub(crate) fn root(&self) -> Option<Vec<u32>> {
        let mut colours = self.initial.clone()?;
        self.refine(&mut colours).then_some(colours)
    }

    fn individualise(&self, colours: &[u32], v: usize, u: usize) -> Option<Vec<u32>> {
        let mut child = colours.to_vec();
        let fresh = colours.iter().max().map_or(0, |m| m + 1);
        child[v] = fresh;
        child[self.size + u] = fresh;
        self.refine(&mut child).then_some(child)
    }

    /// Smallest non-singleton left colour class (lowest colour on ties) and its least vertex.
    fn splitter(&self, colours: &[u32]) -> Option<(u32, usize)> {
        let mut sizes: HashMap<u32, (usize, usize)> = HashMap::new();
        for (v, &c) in colours[..self.size].iter().enumerate() {
            let e = sizes.entry(c).or_insert((0, v));
            e.0 += 1;
        }
        sizes
            .into_iter()
            .filter(|(_, (n, _))| *n > 1)
            .min_by_key(|&(c, (n, _))| (n, c))
            .map(|(c, (_, v))| (c, v))
    }

    fn candidates(&self, colours: &[u32], colour: u32) -> Vec<usize> {
        (0..self.size)
            .filter(|&u| colours[self.size + u] == colour)
            .collect()
    }

    fn leaf(&self, colours: &[u32], filter: &dyn Fn(&[usize]) -> bool, stats: &mut SearchStats) -> Option<Vec<usize>> {
        stats.leaves += 1;
        let mut by_colour: HashMap<u32, usize> = HashMap::new();
        for u in 0..self.size {
            by_colour.insert(colours[self.size + u], u);
        }
        let map: Vec<usize> = (0..self.size).map(|v| by_colour[&colours[v]]).collect();
        for (l, r) in self.left.iter().zip(&self.right) {
            if l.arcs.len() != r.arcs.len() {
                return None;
            }
            for v in 0..self.size {
                if l.label[v] != r.label[map[v]] {
                    return None;
                }
            }
            for (&(a, b), lab) in &l.arcs {
                if r.arcs.get(&(map[a], map[b])) != Some(lab) {
                    return None;
                }
            }
        }
        filter(&map).then_some(map)
    }

    fn is_discrete(&self, colours: &[u32]) -> bool {
        class_count(&colours[..self.size]) == self.size
    }

    fn search_one(
        &self,
        colours: &[u32],
        filter: &dyn Fn(&[usize]) -> bool,
        stats: &mut SearchStats,
    ) -> Option<Vec<usize>> {
        let Some((colour, v)) = self.splitter(colours) else {
            return self.leaf(colours, filter, stats);
        };
        for u in self.candidates(colours, colour) {
            stats.nodes += 1;
            match self.individualise(colours, v, u) {
                None => stats.dead_ends += 1,
                Some(child) => {
                    if let Some(map) = self.search_one(&child, filter, stats) {
                        return Some(map);
                    }
                }
            }
        }
        None
    }

    /// Some mapping of left onto right accepted by `filter`, as a vector of
    /// image indices.
    pub(crate) fn transporter(&self, filter: &dyn Fn(&[usize]) -> bool, stats: &mut SearchStats) -> Option<Vec<usize>> {
        stats.nodes += 1;
        let Some(root) = self.root() else {
            stats.dead_ends += 1;
            return None;
        };
        self.search_one(&root, filter, stats)
    }

    /// Generators of the group of left-to-left mappings accepted by `filter`,
    /// which must describe a subgroup. Both sides must hold the same stack.
    pub(crate) fn automorphisms(&self, filter: &dyn Fn(&[usize]) -> bool, stats: &mut SearchStats) -> Vec<Vec<usize>> {
        stats.nodes += 1;
        let mut gens = Vec::new();
        match self.root() {
            None => stats.dead_ends += 1,
            Some(root) => self.automorphism_level(&root, filter, stats, &mut gens),
        }
        gens
    }

    fn automorphism_level(
        &self,
        colours: &[u32],
        filter: &dyn Fn(&[usize]) -> bool,
        stats: &mut SearchStats,
        gens: &mut Vec<Vec<usize>>,
    ) {
        if self.is_discrete(colours) {
            stats.leaves += 1;
            return;
        }
        let (colour, v) = self.splitter(colours).expect("non-discrete colouring has a splitter");
        stats.nodes += 1;
        let first = self
            .individualise(colours, v, v)
            .expect("the identity path cannot die");
        self.automorphism_level(&first, filter, stats, gens);
        for u in self.candidates(colours, colour) {
            if u == v || orbit(v, gens, self.size)[u] {
                continue;
            }
            stats.nodes += 1;
            match self.individualise(colours, v, u) {
                None => stats.dead_ends += 1,
                Some(child) => {
                    if let Some(map) = self.search_one(&child, filter, stats) {
                        gens.push(map);
                    }
                }
            }
        }
    }

    /// Left and right colour classes of the refined root, in colour order.
    pub(crate) fn root_cells(&self) -> Option<(Vec<Vec<usize>>, Vec<Vec<usize>>)> {
        let colours = self.root()?;
        let cells = |side: usize| {
            let mut by: std::collections::BTreeMap<u32, Vec<usize>> = Default::default();
            for v in 0..self.size {
                by.entry(colours[side * self.size + v]).or_default().push(v);
            }
            by.into_values().collect::<Vec<_>>()
        };
        Some((cells(0), cells(1)))
    }
}

fn class_count(colours: &[u32]) -> usize {
    let mut seen: Vec<u32> = colours.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

/// Replaces colours by the rank of each signature among all signatures.
/// Returns false when the left and right signature multisets differ.
fn rank(sigs: &[Vec<u32>], colours: &mut [u32], size: usize) -> bool {
    let mut left: Vec<&Vec<u32>> = sigs[..size].iter().collect();
    let mut right: Vec<&Vec<u32>> = sigs[size..].iter().collect();
    left.sort_unstable();
    right.sort_unstable();
    if left != right {
        return false;
    }
    left.dedup();
    for (i, sig) in sigs.iter().enumerate() {
        colours[i] = left.binary_search(&sig).expect("sides agree") as u32;
    }
    true
}

fn orbit(point: usize, gens: &[Vec<usize>], size: usize) -> Vec<bool> {
    let mut seen = vec![false; size];
    seen[point] = true;
    let mut stack = vec![point];
    while let Some(p) = stack.pop() {
        for g in gens {
            let q = g[p];
            if !seen[q] {
                seen[q] = true;
                stack.push(q);
            }
        }
    }
    seen
}
