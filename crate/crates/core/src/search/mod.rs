//! Stabilisers and transporters of stacks by backtrack search, and the group
//! computations built on them: 2-closure, normaliser overgroups, exact
//! normalisers and conjugacy transporters.

pub(crate) mod engine;

use std::collections::BTreeSet;

pub use engine::SearchStats;
use engine::Problem;

use crate::action::Action;
use crate::encode::{encode_set_of_digraphs, orbital_graphs};
use crate::error::{Error, Result};
use crate::objects::{LabelledDigraph, OrderedPartition, Stack, StackKind};
use crate::perm::{generators_for, GroupCoset, PermGroup, Permutation};
use crate::refiner::RefinerPair;

/// The outcome of one search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub coset: GroupCoset,
    /// Size of the larger of the two search trees (transporter and stabiliser).
    pub tree_nodes: usize,
    /// Counters summed over both searches.
    pub stats: SearchStats,
    /// Leaves that were valid stack isomorphisms but rejected by a membership test.
    pub filtered: usize,
}

/// The two stacks of a search node and their colour classes.
#[derive(Debug, Clone)]
pub struct SearchState {
    left: Vec<LabelledDigraph>,
    right: Vec<LabelledDigraph>,
    degree: usize,
    left_cells: OrderedPartition,
    right_cells: OrderedPartition,
    dead: bool,
    refinements: usize,
}

impl SearchState {
    /// The root node for `Iso(left, right)`. Both stacks are lifted to labelled
    /// digraphs on `Ω`; extended-graph stacks are not accepted here.
    pub fn new(left: &Stack, right: &Stack) -> Result<SearchState> {
        if left.degree() != right.degree() {
            return Err(Error::DegreeMismatch(left.degree(), right.degree()));
        }
        let degree = left.degree();
        Ok(SearchState {
            left: left.as_digraphs()?,
            right: right.as_digraphs()?,
            degree,
            left_cells: OrderedPartition::unit(degree),
            right_cells: OrderedPartition::unit(degree),
            dead: left.len() != right.len(),
            refinements: 0,
        })
    }

    pub fn left_cells(&self) -> &OrderedPartition {
        &self.left_cells
    }

    pub fn right_cells(&self) -> &OrderedPartition {
        &self.right_cells
    }

    pub fn is_dead(&self) -> bool {
        self.dead
    }

    /// Number of refinement passes applied so far.
    pub fn refinements(&self) -> usize {
        self.refinements
    }
}

fn cells_to_partition(degree: usize, cells: Vec<Vec<usize>>) -> OrderedPartition {
    let cells = cells
        .into_iter()
        .map(|c| c.into_iter().map(|v| v + 1).collect::<BTreeSet<_>>())
        .collect();
    OrderedPartition::new(degree, cells).expect("colour classes partition the domain")
}

/// Iterated colour refinement of both sides to a common fixpoint. A node whose
/// sides cannot be matched is returned dead with its cells unchanged.
pub fn colour_refine(state: SearchState) -> SearchState {
    let mut state = state;
    if state.dead {
        return state;
    }
    state.refinements += 1;
    let n = state.degree;
    let index = |v: usize| v - 1;
    let mut base_left = vec![0u32; n];
    let mut base_right = vec![0u32; n];
    for (i, cell) in state.left_cells.cells().iter().enumerate() {
        for &p in cell {
            base_left[p - 1] = i as u32;
        }
    }
    for (i, cell) in state.right_cells.cells().iter().enumerate() {
        for &p in cell {
            base_right[p - 1] = i as u32;
        }
    }
    let sizes_match = state
        .left_cells
        .cells()
        .iter()
        .map(BTreeSet::len)
        .eq(state.right_cells.cells().iter().map(BTreeSet::len));
    let problem = Problem::new(n, &base_left, &base_right, &state.left, &state.right, index);
    match problem.root_cells().filter(|_| sizes_match) {
        None => state.dead = true,
        Some((l, r)) => {
            state.left_cells = cells_to_partition(n, l);
            state.right_cells = cells_to_partition(n, r);
        }
    }
    state
}

/// A closed search problem on `size` dense vertices whose first `omega` are `Ω`.
struct Instance {
    omega: usize,
    size: usize,
    base: Vec<u32>,
    left: Vec<LabelledDigraph>,
    right: Vec<LabelledDigraph>,
}

impl Instance {
    /// All mappings of left onto right whose restriction to `Ω` passes `accept`.
    /// `accept` must describe a coset for the result to be exact.
    fn run(&self, accept: &dyn Fn(&Permutation) -> bool) -> SolveResult {
        let n = self.omega;
        let restrict = |m: &[usize]| Permutation::from_zero_based(m[..n].to_vec());
        let filtered = std::cell::Cell::new(0usize);

        let transport = Problem::new(self.size, &self.base, &self.base, &self.left, &self.right, |v| v - 1);
        let mut t_stats = SearchStats::default();
        let found = transport.transporter(
            &|m: &[usize]| {
                let ok = accept(&restrict(m));
                if !ok {
                    filtered.set(filtered.get() + 1);
                }
                ok
            },
            &mut t_stats,
        );
        let Some(rep) = found.map(|m| restrict(&m)) else {
            return SolveResult {
                coset: GroupCoset::empty(n),
                tree_nodes: t_stats.nodes,
                stats: t_stats,
                filtered: filtered.get(),
            };
        };

        let auto = Problem::new(self.size, &self.base, &self.base, &self.left, &self.left, |v| v - 1);
        let mut a_stats = SearchStats::default();
        let maps = auto.automorphisms(
            &|m: &[usize]| {
                let ok = accept(&restrict(m).then(&rep));
                if !ok {
                    filtered.set(filtered.get() + 1);
                }
                ok
            },
            &mut a_stats,
        );
        let mut gens: Vec<Permutation> = Vec::new();
        for m in maps {
            let g = restrict(&m);
            if !g.is_identity() && !gens.contains(&g) {
                gens.push(g);
            }
        }
        let group = PermGroup::new(n, gens).expect("generators live on Ω");
        let coset = if rep.is_identity() {
            GroupCoset::group(group)
        } else {
            GroupCoset::coset(group, rep).expect("representative lives on Ω")
        };
        let mut stats = t_stats;
        stats.absorb(a_stats);
        SolveResult {
            coset,
            tree_nodes: t_stats.nodes.max(a_stats.nodes),
            stats,
            filtered: filtered.get(),
        }
    }
}

fn digraph_instance(n: usize, left: Vec<LabelledDigraph>, right: Vec<LabelledDigraph>) -> Instance {
    Instance {
        omega: n,
        size: n,
        base: vec![0; n],
        left,
        right,
    }
}

/// Places entry `i` of both stacks on its own block of extra vertices, so
/// that renamings of different entries' extra vertices stay independent.
fn extended_instance(left: &Stack, right: &Stack) -> Result<Option<Instance>> {
    let n = left.degree();
    let s = left.as_extended()?;
    let t = right.as_extended()?;
    if s.len() != t.len() || s.iter().zip(&t).any(|(a, b)| a.extra_count() != b.extra_count()) {
        return Ok(None);
    }
    let mut base = vec![0u32; n];
    let (mut l, mut r) = (Vec::new(), Vec::new());
    let mut next = n + 1;
    for (i, (a, b)) in s.iter().zip(&t).enumerate() {
        l.push(a.relocated(next));
        r.push(b.relocated(next));
        next += a.extra_count();
        base.extend(std::iter::repeat_n(i as u32 + 1, a.extra_count()));
    }
    Ok(Some(Instance {
        omega: n,
        size: next - 1,
        base,
        left: l,
        right: r,
    }))
}

fn empty_result(n: usize) -> SolveResult {
    SolveResult {
        coset: GroupCoset::empty(n),
        tree_nodes: 1,
        stats: SearchStats {
            nodes: 1,
            dead_ends: 1,
            leaves: 0,
        },
        filtered: 0,
    }
}

fn solve_accepting(left: &Stack, right: &Stack, accept: &dyn Fn(&Permutation) -> bool) -> Result<SolveResult> {
    if left.degree() != right.degree() {
        return Err(Error::DegreeMismatch(left.degree(), right.degree()));
    }
    let n = left.degree();
    let kind = [left, right]
        .iter()
        .filter(|s| !s.is_empty())
        .map(|s| s.kind())
        .max()
        .unwrap_or(StackKind::Digraph);
    if kind == StackKind::Extended {
        return Ok(match extended_instance(left, right)? {
            Some(instance) => instance.run(accept),
            None => empty_result(n),
        });
    }
    let (s, t) = (left.as_digraphs()?, right.as_digraphs()?);
    if s.len() != t.len() {
        return Ok(empty_result(n));
    }
    Ok(digraph_instance(n, s, t).run(accept))
}

/// `Iso(S, T)` as a coset of `Auto(S)`. Stacks of different kinds are lifted
/// to the finer kind; extended-graph stacks go through [`solve_extended`].
pub fn solve(left: &Stack, right: &Stack) -> Result<SolveResult> {
    solve_accepting(left, right, &|_| true)
}

/// `Iso(S, T)` for stacks of extended graphs, computed in `Sym(V)` and
/// restricted to `Ω`. Entries with different numbers of extra vertices give
/// the empty set.
pub fn solve_extended(left: &Stack, right: &Stack) -> Result<SolveResult> {
    if left.degree() != right.degree() {
        return Err(Error::DegreeMismatch(left.degree(), right.degree()));
    }
    Ok(match extended_instance(left, right)? {
        Some(instance) => instance.run(&|_| true),
        None => empty_result(left.degree()),
    })
}

/// Searches for the intersection of the refiners' target sets. With
/// `apply_refiners`, every refiner extends the empty root stacks once before
/// branching; without it the search starts from `Sym(Ω)` and relies on the
/// membership tests alone.
pub fn solve_intersection(degree: usize, refiners: &[RefinerPair], apply_refiners: bool) -> Result<SolveResult> {
    let mut left = Stack::empty(degree, StackKind::Point);
    let mut right = Stack::empty(degree, StackKind::Point);
    for r in refiners {
        if r.degree() != degree {
            return Err(Error::DegreeMismatch(r.degree(), degree));
        }
        if apply_refiners {
            let empty = Stack::empty(degree, StackKind::Point);
            left = left.concat_lifted(&r.apply_left(&empty)?)?;
            right = right.concat_lifted(&r.apply_right(&empty)?)?;
        }
    }
    let accept = |g: &Permutation| refiners.iter().all(|r| r.target().contains(g));
    solve_accepting(&left, &right, &accept)
}

fn orbital_stack(g: &PermGroup) -> Result<Stack> {
    Stack::digraphs(g.degree(), orbital_graphs(g))
}

/// The 2-closure of `⟨gens⟩`: the stabiliser of every orbital graph.
pub fn two_closure(g: &PermGroup) -> Result<GroupCoset> {
    let stack = orbital_stack(g)?;
    Ok(solve(&stack, &stack)?.coset)
}

/// Whether `⟨gens⟩` equals its 2-closure, by comparing orders.
pub fn is_two_closed(g: &PermGroup, cap: usize) -> Result<bool> {
    let closure = two_closure(g)?;
    Ok(g.order(cap)? == closure.order(cap)?)
}

/// The stabiliser of the set of orbital graphs of `G`, which is the
/// normaliser of the 2-closure of `G` and contains the normaliser of `G`.
pub fn normaliser_overgroup(g: &PermGroup) -> Result<GroupCoset> {
    let stack = Stack::extended(g.degree(), vec![encode_set_of_digraphs(g.degree(), &orbital_graphs(g))?])?;
    Ok(solve_extended(&stack, &stack)?.coset)
}

/// Result of an exact computation that falls back to an overgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilteredCoset {
    pub coset: GroupCoset,
    /// False when the cap was exceeded and `coset` is only a superset.
    pub exact: bool,
}

fn same_group(g: &PermGroup, h_elements: &BTreeSet<Permutation>, x: &Permutation, order: usize) -> bool {
    order == h_elements.len()
        && g.generators()
            .iter()
            .all(|s| h_elements.contains(&s.act(x).expect("degrees agree")))
}

/// `N_Sym(Ω)(G)`: elements of the overgroup that conjugate `G` to itself.
pub fn normaliser(g: &PermGroup, cap: usize) -> Result<FilteredCoset> {
    conjugacy_transporter(g, g, cap)
}

/// `{x : G^x = H}`, found inside the transporter of the orbital-graph sets of
/// `G` and `H` and filtered by enumeration.
pub fn conjugacy_transporter(g: &PermGroup, h: &PermGroup, cap: usize) -> Result<FilteredCoset> {
    let n = g.degree();
    if h.degree() != n {
        return Err(Error::DegreeMismatch(n, h.degree()));
    }
    let g_order = g.order(cap)?;
    let h_elements: BTreeSet<Permutation> = h.elements(cap)?.into_iter().collect();
    if g_order != h_elements.len() {
        return Ok(FilteredCoset {
            coset: GroupCoset::empty(n),
            exact: true,
        });
    }
    let left = Stack::extended(n, vec![encode_set_of_digraphs(n, &orbital_graphs(g))?])?;
    let right = Stack::extended(n, vec![encode_set_of_digraphs(n, &orbital_graphs(h))?])?;
    let over = solve_extended(&left, &right)?.coset;
    let elements = match over.elements(cap) {
        Ok(e) => e,
        Err(Error::GroupOverflow { .. }) => return Ok(FilteredCoset { coset: over, exact: false }),
        Err(e) => return Err(e),
    };
    let good: Vec<Permutation> = elements
        .into_iter()
        .filter(|x| same_group(g, &h_elements, x, g_order))
        .collect();
    let Some(first) = good.first().cloned() else {
        return Ok(FilteredCoset {
            coset: GroupCoset::empty(n),
            exact: true,
        });
    };
    let inv = first.inverse();
    let group_elements: Vec<Permutation> = good.iter().map(|x| x.then(&inv)).collect();
    let group = PermGroup::new(n, generators_for(n, &group_elements))?;
    let coset = if first.is_identity() {
        GroupCoset::group(group)
    } else {
        GroupCoset::coset(group, first)?
    };
    Ok(FilteredCoset { coset, exact: true })
}
