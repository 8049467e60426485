use std::collections::BTreeSet;

use refinery::encode::{encode_disjoint_sets, encode_perm_conj, encode_set_of_sets, SourceObject};
use refinery::objects::{LabelledDigraph, Stack, StackKind};
use refinery::oracle::{brute_filter, brute_transporter_elements, OracleConfig};
use refinery::search::{
    colour_refine, conjugacy_transporter, is_two_closed, normaliser, normaliser_overgroup, solve, solve_extended,
    two_closure, SearchState,
};
use refinery::{Action, PermGroup, Permutation};

const CAP: usize = 100_000;

fn p(s: &str, n: usize) -> Permutation {
    Permutation::parse(s, n).unwrap()
}

fn group(n: usize, gens: &[&str]) -> PermGroup {
    PermGroup::parse(n, gens).unwrap()
}

fn family(members: &[&[usize]]) -> BTreeSet<BTreeSet<usize>> {
    members.iter().map(|m| m.iter().copied().collect()).collect()
}

fn sorted(mut v: Vec<Permutation>) -> Vec<Permutation> {
    v.sort();
    v
}

#[test]
fn empty_stacks_give_the_symmetric_group() {
    let s = Stack::empty(4, StackKind::Digraph);
    let r = solve(&s, &s).unwrap();
    assert_eq!(r.coset.order(CAP).unwrap(), 24);
    let e = Stack::empty(4, StackKind::Extended);
    assert_eq!(solve_extended(&e, &e).unwrap().coset.order(CAP).unwrap(), 24);
}

#[test]
fn disjoint_set_clique_stabiliser() {
    let d = encode_disjoint_sets(4, &family(&[&[1, 4], &[2, 3]])).unwrap();
    let s = Stack::digraphs(4, vec![d]).unwrap();
    assert_eq!(solve(&s, &s).unwrap().coset.order(CAP).unwrap(), 8);
}

#[test]
fn permutation_conjugacy_transporter() {
    let s = Stack::digraphs(3, vec![encode_perm_conj(&p("(1 2)", 3))]).unwrap();
    let t = Stack::digraphs(3, vec![encode_perm_conj(&p("(1 3)", 3))]).unwrap();
    let r = solve(&s, &t).unwrap();
    let elements = r.coset.elements(CAP).unwrap();
    assert_eq!(elements.len(), 2);
    for x in elements {
        assert_eq!(p("(1 2)", 3).act(&x).unwrap(), p("(1 3)", 3));
    }
}

#[test]
fn centraliser_of_a_two_three_pattern() {
    let g = p("(1 2)(3 6 5)", 6);
    let s = Stack::digraphs(6, vec![encode_perm_conj(&g)]).unwrap();
    let found = sorted(solve(&s, &s).unwrap().coset.elements(CAP).unwrap());
    let expected = brute_filter(|x| g.act(x).unwrap() == g, 6, &OracleConfig::default()).unwrap();
    assert_eq!(found.len(), 6);
    assert_eq!(found, expected);
}

#[test]
fn extended_graph_of_two_pairs() {
    let e = encode_set_of_sets(4, &family(&[&[1, 4], &[2, 3]])).unwrap();
    let s = Stack::extended(4, vec![e]).unwrap();
    let r = solve_extended(&s, &s).unwrap();
    let found = sorted(r.coset.elements(CAP).unwrap());
    let expected = group(4, &["(1 4)", "(1 2)(3 4)"]).elements(CAP).unwrap();
    assert_eq!(found, expected);
    let x = family(&[&[1, 4], &[2, 3]]);
    assert_eq!(found, brute_transporter_elements(&x, &x, 4, &OracleConfig::default()).unwrap());
}

#[test]
fn mismatched_extra_counts_are_empty() {
    let a = Stack::extended(4, vec![encode_set_of_sets(4, &family(&[&[1], &[2]])).unwrap()]).unwrap();
    let b = Stack::extended(4, vec![encode_set_of_sets(4, &family(&[&[1], &[2], &[3]])).unwrap()]).unwrap();
    assert!(solve_extended(&a, &b).unwrap().coset.is_empty());
}

#[test]
fn two_closures() {
    let c4 = group(4, &["(1 2 3 4)"]);
    assert_eq!(two_closure(&c4).unwrap().order(CAP).unwrap(), 4);
    assert!(is_two_closed(&c4, CAP).unwrap());
    let a4 = group(4, &["(1 2 3)", "(2 3 4)"]);
    assert_eq!(two_closure(&a4).unwrap().order(CAP).unwrap(), 24);
    assert!(!is_two_closed(&a4, CAP).unwrap());
    let s5 = PermGroup::symmetric(5);
    assert_eq!(two_closure(&s5).unwrap().order(CAP).unwrap(), 120);
    let h = group(6, &["(1 2 3)(4 5 6)", "(1 2)(3 5)"]);
    assert!(!is_two_closed(&h, CAP).unwrap());
    assert_eq!(two_closure(&h).unwrap().order(CAP).unwrap(), 720);
}

#[test]
fn two_closure_is_idempotent() {
    for gens in [&["(1 2 3)(4 5 6)", "(1 4)(2 5)"][..], &["(1 2)(3 4)"], &["(1 2 3)", "(4 5)"]] {
        let g = group(6, gens);
        let once = two_closure(&g).unwrap().subgroup();
        let twice = two_closure(&once).unwrap().subgroup();
        assert_eq!(once.elements(CAP).unwrap(), twice.elements(CAP).unwrap());
    }
}

#[test]
fn normaliser_of_the_example_group() {
    let g = group(6, &["(1 2 3)(4 5 6)", "(1 4)(2 5)"]);
    let over = normaliser_overgroup(&g).unwrap();
    let exact = normaliser(&g, CAP).unwrap();
    assert!(exact.exact);
    assert_eq!(over.order(CAP).unwrap(), 48);
    assert_eq!(
        sorted(over.elements(CAP).unwrap()),
        sorted(exact.coset.elements(CAP).unwrap())
    );
    let elements: BTreeSet<Permutation> = g.elements(CAP).unwrap().into_iter().collect();
    let brute = brute_filter(
        |x| g.generators().iter().all(|s| elements.contains(&s.act(x).unwrap())),
        6,
        &OracleConfig::default(),
    )
    .unwrap();
    assert_eq!(brute, sorted(exact.coset.elements(CAP).unwrap()));
}

#[test]
fn normaliser_extremes() {
    assert_eq!(normaliser(&PermGroup::trivial(4), CAP).unwrap().coset.order(CAP).unwrap(), 24);
    assert_eq!(normaliser(&PermGroup::symmetric(4), CAP).unwrap().coset.order(CAP).unwrap(), 24);
    assert_eq!(normaliser(&group(4, &["(1 2 3 4)"]), CAP).unwrap().coset.order(CAP).unwrap(), 8);
}

#[test]
fn conjugacy() {
    let g = group(4, &["(1 2)"]);
    let h = group(4, &["(3 4)"]);
    let c = conjugacy_transporter(&g, &h, CAP).unwrap();
    let elements = c.coset.elements(CAP).unwrap();
    assert_eq!(elements.len(), 4);
    for x in elements {
        assert_eq!(p("(1 2)", 4).act(&x).unwrap(), p("(3 4)", 4));
    }
    let c4 = group(4, &["(1 2 3 4)"]);
    let v4 = group(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
    assert!(conjugacy_transporter(&c4, &v4, CAP).unwrap().coset.is_empty());
    let same = conjugacy_transporter(&c4, &c4, CAP).unwrap();
    assert_eq!(same, normaliser(&c4, CAP).unwrap());
}

#[test]
fn set_of_sets_stabiliser_of_a_two_transitive_group() {
    let h = group(6, &["(1 2 3)(4 5 6)", "(1 2)(3 5)"]);
    let base: BTreeSet<usize> = [1, 2, 3].into();
    let orbit: BTreeSet<BTreeSet<usize>> = h.elements(CAP).unwrap().iter().map(|x| base.act(x).unwrap()).collect();
    assert_eq!(orbit.len(), 10);
    let s = Stack::extended(6, vec![encode_set_of_sets(6, &orbit).unwrap()]).unwrap();
    let found = sorted(solve_extended(&s, &s).unwrap().coset.elements(CAP).unwrap());
    assert_eq!(found, h.elements(CAP).unwrap());
    let x = SourceObject::SetOfSets(orbit);
    assert_eq!(found.len(), 60);
    assert!(found.iter().all(|g| x.maps_to(g, &x)));
}

#[test]
fn colour_refinement_reads_cycle_structure() {
    let g = p("(1 2)(3 6 5)", 6);
    let s = Stack::digraphs(6, vec![encode_perm_conj(&g)]).unwrap();
    let state = colour_refine(SearchState::new(&s, &s).unwrap());
    assert!(!state.is_dead());
    let cells: BTreeSet<BTreeSet<usize>> = state.left_cells().cells().iter().cloned().collect();
    assert_eq!(cells, family(&[&[4], &[1, 2], &[3, 5, 6]]));

    let plain = Stack::digraphs(4, vec![LabelledDigraph::uniform(1..=4, "x")]).unwrap();
    let state = colour_refine(SearchState::new(&plain, &plain).unwrap());
    assert_eq!(state.left_cells().cells().len(), 1);

    let loops = |k: usize| {
        let mut d = LabelledDigraph::uniform(1..=4, "x");
        for v in 1..=k {
            d.add_arc(v, v, "x").unwrap();
        }
        Stack::digraphs(4, vec![d]).unwrap()
    };
    assert!(colour_refine(SearchState::new(&loops(2), &loops(3)).unwrap()).is_dead());
}
