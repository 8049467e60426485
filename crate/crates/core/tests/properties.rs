use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use refinery::encode::{
    encode_object, encode_set_of_digraphs, orbital_graphs, random_source, SourceObject, SOURCE_KINDS,
};
use refinery::objects::{extended_equal, stack_concat, ExtendedGraph, LabelledDigraph, Stack, StackKind};
use refinery::oracle::{brute_filter, OracleConfig};
use refinery::perm::{enumerate_group, restrict, Domain};
use refinery::refiner::{random_digraph, random_stack};
use refinery::search::{colour_refine, normaliser_overgroup, solve, solve_extended, SearchState};
use refinery::{Action, PermGroup, Permutation};

const CAP: usize = 100_000;

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(&images).unwrap())
}

fn sized_perms(k: usize) -> impl Strategy<Value = (usize, Vec<Permutation>)> {
    (3usize..=6).prop_flat_map(move |n| (Just(n), proptest::collection::vec(perm(n), k)))
}

fn sorted(mut v: Vec<Permutation>) -> Vec<Permutation> {
    v.sort();
    v
}

fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Permutation {
    use rand::seq::SliceRandom;
    let mut images: Vec<usize> = (1..=n).collect();
    images.shuffle(rng);
    Permutation::from_images(&images).unwrap()
}

fn oracle() -> OracleConfig {
    OracleConfig::default()
}

/// A random extended graph with `extra` extra vertices numbered from `first`.
fn random_extended(rng: &mut ChaCha8Rng, n: usize, extra: usize, first: usize) -> ExtendedGraph {
    let mut d = random_digraph(rng, n);
    let mut extras: Vec<usize> = (first..first + extra).collect();
    for &v in &extras {
        d.add_vertex(v, if rng.gen_bool(0.5) { "b:s" } else { "b:t" }).unwrap();
    }
    extras.extend(1..=n);
    for &a in &extras {
        for &b in &extras {
            if (a > n || b > n) && rng.gen_bool(0.2) {
                d.add_arc(a, b, "x").unwrap();
            }
        }
    }
    ExtendedGraph::new(n, d).unwrap()
}

/// Moves every extra vertex of `e` through `rename`, a bijection of the extras.
fn renamed(e: &ExtendedGraph, rename: impl Fn(usize) -> usize) -> ExtendedGraph {
    let n = e.omega();
    ExtendedGraph::new(n, e.representative().map_vertices(|v| if v > n { rename(v) } else { v })).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn action_is_a_right_action((n, gs) in sized_perms(3), seed in any::<u64>()) {
        let (g, h) = (&gs[0], &gs[1]);
        let gh = g.compose(h).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let set: BTreeSet<usize> = (1..=n).filter(|_| rng.gen_bool(0.5)).collect();
        prop_assert_eq!(set.act(&gh).unwrap(), set.act(g).unwrap().act(h).unwrap());
        let p = &gs[2];
        prop_assert_eq!(p.act(&gh).unwrap(), p.act(g).unwrap().act(h).unwrap());
        let d = random_digraph(&mut rng, n);
        prop_assert_eq!(d.act(&gh).unwrap(), d.act(g).unwrap().act(h).unwrap());
        let s = random_stack(&mut rng, n, StackKind::Partition, 2);
        prop_assert_eq!(s.act(&gh).unwrap(), s.act(g).unwrap().act(h).unwrap());
        prop_assert_eq!(set.act(&Permutation::identity(n)).unwrap(), set);
    }

    #[test]
    fn enumerated_groups_are_closed((n, gs) in sized_perms(2)) {
        let elements = enumerate_group(n, &gs, CAP).unwrap();
        let set: BTreeSet<&Permutation> = elements.iter().collect();
        prop_assert!(set.contains(&Permutation::identity(n)));
        prop_assert_eq!(set.len(), elements.len());
        for a in &elements {
            prop_assert!(set.contains(&a.inverse()));
            for b in &gs {
                prop_assert!(set.contains(&a.compose(b).unwrap()));
            }
        }
    }

    #[test]
    fn restriction_is_a_homomorphism(a in perm(3), b in perm(3), c in perm(2), d in perm(2)) {
        let join = |x: &Permutation, y: &Permutation| {
            let mut images = x.images();
            images.extend(y.images().into_iter().map(|v| v + 3));
            Permutation::from_images(&images).unwrap()
        };
        let (p, q) = (join(&a, &c), join(&b, &d));
        let omega = Domain::new(3).unwrap();
        let pq = restrict(&p.compose(&q).unwrap(), omega).unwrap();
        let expected = restrict(&p, omega).unwrap().compose(&restrict(&q, omega).unwrap()).unwrap();
        prop_assert_eq!(pq, expected);
        prop_assert_eq!(restrict(&p, omega).unwrap(), a);
    }

    #[test]
    fn extended_equality_is_an_equivalence(n in 2usize..=5, extra in 0usize..=6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_extended(&mut rng, n, extra, n + 1);
        // Other members of the same orbit: reversed extras and extras moved far away.
        let last = n + extra;
        let b = renamed(&a, |v| n + 1 + last - v);
        let c = renamed(&b, |v| v + 100);
        prop_assert!(extended_equal(&a, &a));
        prop_assert!(extended_equal(&a, &b) && extended_equal(&b, &a));
        prop_assert!(extended_equal(&b, &c) && extended_equal(&a, &c));
        let other = random_extended(&mut rng, n, extra, n + 1);
        prop_assert_eq!(extended_equal(&a, &other), extended_equal(&other, &a));
        prop_assert_eq!(extended_equal(&b, &other), extended_equal(&a, &other));
    }

    #[test]
    fn extended_equality_matches_renaming_by_brute_force(n in 2usize..=4, extra in 0usize..=6, seed in any::<u64>(), image in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_extended(&mut rng, n, extra, n + 1);
        let b = if image {
            let shuffle = random_perm(&mut rng, extra.max(1));
            renamed(&a, |v| n + shuffle.image(v - n))
        } else {
            random_extended(&mut rng, n, extra, n + 1)
        };
        let (ra, rb) = (a.normalised(), b.normalised());
        let brute = enumerate_group(extra.max(1), &refinery::perm::symmetric_generators(extra.max(1)), CAP)
                .unwrap()
                .iter()
                .any(|s| ra.map_vertices(|v| if v > n { n + s.image(v - n) } else { v }) == rb);
        prop_assert_eq!(extended_equal(&a, &b), brute);
    }

    #[test]
    fn action_on_extended_graphs_ignores_the_representative(n in 2usize..=5, extra in 0usize..=4, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_extended(&mut rng, n, extra, n + 1);
        let b = renamed(&a, |v| v + 7);
        let g = random_perm(&mut rng, n);
        prop_assert!(extended_equal(&a.act(&g).unwrap(), &b.act(&g).unwrap()));
    }

    #[test]
    fn concatenation_is_associative(n in 2usize..=6, seed in any::<u64>(), lens in (0usize..3, 0usize..3, 0usize..3)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let [a, b, c] = [lens.0, lens.1, lens.2].map(|len| random_stack(&mut rng, n, StackKind::Digraph, len));
        let left = stack_concat(&stack_concat(&a, &b).unwrap(), &c).unwrap();
        let right = stack_concat(&a, &stack_concat(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left.len(), a.len() + b.len() + c.len());
        prop_assert_eq!(left, right);
    }

    #[test]
    fn encodings_are_equivariant_and_injective(kind_index in 0..SOURCE_KINDS.len(), n in 3usize..=5, seed in any::<u64>()) {
        let kind = SOURCE_KINDS[kind_index];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_perm(&mut rng, n);
        let x = random_source(&mut rng, n, kind).unwrap();
        let moved = encode_object(n, &x.act(&g).unwrap()).unwrap();
        prop_assert_eq!(moved, encode_object(n, &x).unwrap().act(&g).unwrap());
        let y = random_source(&mut rng, n, kind).unwrap();
        let same_encoding = encode_object(n, &x).unwrap() == encode_object(n, &y).unwrap();
        let same_object = x.maps_to(&Permutation::identity(n), &y);
        let lossy = matches!(&x, SourceObject::DisjointSets(a) if !refinery::encode::is_disjoint_family(a))
            || matches!(&y, SourceObject::DisjointSets(a) if !refinery::encode::is_disjoint_family(a))
            || kind == "group";
        if !lossy {
            prop_assert_eq!(same_encoding, same_object);
        }
    }

    #[test]
    fn search_matches_the_oracle_on_digraph_stacks(n in 2usize..=6, len in 0usize..=3, seed in any::<u64>(), image in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_stack(&mut rng, n, StackKind::Digraph, len);
        let t = if image {
            let g = random_perm(&mut rng, n);
            s.act(&g).unwrap()
        } else {
            random_stack(&mut rng, n, StackKind::Digraph, len)
        };
        let found = sorted(solve(&s, &t).unwrap().coset.elements(CAP).unwrap());
        let brute = brute_filter(|g| s.act(g).unwrap() == t, n, &oracle()).unwrap();
        prop_assert_eq!(found, brute);
    }

    #[test]
    fn search_matches_the_oracle_on_extended_stacks(n in 2usize..=5, extra in 0usize..=6, seed in any::<u64>(), image in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_extended(&mut rng, n, extra, n + 1);
        let s = Stack::extended(n, vec![e.clone()]).unwrap();
        let t = if image {
            let g = random_perm(&mut rng, n);
            s.act(&g).unwrap()
        } else {
            Stack::extended(n, vec![random_extended(&mut rng, n, extra, n + 1)]).unwrap()
        };
        let found = sorted(solve_extended(&s, &t).unwrap().coset.elements(CAP).unwrap());
        let brute = brute_filter(|g| s.act(g).unwrap() == t, n, &oracle()).unwrap();
        prop_assert_eq!(found, brute);
    }

    #[test]
    fn colour_refinement_keeps_every_isomorphism(n in 2usize..=6, len in 1usize..=2, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_perm(&mut rng, n);
        let s = random_stack(&mut rng, n, StackKind::Digraph, len);
        let t = s.act(&g).unwrap();
        let state = colour_refine(SearchState::new(&s, &t).unwrap());
        prop_assert!(!state.is_dead());
        for x in brute_filter(|x| s.act(x).unwrap() == t, n, &oracle()).unwrap() {
            let moved = state.left_cells().act(&x).unwrap();
            prop_assert_eq!(moved.cells(), state.right_cells().cells());
        }
    }

    #[test]
    fn normalisers_lie_in_the_orbital_overgroup((n, gs) in sized_perms(2)) {
        let g = PermGroup::new(n, gs).unwrap();
        let elements: BTreeSet<Permutation> = g.elements(CAP).unwrap().into_iter().collect();
        let over: BTreeSet<Permutation> = normaliser_overgroup(&g).unwrap().elements(CAP).unwrap().into_iter().collect();
        let normalising = brute_filter(
            |x| g.generators().iter().all(|s| elements.contains(&s.act(x).unwrap())),
            n,
            &oracle(),
        ).unwrap();
        for x in &normalising {
            prop_assert!(over.contains(x));
        }
    }

    #[test]
    fn set_of_digraphs_stabiliser_is_the_setwise_stabiliser(n in 2usize..=5, k in 0usize..=3, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let members: Vec<LabelledDigraph> = (0..k).map(|_| random_digraph(&mut rng, n)).collect();
        let set: BTreeSet<LabelledDigraph> = members.iter().cloned().collect();
        let s = Stack::extended(n, vec![encode_set_of_digraphs(n, &members).unwrap()]).unwrap();
        let found = sorted(solve_extended(&s, &s).unwrap().coset.elements(CAP).unwrap());
        let brute = brute_filter(|g| set.act(g).unwrap() == set, n, &oracle()).unwrap();
        prop_assert_eq!(found, brute);
    }

    #[test]
    fn oracle_transporters_shift_by_the_image(n in 2usize..=5, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_perm(&mut rng, n);
        let x = random_source(&mut rng, n, "set-of-sets").unwrap();
        let y = random_source(&mut rng, n, "set-of-sets").unwrap();
        let yh = y.act(&h).unwrap();
        let plain = brute_filter(|g| x.maps_to(g, &y), n, &oracle()).unwrap();
        let shifted = brute_filter(|g| x.maps_to(g, &yh), n, &oracle()).unwrap();
        let expected = sorted(plain.iter().map(|g| g.compose(&h).unwrap()).collect());
        prop_assert_eq!(shifted, expected);
    }
}

#[test]
fn orbital_graphs_partition_the_square() {
    let g = PermGroup::parse(5, &["(1 2 3)", "(4 5)"]).unwrap();
    let mut seen = BTreeSet::new();
    for d in orbital_graphs(&g) {
        for &arc in d.arcs().keys() {
            assert!(seen.insert(arc));
        }
    }
    assert_eq!(seen.len(), 25);
}
