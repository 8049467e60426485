//! Runs every example and checks the values it reports.

macro_rules! example {
    ($name:ident) => {
        #[allow(dead_code)]
        mod $name {
            include!(concat!("../examples/", stringify!($name), ".rs"));
        }
    };
}

example!(cycle_notation);
example!(extended_graph);
example!(centraliser);
example!(two_closure);
example!(normaliser);
example!(refiner_algebra);
example!(set_of_lists_group);
example!(oracle_vs_search);
example!(pruning);

fn lines(out: &str) -> Vec<&str> {
    out.lines().collect()
}

#[test]
fn cycle_notation_example() {
    let out = cycle_notation::run_example().unwrap();
    assert!(out.contains("pq = (1 2 4 3)"), "{out}");
    assert!(out.contains("p^q = (1 2 4)"), "{out}");
    assert!(out.contains("= 8"), "{out}");
}

#[test]
fn extended_graph_example() {
    let out = extended_graph::run_example().unwrap();
    assert!(out.starts_with("digraph n=4 extra=5 6"), "{out}");
    assert_eq!(lines(&out).last(), Some(&"order=8"));
}

#[test]
fn centraliser_example() {
    assert!(centraliser::run_example().unwrap().contains("order=6\n"));
}

#[test]
fn two_closure_example() {
    let out = two_closure::run_example().unwrap();
    assert_eq!(
        lines(&out),
        [
            "C4: order=4 closure-order=4 two-closed=true",
            "A4: order=12 closure-order=24 two-closed=false",
            "H: order=60 closure-order=720 two-closed=false",
        ]
    );
}

#[test]
fn normaliser_example() {
    let out = normaliser::run_example().unwrap();
    assert!(out.contains("orbital 3: 14 25 36 41 52 63"), "{out}");
    assert!(out.contains("|G|=12\novergroup order=48\n"), "{out}");
    assert_eq!(lines(&out).last(), Some(&"order=48"));
}

#[test]
fn refiner_algebra_example() {
    let out = refiner_algebra::run_example().unwrap();
    assert!(!out.contains("FAIL"), "{out}");
    assert!(out.contains("∩ Stab{2,3}| = 2"), "{out}");
    assert!(out.contains("list refiner perfect: true"), "{out}");
}

#[test]
fn set_of_lists_example() {
    let out = set_of_lists_group::run_example().unwrap();
    assert_eq!(lines(&out), ["lists=12 vertices=52", "stabiliser order=12", "2-closure order=24"]);
}

#[test]
fn oracle_example_agrees_everywhere() {
    let out = oracle_vs_search::run_example().unwrap();
    assert_eq!(out.lines().count(), refinery::encode::SOURCE_KINDS.len());
    assert!(out.lines().all(|l| l.ends_with("agree=true")), "{out}");
}

#[test]
fn pruning_example() {
    let out = pruning::run_example().unwrap();
    let nodes: Vec<usize> = out
        .lines()
        .map(|l| l.split_whitespace().find_map(|w| w.strip_prefix("nodes=")).unwrap().parse().unwrap())
        .collect();
    assert!(nodes[1] <= nodes[0], "{out}");
    assert!(out.contains("refiners=true order=4 nodes=6 filtered=0"), "{out}");
}
