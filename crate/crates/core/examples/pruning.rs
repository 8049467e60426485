// Tree sizes with and without root refiners for an intersection query.

use std::fmt::Write;

use refinery::encode::{refiner_for, Query, SourceObject};
use refinery::search::solve_intersection;
use refinery::Permutation;

pub fn run_example() -> refinery::Result<String> {
    let mut out = String::new();
    let n = 6;
    let set = refiner_for(&Query::stabiliser(n, SourceObject::Subset([1, 2, 3].into()))?)?;
    let perm = Permutation::parse("(1 2)(4 5)", n)?;
    let conj = refiner_for(&Query::stabiliser(n, SourceObject::PermConj(perm))?)?;
    let refiners = [set, conj];
    for apply in [false, true] {
        let r = solve_intersection(n, &refiners, apply)?;
        writeln!(
            out,
            "refiners={apply} order={} nodes={} filtered={}",
            r.coset.order(1000)?,
            r.tree_nodes,
            r.filtered
        )
        .unwrap();
    }
    Ok(out)
}

fn main() -> refinery::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
