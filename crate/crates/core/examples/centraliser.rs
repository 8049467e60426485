// The centraliser of (1 2)(3 6 5) in Sym(6), as the stabiliser of the
// permutation under conjugation.

use std::fmt::Write;

use refinery::encode::{refiner_for, Query, SourceObject};
use refinery::search::solve_intersection;
use refinery::Permutation;

pub fn run_example() -> refinery::Result<String> {
    let mut out = String::new();
    let x = Permutation::parse("(1 2)(3 6 5)", 6)?;
    let refiner = refiner_for(&Query::stabiliser(6, SourceObject::PermConj(x))?)?;
    let result = solve_intersection(6, &[refiner], true)?;
    write!(out, "{}", result.coset).unwrap();
    writeln!(out, "order={}", result.coset.order(1000)?).unwrap();
    writeln!(out, "nodes={}", result.tree_nodes).unwrap();
    Ok(out)
}

fn main() -> refinery::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
