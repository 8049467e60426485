// Building refiners from pieces and checking them against brute force:
// constant refiners, coset refiners, concatenation and list refiners.

use std::collections::BTreeSet;
use std::fmt::Write;

use refinery::encode::{encode_subset, refiner_for, Query, SourceObject};
use refinery::refiner::{check_perfect, check_sound, concat_refiners, constant_refiner, coset_refiner, list_refiner, TargetSet};
use refinery::search::solve_intersection;
use refinery::{PermGroup, Permutation};

pub fn run_example() -> refinery::Result<String> {
    let mut out = String::new();
    let n = 5;
    let a: BTreeSet<usize> = [1, 2].into();
    let stab_a = PermGroup::parse(n, &["(1 2)", "(3 4 5)", "(3 4)"])?;
    let fixed = constant_refiner(&encode_subset(n, &a)?, &encode_subset(n, &a)?, TargetSet::subgroup(stab_a))?;
    writeln!(out, "Stab{{1,2}} refiner: {}", check_perfect(&fixed, 8, 1)?).unwrap();

    // Shift the stabiliser refiner to the coset Stab{1,2}·(2 3), mapping {1,2} to {1,3}.
    let x = Permutation::parse("(2 3)", n)?;
    let coset = coset_refiner(&fixed, &x)?;
    writeln!(out, "coset refiner: {}", check_perfect(&coset, 8, 2)?).unwrap();

    let b = SourceObject::Subset([2, 3].into());
    let other = refiner_for(&Query::stabiliser(n, b)?)?;
    let both = concat_refiners(&fixed, &other)?;
    writeln!(out, "concatenation sound: {}", check_sound(&both, 8, 3)?).unwrap();
    let result = solve_intersection(n, &[fixed.clone(), other.clone()], true)?;
    writeln!(out, "|Stab{{1,2}} ∩ Stab{{2,3}}| = {}", result.coset.order(1000)?).unwrap();

    let listed = list_refiner(&[fixed, other])?;
    writeln!(out, "list refiner perfect: {}", check_perfect(&listed, 8, 4)?.passed()).unwrap();
    Ok(out)
}

fn main() -> refinery::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
