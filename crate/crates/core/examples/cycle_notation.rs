// Permutations in cycle notation: parsing, composing, conjugating and
// enumerating a small group.

use std::fmt::Write;

use refinery::{Action, PermGroup, Permutation};

pub fn run_example() -> refinery::Result<String> {
    let mut out = String::new();
    let p = Permutation::parse("(1 2 3)", 4)?;
    let q = Permutation::parse("(3 4)", 4)?;
    // Composition applies p first, then q.
    writeln!(out, "p = {p}, q = {q}").unwrap();
    writeln!(out, "pq = {}", p.compose(&q)?).unwrap();
    writeln!(out, "p^q = {}", p.act(&q)?).unwrap();
    writeln!(out, "3^p = {}", 3usize.act(&p)?).unwrap();
    let g = PermGroup::parse(4, &["(1 2 3 4)", "(1 3)"])?;
    writeln!(out, "|<(1 2 3 4), (1 3)>| = {}", g.order(1000)?).unwrap();
    Ok(out)
}

fn main() -> refinery::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
