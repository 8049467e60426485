// The set of sets {{1,4},{2,3}} as an extended graph with two extra
// vertices, written in the stack text format, and its stabiliser.

use std::collections::BTreeSet;
use std::fmt::Write;

use refinery::encode::encode_set_of_sets;
use refinery::objects::text::{format_stack, parse_stack};
use refinery::objects::Stack;
use refinery::search::solve_extended;

pub fn run_example() -> refinery::Result<String> {
    let mut out = String::new();
    let family: BTreeSet<BTreeSet<usize>> = [[1, 4].into(), [2, 3].into()].into();
    let stack = Stack::extended(4, vec![encode_set_of_sets(4, &family)?])?;
    let text = format_stack(&stack);
    out.push_str(&text);
    assert_eq!(parse_stack(&text)?, stack);
    let result = solve_extended(&stack, &stack)?;
    write!(out, "{}", result.coset).unwrap();
    writeln!(out, "order={}", result.coset.order(100)?).unwrap();
    Ok(out)
}

fn main() -> refinery::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
