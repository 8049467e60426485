// Any group is the stabiliser of an extended graph: encode the orbit of
// the list [1, ..., n] as a set of lists and search for its stabiliser.

use std::fmt::Write;

use refinery::encode::{encode_set_of_lists, group_as_set_of_lists};
use refinery::objects::Stack;
use refinery::search::{solve_extended, two_closure};
use refinery::PermGroup;

pub fn run_example() -> refinery::Result<String> {
    let mut out = String::new();
    let a4 = PermGroup::parse(4, &["(1 2 3)", "(2 3 4)"])?;
    let lists = group_as_set_of_lists(&a4, 1000)?;
    let graph = encode_set_of_lists(4, &lists)?;
    writeln!(out, "lists={} vertices={}", lists.len(), graph.representative().vertex_count()).unwrap();
    let stack = Stack::extended(4, vec![graph])?;
    let stab = solve_extended(&stack, &stack)?.coset;
    writeln!(out, "stabiliser order={}", stab.order(1000)?).unwrap();
    // Labelled digraphs on the domain alone cannot do this: their stabilisers are 2-closed.
    writeln!(out, "2-closure order={}", two_closure(&a4)?.order(1000)?).unwrap();
    Ok(out)
}

fn main() -> refinery::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
