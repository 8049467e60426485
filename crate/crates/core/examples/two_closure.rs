// 2-closures: C4 is 2-closed, A4 closes to S4 and a 2-transitive group of
// order 60 on six points closes to S6.

use std::fmt::Write;

use refinery::search::{is_two_closed, two_closure};
use refinery::PermGroup;

pub fn run_example() -> refinery::Result<String> {
    let mut out = String::new();
    let groups = [
        ("C4", PermGroup::parse(4, &["(1 2 3 4)"])?),
        ("A4", PermGroup::parse(4, &["(1 2 3)", "(2 3 4)"])?),
        ("H", PermGroup::parse(6, &["(1 2 3)(4 5 6)", "(1 2)(3 5)"])?),
    ];
    for (name, g) in groups {
        let closure = two_closure(&g)?;
        writeln!(
            out,
            "{name}: order={} closure-order={} two-closed={}",
            g.order(1000)?,
            closure.order(1000)?,
            is_two_closed(&g, 1000)?
        )
        .unwrap();
    }
    Ok(out)
}

fn main() -> refinery::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
