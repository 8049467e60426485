// The normaliser in Sym(6) of G = <(1 2 3)(4 5 6), (1 4)(2 5)>, found as
// the stabiliser of G's set of orbital graphs.

use std::fmt::Write;

use refinery::encode::orbital_graphs;
use refinery::search::{normaliser, normaliser_overgroup};
use refinery::PermGroup;

pub fn run_example() -> refinery::Result<String> {
    let mut out = String::new();
    let g = PermGroup::parse(6, &["(1 2 3)(4 5 6)", "(1 4)(2 5)"])?;
    for (i, d) in orbital_graphs(&g).iter().enumerate() {
        let arcs: Vec<String> = d.arcs().keys().map(|(a, b)| format!("{a}{b}")).collect();
        writeln!(out, "orbital {i}: {}", arcs.join(" ")).unwrap();
    }
    let over = normaliser_overgroup(&g)?;
    let exact = normaliser(&g, 1000)?;
    writeln!(out, "|G|={}", g.order(1000)?).unwrap();
    writeln!(out, "overgroup order={}", over.order(1000)?).unwrap();
    write!(out, "{}", exact.coset).unwrap();
    writeln!(out, "order={}", exact.coset.order(1000)?).unwrap();
    Ok(out)
}

fn main() -> refinery::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
