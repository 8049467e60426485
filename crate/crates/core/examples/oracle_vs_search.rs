// Random transporter questions of every object kind, answered by the
// search and by enumerating Sym(n).

use std::fmt::Write;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use refinery::encode::{random_source, refiner_for, Query, SOURCE_KINDS};
use refinery::oracle::{brute_filter, OracleConfig};
use refinery::search::solve_intersection;
use refinery::{Action, Permutation};

pub fn run_example() -> refinery::Result<String> {
    let mut out = String::new();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let n = 5;
    for kind in SOURCE_KINDS {
        let x = random_source(&mut rng, n, kind)?;
        // Half of the targets are images of the source, so that answers are nonempty.
        let y = if rng.gen_bool(0.5) {
            let mut images: Vec<usize> = (1..=n).collect();
            images.shuffle(&mut rng);
            x.act(&Permutation::from_images(&images)?)?
        } else {
            random_source(&mut rng, n, kind)?
        };
        let q = Query::transporter(n, x.clone(), y.clone())?;
        let mut found = solve_intersection(n, &[refiner_for(&q)?], true)?.coset.elements(1000)?;
        found.sort();
        let brute = brute_filter(|g| x.maps_to(g, &y), n, &OracleConfig::default())?;
        writeln!(out, "{kind}: search={} oracle={} agree={}", found.len(), brute.len(), found == brute).unwrap();
    }
    Ok(out)
}

fn main() -> refinery::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
