//! Seeded random hunts for counterexamples.
//!
//! ```bash
//! cargo run --release --example hunt -- 100000
//! ```

use radlab::search::{hunt, random_search, HuntPredicate, SearchTarget};

fn main() -> radlab::Result<()> {
    let trials: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(20_000);
    for (p, dims) in [
        (HuntPredicate::Tomaszewski, 2..=9),
        (HuntPredicate::Pairing, 2..=8),
        (HuntPredicate::Delta, 2..=8),
    ] {
        let out = hunt(p, dims, trials, 7, 20)?;
        println!(
            "{p:<12} {} vectors, {} violations",
            out.examined,
            out.violations.len()
        );
        for v in &out.violations {
            println!("{}", v.to_json()?);
        }
    }
    for n in [8, 9] {
        let r = random_search(n, SearchTarget::T, trials, 1, 20)?;
        println!(
            "smallest P(|a.e| <= |a|) seen at n={n}: {} at ({}), below floor: {}",
            r.best_value, r.witness, r.floor_violated
        );
    }
    Ok(())
}
