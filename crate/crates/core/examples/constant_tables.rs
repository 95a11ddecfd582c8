//! Witnesses for the small-dimension constants, and the smallest values an
//! exhaustive sweep of integer vectors finds.

use radlab::conjectures::{g_table, gprime_table};
use radlab::exact::format_rational;
use radlab::search::{exhaustive_integer_search, SearchTarget};

fn main() -> radlab::Result<()> {
    let bound = 24;
    println!("n  G_n     sweep   witness            G'_n    sweep   witness");
    for n in 1..=7 {
        let g = exhaustive_integer_search(n, SearchTarget::G, bound)?;
        let gp = exhaustive_integer_search(n, SearchTarget::Gprime, bound)?;
        println!(
            "{n}  {:<7} {:<7} {:<18} {:<7} {:<7} {}",
            format_rational(&g_table(n).unwrap()),
            g.best_value.to_string(),
            g.witness.to_string(),
            format_rational(&gprime_table(n).unwrap()),
            gp.best_value.to_string(),
            gp.witness,
        );
    }
    Ok(())
}
