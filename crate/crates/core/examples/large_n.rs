//! Meet-in-the-middle counting beyond the reach of the direct engine.

use std::time::Instant;

use radlab::enumerate::{tail_counts_auto, tail_counts_mitm, Side};
use radlab::exact::rational;
use radlab::CoeffVec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> radlab::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let raw: Vec<u64> = (0..40).map(|_| rng.gen_range(1..=1000)).collect();
    let a = CoeffVec::from_integers(&raw)?;
    for rho in [rational(1, 2), rational(1, 1), rational(2, 1)] {
        let start = Instant::now();
        let t = tail_counts_mitm(&a, &rho, Side::TwoSided)?;
        println!(
            "n=40, rho={rho}: P(|a.e| >= rho|a|) = {} ({:.3} s)",
            t.p_ge(),
            start.elapsed().as_secs_f64()
        );
    }
    let ones = CoeffVec::from_integers(&[1; 36])?;
    let t = tail_counts_auto(&ones, &rational(1, 1), Side::TwoSided)?;
    println!(
        "all-ones n=36: {} of 2^36 sums sit exactly on the norm",
        t.at
    );
    Ok(())
}
