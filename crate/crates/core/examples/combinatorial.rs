//! Counting subsets J with Σ_{same side} l_i l_j <= Σ_{J x J^c} l_i l_j gives
//! the same fraction as P(|l.e| <= |l|).

use radlab::conjectures::combinatorial_count;
use radlab::enumerate::tail_counts_norm;
use radlab::CoeffVec;

fn main() -> radlab::Result<()> {
    for raw in [
        &[1u64, 1, 1][..],
        &[3, 1, 1, 1],
        &[4, 3, 3, 2, 2, 1],
        &[7, 5, 5, 3, 2, 2, 1, 1],
    ] {
        let subsets = combinatorial_count(raw)?;
        let t = tail_counts_norm(&CoeffVec::from_integers(raw)?)?;
        println!(
            "{raw:?}: {subsets} subsets of {}, P(|l.e| <= |l|) = {}",
            1u64 << raw.len(),
            t.p_le()
        );
        assert_eq!(subsets, t.below + t.at);
    }
    Ok(())
}
