//! Checkers for the tail inequalities, the combinatorial reformulation, the
//! pairing statement and the tabulated constants. Each returns a
//! [`CheckReport`] whose verdict can be reproduced from the stored input.

mod checks;
mod delta;
mod report;

pub use checks::{
    check_combinatorial, check_gprime, check_hk_bound, check_pairing, check_symmetric_tails,
    check_tomaszewski, classify_a_or_b, combinatorial_count, combinatorial_fraction, PointClass,
};
pub use delta::{
    check_delta_alt, check_delta_inequality, check_delta_sweep, delta_lhs, delta_sweep_max,
    rational_sqrt_between, DeltaSweep, SweepRegion,
};
pub use report::{run_predicate, CheckReport, Predicate, Verdict, Witness};

use crate::exact::{rational, Rational};

/// Tabulated `G_n` for `n = 1..=7`.
pub fn g_table(n: usize) -> Option<Rational> {
    const TABLE: [(i64, i64); 7] = [(1, 1), (1, 2), (1, 4), (1, 4), (1, 4), (7, 32), (7, 32)];
    TABLE.get(n.checked_sub(1)?).map(|&(p, q)| rational(p, q))
}

/// Tabulated `G'_n` for `n = 1..=7`.
pub fn gprime_table(n: usize) -> Option<Rational> {
    const TABLE: [(i64, i64); 7] = [(0, 1), (1, 2), (1, 4), (1, 8), (1, 4), (3, 16), (7, 32)];
    TABLE.get(n.checked_sub(1)?).map(|&(p, q)| rational(p, q))
}
