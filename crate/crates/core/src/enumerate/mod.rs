//! Exact three-way counting of sign sums against `rho · ‖a‖`.
//!
//! Two engines produce identical [`TailCounts`]: a direct pass over all
//! `2^n` masks (Gray-code order, split across threads) and a
//! meet-in-the-middle pass over sorted half-sums.

mod distribution;
mod gray;
mod mitm;

use serde::Serialize;

use crate::coeff::CoeffVec;
use crate::error::{Error, Result};
use crate::exact::{rational, DyadicProb, IntThreshold, Position, Rational};

pub use distribution::{distribution, sorted_upper_half, SumDistribution, MAX_DISTRIBUTION_DIM};
pub use mitm::{tail_counts_mitm, MITM_MAX_DIM};

/// Default largest `n` for the direct engine.
pub const DIRECT_CAP: usize = 30;

/// Whether the sum or its absolute value is compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    OneSided,
    TwoSided,
}

/// Order in which the direct engine visits masks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Traversal {
    /// Reflected Gray code: one coefficient add per step.
    Gray,
    /// Plain mask order, every sum recomputed from scratch.
    Lexicographic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct TailCounts {
    pub n: u32,
    pub below: u64,
    pub at: u64,
    pub above: u64,
}

impl TailCounts {
    pub fn total(&self) -> u64 {
        self.below + self.at + self.above
    }

    pub(crate) fn record(&mut self, pos: Position) {
        match pos {
            Position::Below => self.below += 1,
            Position::At => self.at += 1,
            Position::Above => self.above += 1,
        }
    }

    pub(crate) fn merge(mut self, other: TailCounts) -> TailCounts {
        self.below += other.below;
        self.at += other.at;
        self.above += other.above;
        self
    }

    fn prob(&self, count: u64) -> DyadicProb {
        DyadicProb::new(count, self.n)
    }

    /// `P(X < threshold)`
    pub fn p_lt(&self) -> DyadicProb {
        self.prob(self.below)
    }

    /// `P(X <= threshold)`
    pub fn p_le(&self) -> DyadicProb {
        self.prob(self.below + self.at)
    }

    /// `P(X = threshold)`
    pub fn p_eq(&self) -> DyadicProb {
        self.prob(self.at)
    }

    /// `P(X >= threshold)`
    pub fn p_ge(&self) -> DyadicProb {
        self.prob(self.at + self.above)
    }

    /// `P(X > threshold)`
    pub fn p_gt(&self) -> DyadicProb {
        self.prob(self.above)
    }
}

pub(crate) fn threshold_for(a: &CoeffVec, rho: &Rational) -> Result<IntThreshold> {
    a.require_nonzero()?;
    IntThreshold::new(a.norm_sq(), rho, a.l1())
}

/// Counts `|a·s|` against `‖a‖` over every mask with the direct engine.
pub fn tail_counts_norm(a: &CoeffVec) -> Result<TailCounts> {
    tail_counts_threshold(a, &rational(1, 1), Side::TwoSided)
}

/// Direct engine, Gray-code traversal.
pub fn tail_counts_threshold(a: &CoeffVec, rho: &Rational, side: Side) -> Result<TailCounts> {
    tail_counts_with(a, rho, side, Traversal::Gray)
}

pub fn tail_counts_with(
    a: &CoeffVec,
    rho: &Rational,
    side: Side,
    traversal: Traversal,
) -> Result<TailCounts> {
    if a.n() > DIRECT_CAP {
        return Err(Error::UseMitm {
            n: a.n(),
            cap: DIRECT_CAP,
        });
    }
    let threshold = threshold_for(a, rho)?;
    Ok(match traversal {
        Traversal::Gray => gray::count(a.entries(), threshold, side),
        Traversal::Lexicographic => gray::count_lexicographic(a.entries(), threshold, side),
    })
}

/// Picks the direct engine up to `DIRECT_CAP`, meet-in-the-middle above.
pub fn tail_counts_auto(a: &CoeffVec, rho: &Rational, side: Side) -> Result<TailCounts> {
    if a.n() <= DIRECT_CAP {
        tail_counts_threshold(a, rho, side)
    } else {
        tail_counts_mitm(a, rho, side)
    }
}

/// `|a·s|` against `‖a‖` with whichever engine fits `n`.
pub fn tail_counts_norm_auto(a: &CoeffVec) -> Result<TailCounts> {
    tail_counts_auto(a, &rational(1, 1), Side::TwoSided)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compare::{cmp_abs_vs_norm, cmp_sum_vs_scaled_norm};
    use crate::sign::SignAssignment;
    use proptest::prelude::*;

    fn cv(text: &str) -> CoeffVec {
        text.parse().unwrap()
    }

    fn counts(n: u32, below: u64, at: u64, above: u64) -> TailCounts {
        TailCounts {
            n,
            below,
            at,
            above,
        }
    }

    /// Brute force through the comparators, one mask at a time.
    fn oracle(a: &CoeffVec, rho: &Rational, side: Side) -> TailCounts {
        let mut out = TailCounts {
            n: a.n() as u32,
            ..Default::default()
        };
        for s in SignAssignment::all(a.n()) {
            let pos = match side {
                Side::OneSided => cmp_sum_vs_scaled_norm(a, &s, rho).unwrap(),
                Side::TwoSided => {
                    let up = cmp_sum_vs_scaled_norm(a, &s, rho).unwrap();
                    let down = cmp_sum_vs_scaled_norm(a, &s.complement(), rho).unwrap();
                    up.max(down)
                }
            };
            out.record(pos);
        }
        out
    }

    #[test]
    fn norm_examples() {
        let t = tail_counts_norm(&cv("1")).unwrap();
        assert_eq!(t, counts(1, 0, 2, 0));
        assert_eq!(t.p_ge().to_string(), "1/1");

        let t = tail_counts_norm(&cv("1,1,1,1,1,1,0")).unwrap();
        assert_eq!(t, counts(7, 100, 0, 28));
        assert_eq!(t.p_ge().to_string(), "7/32");

        let t = tail_counts_threshold(&cv("2,2,1,1,1"), &rational(1, 1), Side::OneSided).unwrap();
        assert_eq!(t.above, 4);
        assert_eq!(t.p_gt().to_string(), "1/8");

        let t =
            tail_counts_threshold(&cv("2,2,2,1,1,1,1"), &rational(1, 1), Side::OneSided).unwrap();
        assert_eq!(t.above, 14);
        assert_eq!(t.p_gt().to_string(), "7/64");
    }

    #[test]
    fn threshold_examples() {
        let t = tail_counts_threshold(&cv("1,1,1,1"), &rational(1, 1), Side::TwoSided).unwrap();
        assert_eq!(t, counts(4, 6, 8, 2));
        assert_eq!(t.p_ge().to_string(), "5/8");

        let t = tail_counts_threshold(&cv("1,1,1"), &rational(5, 3), Side::TwoSided).unwrap();
        assert_eq!(t, counts(3, 6, 0, 2));

        let t = tail_counts_threshold(&cv("3,2,2,1"), &rational(0, 1), Side::OneSided).unwrap();
        assert_eq!(t.above, t.below);
        assert_eq!(t, oracle(&cv("3,2,2,1"), &rational(0, 1), Side::OneSided));
    }

    #[test]
    fn errors() {
        assert!(matches!(tail_counts_norm(&cv("0,0")), Err(Error::ZeroNorm)));
        let big = CoeffVec::from_integers(&[1; 31]).unwrap();
        assert!(matches!(tail_counts_norm(&big), Err(Error::UseMitm { .. })));
        assert!(matches!(
            tail_counts_threshold(&cv("1,1"), &rational(-1, 1), Side::OneSided),
            Err(Error::InvalidThreshold(_))
        ));
    }

    fn rho_strategy() -> impl Strategy<Value = Rational> {
        (1i64..=12).prop_flat_map(|q| (0..=3 * q).prop_map(move |p| rational(p, q)))
    }

    proptest! {
        #[test]
        fn engines_match_comparator_oracle(
            raw in prop::collection::vec(0u64..8, 1..=10),
            rho in rho_strategy(),
            two in any::<bool>(),
        ) {
            let a = CoeffVec::from_integers(&raw).unwrap();
            prop_assume!(!a.is_zero());
            let side = if two { Side::TwoSided } else { Side::OneSided };
            let expected = oracle(&a, &rho, side);
            prop_assert_eq!(tail_counts_with(&a, &rho, side, Traversal::Gray).unwrap(), expected);
            prop_assert_eq!(
                tail_counts_with(&a, &rho, side, Traversal::Lexicographic).unwrap(),
                expected
            );
            prop_assert_eq!(expected.total(), 1u64 << a.n());
        }

        #[test]
        fn consistency_and_monotonicity(
            raw in prop::collection::vec(0u64..10, 1..=12),
            r1 in rho_strategy(),
            r2 in rho_strategy(),
        ) {
            let a = CoeffVec::from_integers(&raw).unwrap();
            prop_assume!(!a.is_zero());
            let norm = tail_counts_norm(&a).unwrap();
            let mut direct = TailCounts { n: a.n() as u32, ..Default::default() };
            for s in SignAssignment::all(a.n()) {
                direct.record(cmp_abs_vs_norm(&a, &s).unwrap());
            }
            prop_assert_eq!(norm, direct);
            let (lo, hi) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
            for side in [Side::OneSided, Side::TwoSided] {
                let c_lo = tail_counts_threshold(&a, &lo, side).unwrap();
                let c_hi = tail_counts_threshold(&a, &hi, side).unwrap();
                prop_assert!(c_lo.above >= c_hi.above);
            }
        }

        #[test]
        fn one_sided_tails_mirror(
            raw in prop::collection::vec(0u64..10, 1..=10),
            t in 0i64..30,
        ) {
            let a = CoeffVec::from_integers(&raw).unwrap();
            let mut gt = 0;
            let mut lt = 0;
            for s in SignAssignment::all(a.n()) {
                let x = crate::compare::sign_sum(&a, &s).unwrap();
                gt += (x > t) as u32;
                lt += (x < -t) as u32;
            }
            prop_assert_eq!(gt, lt);
        }
    }
}
