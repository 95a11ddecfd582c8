//! Exact comparison of sign sums against the (generally irrational) norm.
//! `‖a‖` is never formed; every comparison is squared with explicit sign
//! handling.

use num::{BigInt, Signed, Zero};

use crate::coeff::CoeffVec;
use crate::error::{Error, Result};
use crate::exact::{format_rational, Position, Rational};
use crate::sign::SignAssignment;

fn check_dims(a: &CoeffVec, s: &SignAssignment) -> Result<()> {
    if a.n() != s.n() {
        return Err(Error::DimensionError {
            expected: a.n(),
            found: s.n(),
        });
    }
    Ok(())
}

/// `a · s`, exact.
pub fn sign_sum(a: &CoeffVec, s: &SignAssignment) -> Result<i64> {
    check_dims(a, s)?;
    Ok(sign_sum_unchecked(a.entries(), s.mask()))
}

#[inline]
pub(crate) fn sign_sum_unchecked(entries: &[u64], mask: u64) -> i64 {
    entries
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            if mask >> i & 1 == 1 {
                -(x as i64)
            } else {
                x as i64
            }
        })
        .sum()
}

/// `|a · s|` against `‖a‖`.
pub fn cmp_abs_vs_norm(a: &CoeffVec, s: &SignAssignment) -> Result<Position> {
    let sum = sign_sum(a, s)? as i128;
    Ok((sum * sum).cmp(&(a.norm_sq() as i128)).into())
}

/// `a · s` against `rho · ‖a‖` (one-sided).
pub fn cmp_sum_vs_scaled_norm(
    a: &CoeffVec,
    s: &SignAssignment,
    rho: &Rational,
) -> Result<Position> {
    if rho.is_negative() {
        return Err(Error::InvalidThreshold(format_rational(rho)));
    }
    a.require_nonzero()?;
    let sum = BigInt::from(sign_sum(a, s)?);
    if sum.is_negative() {
        return Ok(Position::Below);
    }
    // sum >= 0 and rho*‖a‖ >= 0: compare (den*sum)^2 with num^2 * norm_sq.
    let lhs = {
        let t = rho.denom() * &sum;
        &t * &t
    };
    let rhs = rho.numer() * rho.numer() * BigInt::from(a.norm_sq());
    if sum.is_zero() && rho.is_zero() {
        return Ok(Position::At);
    }
    Ok(lhs.cmp(&rhs).into())
}

/// Membership of `s` in `{ s : a·s >= ‖a‖ }` (or `>` when `strict`).
pub fn in_upper_tail(a: &CoeffVec, s: &SignAssignment, strict: bool) -> Result<bool> {
    let sum = sign_sum(a, s)?;
    if sum < 0 {
        return Ok(false);
    }
    let sq = (sum as i128) * (sum as i128);
    let norm = a.norm_sq() as i128;
    Ok(if strict { sq > norm } else { sq >= norm })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;
    use proptest::prelude::*;

    fn cv(text: &str) -> CoeffVec {
        text.parse().unwrap()
    }

    fn set(pos: &[usize], n: usize) -> SignAssignment {
        SignAssignment::from_set(pos, n).unwrap()
    }

    #[test]
    fn sign_sum_examples() {
        assert_eq!(sign_sum(&cv("1,1,1"), &set(&[], 3)).unwrap(), 3);
        assert_eq!(sign_sum(&cv("2,2,1,1,1"), &set(&[3, 4], 5)).unwrap(), 3);
        assert_eq!(sign_sum(&cv("1,1,1,1,1,1,0"), &set(&[6], 7)).unwrap(), 4);
        assert!(matches!(
            sign_sum(&cv("1,1"), &set(&[], 3)),
            Err(Error::DimensionError { .. })
        ));
    }

    #[test]
    fn abs_vs_norm_examples() {
        assert_eq!(
            cmp_abs_vs_norm(&cv("1,1"), &set(&[1], 2)).unwrap(),
            Position::Below
        );
        assert_eq!(
            cmp_abs_vs_norm(&cv("1"), &set(&[], 1)).unwrap(),
            Position::At
        );
        assert_eq!(
            cmp_abs_vs_norm(&cv("1,1,1"), &set(&[], 3)).unwrap(),
            Position::Above
        );
    }

    #[test]
    fn scaled_norm_examples() {
        let one = rational(1, 1);
        assert_eq!(
            cmp_sum_vs_scaled_norm(&cv("1/2,1/2,1/2,1/2"), &set(&[], 4), &one).unwrap(),
            Position::Above
        );
        assert_eq!(
            cmp_sum_vs_scaled_norm(&cv("1,1"), &set(&[1], 2), &one).unwrap(),
            Position::Below
        );
        let a = cv("2,1,1,1,1,1");
        assert_eq!(
            cmp_sum_vs_scaled_norm(&a, &set(&[6], 6), &one).unwrap(),
            Position::Above
        );
        // 6 of the 64 masks put a·s above ‖a‖ = 3.
        let above = SignAssignment::all(6)
            .filter(|s| cmp_sum_vs_scaled_norm(&a, s, &one).unwrap() == Position::Above)
            .count();
        assert_eq!(above, 6);
        assert_eq!(
            cmp_sum_vs_scaled_norm(&cv("1,1"), &set(&[1], 2), &rational(0, 1)).unwrap(),
            Position::At
        );
        assert_eq!(
            cmp_sum_vs_scaled_norm(&cv("1,1"), &set(&[1, 2], 2), &rational(0, 1)).unwrap(),
            Position::Below
        );
        assert!(matches!(
            cmp_sum_vs_scaled_norm(&cv("1,1"), &set(&[], 2), &rational(-1, 2)),
            Err(Error::InvalidThreshold(_))
        ));
        assert!(matches!(
            cmp_sum_vs_scaled_norm(&cv("0,0"), &set(&[], 2), &rational(1, 2)),
            Err(Error::ZeroNorm)
        ));
    }

    /// `Σ_{i≠j} a_i a_j s_i s_j` by a plain double loop.
    fn off_diagonal_form(a: &CoeffVec, s: &SignAssignment) -> i128 {
        let e = a.entries();
        let mut total = 0i128;
        for i in 0..e.len() {
            for j in 0..e.len() {
                if i != j {
                    total += (e[i] as i128) * (e[j] as i128) * (s.sign(i) * s.sign(j)) as i128;
                }
            }
        }
        total
    }

    proptest! {
        #[test]
        fn comparator_properties(
            raw in prop::collection::vec(0u64..12, 1..=12),
            c in 1u64..9,
        ) {
            let a = CoeffVec::from_integers(&raw).unwrap();
            let scaled = a.scaled_entries(c);
            // Scaling is checked without re-canonicalizing.
            let scaled_norm: i128 = scaled.iter().map(|&x| (x as i128) * (x as i128)).sum();
            for s in SignAssignment::all(a.n()) {
                let base = cmp_abs_vs_norm(&a, &s).unwrap();
                let sum = sign_sum_unchecked(&scaled, s.mask()) as i128;
                prop_assert_eq!(base, Position::from((sum * sum).cmp(&scaled_norm)));
                prop_assert_eq!(base, cmp_abs_vs_norm(&a, &s.complement()).unwrap());
                let quad = off_diagonal_form(&a, &s);
                prop_assert_eq!(base <= Position::At, quad <= 0);
            }
        }
    }
}
