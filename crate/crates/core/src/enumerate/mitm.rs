use super::{threshold_for, Side, TailCounts};
use crate::coeff::CoeffVec;
use crate::error::{Error, Result};
use crate::exact::Rational;

pub const MITM_MAX_DIM: usize = 48;

/// All `2^k` signed sums `±x_1 ± … ± x_k`, sorted, built by merging the
/// shifted copies so no sort is needed.
pub(crate) fn sorted_signed_sums(xs: &[u64]) -> Vec<i64> {
    let mut sums = Vec::with_capacity(1 << xs.len());
    sums.push(0i64);
    let mut scratch = Vec::with_capacity(1 << xs.len());
    for &x in xs {
        let x = x as i64;
        scratch.clear();
        let (mut i, mut j) = (0, 0);
        while i < sums.len() || j < sums.len() {
            let lo = sums.get(i).map(|v| v - x);
            let hi = sums.get(j).map(|v| v + x);
            match (lo, hi) {
                (Some(l), Some(h)) if l <= h => {
                    scratch.push(l);
                    i += 1;
                }
                (Some(_), Some(h)) | (None, Some(h)) => {
                    scratch.push(h);
                    j += 1;
                }
                (Some(l), None) => {
                    scratch.push(l);
                    i += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        std::mem::swap(&mut sums, &mut scratch);
    }
    sums
}

/// Number of pairs `(x, y)` with `x + y <= c`, both lists sorted ascending.
fn pairs_le(left: &[i64], right: &[i64], c: i64) -> u64 {
    let mut total = 0u64;
    let mut j = right.len();
    for &x in left {
        while j > 0 && x + right[j - 1] > c {
            j -= 1;
        }
        if j == 0 {
            break;
        }
        total += j as u64;
    }
    total
}

/// Meet-in-the-middle engine: identical counts to the direct engine.
pub fn tail_counts_mitm(a: &CoeffVec, rho: &Rational, side: Side) -> Result<TailCounts> {
    let n = a.n();
    if n < 2 {
        return Err(Error::InvalidArgument(
            "meet-in-the-middle needs n >= 2".into(),
        ));
    }
    if n > MITM_MAX_DIM {
        return Err(Error::TooLarge {
            n,
            max: MITM_MAX_DIM,
        });
    }
    let t = threshold_for(a, rho)?;
    let (lo, hi) = a.entries().split_at(n / 2);
    let (left, right) = rayon::join(|| sorted_signed_sums(lo), || sorted_signed_sums(hi));
    let le = |c: i64| pairs_le(&left, &right, c);
    let total = 1u64 << n;
    let f = t.floor;
    let (below, at) = match (side, t.exact) {
        (Side::OneSided, true) => {
            let strict = le(f - 1);
            (strict, le(f) - strict)
        }
        (Side::OneSided, false) => (le(f), 0),
        (Side::TwoSided, true) if f == 0 => {
            let neg = le(-1);
            (0, le(0) - neg)
        }
        (Side::TwoSided, true) => {
            let inside = le(f - 1) - le(-f);
            let at_pos = le(f) - le(f - 1);
            let at_neg = le(-f) - le(-f - 1);
            (inside, at_pos + at_neg)
        }
        (Side::TwoSided, false) => (le(f) - le(-f - 1), 0),
    };
    Ok(TailCounts {
        n: n as u32,
        below,
        at,
        above: total - below - at,
    })
}
