use serde::Serialize;

use crate::coeff::CoeffVec;
use crate::error::{Error, Result};

pub const MAX_DISTRIBUTION_DIM: usize = 24;

/// Multiset of the `2^n` sign sums as `(value, multiplicity)` pairs with
/// strictly increasing values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SumDistribution {
    pub n: u32,
    pub values: Vec<(i64, u64)>,
}

impl SumDistribution {
    pub fn count_of(&self, value: i64) -> u64 {
        self.values
            .binary_search_by_key(&value, |&(v, _)| v)
            .map(|i| self.values[i].1)
            .unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.values.iter().map(|&(_, c)| c).sum()
    }

    /// Distinct strictly positive sums with multiplicities, ascending.
    pub fn positive(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.values.iter().copied().filter(|&(v, _)| v > 0)
    }
}

/// Run-length merge: adding `±x` to a sorted run list stays sorted after a
/// two-way merge, and equal values are combined as they meet.
pub fn distribution(a: &CoeffVec) -> Result<SumDistribution> {
    if a.n() > MAX_DISTRIBUTION_DIM {
        return Err(Error::TooLarge {
            n: a.n(),
            max: MAX_DISTRIBUTION_DIM,
        });
    }
    let mut runs: Vec<(i64, u64)> = vec![(0, 1)];
    for &x in a.entries() {
        let x = x as i64;
        let mut next: Vec<(i64, u64)> = Vec::with_capacity(runs.len() * 2);
        let mut push = |v: i64, c: u64| match next.last_mut() {
            Some(last) if last.0 == v => last.1 += c,
            _ => next.push((v, c)),
        };
        let (mut i, mut j) = (0, 0);
        while i < runs.len() || j < runs.len() {
            let lo = runs.get(i).map(|&(v, c)| (v - x, c));
            let hi = runs.get(j).map(|&(v, c)| (v + x, c));
            match (lo, hi) {
                (Some(l), Some(h)) if l.0 <= h.0 => {
                    push(l.0, l.1);
                    i += 1;
                }
                (_, Some(h)) => {
                    push(h.0, h.1);
                    j += 1;
                }
                (Some(l), None) => {
                    push(l.0, l.1);
                    i += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        runs = next;
    }
    Ok(SumDistribution {
        n: a.n() as u32,
        values: runs,
    })
}

/// The upper `2^{n-1}` sums in non-decreasing order (all nonnegative by
/// symmetry).
pub fn sorted_upper_half(dist: &SumDistribution) -> Vec<i64> {
    let half = 1usize << (dist.n - 1);
    let mut out = Vec::with_capacity(half);
    // Walk from the top, then reverse.
    for &(v, c) in dist.values.iter().rev() {
        for _ in 0..c {
            if out.len() == half {
                break;
            }
            out.push(v);
        }
        if out.len() == half {
            break;
        }
    }
    out.reverse();
    out
}
