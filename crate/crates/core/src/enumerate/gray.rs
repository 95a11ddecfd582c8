use rayon::prelude::*;

use super::{Side, TailCounts};
use crate::compare::sign_sum_unchecked;
use crate::exact::IntThreshold;

/// Low bits walked sequentially inside one work item.
const CHUNK_BITS: usize = 14;

#[inline]
fn classify(t: &IntThreshold, side: Side, sum: i64) -> crate::exact::Position {
    match side {
        Side::OneSided => {
            if sum < 0 {
                crate::exact::Position::Below
            } else {
                t.classify(sum)
            }
        }
        Side::TwoSided => t.classify(sum.abs()),
    }
}

/// Gray-code walk over the low `low_bits` coordinates with the high bits
/// fixed by `prefix`.
fn walk(entries: &[u64], low_bits: usize, prefix: u64, t: &IntThreshold, side: Side) -> TailCounts {
    let mut out = TailCounts::default();
    let mut mask = prefix;
    let mut sum = sign_sum_unchecked(entries, mask);
    out.record(classify(t, side, sum));
    for step in 1u64..(1u64 << low_bits) {
        let bit = step.trailing_zeros() as usize;
        let x = entries[bit] as i64;
        if mask >> bit & 1 == 1 {
            sum += 2 * x;
        } else {
            sum -= 2 * x;
        }
        mask ^= 1 << bit;
        out.record(classify(t, side, sum));
    }
    out
}

pub(super) fn count(entries: &[u64], t: IntThreshold, side: Side) -> TailCounts {
    let n = entries.len();
    let low_bits = n.min(CHUNK_BITS);
    let high_bits = n - low_bits;
    let mut out = (0u64..1u64 << high_bits)
        .into_par_iter()
        .map(|hi| walk(entries, low_bits, hi << low_bits, &t, side))
        .reduce(TailCounts::default, TailCounts::merge);
    out.n = n as u32;
    out
}

pub(super) fn count_lexicographic(entries: &[u64], t: IntThreshold, side: Side) -> TailCounts {
    let n = entries.len();
    let mut out = (0u64..1u64 << n)
        .into_par_iter()
        .fold(TailCounts::default, |mut acc, mask| {
            acc.record(classify(&t, side, sign_sum_unchecked(entries, mask)));
            acc
        })
        .reduce(TailCounts::default, TailCounts::merge);
    out.n = n as u32;
    out
}
