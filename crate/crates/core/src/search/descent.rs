use std::collections::BTreeSet;

use rayon::prelude::*;

use super::{Candidate, SearchMode, SearchRecord, SearchTarget};
use crate::coeff::CoeffVec;
use crate::error::{Error, Result};

/// Canonical vectors one unit step away from `a` in a single entry.
fn neighbours(a: &CoeffVec, min_entry: u64) -> Result<BTreeSet<CoeffVec>> {
    let mut out = BTreeSet::new();
    for i in 0..a.n() {
        for up in [false, true] {
            let mut e = a.entries().to_vec();
            if up {
                e[i] += 1;
            } else if e[i] > min_entry {
                e[i] -= 1;
            } else {
                continue;
            }
            let b = CoeffVec::from_integers(&e)?;
            if !b.is_zero() && b != *a {
                out.insert(b);
            }
        }
    }
    Ok(out)
}

/// Greedy descent from `start`: each step moves to the best strictly
/// improving neighbour (ties to the lexicographically smallest vector) and
/// stops at a local minimum or after `max_steps` moves.
pub fn local_descent(
    start: &CoeffVec,
    target: SearchTarget,
    max_steps: u64,
) -> Result<SearchRecord> {
    if !target.admits(start) {
        return Err(if start.is_zero() {
            Error::ZeroNorm
        } else {
            Error::ZeroEntry(start.to_string())
        });
    }
    let mut current = Candidate::score(target, start.clone())?;
    let mut examined = 1u64;
    for _ in 0..max_steps {
        let near = neighbours(&current.vector, target.min_entry())?;
        examined += near.len() as u64;
        let best = near
            .into_par_iter()
            .map(|b| Candidate::score(target, b))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .min();
        match best {
            Some(b) if b.value < current.value => current = b,
            _ => break,
        }
    }
    Ok(SearchRecord::new(
        target,
        current,
        examined,
        SearchMode::Descent,
        0,
        max_steps,
    ))
}
