use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::sample_vector;
use crate::conjectures::{
    check_delta_sweep, check_pairing, check_tomaszewski, delta_sweep_max, CheckReport,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HuntPredicate {
    Tomaszewski,
    Pairing,
    Delta,
}

impl fmt::Display for HuntPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HuntPredicate::Tomaszewski => "tomaszewski",
            HuntPredicate::Pairing => "pairing",
            HuntPredicate::Delta => "delta",
        })
    }
}

impl FromStr for HuntPredicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tomaszewski" => Ok(HuntPredicate::Tomaszewski),
            "pairing" => Ok(HuntPredicate::Pairing),
            "delta" => Ok(HuntPredicate::Delta),
            other => Err(Error::Parse {
                input: other.into(),
                reason: "hunt predicate must be tomaszewski, pairing or delta".into(),
            }),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HuntOutcome {
    pub predicate: HuntPredicate,
    pub n_min: usize,
    pub n_max: usize,
    pub trials: u64,
    pub seed: u64,
    pub entry_bound: u64,
    /// Trials that produced a nonzero vector.
    pub examined: u64,
    /// Full reports for every violation, in trial order.
    pub violations: Vec<CheckReport>,
}

impl HuntOutcome {
    pub fn clean(&self) -> bool {
        self.violations.is_empty()
    }
}

fn evaluate(predicate: HuntPredicate, a: &crate::CoeffVec) -> Result<Option<CheckReport>> {
    let report = match predicate {
        HuntPredicate::Tomaszewski => check_tomaszewski(a)?,
        HuntPredicate::Pairing => check_pairing(a)?,
        HuntPredicate::Delta => {
            if delta_sweep_max(a)?.holds() {
                return Ok(None);
            }
            check_delta_sweep(a)?
        }
    };
    Ok(report.is_violation().then_some(report))
}

/// Random counterexample hunt. Trial `i` uses dimension
/// `n_min + i mod (n_max - n_min + 1)` and entries uniform in
/// `[0, entry_bound]`.
pub fn hunt(
    predicate: HuntPredicate,
    dims: RangeInclusive<usize>,
    trials: u64,
    seed: u64,
    entry_bound: u64,
) -> Result<HuntOutcome> {
    let (lo, hi) = (*dims.start(), *dims.end());
    let max = crate::enumerate::MAX_DISTRIBUTION_DIM;
    if lo == 0 || lo > hi {
        return Err(Error::InvalidArgument(format!(
            "empty dimension range {lo}..={hi}"
        )));
    }
    if hi > max {
        return Err(Error::TooLarge { n: hi, max });
    }
    if entry_bound == 0 {
        return Err(Error::InvalidArgument(
            "entry bound must be positive".into(),
        ));
    }
    let span = (hi - lo + 1) as u64;
    let results: Vec<Option<Option<CheckReport>>> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let n = lo + (i % span) as usize;
            sample_vector(seed, i, n, 0, entry_bound)
                .map(|a| evaluate(predicate, &a))
                .transpose()
        })
        .collect::<Result<_>>()?;
    let examined = results.iter().filter(|r| r.is_some()).count() as u64;
    Ok(HuntOutcome {
        predicate,
        n_min: lo,
        n_max: hi,
        trials,
        seed,
        entry_bound,
        examined,
        violations: results.into_iter().flatten().flatten().collect(),
    })
}
