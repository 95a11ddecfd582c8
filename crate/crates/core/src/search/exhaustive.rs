use std::sync::atomic::{AtomicBool, Ordering};

use num::integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Candidate, SearchMode, SearchRecord, SearchTarget};
use crate::coeff::CoeffVec;
use crate::error::{Error, Result};

/// Default refusal threshold on the number of raw vectors.
pub const DEFAULT_MAX_VECTORS: u128 = 50_000_000;

/// Vectors evaluated per parallel batch (and per checkpoint tick).
const BATCH: usize = 2048;

/// Non-increasing integer vectors of length `n` with entries `>= min_entry`
/// and entry sum `<= bound`, in lexicographic order.
#[derive(Debug, Clone)]
pub struct NonIncreasingVectors {
    min_entry: u64,
    bound: u64,
    next: Option<Vec<u64>>,
}

impl NonIncreasingVectors {
    pub fn new(n: usize, min_entry: u64, bound: u64) -> Self {
        let first = vec![min_entry; n];
        let fits = (n as u64).saturating_mul(min_entry) <= bound;
        Self {
            min_entry,
            bound,
            next: (n > 0 && fits).then_some(first),
        }
    }

    /// Resumes strictly after `cursor`.
    pub fn after(cursor: &[u64], min_entry: u64, bound: u64) -> Self {
        let mut it = Self {
            min_entry,
            bound,
            next: Some(cursor.to_vec()),
        };
        it.advance();
        it
    }

    fn advance(&mut self) {
        let Some(v) = self.next.as_mut() else { return };
        let n = v.len();
        let mut prefix: Vec<u64> = Vec::with_capacity(n);
        let mut acc = 0u64;
        for &x in v.iter() {
            prefix.push(acc);
            acc += x;
        }
        for i in (0..n).rev() {
            let raised = v[i] + 1;
            let fits_order = i == 0 || raised <= v[i - 1];
            let tail = (n - 1 - i) as u64 * self.min_entry;
            if fits_order && prefix[i] + raised + tail <= self.bound {
                v[i] = raised;
                for x in &mut v[i + 1..] {
                    *x = self.min_entry;
                }
                return;
            }
        }
        self.next = None;
    }
}

impl Iterator for NonIncreasingVectors {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let current = self.next.clone()?;
        self.advance();
        Some(current)
    }
}

/// Number of non-increasing vectors the enumerator visits: partitions of
/// every `m <= bound - n·min_entry` into at most `n` parts.
pub fn raw_vector_count(n: usize, min_entry: u64, bound: u64) -> u128 {
    let Some(budget) = bound.checked_sub(n as u64 * min_entry) else {
        return 0;
    };
    let budget = budget as usize;
    // parts[m] = partitions of m into parts of size <= k, for k = 1..=n
    // (conjugate of "at most n parts")
    let mut parts = vec![0u128; budget + 1];
    parts[0] = 1;
    for k in 1..=n {
        for m in k..=budget {
            parts[m] += parts[m - k];
        }
    }
    parts.iter().sum()
}

/// Closed-form count of canonical (gcd 1, nonzero) vectors, by Möbius
/// inversion over the common divisor.
pub fn canonical_vector_count(n: usize, min_entry: u64, bound: u64) -> u128 {
    let mobius = |mut d: u64| -> i128 {
        let mut result = 1i128;
        let mut p = 2;
        while p * p <= d {
            if d.is_multiple_of(p) {
                d /= p;
                if d.is_multiple_of(p) {
                    return 0;
                }
                result = -result;
            }
            p += 1;
        }
        if d > 1 {
            result = -result;
        }
        result
    };
    let mut total = 0i128;
    for d in 1..=bound.max(1) {
        // vectors divisible by d: entries d·y with y >= ceil(min/d), sum(y) <= bound/d
        let lo = min_entry.div_ceil(d);
        let nonzero = raw_vector_count(n, lo, bound / d) - (lo == 0) as u128;
        total += mobius(d) * nonzero as i128;
    }
    total as u128
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExhaustiveConfig {
    pub n: usize,
    pub target: SearchTarget,
    /// Bound on the entry sum.
    pub bound: u64,
    pub max_vectors: u128,
}

impl ExhaustiveConfig {
    pub fn new(n: usize, target: SearchTarget, bound: u64) -> Self {
        Self {
            n,
            target,
            bound,
            max_vectors: DEFAULT_MAX_VECTORS,
        }
    }
}

/// Resumable state of an exhaustive sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub target: SearchTarget,
    pub n: usize,
    pub bound: u64,
    /// Last vector visited, comma-separated.
    pub cursor: String,
    pub best_value: Option<String>,
    pub witness: Option<String>,
    pub examined: u64,
}

impl Checkpoint {
    fn cursor_entries(&self) -> Result<Vec<u64>> {
        self.cursor
            .split(',')
            .map(|x| {
                x.trim().parse::<u64>().map_err(|_| Error::Parse {
                    input: self.cursor.clone(),
                    reason: "cursor entries must be integers".into(),
                })
            })
            .collect()
    }

    fn best(&self, target: SearchTarget) -> Result<Option<Candidate>> {
        match &self.witness {
            Some(w) => {
                let vector: CoeffVec = w.parse()?;
                let c = Candidate::score(target, vector)?;
                if self.best_value.as_deref() != Some(&c.value.to_string()) {
                    return Err(Error::InvalidArgument(
                        "checkpoint best value does not match its witness".into(),
                    ));
                }
                Ok(Some(c))
            }
            None => Ok(None),
        }
    }
}

/// Interruption controls for a sweep.
#[derive(Debug, Default)]
pub struct RunControl<'a> {
    /// Checked between batches; set from a signal handler.
    pub stop: Option<&'a AtomicBool>,
    /// Stop once at least this many vectors have been visited.
    pub stop_after: Option<u64>,
    /// Emit a checkpoint every this many batches (0 = only on stop).
    pub checkpoint_every: u64,
}

#[derive(Debug, Clone)]
pub enum ExhaustiveOutcome {
    Finished(SearchRecord),
    Interrupted(Checkpoint),
}

/// Every canonical vector with entry sum `<= bound`; minimum of the target.
pub fn exhaustive_integer_search(
    n: usize,
    target: SearchTarget,
    bound: u64,
) -> Result<SearchRecord> {
    match exhaustive_search_resumable(
        &ExhaustiveConfig::new(n, target, bound),
        None,
        &RunControl::default(),
        |_| Ok(()),
    )? {
        ExhaustiveOutcome::Finished(r) => Ok(r),
        ExhaustiveOutcome::Interrupted(_) => unreachable!("no stop condition was set"),
    }
}

pub fn exhaustive_search_resumable(
    cfg: &ExhaustiveConfig,
    resume: Option<&Checkpoint>,
    control: &RunControl<'_>,
    mut on_checkpoint: impl FnMut(&Checkpoint) -> Result<()>,
) -> Result<ExhaustiveOutcome> {
    if cfg.n == 0 || cfg.n > 12 {
        return Err(Error::TooLarge { n: cfg.n, max: 12 });
    }
    let min_entry = cfg.target.min_entry();
    let estimated = raw_vector_count(cfg.n, min_entry, cfg.bound);
    if estimated > cfg.max_vectors {
        return Err(Error::BudgetExceeded {
            estimated,
            budget: cfg.max_vectors,
        });
    }
    let (mut vectors, mut best, mut examined) = match resume {
        Some(ck) => {
            if ck.target != cfg.target || ck.n != cfg.n || ck.bound != cfg.bound {
                return Err(Error::InvalidArgument(
                    "checkpoint was written for a different search".into(),
                ));
            }
            (
                NonIncreasingVectors::after(&ck.cursor_entries()?, min_entry, cfg.bound),
                ck.best(cfg.target)?,
                ck.examined,
            )
        }
        None => (
            NonIncreasingVectors::new(cfg.n, min_entry, cfg.bound),
            None,
            0,
        ),
    };
    let checkpoint = |cursor: &[u64], best: &Option<Candidate>, examined: u64| Checkpoint {
        target: cfg.target,
        n: cfg.n,
        bound: cfg.bound,
        cursor: cursor
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(","),
        best_value: best.as_ref().map(|c| c.value.to_string()),
        witness: best.as_ref().map(|c| c.vector.to_string()),
        examined,
    };
    let mut visited = 0u64;
    let mut batches = 0u64;
    loop {
        let batch: Vec<Vec<u64>> = vectors.by_ref().take(BATCH).collect();
        let Some(last) = batch.last().cloned() else {
            break;
        };
        visited += batch.len() as u64;
        let scored: Vec<Candidate> = batch
            .par_iter()
            .filter(|v| v.iter().fold(0u64, |g, &x| g.gcd(&x)) == 1)
            .map(|v| Candidate::score(cfg.target, CoeffVec::from_integers(v)?))
            .collect::<Result<_>>()?;
        examined += scored.len() as u64;
        best = Candidate::better(best, scored.into_iter().min());
        batches += 1;

        let stop = control.stop.is_some_and(|f| f.load(Ordering::SeqCst))
            || control.stop_after.is_some_and(|limit| visited >= limit);
        if stop {
            let ck = checkpoint(&last, &best, examined);
            on_checkpoint(&ck)?;
            return Ok(ExhaustiveOutcome::Interrupted(ck));
        }
        if control.checkpoint_every > 0 && batches.is_multiple_of(control.checkpoint_every) {
            on_checkpoint(&checkpoint(&last, &best, examined))?;
        }
    }
    let best = best.ok_or_else(|| {
        Error::InvalidArgument(format!(
            "no admissible vectors with n={} and entry sum <= {}",
            cfg.n, cfg.bound
        ))
    })?;
    Ok(ExhaustiveOutcome::Finished(SearchRecord::new(
        cfg.target,
        best,
        examined,
        SearchMode::Exhaustive,
        0,
        cfg.bound,
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn enumerator_is_complete_and_ordered() {
        for n in 1..=5 {
            for lo in 0..=1 {
                for bound in 0..=9 {
                    let seen: Vec<Vec<u64>> = NonIncreasingVectors::new(n, lo, bound).collect();
                    assert!(seen.windows(2).all(|w| w[0] < w[1]));
                    // brute force over the box [lo, bound]^n
                    let mut expected = BTreeSet::new();
                    let side = bound + 1;
                    for code in 0..side.pow(n as u32) {
                        let v: Vec<u64> =
                            (0..n).map(|i| code / side.pow(i as u32) % side).collect();
                        let ok = v.iter().all(|&x| x >= lo)
                            && v.windows(2).all(|w| w[0] >= w[1])
                            && v.iter().sum::<u64>() <= bound;
                        if ok {
                            expected.insert(v);
                        }
                    }
                    let got: BTreeSet<Vec<u64>> = seen.iter().cloned().collect();
                    assert_eq!(got, expected, "n={n} lo={lo} bound={bound}");
                    assert_eq!(seen.len() as u128, raw_vector_count(n, lo, bound));
                }
            }
        }
    }

    #[test]
    fn canonical_count_matches_visits() {
        for (n, lo, bound) in [(3, 0, 10), (5, 1, 12), (7, 0, 14), (4, 1, 4), (2, 0, 1)] {
            let visited = NonIncreasingVectors::new(n, lo, bound)
                .filter(|v| v.iter().fold(0u64, |g, &x| g.gcd(&x)) == 1)
                .count() as u128;
            assert_eq!(
                visited,
                canonical_vector_count(n, lo, bound),
                "n={n} lo={lo} B={bound}"
            );
            let target = if lo == 1 {
                SearchTarget::Gprime
            } else {
                SearchTarget::G
            };
            let r = exhaustive_integer_search(n, target, bound).unwrap();
            assert_eq!(r.vectors_examined as u128, visited);
        }
    }

    #[test]
    fn resume_after_cursor() {
        let all: Vec<Vec<u64>> = NonIncreasingVectors::new(4, 0, 8).collect();
        let resumed: Vec<Vec<u64>> = NonIncreasingVectors::after(&all[10], 0, 8).collect();
        assert_eq!(&all[11..], &resumed[..]);
    }

    #[test]
    fn small_minima() {
        let r = exhaustive_integer_search(2, SearchTarget::T, 2).unwrap();
        assert_eq!(r.best_value.to_string(), "1/2");
        assert_eq!(r.witness.entries(), &[1, 1]);
        let r = exhaustive_integer_search(5, SearchTarget::Gprime, 7).unwrap();
        assert_eq!(r.best_value.to_string(), "1/4");
        assert!(r.reproduces().unwrap());
        let r = exhaustive_integer_search(7, SearchTarget::G, 6).unwrap();
        assert_eq!(r.best_value.to_string(), "7/32");
        assert_eq!(r.witness.entries(), &[1, 1, 1, 1, 1, 1, 0]);
        assert!(!r.floor_violated);
    }

    #[test]
    fn budget_and_range_errors() {
        let mut cfg = ExhaustiveConfig::new(7, SearchTarget::G, 24);
        cfg.max_vectors = 10;
        assert!(matches!(
            exhaustive_search_resumable(&cfg, None, &RunControl::default(), |_| Ok(())),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(exhaustive_integer_search(13, SearchTarget::G, 5).is_err());
        assert!(exhaustive_integer_search(5, SearchTarget::Gprime, 4).is_err());
    }

    #[test]
    fn interrupted_run_resumes_to_identical_record() {
        let cfg = ExhaustiveConfig::new(6, SearchTarget::G, 24);
        let full = exhaustive_integer_search(6, SearchTarget::G, 24).unwrap();
        let control = RunControl {
            stop_after: Some(3000),
            ..Default::default()
        };
        let mut written = Vec::new();
        let ExhaustiveOutcome::Interrupted(ck) =
            exhaustive_search_resumable(&cfg, None, &control, |c| {
                written.push(c.clone());
                Ok(())
            })
            .unwrap()
        else {
            panic!("expected an interruption");
        };
        assert_eq!(written.last(), Some(&ck));
        let json = serde_json::to_string(&ck).unwrap();
        let ck: Checkpoint = serde_json::from_str(&json).unwrap();
        let ExhaustiveOutcome::Finished(resumed) =
            exhaustive_search_resumable(&cfg, Some(&ck), &RunControl::default(), |_| Ok(()))
                .unwrap()
        else {
            panic!("expected completion");
        };
        assert_eq!(resumed, full);
    }
}
