//! Extremal search over canonical integer coefficient vectors.
//!
//! Searches report the best value found together with a witness; they never
//! claim optimality beyond the region they exhausted.

mod descent;
mod exhaustive;
mod hunt;
mod random;
pub mod verify;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coeff::CoeffVec;
use crate::conjectures::{g_table, gprime_table};
use crate::enumerate::tail_counts_norm_auto;
use crate::error::{Error, Result};
use crate::exact::{rational, DyadicProb, Rational};

pub use descent::local_descent;
pub use exhaustive::{
    canonical_vector_count, exhaustive_integer_search, exhaustive_search_resumable,
    raw_vector_count, Checkpoint, ExhaustiveConfig, ExhaustiveOutcome, NonIncreasingVectors,
    RunControl, DEFAULT_MAX_VECTORS,
};
pub use hunt::{hunt, HuntOutcome, HuntPredicate};
pub use random::random_search;

/// Quantity minimized by a search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SearchTarget {
    /// `P(|a·ε| <= ‖a‖)`
    T,
    /// `P(|a·ε| >= ‖a‖)`
    G,
    /// `P(|a·ε| > ‖a‖)`, entries strictly positive
    Gprime,
}

impl SearchTarget {
    /// Smallest admissible entry.
    pub fn min_entry(&self) -> u64 {
        match self {
            SearchTarget::Gprime => 1,
            _ => 0,
        }
    }

    pub fn admits(&self, a: &CoeffVec) -> bool {
        !a.is_zero() && !(*self == SearchTarget::Gprime && a.has_zero_entry())
    }

    pub fn evaluate(&self, a: &CoeffVec) -> Result<DyadicProb> {
        if *self == SearchTarget::Gprime && a.has_zero_entry() {
            return Err(Error::ZeroEntry(a.to_string()));
        }
        let t = tail_counts_norm_auto(a)?;
        Ok(match self {
            SearchTarget::T => t.p_le(),
            SearchTarget::G => t.p_ge(),
            SearchTarget::Gprime => t.p_gt(),
        })
    }

    /// Value no vector of dimension `n` may go below, where one is
    /// established.
    pub fn known_floor(&self, n: usize) -> Option<Rational> {
        match self {
            SearchTarget::T => (n <= 9).then(|| rational(1, 2)),
            SearchTarget::G => g_table(n),
            SearchTarget::Gprime => gprime_table(n),
        }
    }
}

impl fmt::Display for SearchTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchTarget::T => "T",
            SearchTarget::G => "G",
            SearchTarget::Gprime => "Gprime",
        })
    }
}

impl FromStr for SearchTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "T" | "t" => Ok(SearchTarget::T),
            "G" | "g" => Ok(SearchTarget::G),
            "Gprime" | "gprime" | "G'" => Ok(SearchTarget::Gprime),
            other => Err(Error::Parse {
                input: other.into(),
                reason: "target must be T, G or Gprime".into(),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Exhaustive,
    Random,
    Descent,
}

impl FromStr for SearchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(SearchMode::Exhaustive),
            "random" => Ok(SearchMode::Random),
            "descent" => Ok(SearchMode::Descent),
            other => Err(Error::Parse {
                input: other.into(),
                reason: "mode must be exhaustive, random or descent".into(),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchRecord {
    pub target: SearchTarget,
    pub n: usize,
    pub best_value: DyadicProb,
    pub witness: CoeffVec,
    pub vectors_examined: u64,
    pub mode: SearchMode,
    pub seed: u64,
    /// Entry-sum bound, entry bound or step budget, depending on `mode`.
    pub bound: u64,
    /// Established floor for this target and `n`, if any.
    pub known_floor: Option<String>,
    /// Set when `best_value` is below `known_floor`: a falsification event.
    pub floor_violated: bool,
}

impl SearchRecord {
    pub(crate) fn new(
        target: SearchTarget,
        best: Candidate,
        vectors_examined: u64,
        mode: SearchMode,
        seed: u64,
        bound: u64,
    ) -> Self {
        let n = best.vector.n();
        let floor = target.known_floor(n);
        let floor_violated = floor
            .as_ref()
            .is_some_and(|f| best.value.to_rational() < *f);
        Self {
            target,
            n,
            best_value: best.value,
            witness: best.vector,
            vectors_examined,
            mode,
            seed,
            bound,
            known_floor: floor.as_ref().map(crate::exact::format_rational),
            floor_violated,
        }
    }

    /// Re-evaluates the witness.
    pub fn reproduces(&self) -> Result<bool> {
        Ok(self.target.evaluate(&self.witness)? == self.best_value)
    }
}

/// A scored vector; ordered by value, then lexicographically by entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Candidate {
    pub value: DyadicProb,
    pub vector: CoeffVec,
}

impl Candidate {
    pub fn score(target: SearchTarget, vector: CoeffVec) -> Result<Self> {
        let value = target.evaluate(&vector)?;
        Ok(Self { value, vector })
    }

    pub fn better(a: Option<Candidate>, b: Option<Candidate>) -> Option<Candidate> {
        match (a, b) {
            (Some(x), Some(y)) => Some(if y < x { y } else { x }),
            (x, None) => x,
            (None, y) => y,
        }
    }
}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> Ordering {
        self.value
            .cmp(&other.value)
            .then_with(|| self.vector.entries().cmp(other.vector.entries()))
    }
}

/// Vector for trial `stream` of a seeded run: entries uniform in
/// `[lo, hi]`. The stream is selected per trial, so the sample does not
/// depend on which worker draws it. `None` for the all-zero draw.
pub fn sample_vector(seed: u64, stream: u64, n: usize, lo: u64, hi: u64) -> Option<CoeffVec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let raw: Vec<u64> = (0..n).map(|_| rng.gen_range(lo..=hi)).collect();
    CoeffVec::from_integers(&raw).ok().filter(|a| !a.is_zero())
}
