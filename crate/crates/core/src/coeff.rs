//! Canonical coefficient vectors.
//!
//! Every probability over the signs is invariant under permuting the
//! coefficients, flipping their signs and scaling by a positive constant, so
//! a vector is stored as sorted non-increasing nonnegative integers whose
//! nonzero entries have gcd 1.

use std::fmt;
use std::str::FromStr;

use num::integer::Integer;
use num::{BigInt, One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, Rational};

/// Largest supported dimension: sign assignments are single `u64` masks.
pub const MAX_DIM: usize = 63;

/// Bound on the entry sum so that every sign sum fits an `i64` and every
/// square fits an `i128`.
pub const MAX_ENTRY_SUM: u64 = 1 << 62;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoeffVec {
    entries: Vec<u64>,
    norm_sq: u128,
}

impl CoeffVec {
    /// Canonicalizes nonnegative rationals: common-denominator scaling,
    /// gcd reduction, then a non-increasing sort.
    pub fn canonicalize(raw: &[Rational]) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::InvalidArgument("empty coefficient vector".into()));
        }
        if raw.len() > MAX_DIM {
            return Err(Error::TooLarge {
                n: raw.len(),
                max: MAX_DIM,
            });
        }
        if let Some(neg) = raw.iter().find(|r| r.is_negative()) {
            return Err(Error::InvalidCoefficient(format_rational(neg)));
        }
        let lcm = raw.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let mut scaled: Vec<BigInt> = raw.iter().map(|r| r.numer() * (&lcm / r.denom())).collect();
        let gcd = scaled.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if !gcd.is_zero() {
            for x in &mut scaled {
                *x /= &gcd;
            }
        }
        let entries = scaled
            .iter()
            .map(|x| x.to_u64().ok_or(Error::CoefficientOverflow))
            .collect::<Result<Vec<_>>>()?;
        Self::from_canonical_parts(entries)
    }

    /// Canonicalizes a nonnegative integer vector.
    pub fn from_integers(raw: &[u64]) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::InvalidArgument("empty coefficient vector".into()));
        }
        if raw.len() > MAX_DIM {
            return Err(Error::TooLarge {
                n: raw.len(),
                max: MAX_DIM,
            });
        }
        let gcd = raw.iter().fold(0u64, |acc, &x| acc.gcd(&x));
        let entries = if gcd > 1 {
            raw.iter().map(|x| x / gcd).collect()
        } else {
            raw.to_vec()
        };
        Self::from_canonical_parts(entries)
    }

    fn from_canonical_parts(mut entries: Vec<u64>) -> Result<Self> {
        entries.sort_unstable_by(|a, b| b.cmp(a));
        let mut total: u64 = 0;
        for &x in &entries {
            total = total
                .checked_add(x)
                .filter(|&t| t <= MAX_ENTRY_SUM)
                .ok_or(Error::CoefficientOverflow)?;
        }
        let norm_sq = entries.iter().map(|&x| (x as u128) * (x as u128)).sum();
        Ok(Self { entries, norm_sq })
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn norm_sq(&self) -> u128 {
        self.norm_sq
    }

    /// Sum of entries, the largest attainable sign sum.
    pub fn l1(&self) -> i64 {
        self.entries.iter().sum::<u64>() as i64
    }

    pub fn is_zero(&self) -> bool {
        self.norm_sq == 0
    }

    pub fn has_zero_entry(&self) -> bool {
        self.entries.last() == Some(&0)
    }

    pub(crate) fn require_nonzero(&self) -> Result<()> {
        if self.is_zero() {
            Err(Error::ZeroNorm)
        } else {
            Ok(())
        }
    }

    /// Same direction scaled by `c`, without re-canonicalizing. Only used to
    /// probe scale invariance.
    pub fn scaled_entries(&self, c: u64) -> Vec<u64> {
        self.entries.iter().map(|x| x * c).collect()
    }

    /// Whether the norm is an integer, i.e. `norm_sq` is a perfect square.
    pub fn integral_norm(&self) -> Option<u64> {
        let root = crate::exact::isqrt(&BigInt::from(self.norm_sq));
        let r = root.to_u64()?;
        ((r as u128) * (r as u128) == self.norm_sq).then_some(r)
    }
}

impl fmt::Display for CoeffVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl FromStr for CoeffVec {
    type Err = Error;

    /// Comma-separated nonnegative integers or `p/q` rationals.
    fn from_str(text: &str) -> Result<Self> {
        let raw = text
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        Self::canonicalize(&raw)
    }
}

impl Serialize for CoeffVec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
