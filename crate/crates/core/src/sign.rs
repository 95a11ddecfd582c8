//! Sign assignments as bitmasks: bit `i` set means `s_{i+1} = -1`, so the
//! mask of `(J)_n` has exactly the (1-indexed) positions of `J` set.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::coeff::MAX_DIM;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignAssignment {
    mask: u64,
    n: u8,
}

impl SignAssignment {
    pub fn new(mask: u64, n: usize) -> Result<Self> {
        if n == 0 || n > MAX_DIM {
            return Err(Error::TooLarge { n, max: MAX_DIM });
        }
        if mask >> n != 0 {
            return Err(Error::InvalidArgument(format!(
                "mask {mask:#x} has bits beyond n={n}"
            )));
        }
        Ok(Self { mask, n: n as u8 })
    }

    /// `(J)_n` from 1-indexed positions.
    pub fn from_set(positions: &[usize], n: usize) -> Result<Self> {
        let mut mask = 0u64;
        for &p in positions {
            if p == 0 || p > n {
                return Err(Error::InvalidArgument(format!(
                    "position {p} outside 1..={n}"
                )));
            }
            mask |= 1 << (p - 1);
        }
        Self::new(mask, n)
    }

    /// All-plus vector `()_n`.
    pub fn all_plus(n: usize) -> Result<Self> {
        Self::new(0, n)
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn full_mask(n: usize) -> u64 {
        if n >= 64 {
            u64::MAX
        } else {
            (1u64 << n) - 1
        }
    }

    /// Negates every sign.
    pub fn complement(&self) -> Self {
        Self {
            mask: !self.mask & Self::full_mask(self.n()),
            n: self.n,
        }
    }

    /// Whether `s_{i+1} = -1` (0-indexed `i`).
    #[inline]
    pub fn is_minus(&self, i: usize) -> bool {
        self.mask >> i & 1 == 1
    }

    /// The sign `s_{i+1}` as `+1`/`-1` (0-indexed `i`).
    #[inline]
    pub fn sign(&self, i: usize) -> i64 {
        if self.is_minus(i) {
            -1
        } else {
            1
        }
    }

    /// 1-indexed positions of the minus signs, i.e. the set `J`.
    pub fn minus_positions(&self) -> Vec<usize> {
        (0..self.n())
            .filter(|&i| self.is_minus(i))
            .map(|i| i + 1)
            .collect()
    }

    pub fn minus_count(&self) -> u32 {
        self.mask.count_ones()
    }

    /// Every assignment of dimension `n` in mask order.
    pub fn all(n: usize) -> impl Iterator<Item = SignAssignment> {
        assert!(n <= 32, "refusing to iterate 2^{n} sign assignments");
        (0..1u64 << n).map(move |mask| SignAssignment { mask, n: n as u8 })
    }
}

impl fmt::Display for SignAssignment {
    /// `(3,4)_7` notation.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .minus_positions()
            .iter()
            .map(|p| p.to_string())
            .collect();
        write!(f, "({})_{}", parts.join(","), self.n)
    }
}

impl FromStr for SignAssignment {
    type Err = Error;

    /// Parses `(3,4)_7` or `()_7`.
    fn from_str(text: &str) -> Result<Self> {
        let bad = |reason: &str| Error::Parse {
            input: text.to_string(),
            reason: reason.to_string(),
        };
        let t = text.trim();
        let (set, n) = t.rsplit_once('_').ok_or_else(|| bad("expected (J)_n"))?;
        let n: usize = n.parse().map_err(|_| bad("dimension is not an integer"))?;
        let inner = set
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| bad("expected parentheses"))?;
        let positions = inner
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().map_err(|_| bad("bad position")))
            .collect::<Result<Vec<_>>>()?;
        Self::from_set(&positions, n)
    }
}

impl Serialize for SignAssignment {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
