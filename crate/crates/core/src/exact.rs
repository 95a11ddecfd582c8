//! Exact values: reduced rationals, dyadic probabilities and the three-way
//! position of a sum relative to a threshold.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Reduced rational with a positive denominator.
pub type Rational = BigRational;

/// Parses `"p"` or `"p/q"` into a reduced rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let trimmed = text.trim();
    let bad = |reason: &str| Error::Parse {
        input: text.to_string(),
        reason: reason.to_string(),
    };
    let (num, den) = match trimmed.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (trimmed, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad("numerator is not an integer"))?;
    let den = BigInt::from_str(den).map_err(|_| bad("denominator is not an integer"))?;
    if den.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// Formats a rational as `"p/q"`, always with an explicit denominator.
pub fn format_rational(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Where a value sits relative to a threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Position {
    Below,
    At,
    Above,
}

impl From<Ordering> for Position {
    fn from(ord: Ordering) -> Self {
        match ord {
            Ordering::Less => Position::Below,
            Ordering::Equal => Position::At,
            Ordering::Greater => Position::Above,
        }
    }
}

/// Exact probability `count / 2^n`.
#[derive(Debug, Clone, Copy)]
pub struct DyadicProb {
    count: u64,
    n: u32,
}

impl DyadicProb {
    pub fn new(count: u64, n: u32) -> Self {
        assert!(n <= 63, "dyadic exponent {n} exceeds 63");
        assert!(count <= 1u64 << n, "count {count} exceeds 2^{n}");
        Self { count, n }
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn exponent(&self) -> u32 {
        self.n
    }

    /// Numerator and denominator in lowest terms.
    pub fn reduced(&self) -> (u64, u64) {
        if self.count == 0 {
            return (0, 1);
        }
        let shift = self.count.trailing_zeros().min(self.n);
        (self.count >> shift, 1u64 << (self.n - shift))
    }

    pub fn to_rational(&self) -> Rational {
        let (p, q) = self.reduced();
        Rational::new(BigInt::from(p), BigInt::from(q))
    }

    pub fn to_f64(&self) -> f64 {
        self.count as f64 / (1u64 << self.n) as f64
    }

    /// Sum of two probabilities as an exact rational (may exceed 1).
    pub fn add(&self, other: &DyadicProb) -> Rational {
        self.to_rational() + other.to_rational()
    }

    pub fn double(&self) -> Rational {
        self.to_rational() * BigInt::from(2)
    }

    pub fn cmp_rational(&self, other: &Rational) -> Ordering {
        self.to_rational().cmp(other)
    }
}

impl PartialEq for DyadicProb {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for DyadicProb {}

impl PartialOrd for DyadicProb {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DyadicProb {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = (self.count as u128) << other.n;
        let rhs = (other.count as u128) << self.n;
        lhs.cmp(&rhs)
    }
}

impl fmt::Display for DyadicProb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, q) = self.reduced();
        write!(f, "{p}/{q}")
    }
}

impl Serialize for DyadicProb {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// `floor(sqrt(x))` for a nonnegative big integer.
pub(crate) fn isqrt(x: &BigInt) -> BigInt {
    debug_assert!(x.sign() != Sign::Minus);
    if x.is_zero() {
        return BigInt::zero();
    }
    let mut r = x.sqrt();
    // `BigInt::sqrt` is already the floor; keep the invariant explicit.
    while &r * &r > *x {
        r -= BigInt::one();
    }
    while (&r + 1) * (&r + 1) <= *x {
        r += BigInt::one();
    }
    r
}

/// Integer form of the threshold `rho * sqrt(norm_sq)` used inside the
/// enumeration loops: integer sums `x >= 0` compare against it through
/// `floor` and an exactness flag only.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntThreshold {
    /// `floor(rho * sqrt(norm_sq))`, saturated at `cap`.
    pub floor: i64,
    /// Whether the threshold is exactly the integer `floor`.
    pub exact: bool,
}

impl IntThreshold {
    /// `cap` is any bound on the absolute sums that will be classified;
    /// thresholds beyond it saturate to a non-exact `cap`.
    pub fn new(norm_sq: u128, rho: &Rational, cap: i64) -> Result<Self> {
        if rho.is_negative() {
            return Err(Error::InvalidThreshold(format_rational(rho)));
        }
        let p = rho.numer().clone();
        let q = rho.denom().clone();
        // theta = p * sqrt(N) / q, so floor(theta) = floor(isqrt(p^2 N) / q).
        let radicand = &p * &p * BigInt::from(norm_sq);
        let root = isqrt(&radicand);
        let floor = &root / &q;
        let exact = &floor * &floor * &q * &q == radicand;
        match floor.to_i64() {
            Some(f) if f <= cap => Ok(Self { floor: f, exact }),
            _ => Ok(Self {
                floor: cap,
                exact: false,
            }),
        }
    }

    #[inline]
    pub fn classify(&self, x: i64) -> Position {
        if self.exact {
            x.cmp(&self.floor).into()
        } else if x <= self.floor {
            Position::Below
        } else {
            Position::Above
        }
    }
}
