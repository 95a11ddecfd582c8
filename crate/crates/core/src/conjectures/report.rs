use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::coeff::CoeffVec;
use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, Rational};
use crate::sign::SignAssignment;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Predicate {
    Tomaszewski,
    Tails,
    Delta,
    DeltaAlt,
    DeltaSweep,
    Pairing,
    Comb,
    Hk,
    Gprime,
}

impl Predicate {
    pub fn name(&self) -> &'static str {
        match self {
            Predicate::Tomaszewski => "tomaszewski",
            Predicate::Tails => "tails",
            Predicate::Delta => "delta",
            Predicate::DeltaAlt => "deltaalt",
            Predicate::DeltaSweep => "deltasweep",
            Predicate::Pairing => "pairing",
            Predicate::Comb => "comb",
            Predicate::Hk => "hk",
            Predicate::Gprime => "gprime",
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Predicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "tomaszewski" => Predicate::Tomaszewski,
            "tails" => Predicate::Tails,
            "delta" => Predicate::Delta,
            "deltaalt" | "delta-alt" => Predicate::DeltaAlt,
            "deltasweep" | "delta-sweep" => Predicate::DeltaSweep,
            "pairing" => Predicate::Pairing,
            "comb" => Predicate::Comb,
            "hk" => Predicate::Hk,
            "gprime" => Predicate::Gprime,
            other => {
                return Err(Error::Parse {
                    input: other.to_string(),
                    reason: "unknown predicate".into(),
                })
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Violated,
    /// Value reported, but no statement is claimed in this dimension.
    OutOfScope,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// Sign vectors on the offending side of the threshold; `total` is how
    /// many exist, `masks` may list only a prefix for large `n`.
    Masks {
        total: u64,
        masks: Vec<SignAssignment>,
    },
    /// A failing pair of the sorted pairing, 1-indexed as `s_k`, `s_{H+1-k}`.
    Pair { k: u64, low: i64, high: i64 },
    /// A threshold at which the delta inequality fails. When `‖a‖` is an
    /// integer the lifted `(n+1)`-vector is emitted for direct re-checking.
    Delta {
        #[serde(serialize_with = "ser_rational")]
        delta: Rational,
        #[serde(serialize_with = "ser_rational")]
        lhs: Rational,
        lifted: Option<CoeffVec>,
    },
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub predicate: Predicate,
    pub vector: CoeffVec,
    pub n: usize,
    pub verdict: Verdict,
    /// Exact values as `"p/q"` strings (counts as plain integers).
    pub values: BTreeMap<String, String>,
    pub witness: Option<Witness>,
    /// Inputs besides the vector, e.g. `delta`.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub(crate) fn new(predicate: Predicate, vector: &CoeffVec) -> Self {
        Self {
            predicate,
            vector: vector.clone(),
            n: vector.n(),
            verdict: Verdict::Holds,
            values: BTreeMap::new(),
            witness: None,
            params: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub(crate) fn value(&mut self, key: &str, v: impl ToString) -> &mut Self {
        self.values.insert(key.to_string(), v.to_string());
        self
    }

    pub(crate) fn rational_value(&mut self, key: &str, v: &Rational) -> &mut Self {
        self.values.insert(key.to_string(), format_rational(v));
        self
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    pub fn is_violation(&self) -> bool {
        self.verdict == Verdict::Violated
    }

    /// Re-runs the named predicate on the stored input.
    pub fn recheck(&self) -> Result<CheckReport> {
        let delta = || -> Result<Rational> {
            let text = self
                .params
                .get("delta")
                .ok_or_else(|| Error::InvalidArgument("report has no delta parameter".into()))?;
            parse_rational(text)
        };
        run_predicate(self.predicate, &self.vector, delta().ok().as_ref())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Dispatches by predicate; `delta` is required by the two fixed-delta
/// predicates and ignored elsewhere.
pub fn run_predicate(
    predicate: Predicate,
    a: &CoeffVec,
    delta: Option<&Rational>,
) -> Result<CheckReport> {
    use super::*;
    let need_delta = || {
        delta
            .cloned()
            .ok_or_else(|| Error::InvalidArgument(format!("{predicate} needs a delta")))
    };
    match predicate {
        Predicate::Tomaszewski => check_tomaszewski(a),
        Predicate::Tails => check_symmetric_tails(a),
        Predicate::Delta => check_delta_inequality(a, &need_delta()?),
        Predicate::DeltaAlt => check_delta_alt(a, &need_delta()?),
        Predicate::DeltaSweep => check_delta_sweep(a),
        Predicate::Pairing => check_pairing(a),
        Predicate::Comb => check_combinatorial(a),
        Predicate::Hk => check_hk_bound(a),
        Predicate::Gprime => check_gprime(a),
    }
}
