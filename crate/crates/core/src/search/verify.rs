//! Fixed suite of witness evaluations, exhaustive small searches and seeded
//! property batches. Failures are rows with `pass = false`, not errors.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{exhaustive_integer_search, hunt, sample_vector, HuntPredicate, SearchTarget};
use crate::coeff::CoeffVec;
use crate::compare::sign_sum;
use crate::conjectures::{
    check_delta_alt, check_delta_inequality, combinatorial_count, g_table, gprime_table,
};
use crate::dominance::{
    case_lemma_7, dominates, order_rule_report, separating_prefix, upward_closure, vsd_size,
};
use crate::enumerate::{tail_counts_mitm, tail_counts_norm, tail_counts_with, Side, Traversal};
use crate::error::Result;
use crate::exact::{format_rational, rational, Rational};
use crate::sign::SignAssignment;

#[derive(Debug, Clone, Serialize)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Entry-sum bound of the exhaustive minimum searches.
    pub exhaustive_bound: u64,
    /// Random 7-dimensional vectors for the lower-bound and case-lemma batch.
    pub property_samples: u64,
    pub property_entry_bound: u64,
    /// All vectors with entries in `1..=4` up to this dimension.
    pub comb_exhaustive_max_n: usize,
    pub comb_random: u64,
    pub pairing_per_n: u64,
    pub order_max_n: usize,
    pub soundness_max_n: usize,
    pub hunt_trials: u64,
    pub hunt_entry_bound: u64,
    pub engine_cases: u64,
    pub mitm_large_n: usize,
    pub mitm_time_limit_secs: u64,
}

impl VerifyConfig {
    pub fn full() -> Self {
        Self {
            seed: 7,
            exhaustive_bound: 24,
            property_samples: 100_000,
            property_entry_bound: 50,
            comb_exhaustive_max_n: 8,
            comb_random: 10_000,
            pairing_per_n: 10_000,
            order_max_n: 8,
            soundness_max_n: 6,
            hunt_trials: 100_000,
            hunt_entry_bound: 20,
            engine_cases: 1_000,
            mitm_large_n: 40,
            mitm_time_limit_secs: 60,
        }
    }

    /// Same rows with small budgets; seconds rather than minutes.
    pub fn quick() -> Self {
        Self {
            exhaustive_bound: 12,
            property_samples: 2_000,
            comb_exhaustive_max_n: 6,
            comb_random: 300,
            pairing_per_n: 300,
            order_max_n: 6,
            soundness_max_n: 4,
            hunt_trials: 3_000,
            engine_cases: 60,
            mitm_large_n: 34,
            ..Self::full()
        }
    }
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self::full()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimRow {
    pub id: String,
    pub claim: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

impl ClaimRow {
    fn new(
        id: impl Into<String>,
        claim: impl Into<String>,
        expected: impl Into<String>,
        observed: impl Into<String>,
        pass: bool,
    ) -> Self {
        Self {
            id: id.into(),
            claim: claim.into(),
            expected: expected.into(),
            observed: observed.into(),
            pass,
        }
    }

    fn exact(
        id: impl Into<String>,
        claim: impl Into<String>,
        expected: &Rational,
        observed: &Rational,
    ) -> Self {
        Self::new(
            id,
            claim,
            format_rational(expected),
            format_rational(observed),
            expected == observed,
        )
    }

    fn from_error(id: impl Into<String>, claim: impl Into<String>, err: &crate::Error) -> Self {
        Self::new(id, claim, "no error", format!("error: {err}"), false)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClaimsReport {
    pub config: VerifyConfig,
    pub rows: Vec<ClaimRow>,
}

impl ClaimsReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ClaimRow> {
        self.rows.iter().filter(|r| !r.pass)
    }

    /// Fixed-width table, one row per claim.
    pub fn table(&self) -> String {
        let mut out = format!(
            "{:<22} {:<6} {:<14} {:<14} {}\n",
            "id", "pass", "expected", "observed", "claim"
        );
        for r in &self.rows {
            out.push_str(&format!(
                "{:<22} {:<6} {:<14} {:<14} {}\n",
                r.id,
                if r.pass { "ok" } else { "FAIL" },
                r.expected,
                r.observed,
                r.claim
            ));
        }
        out
    }
}

pub const CRITERIA: usize = 10;

/// Rows for criterion `k` (1-based).
pub fn criterion(k: usize, cfg: &VerifyConfig) -> Vec<ClaimRow> {
    let id = format!("{k}");
    let run = match k {
        1 => g_table_rows(cfg),
        2 => gprime_table_rows(cfg),
        3 => lower_bound_rows(cfg),
        4 => case_lemma_rows(cfg),
        5 => combinatorial_rows(cfg),
        6 => two_tail_rows(),
        7 => pairing_rows(cfg),
        8 => dominance_rows(cfg),
        9 => hunt_rows(cfg),
        10 => engine_rows(cfg),
        _ => {
            return vec![ClaimRow::new(
                id,
                "unknown criterion",
                "1..=10",
                k.to_string(),
                false,
            )]
        }
    };
    run.unwrap_or_else(|e| vec![ClaimRow::from_error(id, "criterion raised an error", &e)])
}

pub fn verify_paper(cfg: &VerifyConfig) -> ClaimsReport {
    ClaimsReport {
        config: cfg.clone(),
        rows: (1..=CRITERIA).flat_map(|k| criterion(k, cfg)).collect(),
    }
}

fn cv(text: &str) -> CoeffVec {
    text.parse().expect("static vector")
}

fn g_table_rows(cfg: &VerifyConfig) -> Result<Vec<ClaimRow>> {
    let witnesses = [
        "1",
        "1,1",
        "1,1,1",
        "1,1,1,0",
        "1,1,1,0,0",
        "1,1,1,1,1,1",
        "1,1,1,1,1,1,0",
    ];
    let mut rows = Vec::new();
    for (i, w) in witnesses.iter().enumerate() {
        let n = i + 1;
        let a = cv(w);
        let p = tail_counts_norm(&a)?.p_ge().to_rational();
        let g = g_table(n).expect("tabulated");
        rows.push(ClaimRow::exact(
            format!("1.witness.n{n}"),
            format!("P(|a.e| >= |a|) at ({w})"),
            &g,
            &p,
        ));
    }
    for n in 1..=7 {
        rows.push(minimum_row(
            "1.search",
            n,
            SearchTarget::G,
            cfg.exhaustive_bound,
            g_table(n).expect("tabulated"),
        )?);
    }
    Ok(rows)
}

fn gprime_table_rows(cfg: &VerifyConfig) -> Result<Vec<ClaimRow>> {
    let witnesses = [
        (2, "1,1"),
        (3, "1,1,1"),
        (4, "1,1,1,1"),
        (5, "2,2,1,1,1"),
        (6, "2,1,1,1,1,1"),
        (7, "2,2,2,1,1,1,1"),
    ];
    let mut rows = Vec::new();
    for (n, w) in witnesses {
        let p = tail_counts_norm(&cv(w))?.p_gt().to_rational();
        let g = gprime_table(n).expect("tabulated");
        rows.push(ClaimRow::exact(
            format!("2.witness.n{n}"),
            format!("P(|a.e| > |a|) at ({w})"),
            &g,
            &p,
        ));
    }
    for n in 1..=7 {
        rows.push(minimum_row(
            "2.search",
            n,
            SearchTarget::Gprime,
            cfg.exhaustive_bound,
            gprime_table(n).expect("tabulated"),
        )?);
    }
    Ok(rows)
}

fn minimum_row(
    prefix: &str,
    n: usize,
    target: SearchTarget,
    bound: u64,
    floor: Rational,
) -> Result<ClaimRow> {
    let r = exhaustive_integer_search(n, target, bound)?;
    let best = r.best_value.to_rational();
    Ok(ClaimRow::new(
        format!("{prefix}.n{n}"),
        format!(
            "no {target} value below the table among {} vectors with entry sum <= {bound} (witness {})",
            r.vectors_examined, r.witness
        ),
        format!(">= {}", format_rational(&floor)),
        format_rational(&best),
        best >= floor,
    ))
}

fn seven_dim_sample(cfg: &VerifyConfig) -> Vec<CoeffVec> {
    (0..cfg.property_samples)
        .into_par_iter()
        .filter_map(|i| sample_vector(cfg.seed, i, 7, 0, cfg.property_entry_bound))
        .collect()
}

fn lower_bound_rows(cfg: &VerifyConfig) -> Result<Vec<ClaimRow>> {
    let sample = seven_dim_sample(cfg);
    let results: Vec<(Rational, u64)> = sample
        .par_iter()
        .map(|a| {
            Ok((
                tail_counts_norm(a)?.p_ge().to_rational(),
                vsd_size(a, false)?,
            ))
        })
        .collect::<Result<_>>()?;
    let min_p = results
        .iter()
        .map(|r| &r.0)
        .min()
        .cloned()
        .unwrap_or_else(|| rational(1, 1));
    let min_v = results.iter().map(|r| r.1).min().unwrap_or(0);
    let bound = rational(7, 32);
    Ok(vec![
        ClaimRow::new(
            "3.probability",
            format!(
                "min P(|a.e| >= |a|) over {} random vectors in dimension 7",
                sample.len()
            ),
            ">= 7/32",
            format_rational(&min_p),
            min_p >= bound,
        ),
        ClaimRow::new(
            "3.vsd",
            "min |{s : a.s >= |a|}| over the same sample",
            ">= 14",
            min_v.to_string(),
            min_v >= 14,
        ),
    ])
}

fn case_lemma_rows(cfg: &VerifyConfig) -> Result<Vec<ClaimRow>> {
    let sample = seven_dim_sample(cfg);
    let allowed = [
        SignAssignment::from_set(&[2], 7)?,
        SignAssignment::from_set(&[3, 4], 7)?,
        SignAssignment::from_set(&[5, 6, 7], 7)?,
    ];
    let outcome = |strict: bool| -> (u64, u64) {
        sample
            .par_iter()
            .filter(|a| !strict || !a.has_zero_entry())
            .map(|a| match case_lemma_7(a, strict) {
                Ok(w) if allowed.contains(&w) => (1, 0),
                _ => (1, 1),
            })
            .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1))
    };
    let mut rows = Vec::new();
    for (strict, id) in [(false, "4.weak"), (true, "4.strict")] {
        let (tried, failed) = outcome(strict);
        rows.push(ClaimRow::new(
            id,
            format!(
                "one of (2)_7, (3,4)_7, (5,6,7)_7 is a verified member ({} vectors{})",
                tried,
                if strict { ", all entries positive" } else { "" }
            ),
            "0 failures",
            format!("{failed} failures"),
            failed == 0 && tried > 0,
        ));
    }
    Ok(rows)
}

fn combinatorial_rows(cfg: &VerifyConfig) -> Result<Vec<ClaimRow>> {
    let agree = |raw: &[u64]| -> Result<bool> {
        let a = CoeffVec::from_integers(raw)?;
        let t = tail_counts_norm(&a)?;
        Ok(combinatorial_count(raw)? == t.below + t.at)
    };
    let mut checked = 0u64;
    let mut mismatches = 0u64;
    for n in 1..=cfg.comb_exhaustive_max_n {
        let total = 4u64.pow(n as u32);
        let bad = (0..total)
            .into_par_iter()
            .map(|code| {
                let raw: Vec<u64> = (0..n).map(|i| code / 4u64.pow(i as u32) % 4 + 1).collect();
                agree(&raw).map(|ok| !ok as u64)
            })
            .sum::<Result<u64>>()?;
        checked += total;
        mismatches += bad;
    }
    let random_bad = (0..cfg.comb_random)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed);
            rng.set_stream(i);
            let n = rng.gen_range(1..=12);
            let raw: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=40)).collect();
            agree(&raw).map(|ok| !ok as u64)
        })
        .sum::<Result<u64>>()?;
    Ok(vec![
        ClaimRow::new(
            "5.exhaustive",
            format!("subset-count fraction equals P(|l.e| <= |l|) for all {checked} vectors with entries in 1..=4, n <= {}", cfg.comb_exhaustive_max_n),
            "0 mismatches",
            format!("{mismatches} mismatches"),
            mismatches == 0,
        ),
        ClaimRow::new(
            "5.random",
            format!("same equality on {} random vectors with n <= 12", cfg.comb_random),
            "0 mismatches",
            format!("{random_bad} mismatches"),
            random_bad == 0,
        ),
    ])
}

fn two_tail_rows() -> Result<Vec<ClaimRow>> {
    let a = cv("1,1,1,1");
    let one = rational(1, 1);
    let alt = check_delta_alt(&a, &one)?;
    let sum = crate::exact::parse_rational(&alt.values["sum_ge_delta_ge_inv_delta"])?;
    let direct = check_delta_inequality(&a, &one)?;
    Ok(vec![
        ClaimRow::exact(
            "6.expression",
            "P(|a.e| >= d|a|) + P(|a.e| >= |a|/d) at a=(1,1,1,1), d=1",
            &rational(5, 4),
            &sum,
        ),
        ClaimRow::new(
            "6.inequality",
            "P(|a.e| <= d|a|) >= P(|a.e| >= |a|/d) at the same point",
            "holds",
            format!(
                "{} vs {}",
                alt.values["p_abs_le_delta"], alt.values["p_abs_ge_inv_delta"]
            ),
            alt.holds() && direct.holds(),
        ),
    ])
}

fn pairing_rows(cfg: &VerifyConfig) -> Result<Vec<ClaimRow>> {
    (2..=8)
        .map(|n| {
            let out = hunt(
                HuntPredicate::Pairing,
                n..=n,
                cfg.pairing_per_n,
                cfg.seed + n as u64,
                cfg.hunt_entry_bound,
            )?;
            Ok(ClaimRow::new(
                format!("7.pairing.n{n}"),
                format!(
                    "sorted pairing products <= norm_sq on {} random vectors",
                    out.examined
                ),
                "0 violations",
                format!("{} violations", out.violations.len()),
                out.clean(),
            ))
        })
        .collect()
}

fn dominance_rows(cfg: &VerifyConfig) -> Result<Vec<ClaimRow>> {
    let mut rows = Vec::new();
    for n in 1..=cfg.order_max_n {
        let report = order_rule_report(n)?;
        let instances: u64 = report.rules.iter().map(|r| r.instances).sum();
        let violations: u64 = report.rules.iter().map(|r| r.violations).sum();
        rows.push(ClaimRow::new(
            format!("8.rules.n{n}"),
            format!("order rules (i)-(v) under the prefix test, {instances} instances"),
            "0 violations",
            format!("{violations} violations"),
            report.all_hold(),
        ));
    }
    let mut failures = 0u64;
    let mut pairs = 0u64;
    for n in 1..=cfg.soundness_max_n {
        for s in SignAssignment::all(n) {
            for t in SignAssignment::all(n) {
                pairs += 1;
                let dom = dominates(&s, &t)?;
                match separating_prefix(&s, &t)? {
                    Some(a) => {
                        if dom || sign_sum(&a, &t)? >= sign_sum(&a, &s)? {
                            failures += 1;
                        }
                    }
                    None => {
                        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                        rng.set_stream(pairs);
                        let sound = (0..8).all(|_| {
                            let raw: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=30)).collect();
                            let a = CoeffVec::from_integers(&raw).expect("small entries");
                            sign_sum(&a, &t).expect("same n") >= sign_sum(&a, &s).expect("same n")
                        });
                        if !dom || !sound {
                            failures += 1;
                        }
                    }
                }
            }
        }
    }
    rows.push(ClaimRow::new(
        "8.sound-complete",
        format!(
            "prefix test agrees with separating vectors and random evaluation on {pairs} pairs"
        ),
        "0 failures",
        format!("{failures} failures"),
        failures == 0,
    ));
    let closure = upward_closure(&SignAssignment::from_set(&[4, 5, 7], 7)?)?;
    let listed: [&[usize]; 14] = [
        &[4, 5, 7],
        &[4, 6, 7],
        &[5, 6, 7],
        &[4, 5],
        &[4, 6],
        &[4, 7],
        &[5, 6],
        &[5, 7],
        &[6, 7],
        &[4],
        &[5],
        &[6],
        &[7],
        &[],
    ];
    let mut missing = 0;
    for set in listed {
        if !closure.contains(&SignAssignment::from_set(set, 7)?) {
            missing += 1;
        }
    }
    rows.push(ClaimRow::new(
        "8.closure",
        "upward closure of (4,5,7)_7 is the 13 listed vectors plus itself",
        "14 (0 missing)",
        format!("{} ({missing} missing)", closure.len()),
        missing == 0 && closure.len() == 14,
    ));
    Ok(rows)
}

fn hunt_rows(cfg: &VerifyConfig) -> Result<Vec<ClaimRow>> {
    let t = hunt(
        HuntPredicate::Tomaszewski,
        2..=9,
        cfg.hunt_trials,
        cfg.seed,
        cfg.hunt_entry_bound,
    )?;
    let d = hunt(
        HuntPredicate::Delta,
        2..=8,
        cfg.hunt_trials,
        cfg.seed,
        cfg.hunt_entry_bound,
    )?;
    Ok(vec![
        ClaimRow::new(
            "9.tomaszewski",
            format!(
                "P(|a.e| <= |a|) >= 1/2 on {} random vectors, n in 2..=9",
                t.examined
            ),
            "0 violations",
            format!("{} violations", t.violations.len()),
            t.clean(),
        ),
        ClaimRow::new(
            "9.delta",
            format!(
                "delta inequality on every critical region, {} random vectors, n in 2..=8",
                d.examined
            ),
            "0 violations",
            format!("{} violations", d.violations.len()),
            d.clean(),
        ),
    ])
}

fn engine_rows(cfg: &VerifyConfig) -> Result<Vec<ClaimRow>> {
    let mismatches = (0..cfg.engine_cases)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xe9);
            rng.set_stream(i);
            let n = rng.gen_range(2..=20);
            let raw: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=30)).collect();
            let a = CoeffVec::from_integers(&raw)?;
            if a.is_zero() {
                return Ok(0);
            }
            let q = rng.gen_range(1..=8i64);
            let rho = rational(rng.gen_range(0..=3 * q), q);
            let side = if rng.gen() {
                Side::OneSided
            } else {
                Side::TwoSided
            };
            let direct = tail_counts_with(&a, &rho, side, Traversal::Gray)?;
            let mitm = tail_counts_mitm(&a, &rho, side)?;
            Ok((direct != mitm) as u64)
        })
        .sum::<Result<u64>>()?;
    let n = cfg.mitm_large_n;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let raw: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=1000)).collect();
    let a = CoeffVec::from_integers(&raw)?;
    let start = Instant::now();
    let counts = tail_counts_mitm(&a, &rational(1, 1), Side::TwoSided)?;
    let secs = start.elapsed().as_secs_f64();
    Ok(vec![
        ClaimRow::new(
            "10.cross",
            format!(
                "meet-in-the-middle equals Gray-code counts on {} random (a, rho), n <= 20",
                cfg.engine_cases
            ),
            "0 mismatches",
            format!("{mismatches} mismatches"),
            mismatches == 0,
        ),
        ClaimRow::new(
            format!("10.mitm.n{n}"),
            format!(
                "single meet-in-the-middle count at n={n} (total {})",
                counts.total()
            ),
            format!("<= {} s", cfg.mitm_time_limit_secs),
            format!("{secs:.2} s"),
            secs <= cfg.mitm_time_limit_secs as f64 && counts.total() == 1u64 << n,
        ),
    ])
}
