use num::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use super::report::{CheckReport, Predicate, Verdict, Witness};
use super::{g_table, gprime_table};
use crate::coeff::CoeffVec;
use crate::compare::sign_sum_unchecked;
use crate::enumerate::{
    distribution, sorted_upper_half, tail_counts_norm_auto, MAX_DISTRIBUTION_DIM,
};
use crate::error::{Error, Result};
use crate::exact::{rational, DyadicProb, Rational};
use crate::sign::SignAssignment;

/// Masks listed in a witness before truncating.
const WITNESS_LIST_CAP: usize = 1 << 12;

/// Sign vectors with `|a·s| > ‖a‖`, at most `limit` of them.
pub(crate) fn masks_above_norm(a: &CoeffVec, limit: usize) -> Witness {
    let n = a.n();
    let norm = a.norm_sq() as i128;
    let mut masks = Vec::new();
    let mut total = 0u64;
    for mask in 0..1u64 << n {
        let s = sign_sum_unchecked(a.entries(), mask) as i128;
        if s * s > norm {
            total += 1;
            if masks.len() < limit {
                masks.push(SignAssignment::new(mask, n).expect("mask in range"));
            }
        }
    }
    Witness::Masks { total, masks }
}

/// `P(|a·ε| <= ‖a‖) >= 1/2`.
pub fn check_tomaszewski(a: &CoeffVec) -> Result<CheckReport> {
    let t = tail_counts_norm_auto(a)?;
    let mut r = CheckReport::new(Predicate::Tomaszewski, a);
    r.value("p_le_norm", t.p_le())
        .value("below", t.below)
        .value("at", t.at)
        .value("above", t.above);
    if (t.below + t.at) < 1u64 << (a.n() - 1) {
        r.verdict = Verdict::Violated;
        // 2^{n-1}+1 vectors strictly outside the norm refute the instance
        let need = ((1usize << (a.n() - 1)) + 1).min(WITNESS_LIST_CAP);
        r.witness = Some(masks_above_norm(a, need));
    }
    Ok(r)
}

/// `P(|a·ε| < ‖a‖) >= P(|a·ε| > ‖a‖)`, with both equivalent restatements
/// in terms of `P(|a·ε| = ‖a‖)`.
pub fn check_symmetric_tails(a: &CoeffVec) -> Result<CheckReport> {
    let t = tail_counts_norm_auto(a)?;
    let mut r = CheckReport::new(Predicate::Tails, a);
    let half = rational(1, 2);
    let p_eq = t.p_eq().to_rational();
    let gt_form = t.p_gt().to_rational() <= &half - &p_eq / BigInt::from(2);
    let le_form = t.p_le().to_rational() >= &half + &p_eq / BigInt::from(2);
    r.value("p_lt_norm", t.p_lt())
        .value("p_eq_norm", t.p_eq())
        .value("p_gt_norm", t.p_gt())
        .value("gt_le_half_minus_half_eq", gt_form)
        .value("le_ge_half_plus_half_eq", le_form);
    if t.below < t.above {
        r.verdict = Verdict::Violated;
        r.witness = Some(masks_above_norm(a, WITNESS_LIST_CAP));
    }
    Ok(r)
}

/// Sorted pairing of the `2^n` sign sums: `s_k · s_{2^{n-1}+1-k} <= ‖a‖^2`
/// for the nonnegative half.
pub fn check_pairing(a: &CoeffVec) -> Result<CheckReport> {
    a.require_nonzero()?;
    let dist = distribution(a)?;
    let half = sorted_upper_half(&dist);
    let h = half.len();
    let norm = a.norm_sq() as i128;
    let mut r = CheckReport::new(Predicate::Pairing, a);
    let mut worst: (i128, usize) = (i128::MIN, 0);
    for k in 0..h {
        let prod = half[k] as i128 * half[h - 1 - k] as i128;
        if prod > worst.0 {
            worst = (prod, k);
        }
    }
    let (prod, k) = worst;
    r.rational_value(
        "max_product_over_norm_sq",
        &Rational::new(BigInt::from(prod), BigInt::from(norm)),
    )
    .value("pairs", h);
    if prod > norm {
        r.verdict = Verdict::Violated;
        r.witness = Some(Witness::Pair {
            k: k as u64 + 1,
            low: half[k],
            high: half[h - 1 - k],
        });
        r.notes
            .push("only the sorted pairing was tested; another pairing could still exist".into());
    }
    Ok(r)
}

/// Number of subsets `J` whose form
/// `Σ_{same side, i<j} l_i l_j − Σ_{J × J_c} l_i l_j` is `<= 0`.
///
/// Works on the raw entries (any order, any scale).
pub fn combinatorial_count(l: &[u64]) -> Result<u64> {
    let n = l.len();
    if n == 0 || n > MAX_DISTRIBUTION_DIM {
        return Err(Error::TooLarge {
            n,
            max: MAX_DISTRIBUTION_DIM,
        });
    }
    if let Some((index, &value)) = l.iter().enumerate().find(|(_, &x)| x == 0) {
        return Err(Error::NonPositiveEntry { index, value });
    }
    let l: Vec<i128> = l.iter().map(|&x| x as i128).collect();
    Ok((0..1u64 << n)
        .into_par_iter()
        .filter(|&j| {
            // pairs (i, k) with i < k, grouped by i from the right
            let (mut inside, mut outside) = (0i128, 0i128);
            let mut form = 0i128;
            for i in (0..n).rev() {
                if j >> i & 1 == 1 {
                    form += l[i] * (inside - outside);
                    inside += l[i];
                } else {
                    form += l[i] * (outside - inside);
                    outside += l[i];
                }
            }
            form <= 0
        })
        .count() as u64)
}

/// Fraction of subsets satisfying the combinatorial inequality.
pub fn combinatorial_fraction(l: &CoeffVec) -> Result<DyadicProb> {
    let count = combinatorial_count(l.entries())?;
    Ok(DyadicProb::new(count, l.n() as u32))
}

pub fn check_combinatorial(l: &CoeffVec) -> Result<CheckReport> {
    let frac = combinatorial_fraction(l)?;
    let mut r = CheckReport::new(Predicate::Comb, l);
    r.value("fraction", frac).value("count", frac.count());
    if frac.count() < 1u64 << (l.n() - 1) {
        r.verdict = Verdict::Violated;
        r.witness = Some(masks_above_norm(l, WITNESS_LIST_CAP));
    }
    Ok(r)
}

/// Whether some sign sum sits exactly on the norm sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PointClass {
    /// `P(|a·ε| = ‖a‖) = 0`
    A,
    /// `P(|a·ε| = ‖a‖) > 0`
    B,
}

pub fn classify_a_or_b(a: &CoeffVec) -> Result<PointClass> {
    let t = tail_counts_norm_auto(a)?;
    Ok(if t.at > 0 {
        PointClass::B
    } else {
        PointClass::A
    })
}

/// `P(|a·ε| >= ‖a‖) >= 7/32`; proven only for `n <= 7`.
pub fn check_hk_bound(a: &CoeffVec) -> Result<CheckReport> {
    let t = tail_counts_norm_auto(a)?;
    let p = t.p_ge();
    let mut r = CheckReport::new(Predicate::Hk, a);
    r.value("p_ge_norm", p).value("bound", "7/32");
    if a.n() > 7 {
        r.verdict = Verdict::OutOfScope;
        r.notes
            .push("the 7/32 bound is established only for n <= 7".into());
    } else if p.to_rational() < rational(7, 32) {
        r.verdict = Verdict::Violated;
        r.witness = Some(Witness::Masks {
            total: t.at + t.above,
            masks: Vec::new(),
        });
    }
    if let Some(g) = g_table(a.n()) {
        r.rational_value("g_n", &g);
    }
    Ok(r)
}

/// `P(|a·ε| > ‖a‖) >= G'_n` for vectors without zero entries.
pub fn check_gprime(a: &CoeffVec) -> Result<CheckReport> {
    a.require_nonzero()?;
    if a.has_zero_entry() {
        return Err(Error::ZeroEntry(a.to_string()));
    }
    let t = tail_counts_norm_auto(a)?;
    let p = t.p_gt();
    let mut r = CheckReport::new(Predicate::Gprime, a);
    r.value("p_gt_norm", p).value(
        "p_gt_norm_one_sided",
        DyadicProb::new(t.above / 2, a.n() as u32),
    );
    match gprime_table(a.n()) {
        Some(g) => {
            r.rational_value("gprime_n", &g);
            if p.to_rational() < g {
                r.verdict = Verdict::Violated;
                r.witness = Some(Witness::Masks {
                    total: t.above,
                    masks: Vec::new(),
                });
            }
        }
        None => {
            r.verdict = Verdict::OutOfScope;
            r.notes.push("G'_n is tabulated only for n <= 7".into());
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::tail_counts_norm;
    use proptest::prelude::*;

    fn cv(text: &str) -> CoeffVec {
        text.parse().unwrap()
    }

    #[test]
    fn tomaszewski_examples() {
        let r = check_tomaszewski(&cv("1,1")).unwrap();
        assert!(r.holds());
        assert_eq!(r.values["p_le_norm"], "1/2");
        assert_eq!(
            check_tomaszewski(&cv("1,1,1")).unwrap().values["p_le_norm"],
            "3/4"
        );
        assert_eq!(
            check_tomaszewski(&cv("1,0")).unwrap().values["p_le_norm"],
            "1/1"
        );
        assert!(matches!(
            check_tomaszewski(&cv("0,0")),
            Err(Error::ZeroNorm)
        ));
    }

    #[test]
    fn symmetric_tail_examples() {
        let r = check_symmetric_tails(&cv("1,1,1,1")).unwrap();
        assert!(r.holds());
        assert_eq!(r.values["p_lt_norm"], "3/8");
        assert_eq!(r.values["p_gt_norm"], "1/8");
        let r = check_symmetric_tails(&cv("1,1")).unwrap();
        assert!(r.holds());
        assert_eq!(r.values["p_lt_norm"], r.values["p_gt_norm"]);
        let r = check_symmetric_tails(&cv("1,1,1,1,1,1,0")).unwrap();
        assert_eq!(r.values["p_lt_norm"], "25/32");
        assert_eq!(r.values["p_gt_norm"], "7/32");
        assert_eq!(r.values["gt_le_half_minus_half_eq"], "true");
    }

    #[test]
    fn pairing_examples() {
        let r = check_pairing(&cv("1,1")).unwrap();
        assert!(r.holds());
        assert_eq!(r.values["max_product_over_norm_sq"], "0/1");
        let r = check_pairing(&cv("1,0,0,0")).unwrap();
        assert_eq!(r.values["max_product_over_norm_sq"], "1/1");
        let r = check_pairing(&cv("1,1,1")).unwrap();
        assert!(r.holds());
        assert_eq!(r.values["max_product_over_norm_sq"], "1/1");
    }

    #[test]
    fn combinatorial_examples() {
        assert_eq!(
            combinatorial_fraction(&cv("1,1")).unwrap().to_string(),
            "1/2"
        );
        assert_eq!(
            combinatorial_fraction(&cv("1,1,1")).unwrap().to_string(),
            "3/4"
        );
        let l = cv("2,2,1,1,1");
        assert_eq!(
            combinatorial_fraction(&l).unwrap(),
            tail_counts_norm(&l).unwrap().p_le()
        );
        assert!(matches!(
            combinatorial_count(&[1, 0, 2]),
            Err(Error::NonPositiveEntry { index: 1, value: 0 })
        ));
    }

    /// Direct evaluation over explicit pair lists, as literally written.
    fn comb_brute(l: &[u64]) -> u64 {
        let n = l.len();
        let mut count = 0;
        for j in 0..1u64 << n {
            let inj = |i: usize| j >> i & 1 == 1;
            let mut same = 0i128;
            let mut cross = 0i128;
            for i in 0..n {
                for k in 0..n {
                    let p = l[i] as i128 * l[k] as i128;
                    if i < k && inj(i) == inj(k) {
                        same += p;
                    }
                    if inj(i) && !inj(k) {
                        cross += p;
                    }
                }
            }
            count += (same - cross <= 0) as u64;
        }
        count
    }

    #[test]
    fn classification() {
        assert_eq!(classify_a_or_b(&cv("1,1,1,1")).unwrap(), PointClass::B);
        assert_eq!(classify_a_or_b(&cv("1,1,1")).unwrap(), PointClass::A);
        assert_eq!(classify_a_or_b(&cv("1")).unwrap(), PointClass::B);
    }

    #[test]
    fn hk_examples() {
        let r = check_hk_bound(&cv("1,1,1,1,1,1,0")).unwrap();
        assert!(r.holds());
        assert_eq!(r.values["p_ge_norm"], "7/32");
        assert_eq!(check_hk_bound(&cv("1")).unwrap().values["p_ge_norm"], "1/1");
        assert_eq!(
            check_hk_bound(&cv("1,1,1")).unwrap().values["p_ge_norm"],
            "1/4"
        );
        let r = check_hk_bound(&cv("1,1,1,1,1,1,1,1")).unwrap();
        assert_eq!(r.verdict, Verdict::OutOfScope);
    }

    #[test]
    fn gprime_examples() {
        let r = check_gprime(&cv("1,1,1,1")).unwrap();
        assert_eq!(r.values["p_gt_norm"], "1/8");
        assert_eq!(r.values["p_gt_norm_one_sided"], "1/16");
        assert!(r.holds());
        let r = check_gprime(&cv("2,1,1,1,1,1")).unwrap();
        assert_eq!(r.values["p_gt_norm_one_sided"], "3/32");
        assert_eq!(r.values["p_gt_norm"], "3/16");
        let r = check_gprime(&cv("1,1")).unwrap();
        assert_eq!(r.values["p_gt_norm"], "1/2");
        assert_eq!(r.values["p_gt_norm_one_sided"], "1/4");
        assert!(matches!(
            check_gprime(&cv("1,1,0")),
            Err(Error::ZeroEntry(_))
        ));
    }

    #[test]
    fn reports_recheck_identically() {
        for text in ["1,1,1", "2,2,1,1,1", "1,1,1,1,1,1,0", "3,1"] {
            let a = cv(text);
            for r in [
                check_tomaszewski(&a).unwrap(),
                check_symmetric_tails(&a).unwrap(),
                check_pairing(&a).unwrap(),
                check_hk_bound(&a).unwrap(),
            ] {
                assert_eq!(
                    r.recheck().unwrap().to_json().unwrap(),
                    r.to_json().unwrap()
                );
            }
        }
    }

    proptest! {
        #[test]
        fn combinatorial_matches_literal_pairs(l in prop::collection::vec(1u64..6, 1..=8)) {
            prop_assert_eq!(combinatorial_count(&l).unwrap(), comb_brute(&l));
        }

        #[test]
        fn classification_follows_ties(raw in prop::collection::vec(0u64..6, 1..=10)) {
            let a = CoeffVec::from_integers(&raw).unwrap();
            prop_assume!(!a.is_zero());
            let tie = SignAssignment::all(a.n()).any(|s| {
                let x = sign_sum_unchecked(a.entries(), s.mask()) as i128;
                x * x == a.norm_sq() as i128
            });
            let class = classify_a_or_b(&a).unwrap();
            prop_assert_eq!(class == PointClass::B, tie);
        }
    }
}
