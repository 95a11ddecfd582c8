//! The "better than" order on sign vectors and membership in the upper
//! tail `V(a) = { s : a·s >= ‖a‖ }` (strict variant `a·s > ‖a‖`).
//!
//! `t` is better than `s` when `a·t >= a·s` for every non-increasing
//! nonnegative `a`. Such `a` are exactly the nonnegative combinations of the
//! prefix indicators `(1,…,1,0,…,0)`, so the order reduces to `n` prefix
//! checks: every prefix of `t` carries at most as many minus signs as the
//! same prefix of `s`.

use rayon::prelude::*;
use serde::Serialize;

use crate::coeff::CoeffVec;
use crate::compare::{in_upper_tail, sign_sum};
use crate::enumerate::{tail_counts_threshold, Side};
use crate::error::{Error, Result};
use crate::exact::rational;
use crate::sign::SignAssignment;

/// A subset `J ⊆ {1..n}`, identified with the sign vector `(J)_n`.
pub type SignSet = SignAssignment;

pub const MAX_CLOSURE_DIM: usize = 24;
pub const MAX_RULE_DIM: usize = 10;

fn same_dim(s: &SignAssignment, t: &SignAssignment) -> Result<()> {
    if s.n() != t.n() {
        return Err(Error::DimensionError {
            expected: s.n(),
            found: t.n(),
        });
    }
    Ok(())
}

#[inline]
fn dominates_masks(s: u64, t: u64, n: usize) -> bool {
    let (mut cs, mut ct) = (0u32, 0u32);
    for i in 0..n {
        cs += (s >> i & 1) as u32;
        ct += (t >> i & 1) as u32;
        if ct > cs {
            return false;
        }
    }
    true
}

/// `s ⪯ t`: `t` is at least as good as `s` for every `a` in the cone.
pub fn dominates(s: &SignAssignment, t: &SignAssignment) -> Result<bool> {
    same_dim(s, t)?;
    Ok(dominates_masks(s.mask(), t.mask(), s.n()))
}

/// `s ≺ t`: dominated and distinct.
pub fn strictly_better(s: &SignAssignment, t: &SignAssignment) -> Result<bool> {
    Ok(dominates(s, t)? && s != t)
}

/// When `t` does not dominate `s`, a prefix indicator `a` with
/// `a·t < a·s`.
pub fn separating_prefix(s: &SignAssignment, t: &SignAssignment) -> Result<Option<CoeffVec>> {
    same_dim(s, t)?;
    let n = s.n();
    for k in 1..=n {
        let mut raw = vec![0u64; n];
        raw[..k].fill(1);
        let a = CoeffVec::from_integers(&raw)?;
        if sign_sum(&a, t)? < sign_sum(&a, s)? {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// Every `t` with `s ⪯ t`, `s` included, in mask order.
pub fn upward_closure(s: &SignAssignment) -> Result<Vec<SignAssignment>> {
    let n = s.n();
    if n > MAX_CLOSURE_DIM {
        return Err(Error::TooLarge {
            n,
            max: MAX_CLOSURE_DIM,
        });
    }
    let base = s.mask();
    let masks: Vec<u64> = (0..1u64 << n)
        .into_par_iter()
        .filter(|&t| dominates_masks(base, t, n))
        .collect();
    masks
        .into_iter()
        .map(|m| SignAssignment::new(m, n))
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct RuleTally {
    pub rule: &'static str,
    pub instances: u64,
    pub violations: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrderRuleReport {
    pub n: usize,
    pub rules: Vec<RuleTally>,
}

impl OrderRuleReport {
    pub fn all_hold(&self) -> bool {
        self.rules.iter().all(|r| r.violations == 0)
    }
}

/// Instantiates the five sufficient rules for the order over every
/// admissible index tuple and checks each implied relation.
pub fn order_rule_report(n: usize) -> Result<OrderRuleReport> {
    if n == 0 || n > MAX_RULE_DIM {
        return Err(Error::TooLarge {
            n,
            max: MAX_RULE_DIM,
        });
    }
    let size = 1usize << n;
    let words = size.div_ceil(64);
    let dom = |s: usize, t: usize| dominates_masks(s as u64, t as u64, n);
    let strict = |s: usize, t: usize| s != t && dom(s, t);

    let mut rules = Vec::with_capacity(5);

    // (i) single flips move right
    let mut tally = RuleTally {
        rule: "i",
        instances: 0,
        violations: 0,
    };
    for i in 0..n {
        for j in i + 1..n {
            tally.instances += 1;
            tally.violations += !strict(1 << i, 1 << j) as u64;
        }
    }
    rules.push(tally);

    // (ii) dropping minus signs
    let mut tally = RuleTally {
        rule: "ii",
        instances: 0,
        violations: 0,
    };
    for big in 0..size {
        let mut sub = big;
        while sub > 0 {
            sub = (sub - 1) & big;
            tally.instances += 1;
            tally.violations += !strict(big, sub) as u64;
        }
    }
    rules.push(tally);

    // (iii) transitivity, via up-set bitsets
    let up: Vec<Vec<u64>> = (0..size)
        .into_par_iter()
        .map(|s| {
            let mut bits = vec![0u64; words];
            for t in 0..size {
                if dom(s, t) {
                    bits[t / 64] |= 1 << (t % 64);
                }
            }
            bits
        })
        .collect();
    let has = |bits: &[u64], t: usize| bits[t / 64] >> (t % 64) & 1 == 1;
    let mut tally = RuleTally {
        rule: "iii",
        instances: 0,
        violations: 0,
    };
    for s in 0..size {
        for mid in 0..size {
            if mid == s || !has(&up[s], mid) {
                continue;
            }
            let mid_up = &up[mid];
            tally.instances += mid_up.iter().map(|w| w.count_ones() as u64).sum::<u64>();
            let contained = mid_up.iter().zip(&up[s]).all(|(m, u)| m & !u == 0);
            // s ≺ mid ⪯ s would contradict distinctness of the endpoints
            let loops_back = has(mid_up, s);
            if !contained || loops_back {
                tally.violations += 1;
            }
        }
    }
    rules.push(tally);

    // (iv) adding a common disjoint block
    let full = size - 1;
    let tally = (0..size)
        .into_par_iter()
        .map(|lo| {
            let mut t = (0u64, 0u64);
            for hi in 0..size {
                if !strict(lo, hi) {
                    continue;
                }
                let free = full & !(lo | hi);
                let mut extra = free;
                loop {
                    t.0 += 1;
                    t.1 += !strict(extra | lo, extra | hi) as u64;
                    if extra == 0 {
                        break;
                    }
                    extra = (extra - 1) & free;
                }
            }
            t
        })
        .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1));
    rules.push(RuleTally {
        rule: "iv",
        instances: tally.0,
        violations: tally.1,
    });

    // (v) componentwise-larger index tuples of equal length
    let mut tally = RuleTally {
        rule: "v",
        instances: 0,
        violations: 0,
    };
    let mut by_size: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for m in 0..size {
        by_size[m.count_ones() as usize].push(m);
    }
    let indices = |m: usize| (0..n).filter(move |&i| m >> i & 1 == 1);
    for group in &by_size {
        for &lo in group {
            for &hi in group {
                if indices(lo).zip(indices(hi)).all(|(i, j)| i <= j) {
                    tally.instances += 1;
                    tally.violations += !dom(lo, hi) as u64;
                }
            }
        }
    }
    rules.push(tally);

    Ok(OrderRuleReport { n, rules })
}

pub fn verify_order_rules(n: usize) -> bool {
    order_rule_report(n).map(|r| r.all_hold()).unwrap_or(false)
}

/// `Σ_{same side, i<j} a_i a_j − Σ_{J × J_c} a_i a_j`, pair by pair.
pub fn quadratic_form(a: &CoeffVec, j: &SignSet) -> Result<i128> {
    if a.n() != j.n() {
        return Err(Error::DimensionError {
            expected: a.n(),
            found: j.n(),
        });
    }
    let e = a.entries();
    let mut total = 0i128;
    for p in 0..e.len() {
        for q in p + 1..e.len() {
            let prod = (e[p] as i128) * (e[q] as i128);
            if j.is_minus(p) == j.is_minus(q) {
                total += prod;
            } else {
                total -= prod;
            }
        }
    }
    Ok(total)
}

fn require_nonnegative_sum(a: &CoeffVec, j: &SignSet) -> Result<()> {
    let sum = sign_sum(a, j)?;
    if sum < 0 {
        return Err(Error::LemmaPreconditionViolated(format!(
            "a·{j} = {sum} < 0 for a = ({a})"
        )));
    }
    Ok(())
}

/// Membership of `(J)_n` in the upper tail decided by the quadratic form
/// (needs `a·(J)_n >= 0`).
pub fn vsd_membership_quadratic(a: &CoeffVec, j: &SignSet, strict: bool) -> Result<bool> {
    require_nonnegative_sum(a, j)?;
    let q = quadratic_form(a, j)?;
    Ok(if strict { q > 0 } else { q >= 0 })
}

/// Hypothesis form for a disjoint pair:
/// `Σ_{pairs within J, within K, within (J∪K)_c} a_i a_j − Σ_{J × K} a_i a_j`.
pub fn pair_hypothesis_form(a: &CoeffVec, j: &SignSet, k: &SignSet) -> Result<i128> {
    same_dim(j, k)?;
    if a.n() != j.n() {
        return Err(Error::DimensionError {
            expected: a.n(),
            found: j.n(),
        });
    }
    let e = a.entries();
    let block = |i: usize| -> u8 {
        if j.is_minus(i) {
            0
        } else if k.is_minus(i) {
            1
        } else {
            2
        }
    };
    let mut total = 0i128;
    for p in 0..e.len() {
        for q in p + 1..e.len() {
            let prod = (e[p] as i128) * (e[q] as i128);
            match (block(p), block(q)) {
                (x, y) if x == y => total += prod,
                (0, 1) | (1, 0) => total -= prod,
                _ => {}
            }
        }
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PairChoice {
    First,
    Second,
    Both,
}

/// For disjoint `J`, `K` with nonnegative sums and a nonnegative (positive
/// when `strict`) hypothesis form, reports which of `(J)_n`, `(K)_n` is in
/// the upper tail.
pub fn pair_lemma_select(
    a: &CoeffVec,
    j: &SignSet,
    k: &SignSet,
    strict: bool,
) -> Result<PairChoice> {
    same_dim(j, k)?;
    if j.mask() & k.mask() != 0 {
        return Err(Error::LemmaPreconditionViolated(format!(
            "{j} and {k} are not disjoint"
        )));
    }
    require_nonnegative_sum(a, j)?;
    require_nonnegative_sum(a, k)?;
    let h = pair_hypothesis_form(a, j, k)?;
    if (strict && h <= 0) || (!strict && h < 0) {
        return Err(Error::LemmaPreconditionViolated(format!(
            "hypothesis form is {h} for {j}, {k} at a = ({a})"
        )));
    }
    let in_j = vsd_membership_quadratic(a, j, strict)?;
    let in_k = vsd_membership_quadratic(a, k, strict)?;
    match (in_j, in_k) {
        (true, true) => Ok(PairChoice::Both),
        (true, false) => Ok(PairChoice::First),
        (false, true) => Ok(PairChoice::Second),
        (false, false) => Err(Error::NoWitness(a.to_string())),
    }
}

/// For `n = 7`: the first of `(2)_7`, `(3,4)_7`, `(5,6,7)_7` in the upper
/// tail (strict variant needs `a_7 > 0`).
pub fn case_lemma_7(a: &CoeffVec, strict: bool) -> Result<SignAssignment> {
    if a.n() != 7 {
        return Err(Error::DimensionError {
            expected: 7,
            found: a.n(),
        });
    }
    if strict && a.has_zero_entry() {
        return Err(Error::LemmaPreconditionViolated(format!(
            "strict variant needs a_7 > 0, got a = ({a})"
        )));
    }
    for set in [&[2usize][..], &[3, 4], &[5, 6, 7]] {
        let s = SignAssignment::from_set(set, 7)?;
        if vsd_membership_quadratic(a, &s, strict)? {
            return Ok(s);
        }
    }
    Err(Error::NoWitness(a.to_string()))
}

/// Size of the union of upward closures of those seeds that lie in the
/// upper tail: a certified lower bound on `|V(a)|`.
pub fn vsd_count_lower_bound(a: &CoeffVec, seeds: &[SignAssignment]) -> Result<u64> {
    let n = a.n();
    if n > MAX_CLOSURE_DIM {
        return Err(Error::TooLarge {
            n,
            max: MAX_CLOSURE_DIM,
        });
    }
    let mut verified = Vec::new();
    for s in seeds {
        if in_upper_tail(a, s, false)? {
            verified.push(s.mask());
        }
    }
    if verified.is_empty() {
        return Ok(0);
    }
    Ok((0..1u64 << n)
        .into_par_iter()
        .filter(|&t| verified.iter().any(|&s| dominates_masks(s, t, n)))
        .count() as u64)
}

/// `|V(a)|` (or the strict variant) by direct enumeration.
pub fn vsd_size(a: &CoeffVec, strict: bool) -> Result<u64> {
    let t = tail_counts_threshold(a, &rational(1, 1), Side::OneSided)?;
    Ok(if strict { t.above } else { t.at + t.above })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compare::cmp_abs_vs_norm;
    use crate::exact::Position;
    use proptest::prelude::*;

    fn set(pos: &[usize], n: usize) -> SignAssignment {
        SignAssignment::from_set(pos, n).unwrap()
    }

    fn cv(text: &str) -> CoeffVec {
        text.parse().unwrap()
    }

    #[test]
    fn dominance_examples() {
        assert!(dominates(&set(&[2], 3), &set(&[3], 3)).unwrap());
        assert!(!dominates(&set(&[1], 3), &set(&[2, 3], 3)).unwrap());
        assert!(!dominates(&set(&[2, 3], 3), &set(&[1], 3)).unwrap());
        assert!(dominates(&set(&[3, 4], 7), &set(&[3, 4], 7)).unwrap());
        assert!(dominates(&set(&[], 3), &set(&[], 4)).is_err());
    }

    #[test]
    fn incomparable_pair_has_opposite_witnesses() {
        // a=(1,1,1): a·(1)_3 = 1 > a·(2,3)_3 = -1; a=(1,0,0): -1 < 1.
        let s = set(&[1], 3);
        let t = set(&[2, 3], 3);
        let a = cv("1,1,1");
        assert!(sign_sum(&a, &s).unwrap() > sign_sum(&a, &t).unwrap());
        let b = cv("1,0,0");
        assert!(sign_sum(&b, &s).unwrap() < sign_sum(&b, &t).unwrap());
        assert!(separating_prefix(&s, &t).unwrap().is_some());
        assert!(separating_prefix(&t, &s).unwrap().is_some());
    }

    #[test]
    fn closure_of_four_five_seven() {
        let closure = upward_closure(&set(&[4, 5, 7], 7)).unwrap();
        let listed: Vec<SignAssignment> = [
            &[4, 6, 7][..],
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
        ]
        .iter()
        .map(|p| set(p, 7))
        .collect();
        assert_eq!(listed.len(), 13);
        for s in &listed {
            assert!(closure.contains(s), "{s} missing");
        }
        assert!(closure.contains(&set(&[4, 5, 7], 7)));
        assert_eq!(closure.len(), 14);
    }

    #[test]
    fn closure_extremes() {
        assert_eq!(upward_closure(&set(&[], 5)).unwrap(), vec![set(&[], 5)]);
        assert_eq!(upward_closure(&set(&[1, 2, 3, 4, 5], 5)).unwrap().len(), 32);
    }

    #[test]
    fn order_rules_small() {
        assert!(verify_order_rules(3));
        let r = order_rule_report(7).unwrap();
        assert!(r.all_hold());
        assert!(strictly_better(&set(&[6], 7), &set(&[7], 7)).unwrap());
        assert!(r.rules.iter().all(|t| t.instances > 0));
        assert!(order_rule_report(11).is_err());
    }

    #[test]
    fn quadratic_membership_examples() {
        assert!(vsd_membership_quadratic(&cv("3,2,1"), &set(&[], 3), false).unwrap());
        let a = cv("1,1");
        assert_eq!(quadratic_form(&a, &set(&[1], 2)).unwrap(), -1);
        assert!(!vsd_membership_quadratic(&a, &set(&[1], 2), false).unwrap());
        assert!(matches!(
            vsd_membership_quadratic(&cv("1,1,1"), &set(&[1, 2], 3), false),
            Err(Error::LemmaPreconditionViolated(_))
        ));
        let a = cv("1,1,1,1,1,1,0");
        let j = set(&[5, 6, 7], 7);
        let expected = cmp_abs_vs_norm(&a, &j).unwrap() >= Position::At;
        assert_eq!(vsd_membership_quadratic(&a, &j, false).unwrap(), expected);
    }

    #[test]
    fn pair_lemma_examples() {
        let a = cv("1,1,1,1,1,1,1");
        let j = set(&[2], 7);
        let k = set(&[5, 6, 7], 7);
        assert_eq!(pair_hypothesis_form(&a, &j, &k).unwrap(), 3);
        assert!(pair_lemma_select(&a, &j, &k, false).is_ok());

        // Hypothesis form is 3 - 4 = -1 here, so the lemma does not apply.
        let a = cv("1,1,1,1,1,1,0");
        let r = pair_lemma_select(&a, &set(&[3, 4], 7), &set(&[5, 6, 7], 7), false);
        assert!(matches!(r, Err(Error::LemmaPreconditionViolated(_))));

        // Empty J: the all-plus vector is always in the upper tail.
        let a = cv("3,2,2,1,1");
        let choice = pair_lemma_select(&a, &set(&[], 5), &set(&[4, 5], 5), false).unwrap();
        assert!(matches!(choice, PairChoice::First | PairChoice::Both));

        assert!(matches!(
            pair_lemma_select(&a, &set(&[4], 5), &set(&[4, 5], 5), false),
            Err(Error::LemmaPreconditionViolated(_))
        ));
    }

    #[test]
    fn case_lemma_examples() {
        assert_eq!(
            case_lemma_7(&cv("1,1,1,1,1,1,0"), false).unwrap(),
            set(&[2], 7)
        );
        assert_eq!(
            case_lemma_7(&cv("1,0,0,0,0,0,0"), false).unwrap(),
            set(&[2], 7)
        );
        assert!(matches!(
            case_lemma_7(&cv("1,1,1,1,1,1,0"), true),
            Err(Error::LemmaPreconditionViolated(_))
        ));
        assert!(case_lemma_7(&cv("1,1,1"), false).is_err());
    }

    #[test]
    fn lower_bound_examples() {
        let a = cv("1,1,1,1,1,1,0");
        assert_eq!(vsd_count_lower_bound(&a, &[set(&[2], 7)]).unwrap(), 7);
        assert_eq!(vsd_count_lower_bound(&a, &[]).unwrap(), 0);
        // seeds outside the tail are ignored
        assert_eq!(vsd_count_lower_bound(&a, &[set(&[1, 2, 3], 7)]).unwrap(), 0);
        assert_eq!(vsd_size(&a, false).unwrap(), 14);
    }

    fn sorted_vec(max: u64, n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = CoeffVec> {
        prop::collection::vec(0..=max, n).prop_filter_map("nonzero", |raw| {
            CoeffVec::from_integers(&raw).ok().filter(|a| !a.is_zero())
        })
    }

    #[test]
    fn order_axioms_exhaustive() {
        for n in 1..=6 {
            let size = 1u64 << n;
            for s in 0..size {
                assert!(dominates_masks(s, s, n));
                for t in 0..size {
                    let st = dominates_masks(s, t, n);
                    if st && dominates_masks(t, s, n) {
                        assert_eq!(s, t);
                    }
                    if !st {
                        continue;
                    }
                    for u in 0..size {
                        if dominates_masks(t, u, n) {
                            assert!(dominates_masks(s, u, n));
                        }
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn soundness_and_transfer(a in sorted_vec(20, 2..=10), s_mask in any::<u64>(), t_mask in any::<u64>()) {
            let n = a.n();
            let s = SignAssignment::new(s_mask & SignAssignment::full_mask(n), n).unwrap();
            let t = SignAssignment::new(t_mask & SignAssignment::full_mask(n), n).unwrap();
            if dominates(&s, &t).unwrap() {
                prop_assert!(sign_sum(&a, &t).unwrap() >= sign_sum(&a, &s).unwrap());
                if in_upper_tail(&a, &s, false).unwrap() {
                    prop_assert!(in_upper_tail(&a, &t, false).unwrap());
                }
                if in_upper_tail(&a, &s, true).unwrap() {
                    prop_assert!(in_upper_tail(&a, &t, true).unwrap());
                }
            } else {
                let sep = separating_prefix(&s, &t).unwrap();
                prop_assert!(sep.is_some());
            }
        }

        #[test]
        fn quadratic_matches_comparator(a in sorted_vec(15, 1..=10), strict in any::<bool>()) {
            for j in SignAssignment::all(a.n()) {
                if sign_sum(&a, &j).unwrap() < 0 {
                    continue;
                }
                let direct = in_upper_tail(&a, &j, strict).unwrap();
                prop_assert_eq!(vsd_membership_quadratic(&a, &j, strict).unwrap(), direct);
            }
        }

        #[test]
        fn pair_forms_sum_to_twice_hypothesis(a in sorted_vec(15, 2..=9), j in any::<u64>(), k in any::<u64>()) {
            let n = a.n();
            let full = SignAssignment::full_mask(n);
            let j = SignAssignment::new(j & full, n).unwrap();
            let k = SignAssignment::new(k & full & !j.mask(), n).unwrap();
            let lhs = quadratic_form(&a, &j).unwrap() + quadratic_form(&a, &k).unwrap();
            prop_assert_eq!(lhs, 2 * pair_hypothesis_form(&a, &j, &k).unwrap());
            if let Ok(choice) = pair_lemma_select(&a, &j, &k, false) {
                let in_j = in_upper_tail(&a, &j, false).unwrap();
                let in_k = in_upper_tail(&a, &k, false).unwrap();
                prop_assert!(in_j || in_k);
                prop_assert_eq!(choice == PairChoice::Both, in_j && in_k);
            }
        }
    }
}
