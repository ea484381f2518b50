//! Steps of the reduction pipeline that live entirely in exact rational
//! functions of q: the cleared polynomial form, the index-shifted
//! rewriting, the limit case of the Watson-type transformation, the
//! entangled (n-1)-fold sum, the Vandermonde determinant rewrite and the
//! split into one-dimensional sums.
//!
//! Every verifier builds both sides as sums of factored terms, brings each
//! side onto a least common factored denominator and compares the
//! cross-multiplied Laurent polynomials termwise.
//!
//! Several prefactors carry exponents that are half-integral on their own
//! (e.g. M1(M1 n - M1 + 2 n M2 + 2 n^2 - 1)/2 with the matching summand
//! half from (n/2) sum k_i^2); those are tracked as doubled exponents and
//! divided by two only after combining, with the parity asserted.

use crate::identities::{enumerate_compositions, summand_theorem, CompositionIter, TheoremParams};
use crate::laurent::LaurentPoly;
use crate::qfactored::{poch_qpow, poch_qpow_base, qf_sum, qratio_diff, QFactored, QRatio};
use crate::report::{ReportTimer, VerificationReport};
use crate::ring::{binom2, binom3, Int};

use super::{require_divisible, StepError};

/// All permutations of {0, .., m-1} with their signs, in lexicographic
/// order.
pub(crate) fn permutations_signed(m: usize) -> Vec<(Vec<usize>, i8)> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..m).collect();
    fn inversions(p: &[usize]) -> usize {
        let mut inv = 0;
        for i in 0..p.len() {
            for j in (i + 1)..p.len() {
                if p[i] > p[j] {
                    inv += 1;
                }
            }
        }
        inv
    }
    fn rec(items: &mut Vec<usize>, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if items.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for idx in 0..items.len() {
            let v = items.remove(idx);
            prefix.push(v);
            rec(items, prefix, out);
            prefix.pop();
            items.insert(idx, v);
        }
    }
    let mut perms = Vec::new();
    rec(&mut items, &mut Vec::new(), &mut perms);
    for p in perms {
        let sign = if inversions(&p) % 2 == 0 { 1 } else { -1 };
        out.push((p, sign));
    }
    out
}

/// Monomial q^{e2/2}; the caller guarantees e2 is even.
fn half_monomial(e2: i64) -> QFactored {
    assert!(e2 % 2 == 0, "combined exponent must be integral");
    QFactored::monomial(e2 / 2)
}

/// The raw (uncleaned) left-hand side of the S = 0 identity as a rational
/// function.
pub(crate) fn eq1_lhs_value(n: i64, m1: i64, m2: i64) -> QRatio<Int> {
    let p = TheoremParams { n, m1, m2, s: 0 };
    let terms: Vec<QFactored> = enumerate_compositions(&p, 0)
        .map(|k| summand_theorem(&p, &k))
        .collect();
    qf_sum(terms.iter()).expect("theorem summands are pole-free")
}

/// All lattice points 0 <= k_r <= floor((M1+M2+n-r)/n) for r = 1..dims.
fn box_points(n: i64, m1: i64, m2: i64, dims: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for r in 1..=dims {
        let hi = (m1 + m2 + n - r).div_euclid(n);
        let mut next = Vec::new();
        for prefix in &out {
            for v in 0..=hi {
                let mut p = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Inner summands of the index-shifted form: doubled exponent
/// n sum k^2 - 2(n-1) sum i k_i together with the difference-factor ratio
/// and the per-coordinate Pochhammer ratio. The prefactor is the caller's.
fn eq3_sum_terms(n: i64, m1: i64, m2: i64) -> Vec<(i64, QFactored)> {
    let bounds: Vec<(i64, i64)> = (1..=n)
        .map(|i| (0, (m1 + m2 + n - i).div_euclid(n)))
        .collect();
    let mut out = Vec::new();
    for k in CompositionIter::new(bounds, m1, false) {
        let parts = &k.parts;
        let sum_sq: i64 = parts.iter().map(|v| v * v).sum();
        let sum_ik: i64 = parts
            .iter()
            .enumerate()
            .map(|(i0, v)| (i0 as i64 + 1) * v)
            .sum();
        let e2 = n * sum_sq - 2 * (n - 1) * sum_ik;
        let mut t = QFactored::unit();
        for i in 1..=n {
            for j in (i + 1)..=n {
                let e = n * (parts[(j - 1) as usize] - parts[(i - 1) as usize]) + (j - i);
                t = t.mul(&QFactored::base_factor(e, 1));
                t = t.div(&QFactored::base_factor(j - i, 1));
            }
        }
        for i in 1..=n {
            let ki = parts[(i - 1) as usize];
            t = t.mul(&poch_qpow(-m1 - m2 - n + i, n * ki));
            t = t.div(&poch_qpow(i, n * ki));
        }
        out.push((e2, t));
    }
    out
}

/// Summands of the entangled (n-1)-fold sum: free k_r >= 0 with the
/// difference-factor ratio, the Pochhammer ratio and (q^{M2})^{n k_r},
/// q^{n sum i k_i}.
fn eq4_sum_terms(n: i64, m1: i64, m2: i64) -> Vec<QFactored> {
    let mut out = Vec::new();
    for k in box_points(n, m1, m2, n - 1) {
        let sum_k: i64 = k.iter().sum();
        let sum_ik: i64 = k.iter().enumerate().map(|(i0, v)| (i0 as i64 + 1) * v).sum();
        let mut t = QFactored::monomial(m2 * n * sum_k + n * sum_ik);
        for r in 1..n {
            for s in (r + 1)..n {
                let e = n * (k[(r - 1) as usize] - k[(s - 1) as usize]) + (r - s);
                t = t.mul(&QFactored::base_factor(e, 1));
                t = t.div(&QFactored::base_factor(r - s, 1));
            }
        }
        for r in 1..n {
            let kr = k[(r - 1) as usize];
            t = t.mul(&poch_qpow(-m1 - m2 - n + r, n * kr));
            t = t.div(&poch_qpow(r, n * kr));
        }
        out.push(t);
    }
    out
}

/// The entangled sum as a rational function.
pub(crate) fn eq4_sum_value(n: i64, m1: i64, m2: i64) -> QRatio<Int> {
    let terms = eq4_sum_terms(n, m1, m2);
    qf_sum(terms.iter()).expect("entangled summands are pole-free")
}

/// The permutation-split form of the entangled sum as a rational function:
/// (-1)^{C(n-1,2)} prod_i 1/(q;q)_{i-1} * sum_sigma sgn sigma
/// q^{-C(n,3) + sum i (sigma(i)-1)} prod_i InnerSum(i, sigma(i)).
pub(crate) fn eq5_value(n: i64, m1: i64, m2: i64) -> QRatio<Int> {
    let mut global = QFactored::unit();
    for i in 1..=n - 1 {
        global = global.div(&poch_qpow(1, i - 1));
    }
    if binom2(n - 1) % 2 != 0 {
        global = global.negate();
    }
    // Per-coordinate 1-D sums, indexed by the permutation value they see.
    let inner = |i: i64, c: i64| -> Vec<QFactored> {
        let hi = (m1 + m2 + n - i).div_euclid(n);
        (0..=hi)
            .map(|k| {
                QFactored::monomial((m2 + c) * n * k)
                    .mul(&poch_qpow(-m1 - m2 - n + i, n * k))
                    .div(&poch_qpow(i, n * k))
            })
            .collect()
    };
    let mut terms = Vec::new();
    for (sigma, sign) in permutations_signed((n - 1) as usize) {
        let sum_is: i64 = sigma
            .iter()
            .enumerate()
            .map(|(i0, &c0)| (i0 as i64 + 1) * (c0 as i64))
            .sum();
        let mut head = global
            .clone()
            .mul(&QFactored::monomial(-binom3(n) + sum_is));
        if sign < 0 {
            head = head.negate();
        }
        // distribute the product of the inner sums
        let mut partial = vec![head];
        for (i0, &c0) in sigma.iter().enumerate() {
            let list = inner(i0 as i64 + 1, c0 as i64 + 1);
            let mut next = Vec::with_capacity(partial.len() * list.len());
            for p in &partial {
                for t in &list {
                    next.push(p.mul(t));
                }
            }
            partial = next;
        }
        terms.extend(partial);
    }
    qf_sum(terms.iter()).expect("permutation-split summands are pole-free")
}

fn compare_ratfuns(
    timer: ReportTimer,
    lhs: &QRatio<Int>,
    rhs: &QRatio<Int>,
) -> VerificationReport {
    match qratio_diff(lhs, rhs) {
        Ok(diff) if diff.is_zero() => timer.pass(),
        Ok(diff) => timer.fail(format!("cross-multiplied difference = {diff}")),
        Err(e) => timer.fail(format!("expansion failed: {e}")),
    }
}

/// The cleared polynomial form: multiply the S = 0 identity by
/// prod_i (q^{M1+M2+i}; q)_n and check the displayed version termwise.
pub fn verify_eq2(n: i64, m1: i64, m2: i64) -> Result<VerificationReport, StepError> {
    if n < 1 || m1 < 0 || m2 < 0 {
        return Err(StepError::Domain(format!(
            "invalid parameters n={n} m1={m1} m2={m2}"
        )));
    }
    let timer = ReportTimer::start("eq2", format!("n={n} m1={m1} m2={m2}"));
    let p = TheoremParams { n, m1, m2, s: 0 };
    let mut terms = Vec::new();
    for k in enumerate_compositions(&p, 0) {
        let parts = &k.parts;
        let sum_sq: i64 = parts.iter().map(|v| v * v).sum();
        let sum_ik: i64 = parts
            .iter()
            .enumerate()
            .map(|(i0, v)| (i0 as i64 + 1) * v)
            .sum();
        let mut t = QFactored::monomial(binom2(n + 1) * sum_sq + sum_ik);
        for i in 1..=n {
            for j in (i + 1)..=n {
                let e = n * (parts[(j - 1) as usize] - parts[(i - 1) as usize]) + (j - i);
                t = t.mul(&QFactored::base_factor(e, 1));
            }
        }
        for i in 1..=n {
            let ki = parts[(i - 1) as usize];
            t = t.mul(&poch_qpow(m1 + n * ki + i, m2 - n * ki + n));
            t = t.div(&poch_qpow(1, m2 - n * ki + n - i));
        }
        terms.push(t);
    }
    let lhs = qf_sum(terms.iter()).expect("cleared summands are pole-free");
    let mut rhs_f = poch_qpow(m1 + 1, m2).div(&poch_qpow(1, m2));
    for i in 1..=n {
        rhs_f = rhs_f.mul(&poch_qpow(m1 + m2 + i, n));
    }
    let rhs = QRatio::from_qfactored(&rhs_f).expect("right-hand side is pole-free");
    Ok(compare_ratfuns(timer, &lhs, &rhs))
}

/// The index-shifted rewriting (k_i -> k_i - M1/n): prefactored sum over
/// compositions of M1 equals the raw S = 0 left-hand side.
pub fn verify_eq3(n: i64, m1: i64, m2: i64) -> Result<VerificationReport, StepError> {
    if m1 % n != 0 {
        return Err(StepError::Domain(format!("n={n} must divide M1={m1}")));
    }
    let timer = ReportTimer::start("eq3", format!("n={n} m1={m1} m2={m2}"));
    let e2_pref = m1 * (m1 * n - m1 + 2 * n * m2 + 2 * n * n - 1);
    let negate = (n * m1) % 2 != 0;
    let mut terms = Vec::new();
    for (e2, t) in eq3_sum_terms(n, m1, m2) {
        let mut full = t.mul(&half_monomial(e2_pref + e2));
        if negate {
            full = full.negate();
        }
        terms.push(full);
    }
    let lhs = qf_sum(terms.iter()).expect("shifted summands are pole-free");
    let rhs = eq1_lhs_value(n, m1, m2);
    Ok(compare_ratfuns(timer, &lhs, &rhs))
}

/// The limit case of the Watson-type transformation: prefactored
/// index-shifted sum equals prefactored entangled sum, exactly in q.
/// Outside nM1 - M1 - M2 - 1 >= 0 both prefactors hit zero/pole factors
/// and the check reports indeterminate.
pub fn verify_milne_lim(n: i64, m1: i64, m2: i64) -> Result<VerificationReport, StepError> {
    require_divisible(n, m1, m2)?;
    let timer = ReportTimer::start("milne-lim", format!("n={n} m1={m1} m2={m2}"));
    if n * m1 - m1 - m2 - 1 < 0 {
        return Ok(timer.indeterminate(format!(
            "outside the validity domain: n*M1-M1-M2-1 = {} < 0",
            n * m1 - m1 - m2 - 1
        )));
    }
    let e2_left = n * m1 * (2 * n - m1 - 2);
    let left_base = poch_qpow(1, n * m1)
        .div(&poch_qpow(-m1 - m2, m1 + m2))
        .div(&poch_qpow(1, n * m1 - m1 - m2 - 1));
    let mut lhs_terms = Vec::new();
    for (e2, t) in eq3_sum_terms(n, m1, m2) {
        lhs_terms.push(left_base.mul(&t).mul(&half_monomial(e2_left + e2)));
    }
    let lhs = qf_sum(lhs_terms.iter()).expect("left side is pole-free in the domain");

    let right_base = poch_qpow(-n * m1, m1 + m2 + 1)
        .div(&poch_qpow_base(-n * m1, m1, n))
        .div(&poch_qpow_base(n, m2, n))
        .negate();
    let rhs_terms: Vec<QFactored> = eq4_sum_terms(n, m1, m2)
        .iter()
        .map(|t| right_base.mul(t))
        .collect();
    let rhs = qf_sum(rhs_terms.iter()).expect("right side is pole-free in the domain");
    Ok(compare_ratfuns(timer, &lhs, &rhs))
}

/// The entangled expression for the raw S = 0 left-hand side:
/// (-1)^{M1} q^{-C(M1+1,2)} (q;q)_{M1+M2} /
/// ((q^{-nM1};q^n)_{M1} (q^n;q^n)_{M2}) times the entangled sum. Shares
/// the domain guard with the limit transformation it is derived from.
pub fn verify_eq4(n: i64, m1: i64, m2: i64) -> Result<VerificationReport, StepError> {
    require_divisible(n, m1, m2)?;
    let timer = ReportTimer::start("eq4", format!("n={n} m1={m1} m2={m2}"));
    if n * m1 - m1 - m2 - 1 < 0 {
        return Ok(timer.indeterminate(format!(
            "outside the validity domain: n*M1-M1-M2-1 = {} < 0",
            n * m1 - m1 - m2 - 1
        )));
    }
    let mut pref = QFactored::monomial(-binom2(m1 + 1))
        .mul(&poch_qpow(1, m1 + m2))
        .div(&poch_qpow_base(-n * m1, m1, n))
        .div(&poch_qpow_base(n, m2, n));
    if m1 % 2 != 0 {
        pref = pref.negate();
    }
    let rhs_terms: Vec<QFactored> = eq4_sum_terms(n, m1, m2)
        .iter()
        .map(|t| pref.mul(t))
        .collect();
    let rhs = qf_sum(rhs_terms.iter()).expect("entangled side is pole-free");
    let lhs = eq1_lhs_value(n, m1, m2);
    Ok(compare_ratfuns(timer, &lhs, &rhs))
}

/// The Vandermonde determinant rewrite of the difference product, checked
/// on one concrete composition k (length n-1):
/// prod_{r<s} (1 - q^{n k_r - n k_s + r - s})
///   = q^{-n sum i k_i + n sum k_i - 2 C(n,3)}
///     sum_sigma sgn sigma prod_i q^{(sigma(i)-1)(n k_i + i)}.
pub fn verify_vandermonde_rewrite(n: i64, k: &[i64]) -> Result<VerificationReport, StepError> {
    if k.len() as i64 != n - 1 {
        return Err(StepError::Domain(format!(
            "composition length {} does not match n-1 = {}",
            k.len(),
            n - 1
        )));
    }
    let timer = ReportTimer::start("vandermonde", format!("n={n} k={k:?}"));
    let mut lhs_f = QFactored::unit();
    for r in 1..n {
        for s in (r + 1)..n {
            let e = n * (k[(r - 1) as usize] - k[(s - 1) as usize]) + (r - s);
            lhs_f = lhs_f.mul(&QFactored::base_factor(e, 1));
        }
    }
    let lhs = lhs_f.expand().expect("difference product is a polynomial");

    let sum_k: i64 = k.iter().sum();
    let sum_ik: i64 = k.iter().enumerate().map(|(i0, v)| (i0 as i64 + 1) * v).sum();
    let shift = -n * sum_ik + n * sum_k - 2 * binom3(n);
    let mut rhs = LaurentPoly::zero();
    for (sigma, sign) in permutations_signed((n - 1) as usize) {
        let e: i64 = sigma
            .iter()
            .enumerate()
            .map(|(i0, &c0)| (c0 as i64) * (n * k[i0] + i0 as i64 + 1))
            .sum();
        rhs.add_term(e + shift, &Int::from(sign));
    }
    Ok(if lhs == rhs {
        timer.pass()
    } else {
        timer.fail(format!("difference = {}", &lhs - &rhs))
    })
}

/// Vandermonde rewrite on a composition drawn from (seed, index) alone.
pub fn vandermonde_point_report(
    n: i64,
    seed: u64,
    index: u64,
) -> Result<VerificationReport, StepError> {
    use rand::{Rng, SeedableRng};
    let mut rng =
        rand_chacha::ChaCha8Rng::seed_from_u64(super::milne::mix_seed(seed, index));
    let k: Vec<i64> = (0..n.max(1) - 1).map(|_| rng.gen_range(-3i64..=3)).collect();
    verify_vandermonde_rewrite(n, &k)
}

/// The entangled sum split into permutation-indexed products of
/// one-dimensional sums.
pub fn verify_eq5(n: i64, m1: i64, m2: i64) -> Result<VerificationReport, StepError> {
    require_divisible(n, m1, m2)?;
    if n - 1 > 7 {
        return Err(StepError::Domain(format!(
            "permutation expansion bound exceeded: n-1 = {} > 7",
            n - 1
        )));
    }
    let timer = ReportTimer::start("eq5", format!("n={n} m1={m1} m2={m2}"));
    let lhs = eq4_sum_value(n, m1, m2);
    let rhs = eq5_value(n, m1, m2);
    Ok(compare_ratfuns(timer, &lhs, &rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfactored::qratio_eq;

    #[test]
    fn permutations_have_signs() {
        let perms = permutations_signed(3);
        assert_eq!(perms.len(), 6);
        assert_eq!(perms[0], (vec![0, 1, 2], 1));
        let total: i64 = perms.iter().map(|(_, s)| *s as i64).sum();
        assert_eq!(total, 0);
    }

    #[test]
    fn eq2_examples() {
        assert!(verify_eq2(2, 1, 1).unwrap().passed());
        assert!(verify_eq2(1, 0, 0).unwrap().passed());
        assert!(verify_eq2(3, 3, 3).unwrap().passed());
        assert!(verify_eq2(3, 2, 1).unwrap().passed());
    }

    #[test]
    fn eq3_examples() {
        assert!(verify_eq3(2, 2, 2).unwrap().passed());
        assert!(verify_eq3(3, 3, 0).unwrap().passed());
        assert!(verify_eq3(2, 4, 1).unwrap().passed());
        assert_eq!(
            verify_eq3(2, 1, 1).err(),
            Some(StepError::Domain("n=2 must divide M1=1".into()))
        );
    }

    #[test]
    fn milne_lim_examples() {
        let rep = verify_milne_lim(2, 4, 2).unwrap();
        assert!(rep.passed(), "{:?}", rep.witness);
        let rep = verify_milne_lim(2, 2, 4).unwrap();
        assert_eq!(rep.status, crate::report::Status::Indeterminate);
        let rep = verify_milne_lim(3, 3, 3).unwrap();
        assert!(rep.passed(), "{:?}", rep.witness);
    }

    #[test]
    fn eq4_examples() {
        let rep = verify_eq4(2, 4, 2).unwrap();
        assert!(rep.passed(), "{:?}", rep.witness);
        let rep = verify_eq4(2, 2, 2).unwrap();
        assert_eq!(rep.status, crate::report::Status::Indeterminate);
        let rep = verify_eq4(3, 3, 3).unwrap();
        assert!(rep.passed(), "{:?}", rep.witness);
    }

    #[test]
    fn vandermonde_examples() {
        assert!(verify_vandermonde_rewrite(2, &[3]).unwrap().passed());
        assert!(verify_vandermonde_rewrite(3, &[0, 0]).unwrap().passed());
        assert!(verify_vandermonde_rewrite(4, &[1, -2, 0]).unwrap().passed());
        assert!(verify_vandermonde_rewrite(4, &[2, 0, -1]).unwrap().passed());
    }

    #[test]
    fn eq5_examples() {
        assert!(verify_eq5(2, 2, 2).unwrap().passed());
        assert!(verify_eq5(3, 3, 3).unwrap().passed());
        assert!(verify_eq5(3, 3, 0).unwrap().passed());
    }

    #[test]
    fn eq4_value_equals_eq5_value() {
        for (n, m1, m2) in [(2i64, 2i64, 2i64), (3, 3, 3)] {
            let a = eq4_sum_value(n, m1, m2);
            let b = eq5_value(n, m1, m2);
            assert!(qratio_eq(&a, &b).unwrap());
        }
    }

    #[test]
    fn unequal_ratfuns_fail_with_witness() {
        // no true pipeline identity can reach the fail branch, so drive the
        // comparison with deliberately different values
        let one = QRatio::from_qfactored(&QFactored::unit()).unwrap();
        let q = QRatio::from_qfactored(&QFactored::monomial(1)).unwrap();
        let rep = compare_ratfuns(ReportTimer::start("synthetic", "q vs 1"), &one, &q);
        assert_eq!(rep.status, crate::report::Status::Fail);
        let witness = rep.witness.unwrap();
        assert!(witness.contains("difference"), "{witness}");
    }
}
