//! Factored q-expressions: +/- q^e * prod_j (1 - q^j)^m_j with explicit
//! zero/pole bookkeeping.
//!
//! This is the native form of every q-Pochhammer ratio. Zeros and poles are
//! represented, not raised: `zero_order > 0` means the value is exactly 0,
//! `zero_order < 0` means it is a pole. Sums rely on summands silently
//! vanishing through this marker, which keeps enumeration over lattice
//! boxes uniform. Poles only become errors at expansion time.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;
use thiserror::Error;

use crate::laurent::LaurentPoly;
use crate::ring::{Int, RingElem};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QFactoredError {
    /// Expansion requested on a value with zero_order < 0.
    #[error("cannot expand a pole (zero_order < 0)")]
    Pole,
    /// Expansion requested but some (1 - q^j) divides the denominator and
    /// does not cancel, so the value is not a Laurent polynomial.
    #[error("value is not a Laurent polynomial (uncancelled denominator factor)")]
    NotPolynomial,
    /// Split into numerator/denominator requires zero_order = 0.
    #[error("cannot split a zero or pole into numerator/denominator")]
    PoleOrZero,
}

/// +/- q^e * prod_{j>=1} (1 - q^j)^{m_j}, times (1 - q^0)^{zero_order}.
///
/// Canonical: factor keys are always >= 1 (negative-exponent factors are
/// normalized through (1 - q^-m) = -q^-m (1 - q^m) at insertion), stored
/// multiplicities are nonzero, so equality of two values is structural.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QFactored {
    sign: i8,
    monomial_exp: i64,
    factors: BTreeMap<i64, i64>,
    zero_order: i64,
}

impl QFactored {
    /// The multiplicative unit, 1.
    pub fn unit() -> Self {
        QFactored {
            sign: 1,
            monomial_exp: 0,
            factors: BTreeMap::new(),
            zero_order: 0,
        }
    }

    /// The monomial q^e.
    pub fn monomial(e: i64) -> Self {
        QFactored {
            monomial_exp: e,
            ..Self::unit()
        }
    }

    /// (1 - q^j)^mult for any signed j and mult, normalized so stored keys
    /// are positive: (1 - q^-m) = -q^-m (1 - q^m), and (1 - q^0) feeds the
    /// zero/pole order.
    pub fn base_factor(j: i64, mult: i64) -> Self {
        let mut out = Self::unit();
        out.push_factor(j, mult);
        out
    }

    fn push_factor(&mut self, j: i64, mult: i64) {
        if mult == 0 {
            return;
        }
        if j == 0 {
            self.zero_order += mult;
            return;
        }
        let key = if j < 0 {
            // (1 - q^j)^mult = (-1)^mult q^{j*mult} (1 - q^{-j})^mult
            if mult % 2 != 0 {
                self.sign = -self.sign;
            }
            self.monomial_exp += j * mult;
            -j
        } else {
            j
        };
        let entry = self.factors.entry(key).or_insert(0);
        *entry += mult;
        if *entry == 0 {
            self.factors.remove(&key);
        }
    }

    pub fn negate(mut self) -> Self {
        self.sign = -self.sign;
        self
    }

    /// True when the value is exactly zero.
    pub fn is_zero(&self) -> bool {
        self.zero_order > 0
    }

    /// True when the value is a pole (undefined).
    pub fn is_pole(&self) -> bool {
        self.zero_order < 0
    }

    pub fn zero_order(&self) -> i64 {
        self.zero_order
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn monomial_exp(&self) -> i64 {
        self.monomial_exp
    }

    pub fn factor_mult(&self, j: i64) -> i64 {
        self.factors.get(&j).copied().unwrap_or(0)
    }

    pub fn factors(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.factors.iter().map(|(&j, &m)| (j, m))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        out.sign *= rhs.sign;
        out.monomial_exp += rhs.monomial_exp;
        out.zero_order += rhs.zero_order;
        for (j, m) in rhs.factors() {
            let entry = out.factors.entry(j).or_insert(0);
            *entry += m;
            if *entry == 0 {
                out.factors.remove(&j);
            }
        }
        out
    }

    pub fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.recip())
    }

    pub fn recip(&self) -> Self {
        QFactored {
            sign: self.sign,
            monomial_exp: -self.monomial_exp,
            factors: self.factors.iter().map(|(&j, &m)| (j, -m)).collect(),
            zero_order: -self.zero_order,
        }
    }

    /// Raise to an integer power (negative powers invert).
    pub fn pow(&self, k: i64) -> Self {
        QFactored {
            sign: if k % 2 == 0 { 1 } else { self.sign },
            monomial_exp: self.monomial_exp * k,
            factors: self
                .factors
                .iter()
                .filter_map(|(&j, &m)| {
                    let mm = m * k;
                    (mm != 0).then_some((j, mm))
                })
                .collect(),
            zero_order: self.zero_order * k,
        }
    }

    /// Expand to a Laurent polynomial with integer coefficients.
    ///
    /// Positive-multiplicity factors are multiplied out; each remaining
    /// denominator factor is removed by verified exact division, so a
    /// Gaussian-binomial style value expands even though its factored form
    /// carries negative multiplicities. `NotPolynomial` is returned exactly
    /// when some division leaves a remainder.
    pub fn expand(&self) -> Result<LaurentPoly<Int>, QFactoredError> {
        if self.zero_order < 0 {
            return Err(QFactoredError::Pole);
        }
        if self.zero_order > 0 {
            return Ok(LaurentPoly::zero());
        }
        let mut p = LaurentPoly::monomial(self.monomial_exp, Int::from(self.sign));
        for (j, m) in self.factors() {
            if m > 0 {
                let factor = one_minus_q(j);
                for _ in 0..m {
                    p = &p * &factor;
                }
            }
        }
        for (j, m) in self.factors() {
            if m < 0 {
                for _ in 0..(-m) {
                    p = p
                        .div_exact_one_minus(j)
                        .ok_or(QFactoredError::NotPolynomial)?;
                }
            }
        }
        Ok(p)
    }

    /// Split into (numerator, denominator) expanded polynomials. The
    /// numerator carries the sign and the q^e monomial; the denominator is
    /// the product of the negative-multiplicity factors. No division is
    /// performed.
    pub fn split(&self) -> Result<(LaurentPoly<Int>, LaurentPoly<Int>), QFactoredError> {
        if self.zero_order != 0 {
            return Err(QFactoredError::PoleOrZero);
        }
        let mut num = LaurentPoly::monomial(self.monomial_exp, Int::from(self.sign));
        let mut den = LaurentPoly::constant(Int::one());
        for (j, m) in self.factors() {
            let factor = one_minus_q(j);
            for _ in 0..m.abs() {
                if m > 0 {
                    num = &num * &factor;
                } else {
                    den = &den * &factor;
                }
            }
        }
        Ok((num, den))
    }

    /// The denominator part as a positive-multiplicity factored value.
    pub fn denominator_factored(&self) -> QFactored {
        QFactored {
            sign: 1,
            monomial_exp: 0,
            factors: self
                .factors
                .iter()
                .filter_map(|(&j, &m)| (m < 0).then_some((j, -m)))
                .collect(),
            zero_order: 0,
        }
    }
}

fn one_minus_q(j: i64) -> LaurentPoly<Int> {
    LaurentPoly::from_terms([(0, Int::one()), (j, -Int::one())])
}

/// (q^s; q)_k, the shifted q-factorial of a pure q-power, for either sign
/// of k: the product (1-q^s)(1-q^{s+1})...(1-q^{s+k-1}) when k > 0, the
/// unit when k = 0, and 1 / (1-q^{s-1})(1-q^{s-2})...(1-q^{s+k}) when
/// k < 0.
pub fn poch_qpow(s: i64, k: i64) -> QFactored {
    poch_qpow_base(s, k, 1)
}

/// (q^s; q^base)_k for base >= 1: factors step by `base`.
pub fn poch_qpow_base(s: i64, k: i64, base: i64) -> QFactored {
    assert!(base >= 1, "Pochhammer base step must be positive");
    let mut out = QFactored::unit();
    if k >= 0 {
        for j in 0..k {
            out.push_factor(s + base * j, 1);
        }
    } else {
        for j in 1..=(-k) {
            out.push_factor(s - base * j, -1);
        }
    }
    out
}

/// A rational function of q held as an expanded numerator over a factored,
/// all-positive-multiplicity denominator. The common-denominator form that
/// sums of `QFactored` terms produce.
#[derive(Debug, Clone)]
pub struct QRatio<C: RingElem> {
    pub num: LaurentPoly<C>,
    pub den: QFactored,
}

impl<C: RingElem> QRatio<C> {
    pub fn zero() -> Self {
        QRatio {
            num: LaurentPoly::zero(),
            den: QFactored::unit(),
        }
    }
}

impl QRatio<Int> {
    /// View a single factored value as a ratio.
    pub fn from_qfactored(t: &QFactored) -> Result<Self, QFactoredError> {
        if t.is_zero() {
            return Ok(Self::zero());
        }
        let den = t.denominator_factored();
        let num = t.mul(&den).expand()?;
        Ok(QRatio { num, den })
    }

    pub fn map<C: RingElem>(&self, witness: &C) -> QRatio<C> {
        QRatio {
            num: self.num.map(|c| witness.lift_int(c)),
            den: self.den.clone(),
        }
    }
}

/// Exact equality of two ratios by cross-multiplication; no division, no
/// gcd.
pub fn qratio_eq<C: RingElem>(a: &QRatio<C>, b: &QRatio<C>) -> Result<bool, QFactoredError> {
    Ok(qratio_diff(a, b)?.is_zero())
}

/// The cross-multiplied difference a.num * b.den - b.num * a.den; zero iff
/// the ratios are equal.
pub fn qratio_diff<C: RingElem>(
    a: &QRatio<C>,
    b: &QRatio<C>,
) -> Result<LaurentPoly<C>, QFactoredError> {
    let witness = match a.num.terms().next().or_else(|| b.num.terms().next()) {
        Some((_, c)) => c.clone(),
        None => return Ok(LaurentPoly::zero()),
    };
    let bden = b.den.expand()?.map(|c| witness.lift_int(c));
    let aden = a.den.expand()?.map(|c| witness.lift_int(c));
    Ok(&(&a.num * &bden) - &(&b.num * &aden))
}

/// Sum of scaled factored terms over the least common factored denominator.
/// Zero terms (zero_order > 0) are skipped; a pole term is an error.
pub fn qf_sum_scaled<C: RingElem>(
    terms: &[(C, QFactored)],
) -> Result<QRatio<C>, QFactoredError> {
    let live: Vec<&(C, QFactored)> = terms
        .iter()
        .filter(|(c, t)| !t.is_zero() && !c.is_zero())
        .collect();
    for (_, t) in &live {
        if t.is_pole() {
            return Err(QFactoredError::Pole);
        }
    }
    if live.is_empty() {
        return Ok(QRatio::zero());
    }
    // Common denominator: per factor key, the deepest denominator power.
    let mut den = QFactored::unit();
    for (_, t) in &live {
        for (j, m) in t.factors() {
            if m < 0 {
                let cur = den.factor_mult(j);
                if -m > cur {
                    den.push_factor(j, -m - cur);
                }
            }
        }
    }
    let mut num = LaurentPoly::zero();
    for (c, t) in &live {
        let cleared = t.mul(&den).expand()?;
        for (e, k) in cleared.terms() {
            num.add_term(e, &c.mul_ref(&c.lift_int(k)));
        }
    }
    Ok(QRatio { num, den })
}

/// Sum of factored terms over the least common factored denominator.
pub fn qf_sum<'a, I>(terms: I) -> Result<QRatio<Int>, QFactoredError>
where
    I: IntoIterator<Item = &'a QFactored>,
{
    let scaled: Vec<(Int, QFactored)> =
        terms.into_iter().map(|t| (Int::one(), t.clone())).collect();
    qf_sum_scaled(&scaled)
}

impl fmt::Display for QFactored {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            write!(f, "-")?;
        }
        write!(f, "q^{}", self.monomial_exp)?;
        if self.zero_order != 0 {
            write!(f, " * (1-q^0)^{}", self.zero_order)?;
        }
        for (j, m) in self.factors() {
            write!(f, " * (1-q^{j})^{m}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::int;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly<Int> {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, int(c))))
    }

    #[test]
    fn poch_positive_k() {
        // (q;q)_3 = (1-q)(1-q^2)(1-q^3)
        let p = poch_qpow(1, 3);
        assert_eq!(p.sign(), 1);
        assert_eq!(p.monomial_exp(), 0);
        assert_eq!(p.zero_order(), 0);
        assert_eq!(p.factors().collect::<Vec<_>>(), vec![(1, 1), (2, 1), (3, 1)]);
    }

    #[test]
    fn poch_zero_factor() {
        // (1;q)_2 contains (1-q^0): exact zero
        let p = poch_qpow(0, 2);
        assert_eq!(p.zero_order(), 1);
        assert!(p.is_zero());
    }

    #[test]
    fn poch_negative_k_pole() {
        // (q;q)_{-2} = 1/((1-q^0)(1-q^-1)): a pole
        let p = poch_qpow(1, -2);
        assert_eq!(p.zero_order(), -1);
        assert!(p.is_pole());
        // 1/(q;q)_{-2} = 0: the vanishing convention that truncates sums
        let r = QFactored::unit().div(&p);
        assert_eq!(r.zero_order(), 1);
        assert!(r.is_zero());
    }

    #[test]
    fn negative_exponent_normalization() {
        // (q^-m; q)_1 = (1 - q^-m) = -q^-m (1 - q^m)
        for m in 1..=5 {
            let p = poch_qpow(-m, 1);
            assert_eq!(p.sign(), -1);
            assert_eq!(p.monomial_exp(), -m);
            assert_eq!(p.factors().collect::<Vec<_>>(), vec![(m, 1)]);
            assert_eq!(
                p.expand().unwrap(),
                lp(&[(-m, -1), (0, 1)]),
                "expansion of (1-q^-{m})"
            );
        }
    }

    #[test]
    fn mul_div_roundtrip() {
        let a = poch_qpow(1, 3);
        let b = poch_qpow(1, 2);
        // (q;q)_3 / (q;q)_2 = (1-q^3)
        assert_eq!(a.div(&b), QFactored::base_factor(3, 1));
        assert_eq!(a.div(&a), QFactored::unit());
    }

    #[test]
    fn expand_cases() {
        assert_eq!(
            QFactored::base_factor(1, 1)
                .mul(&QFactored::base_factor(2, 1))
                .expand()
                .unwrap(),
            lp(&[(0, 1), (1, -1), (2, -1), (3, 1)])
        );
        assert_eq!(poch_qpow(0, 2).expand().unwrap(), LaurentPoly::zero());
        assert_eq!(
            QFactored::base_factor(2, -1).expand(),
            Err(QFactoredError::NotPolynomial)
        );
        assert_eq!(poch_qpow(1, -2).expand(), Err(QFactoredError::Pole));
        // Gaussian binomial [3 choose 1]: negative multiplicities cancel on
        // expansion: (q;q)_3/((q;q)_2 (q;q)_1) = 1+q+q^2
        let g = poch_qpow(1, 3).div(&poch_qpow(1, 2)).div(&poch_qpow(1, 1));
        assert_eq!(g.expand().unwrap(), lp(&[(0, 1), (1, 1), (2, 1)]));
    }

    #[test]
    fn split_cases() {
        let t = QFactored::base_factor(3, 1).div(&QFactored::base_factor(1, 1));
        let (num, den) = t.split().unwrap();
        assert_eq!(num, lp(&[(0, 1), (3, -1)]));
        assert_eq!(den, lp(&[(0, 1), (1, -1)]));
        let m = QFactored::monomial(5);
        let (num, den) = m.split().unwrap();
        assert_eq!(num, lp(&[(5, 1)]));
        assert_eq!(den, lp(&[(0, 1)]));
        assert_eq!(poch_qpow(0, 1).split(), Err(QFactoredError::PoleOrZero));
    }

    #[test]
    fn vanishing_reciprocal_matches_definition() {
        // For k < 0: 1/(q^s;q)_k vanishes exactly when s <= -k, the
        // convention that truncates all lattice sums.
        for s in 1..=6 {
            for k in -6..0 {
                let r = QFactored::unit().div(&poch_qpow(s, k));
                assert_eq!(r.is_zero(), s <= -k, "s={s} k={k}");
            }
        }
    }

    #[test]
    fn qf_sum_common_denominator() {
        // 1/(1-q) + 1/(1-q^2) = (1-q^2 + 1-q)/((1-q)(1-q^2))
        let a = QFactored::base_factor(1, -1);
        let b = QFactored::base_factor(2, -1);
        let s = qf_sum([&a, &b]).unwrap();
        assert_eq!(s.den, QFactored::base_factor(1, 1).mul(&QFactored::base_factor(2, 1)));
        assert_eq!(s.num, lp(&[(0, 2), (1, -1), (2, -1)]));
        // Cross-multiplied equality with an equivalent form.
        let c = qf_sum([&a]).unwrap();
        let d = QRatio::from_qfactored(&a).unwrap();
        assert!(qratio_eq(&c, &d).unwrap());
    }

    #[test]
    fn poch_brute_force_oracle() {
        // qf_expand(poch_qpow(s, k)) equals the direct term-by-term product
        // for k >= 0, including the auto-vanishing cases.
        for s in -4..=4 {
            for k in 0..=4 {
                let via_factored = poch_qpow(s, k).expand().unwrap();
                let mut direct = LaurentPoly::constant(int(1));
                for j in 0..k {
                    direct = &direct * &lp(&[(0, 1), (s + j, -1)]);
                }
                assert_eq!(via_factored, direct, "s={s} k={k}");
            }
        }
    }

    #[test]
    fn poch_base_step() {
        // (q^2;q^2)_2 = (1-q^2)(1-q^4)
        let p = poch_qpow_base(2, 2, 2);
        assert_eq!(p.factors().collect::<Vec<_>>(), vec![(2, 1), (4, 1)]);
    }
}
