//! Sparse exact Laurent polynomials in the single variable q.
//!
//! `LaurentPoly<C>` maps exponents (signed) to nonzero coefficients of an
//! exact ring. This is the universal expanded form: every factored or
//! truncated object in the crate can be compared here, termwise, with no
//! tolerance.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::ring::{Rational, RingElem};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LaurentError {
    /// Evaluation at q = 0 while a negative exponent is present.
    #[error("evaluation at q=0 with negative exponents present")]
    ZeroBase,
}

/// Sparse Laurent polynomial over an exact coefficient ring.
///
/// Invariant: no stored coefficient is zero, so equality is plain termwise
/// map equality.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentPoly<C: RingElem> {
    terms: BTreeMap<i64, C>,
}

impl<C: RingElem> Default for LaurentPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: RingElem> LaurentPoly<C> {
    pub fn zero() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(0, c)
    }

    /// The single term c * q^exp (the zero polynomial when c = 0).
    pub fn monomial(exp: i64, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, C)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in iter {
            p.add_term(e, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, exp: i64) -> Option<&C> {
        self.terms.get(&exp)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Add c * q^exp in place, dropping the term if it cancels.
    pub fn add_term(&mut self, exp: i64, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&exp) {
            None => {
                self.terms.insert(exp, c.clone());
            }
            Some(old) => {
                let sum = old.add_ref(c);
                if !sum.is_zero() {
                    self.terms.insert(exp, sum);
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e, c.neg_ref()))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, &c.neg_ref());
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in self.terms() {
            for (eb, cb) in rhs.terms() {
                out.add_term(ea + eb, &ca.mul_ref(cb));
            }
        }
        out
    }

    /// Multiply by the monomial c * q^exp.
    pub fn mul_term(&self, exp: i64, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(&e, k)| (e + exp, k.mul_ref(c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        self.mul_term(0, c)
    }

    /// Map coefficients into another ring, dropping any that map to zero.
    pub fn map<D: RingElem, F: Fn(&C) -> D>(&self, f: F) -> LaurentPoly<D> {
        let mut out = LaurentPoly::zero();
        for (e, c) in self.terms() {
            out.add_term(e, &f(c));
        }
        out
    }

    /// Exact division by (1 - q^j), j >= 1. Returns `None` when the division
    /// leaves a remainder, i.e. (1 - q^j) does not divide `self`.
    pub fn div_exact_one_minus(&self, j: i64) -> Option<Self> {
        assert!(j >= 1, "divisor exponent must be positive");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let lo = self.min_exp().unwrap();
        let hi = self.max_exp().unwrap();
        // h(q) with h - q^j h = self: ascending recurrence h_e = p_e + h_{e-j}.
        let mut h: BTreeMap<i64, C> = BTreeMap::new();
        for e in lo..=hi {
            let v = match (self.terms.get(&e), h.get(&(e - j))) {
                (Some(p), Some(prev)) => p.add_ref(prev),
                (Some(p), None) => p.clone(),
                (None, Some(prev)) => prev.clone(),
                (None, None) => continue,
            };
            if !v.is_zero() {
                h.insert(e, v);
            }
        }
        // Exactness: the top j coefficients of the recurrence must vanish.
        for e in (hi - j + 1)..=hi {
            if h.contains_key(&e) {
                return None;
            }
        }
        Some(LaurentPoly { terms: h })
    }
}

impl LaurentPoly<Rational> {
    /// Exact evaluation at a rational point.
    pub fn eval(&self, q0: &Rational) -> Result<Rational, LaurentError> {
        let mut acc = Rational::zero();
        for (e, c) in self.terms() {
            if e < 0 && Zero::is_zero(q0) {
                return Err(LaurentError::ZeroBase);
            }
            acc = acc + c * crate::ring::rat_pow(q0, e);
        }
        Ok(acc)
    }
}

impl<C: RingElem> std::ops::Add for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, rhs: Self) -> LaurentPoly<C> {
        LaurentPoly::add(self, rhs)
    }
}

impl<C: RingElem> std::ops::Sub for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, rhs: Self) -> LaurentPoly<C> {
        LaurentPoly::sub(self, rhs)
    }
}

impl<C: RingElem> std::ops::Mul for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: Self) -> LaurentPoly<C> {
        LaurentPoly::mul(self, rhs)
    }
}

impl<C: RingElem> std::ops::Neg for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        LaurentPoly::neg(self)
    }
}

impl<C: RingElem + fmt::Display> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*q")?,
                _ => write!(f, "({c})*q^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, rat, Int};

    fn one_minus_q(j: i64) -> LaurentPoly<Int> {
        LaurentPoly::from_terms([(0, int(1)), (j, int(-1))])
    }

    #[test]
    fn mul_basic() {
        // (1-q)(1+q) = 1-q^2
        let a = one_minus_q(1);
        let b = LaurentPoly::from_terms([(0, int(1)), (1, int(1))]);
        assert_eq!(&a * &b, LaurentPoly::from_terms([(0, int(1)), (2, int(-1))]));
    }

    #[test]
    fn add_zero_is_identity() {
        let f = LaurentPoly::from_terms([(-2, int(3)), (5, int(-1))]);
        assert_eq!(&f + &LaurentPoly::zero(), f);
    }

    #[test]
    fn expand_two_factors() {
        // (1-q)(1-q^2) = 1 - q - q^2 + q^3
        let p = &one_minus_q(1) * &one_minus_q(2);
        assert_eq!(
            p,
            LaurentPoly::from_terms([(0, int(1)), (1, int(-1)), (2, int(-1)), (3, int(1))])
        );
    }

    #[test]
    fn eval_rational() {
        let f = LaurentPoly::from_terms([(0, rat(1, 1)), (1, rat(1, 1))]);
        assert_eq!(f.eval(&rat(1, 2)).unwrap(), rat(3, 2));
        let g = LaurentPoly::monomial(-1, rat(1, 1));
        assert_eq!(g.eval(&rat(2, 3)).unwrap(), rat(3, 2));
        assert_eq!(g.eval(&rat(0, 1)), Err(LaurentError::ZeroBase));
    }

    #[test]
    fn exact_division() {
        // (1-q^3)/(1-q) = 1+q+q^2
        let p = one_minus_q(3);
        let q = p.div_exact_one_minus(1).unwrap();
        assert_eq!(
            q,
            LaurentPoly::from_terms([(0, int(1)), (1, int(1)), (2, int(1))])
        );
        // 1/(1-q^2) is not a polynomial
        assert_eq!(LaurentPoly::constant(int(1)).div_exact_one_minus(2), None);
        // Laurent case: q^-1(1-q^3)/(1-q) = q^-1 + 1 + q
        let p = LaurentPoly::from_terms([(-1, int(1)), (2, int(-1))]);
        let q = p.div_exact_one_minus(1).unwrap();
        assert_eq!(
            q,
            LaurentPoly::from_terms([(-1, int(1)), (0, int(1)), (1, int(1))])
        );
    }
}
