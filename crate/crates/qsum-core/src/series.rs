//! Truncated formal power/Laurent series with exact coefficients.
//!
//! A `TruncSeries` knows its coefficients exactly up to `trunc_order`;
//! nothing above is assumed, in particular not assumed zero. Every
//! arithmetic operation propagates the order pessimistically, so a
//! comparison can state the exact order to which equality was certified.
//! Exact polynomials are carried with a very large sentinel order, which
//! makes the propagation rules uniform.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::cyclo::{omega_pow, CycloCtxRef, CycloElem};
use crate::laurent::LaurentPoly;
use crate::ring::{Rational, RingElem};

/// Order carried by values that are known exactly (polynomials). Large
/// enough to dominate every real truncation, small enough that adding
/// Laurent offsets can never overflow.
pub const EXACT_ORDER: i64 = 1 << 40;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    /// Division by a series whose lowest-order coefficient is not a unit.
    #[error("leading coefficient is not invertible in the coefficient ring")]
    NonInvertibleLeadingCoeff,
    /// An infinite product contains the factor (1 - 1) and collapses.
    #[error("infinite Pochhammer product contains an exactly vanishing factor")]
    VanishingFactor,
}

/// Formal Laurent series known exactly up to (and including) `trunc`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncSeries<C: RingElem> {
    trunc: i64,
    coeffs: BTreeMap<i64, C>,
}

impl<C: RingElem> TruncSeries<C> {
    pub fn zero(trunc: i64) -> Self {
        TruncSeries {
            trunc,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(c: C, trunc: i64) -> Self {
        Self::monomial(0, c, trunc)
    }

    pub fn monomial(exp: i64, c: C, trunc: i64) -> Self {
        let mut out = Self::zero(trunc);
        if !c.is_zero() && exp <= trunc {
            out.coeffs.insert(exp, c);
        }
        out
    }

    /// A polynomial as an exactly-known series.
    pub fn from_poly_exact(p: &LaurentPoly<C>) -> Self {
        TruncSeries {
            trunc: EXACT_ORDER,
            coeffs: p.terms().map(|(e, c)| (e, c.clone())).collect(),
        }
    }

    /// A polynomial truncated at `trunc`.
    pub fn from_poly(p: &LaurentPoly<C>, trunc: i64) -> Self {
        Self::from_poly_exact(p).truncate(trunc)
    }

    pub fn trunc_order(&self) -> i64 {
        self.trunc
    }

    /// Lowest known exponent; `None` when no nonzero coefficient is known.
    pub fn low_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Effective low exponent for order bookkeeping: a series with no known
    /// terms is zero at least through its truncation order.
    fn low_or_beyond(&self) -> i64 {
        self.low_exp().unwrap_or(self.trunc + 1)
    }

    pub fn coeff(&self, exp: i64) -> Option<&C> {
        self.coeffs.get(&exp)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> + '_ {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn is_known_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn truncate(mut self, trunc: i64) -> Self {
        self.trunc = self.trunc.min(trunc);
        let t = self.trunc;
        self.coeffs.retain(|&e, _| e <= t);
        self
    }

    #[cfg_attr(not(test), allow(dead_code))]
    fn insert(&mut self, exp: i64, c: C) {
        if exp <= self.trunc && !c.is_zero() {
            self.coeffs.insert(exp, c);
        }
    }

    fn add_at(&mut self, exp: i64, c: &C) {
        if exp > self.trunc || c.is_zero() {
            return;
        }
        match self.coeffs.remove(&exp) {
            None => {
                self.coeffs.insert(exp, c.clone());
            }
            Some(old) => {
                let s = old.add_ref(c);
                if !s.is_zero() {
                    self.coeffs.insert(exp, s);
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(self.trunc.min(rhs.trunc));
        for (e, c) in self.terms() {
            out.add_at(e, c);
        }
        for (e, c) in rhs.terms() {
            out.add_at(e, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        TruncSeries {
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, c.neg_ref())).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let t = (self.trunc + rhs.low_or_beyond()).min(rhs.trunc + self.low_or_beyond());
        let mut out = Self::zero(t.min(EXACT_ORDER));
        for (ea, ca) in self.terms() {
            for (eb, cb) in rhs.terms() {
                if ea + eb <= out.trunc {
                    out.add_at(ea + eb, &ca.mul_ref(cb));
                }
            }
        }
        out
    }

    /// Multiply by the monomial c * q^exp; knowledge shifts exactly.
    pub fn mul_monomial(&self, exp: i64, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.trunc + exp);
        }
        TruncSeries {
            trunc: (self.trunc + exp).min(EXACT_ORDER),
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, k)| (e + exp, k.mul_ref(c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        self.mul_monomial(0, c)
    }

    /// Series division: the lowest-order coefficient of `rhs` must be a
    /// unit. Coefficients of the quotient are solved recursively. At least
    /// one operand must carry a finite truncation; the quotient of two
    /// exactly-known polynomials is generally not a polynomial.
    pub fn div(&self, rhs: &Self) -> Result<Self, SeriesError> {
        let lb = rhs.low_exp().ok_or(SeriesError::NonInvertibleLeadingCoeff)?;
        let lead_inv = rhs
            .coeff(lb)
            .unwrap()
            .try_inv()
            .ok_or(SeriesError::NonInvertibleLeadingCoeff)?;
        let la = match self.low_exp() {
            Some(l) => l,
            // Numerator has no known terms: quotient is zero as far as we
            // can certify.
            None => return Ok(Self::zero((self.trunc - lb).min(EXACT_ORDER))),
        };
        let lh = la - lb;
        let t = (self.trunc - lb).min(rhs.trunc + la - 2 * lb).min(EXACT_ORDER);
        assert!(
            t < EXACT_ORDER / 2,
            "series division needs a truncated operand"
        );
        let mut h: BTreeMap<i64, C> = BTreeMap::new();
        for e in lh..=t {
            // a[e+lb] - sum_{d < e} h[d] * b[e+lb-d]
            let mut v = match self.coeff(e + lb) {
                Some(c) => c.clone(),
                None => lead_inv.sub_ref(&lead_inv), // zero in the ring
            };
            for (&d, hd) in h.range(lh..e) {
                if let Some(bc) = rhs.coeff(e + lb - d) {
                    v = v.sub_ref(&hd.mul_ref(bc));
                }
            }
            let v = v.mul_ref(&lead_inv);
            if !v.is_zero() {
                h.insert(e, v);
            }
        }
        Ok(TruncSeries { trunc: t, coeffs: h })
    }

    /// Keep exactly the terms with exponent congruent to r mod n.
    pub fn section(&self, n: i64, r: i64) -> Self {
        assert!(n >= 1 && (0..n).contains(&r), "residue out of range");
        TruncSeries {
            trunc: self.trunc,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(&e, _)| e.rem_euclid(n) == r)
                .map(|(&e, c)| (e, c.clone()))
                .collect(),
        }
    }
}

/// Keep exactly the terms of `f` with exponent congruent to r mod n.
pub fn n_section<C: RingElem>(f: &TruncSeries<C>, n: i64, r: i64) -> TruncSeries<C> {
    f.section(n, r)
}

/// The same n-section realized through roots of unity:
/// (1/n) sum_l w^{-r l} f(w^l q). Agrees with the exponent filter
/// coefficientwise up to the truncation order.
pub fn n_section_by_roots(
    f: &TruncSeries<CycloElem>,
    ctx: &CycloCtxRef,
    r: i64,
) -> TruncSeries<CycloElem> {
    let n = ctx.n();
    assert!((0..n).contains(&r), "residue out of range");
    let inv_n = Rational::new(1.into(), n.into());
    let mut acc = TruncSeries::zero(f.trunc_order());
    for l in 0..n {
        let twist = omega_pow(ctx, -r * l);
        for (e, c) in f.terms() {
            let rotated = c.mul(&omega_pow(ctx, l * e)).mul(&twist);
            acc.add_at(e, &rotated);
        }
    }
    TruncSeries {
        trunc: acc.trunc,
        coeffs: acc
            .coeffs
            .into_iter()
            .map(|(e, c)| (e, c.scale(&inv_n)))
            .collect(),
    }
}

/// (w^ell q^s; q)_infinity truncated at order `trunc`, over Q(w) for the
/// given context.
///
/// For s <= 0 the product is split into the finite prefactor
/// prod_{j=0}^{-s} (1 - w^ell q^{s+j}) (an exact Laurent polynomial, with
/// negative exponents) times the tail starting at exponent 1. A factor that
/// is exactly 1 - 1 (exponent 0 with w^ell = 1) is an error: the product
/// collapses and the caller decides what that means.
pub fn inf_poch(
    ctx: &CycloCtxRef,
    ell: i64,
    s: i64,
    trunc: i64,
) -> Result<TruncSeries<CycloElem>, SeriesError> {
    let n = ctx.n();
    let one = CycloElem::one(ctx);
    let w = omega_pow(ctx, ell);
    let mut acc = TruncSeries::constant(one.clone(), EXACT_ORDER);
    let mut pre_low = 0i64;
    let tail_start = if s <= 0 {
        if ell.rem_euclid(n) == 0 {
            // the j = -s factor is (1 - w^0 q^0) = 0
            return Err(SeriesError::VanishingFactor);
        }
        let mut prefactor = LaurentPoly::constant(one.clone());
        for e in s..=0 {
            let factor = LaurentPoly::from_terms([(0, one.clone()), (e, w.neg())]);
            prefactor = &prefactor * &factor;
        }
        pre_low = prefactor.min_exp().unwrap_or(0);
        acc = TruncSeries::from_poly_exact(&prefactor);
        1
    } else {
        s
    };
    // Factors above e_stop contribute 1 + O(q^{e_stop+1}); with the lowest
    // exponent of the prefactor at pre_low, the computed product is then
    // exact through pre_low + e_stop >= trunc. Every factor only raises
    // exponents, so intermediate terms above trunc can never fall back into
    // range and are dropped as they appear.
    let e_stop = (trunc - pre_low).max(tail_start - 1);
    acc = acc.truncate(trunc);
    for e in tail_start..=e_stop {
        let factor = TruncSeries::from_poly_exact(&LaurentPoly::from_terms([
            (0, one.clone()),
            (e, w.neg()),
        ]));
        acc = acc.mul(&factor).truncate(trunc);
    }
    Ok(acc.truncate(trunc))
}

/// Exact rational function num/den as a series to order `trunc`. The
/// denominator's lowest coefficient must be a unit.
pub fn series_from_ratio<C: RingElem>(
    num: &LaurentPoly<C>,
    den: &LaurentPoly<C>,
    trunc: i64,
) -> Result<TruncSeries<C>, SeriesError> {
    let lb = den.min_exp().ok_or(SeriesError::NonInvertibleLeadingCoeff)?;
    let n = TruncSeries::from_poly(num, trunc + lb);
    let d = TruncSeries::from_poly_exact(den);
    n.div(&d)
}

/// Compare two series; returns (equal_up_to_certified, certified_order).
/// Only orders both operands actually know about can be certified.
pub fn eq_to_order<C: RingElem>(a: &TruncSeries<C>, b: &TruncSeries<C>) -> (bool, i64) {
    let certified = a.trunc_order().min(b.trunc_order());
    let mut keys: Vec<i64> = a
        .terms()
        .map(|(e, _)| e)
        .chain(b.terms().map(|(e, _)| e))
        .filter(|&e| e <= certified)
        .collect();
    keys.sort_unstable();
    keys.dedup();
    for e in keys {
        match (a.coeff(e), b.coeff(e)) {
            (Some(x), Some(y)) if x == y => {}
            (None, None) => {}
            _ => return (false, certified),
        }
    }
    (true, certified)
}
