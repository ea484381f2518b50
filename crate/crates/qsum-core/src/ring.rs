//! Exact coefficient rings shared by the polynomial and series types.
//!
//! Everything in this crate computes over one of three rings: arbitrary
//! precision integers, arbitrary precision rationals, or elements of a
//! cyclotomic field. The [`RingElem`] trait is the small common surface the
//! generic containers need; no floating point anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision integer.
pub type Int = BigInt;

/// Arbitrary-precision rational, always stored reduced with positive
/// denominator (the representation `num-rational` maintains).
pub type Rational = BigRational;

/// Shorthand for small integer literals.
pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// Shorthand for small rational literals; panics on a zero denominator.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(Int::from(n), Int::from(d))
}

/// Element of an exact commutative ring.
///
/// Operations take references because coefficients can carry context (the
/// cyclotomic elements hold a shared field description) and because big
/// integer clones are not free. `lift_int` embeds an integer re-using
/// whatever context `self` carries.
pub trait RingElem: Clone + PartialEq + std::fmt::Debug {
    fn is_zero(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }
    /// Embed an integer into the ring, using `self` only for context.
    fn lift_int(&self, v: &Int) -> Self;
    /// Multiplicative inverse when `self` is a unit, otherwise `None`.
    fn try_inv(&self) -> Option<Self>;
}

impl RingElem for Int {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn lift_int(&self, v: &Int) -> Self {
        v.clone()
    }
    fn try_inv(&self) -> Option<Self> {
        if self.abs() == Int::one() {
            Some(self.clone())
        } else {
            None
        }
    }
}

impl RingElem for Rational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn lift_int(&self, v: &Int) -> Self {
        Rational::from_integer(v.clone())
    }
    fn try_inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// q0^e for signed e; panics on 0^negative (callers guard the base).
pub fn rat_pow(q0: &Rational, e: i64) -> Rational {
    if e == 0 {
        return Rational::one();
    }
    let base = if e < 0 { q0.recip() } else { q0.clone() };
    let mut acc = Rational::one();
    for _ in 0..e.unsigned_abs() {
        acc = acc * &base;
    }
    acc
}

/// Binomial coefficient C(n, 2) extended to negative arguments the way the
/// exponent bookkeeping needs it: C(n, 2) = n(n-1)/2 for any integer n.
pub fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}

/// C(n, 3) = n(n-1)(n-2)/6 for any integer n.
pub fn binom3(n: i64) -> i64 {
    n * (n - 1) * (n - 2) / 6
}
