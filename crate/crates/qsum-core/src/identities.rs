//! Builders and verifiers for the lattice summation identity and the
//! conjectured transformation between sums of different dimensions.
//!
//! Both families share the same skeleton: a sum over integer compositions
//! (k_1, ..., k_n) of a target S, each summand a product of a sign, a
//! q-power, the difference factors prod_{i<j} (1 - q^{n k_j - n k_i + j-i})
//! and a triple q-Pochhammer ratio per coordinate. The vanishing convention
//! 1/(q;q)_{k<0} = 0 truncates the sum to a finite box; `support_bounds`
//! solves the box explicitly and the zero/pole bookkeeping in `QFactored`
//! covers anything enumerated beyond it.
//!
//! Summands are rational functions of q. Multiplying every summand by the
//! k-independent clearing factor F = prod_i (q^{M1+M2+i}; q)_{n-i} turns
//! each one into a product of Gaussian binomials times a Laurent monomial
//! (the two lower Pochhammer indices sum to M1+M2+n-1), so the whole
//! cleared sum lives in exact Laurent polynomials and the identity check is
//! termwise with zero tolerance.

use thiserror::Error;

use crate::laurent::LaurentPoly;
use crate::qfactored::{poch_qpow, QFactored};
use crate::report::{ReportTimer, VerificationReport};
use crate::ring::{binom2, Int};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParamError {
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SupportError {
    /// The support box is empty; the sum has value 0.
    #[error("empty support: lower bound exceeds upper bound")]
    EmptySupport,
}

/// Parameters of the summation identity: dimension n, box sizes M1, M2 and
/// the target sum S with -M1 <= S <= M2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TheoremParams {
    pub n: i64,
    pub m1: i64,
    pub m2: i64,
    pub s: i64,
}

impl TheoremParams {
    pub fn new(n: i64, m1: i64, m2: i64, s: i64) -> Result<Self, ParamError> {
        if n < 1 {
            return Err(ParamError::OutOfRange(format!("n={n} must be positive")));
        }
        if m1 < 0 || m2 < 0 {
            return Err(ParamError::OutOfRange(format!(
                "M1={m1}, M2={m2} must be nonnegative"
            )));
        }
        if s < -m1 || s > m2 {
            return Err(ParamError::OutOfRange(format!(
                "S={s} outside [-M1, M2] = [{}, {}]",
                -m1, m2
            )));
        }
        Ok(TheoremParams { n, m1, m2, s })
    }
}

/// Parameters of the conjectured transformation between an n-dimensional
/// and an m-dimensional sum sharing M1, M2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConjectureParams {
    pub n: i64,
    pub m: i64,
    pub m1: i64,
    pub m2: i64,
    pub s1: i64,
    pub s2: i64,
}

impl ConjectureParams {
    pub fn new(
        n: i64,
        m: i64,
        m1: i64,
        m2: i64,
        s1: i64,
        s2: i64,
    ) -> Result<Self, ParamError> {
        if n < 1 || m < 1 {
            return Err(ParamError::OutOfRange(format!(
                "n={n}, m={m} must be positive"
            )));
        }
        if m1 < 0 || m2 < 0 {
            return Err(ParamError::OutOfRange(format!(
                "M1={m1}, M2={m2} must be nonnegative"
            )));
        }
        for (name, s) in [("S1", s1), ("S2", s2)] {
            if s < -m1 || s > m2 {
                return Err(ParamError::OutOfRange(format!(
                    "{name}={s} outside [-M1, M2] = [{}, {}]",
                    -m1, m2
                )));
            }
        }
        Ok(ConjectureParams {
            n,
            m,
            m1,
            m2,
            s1,
            s2,
        })
    }
}

/// An integer composition k_1 + ... + k_n = target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Composition {
    pub parts: Vec<i64>,
}

impl Composition {
    pub fn sum(&self) -> i64 {
        self.parts.iter().sum()
    }
}

/// S = Q n + R with 0 <= R < n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RotationData {
    pub q: i64,
    pub r: i64,
}

/// Euclidean division of the target sum by the dimension.
pub fn rotation_map(n: i64, s: i64) -> RotationData {
    RotationData {
        q: s.div_euclid(n),
        r: s.rem_euclid(n),
    }
}

/// Send a composition of 0 to the corresponding composition of S = Qn + R:
/// the first R coordinates come from the tail with an extra unit shift,
/// the rest from the head.
pub fn rotate_composition(k0: &Composition, rot: RotationData) -> Composition {
    let n = k0.parts.len();
    let r = rot.r as usize;
    let mut parts = Vec::with_capacity(n);
    for j in 1..=n {
        if j <= r {
            parts.push(k0.parts[j + n - r - 1] + rot.q + 1);
        } else {
            parts.push(k0.parts[j - r - 1] + rot.q);
        }
    }
    Composition { parts }
}

/// Support bounds for coordinate i (1-based): outside [lo, hi] the summand
/// is exactly zero because a lower Pochhammer index goes negative. `shift`
/// covers the -S1 offset of the transformation sides (0 for the theorem).
pub fn support_bounds(
    p: &TheoremParams,
    i: i64,
    shift: i64,
) -> Result<(i64, i64), SupportError> {
    assert!((1..=p.n).contains(&i), "coordinate index out of range");
    let lo = -(p.m1 + shift + i - 1).div_euclid(p.n);
    let hi = (p.m2 - shift + p.n - i).div_euclid(p.n);
    if lo > hi {
        return Err(SupportError::EmptySupport);
    }
    Ok((lo, hi))
}

/// Lexicographic stream of the compositions of p.s whose coordinates lie in
/// their support boxes. The last coordinate is determined by the sum
/// constraint and emitted only when it lands inside its own box.
pub fn enumerate_compositions(p: &TheoremParams, shift: i64) -> CompositionIter {
    let mut bounds = Vec::with_capacity(p.n as usize);
    let mut empty = false;
    for i in 1..=p.n {
        match support_bounds(p, i, shift) {
            Ok(b) => bounds.push(b),
            Err(SupportError::EmptySupport) => {
                empty = true;
                bounds.push((0, -1));
            }
        }
    }
    CompositionIter::new(bounds, p.s, empty)
}

/// Lexicographic odometer over a box with the last coordinate solved from
/// the target sum.
pub struct CompositionIter {
    bounds: Vec<(i64, i64)>,
    target: i64,
    current: Vec<i64>,
    done: bool,
}

impl CompositionIter {
    pub fn new(bounds: Vec<(i64, i64)>, target: i64, empty: bool) -> Self {
        let free = bounds.len().saturating_sub(1);
        let current: Vec<i64> = bounds[..free].iter().map(|&(lo, _)| lo).collect();
        let done = empty || bounds.iter().any(|&(lo, hi)| lo > hi);
        CompositionIter {
            bounds,
            target,
            current,
            done,
        }
    }

    fn advance(&mut self) -> bool {
        let free = self.current.len();
        for idx in (0..free).rev() {
            if self.current[idx] < self.bounds[idx].1 {
                self.current[idx] += 1;
                for later in (idx + 1)..free {
                    self.current[later] = self.bounds[later].0;
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for CompositionIter {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        while !self.done {
            let partial: i64 = self.current.iter().sum();
            let last = self.target - partial;
            let (lo, hi) = *self.bounds.last().unwrap();
            let hit = (lo..=hi).contains(&last);
            let mut parts = self.current.clone();
            parts.push(last);
            if !self.advance() {
                self.done = true;
            }
            if hit {
                return Some(Composition { parts });
            }
        }
        None
    }
}

/// One summand of the identity in fully factored form: sign (-1)^{(n-1)S},
/// monomial q^{C(n+1,2) sum k_i^2 + sum i k_i}, the difference factors and
/// the triple Pochhammer ratio per coordinate. A vanishing summand comes
/// back with zero_order > 0.
pub fn summand_theorem(p: &TheoremParams, k: &Composition) -> QFactored {
    debug_assert_eq!(k.sum(), p.s, "composition does not hit the target sum");
    general_summand(p.n, p.m1, p.m2, p.s, 0, binom2(p.n + 1), 1, &k.parts)
}

/// Shared summand shape for the theorem (quad = C(n+1,2), lin = 1,
/// shift = 0) and for one side of the transformation (quad doubled via
/// dim(dim+other), lin = other, shift = -S).
fn general_summand(
    n: i64,
    m1: i64,
    m2: i64,
    s: i64,
    shift: i64,
    quad: i64,
    lin: i64,
    parts: &[i64],
) -> QFactored {
    let sum_sq: i64 = parts.iter().map(|k| k * k).sum();
    let sum_ik: i64 = parts.iter().enumerate().map(|(i0, k)| (i0 as i64 + 1) * k).sum();
    let mut t = QFactored::monomial(quad * sum_sq + lin * sum_ik);
    if (n - 1) * s % 2 != 0 {
        t = t.negate();
    }
    for i in 1..=n {
        for j in (i + 1)..=n {
            let e = n * (parts[(j - 1) as usize] - parts[(i - 1) as usize]) + (j - i);
            t = t.mul(&QFactored::base_factor(e, 1));
        }
    }
    for i in 1..=n {
        let ki = parts[(i - 1) as usize];
        t = t.mul(&poch_qpow(1, m1 + m2 + i - 1));
        t = t.div(&poch_qpow(1, m1 + shift + n * ki + i - 1));
        t = t.div(&poch_qpow(1, m2 - shift - n * ki + n - i));
    }
    t
}

/// The k-independent clearing factor F = prod_i (q^{M1+M2+i}; q)_{n-i}
/// = prod_i (q;q)_{M1+M2+n-1} / (q;q)_{M1+M2+i-1}.
pub fn clearing_factor(n: i64, m1: i64, m2: i64) -> QFactored {
    let mut f = QFactored::unit();
    for i in 1..=n {
        f = f.mul(&poch_qpow(m1 + m2 + i, n - i));
    }
    f
}

/// F(p) times the left-hand side: the exact cleared sum, a genuine Laurent
/// polynomial.
pub fn lhs_theorem(p: &TheoremParams) -> LaurentPoly<Int> {
    let f = clearing_factor(p.n, p.m1, p.m2);
    let mut acc = LaurentPoly::zero();
    for k in enumerate_compositions(p, 0) {
        let term = f.mul(&summand_theorem(p, &k));
        if term.is_zero() {
            continue;
        }
        acc = &acc
            + &term
                .expand()
                .expect("cleared theorem summand must expand");
    }
    acc
}

/// The factored right-hand side
/// q^{(n+1) C(S+1,2)} (q;q)_{M1+M2} / ((q;q)_{M1+S} (q;q)_{M2-S}).
pub fn rhs_theorem(p: &TheoremParams) -> QFactored {
    QFactored::monomial((p.n + 1) * binom2(p.s + 1))
        .mul(&poch_qpow(1, p.m1 + p.m2))
        .div(&poch_qpow(1, p.m1 + p.s))
        .div(&poch_qpow(1, p.m2 - p.s))
}

/// Exact check of the summation identity: cleared LHS equals cleared RHS
/// termwise.
pub fn verify_theorem(p: &TheoremParams) -> VerificationReport {
    let timer = ReportTimer::start(
        "theorem",
        format!("n={} m1={} m2={} s={}", p.n, p.m1, p.m2, p.s),
    );
    let lhs = lhs_theorem(p);
    let rhs = clearing_factor(p.n, p.m1, p.m2)
        .mul(&rhs_theorem(p))
        .expand()
        .expect("cleared right-hand side must expand");
    if lhs == rhs {
        timer.pass()
    } else {
        timer.fail(format!("difference = {}", &lhs - &rhs))
    }
}

/// One side of the transformation identity, cleared by F(dim, M1, M2):
/// the dim-dimensional sum with exponent
/// (dim(dim+other)/2) sum k^2 + other * sum i k_i - other*C(S+1,2)
/// - dim*S(S+other)/2 and Pochhammer offsets M1-S, M2+S. Both sides of the
/// identity come from this one function with the argument roles swapped.
pub fn conj_side(dim: i64, other_dim: i64, m1: i64, m2: i64, s: i64) -> LaurentPoly<Int> {
    let p = TheoremParams {
        n: dim,
        m1,
        m2,
        s,
    };
    let f = clearing_factor(dim, m1, m2);
    // The constant part of the exponent can be half-integral on its own;
    // track twice the exponent and halve after combining with the quadratic
    // part, which has matching parity.
    let const2 = -other_dim * s * (s + 1) - dim * s * (s + other_dim);
    let mut acc = LaurentPoly::zero();
    for k in enumerate_compositions(&p, -s) {
        let sum_sq: i64 = k.parts.iter().map(|v| v * v).sum();
        let sum_ik: i64 = k
            .parts
            .iter()
            .enumerate()
            .map(|(i0, v)| (i0 as i64 + 1) * v)
            .sum();
        let e2 = dim * (dim + other_dim) * sum_sq + 2 * other_dim * sum_ik + const2;
        assert!(e2 % 2 == 0, "summand exponent must be integral");
        let mut t = QFactored::monomial(e2 / 2);
        if (dim - 1) * s % 2 != 0 {
            t = t.negate();
        }
        for i in 1..=dim {
            for j in (i + 1)..=dim {
                let e = dim * (k.parts[(j - 1) as usize] - k.parts[(i - 1) as usize]) + (j - i);
                t = t.mul(&QFactored::base_factor(e, 1));
            }
        }
        for i in 1..=dim {
            let ki = k.parts[(i - 1) as usize];
            t = t.mul(&poch_qpow(1, m1 + m2 + i - 1));
            t = t.div(&poch_qpow(1, m1 - s + dim * ki + i - 1));
            t = t.div(&poch_qpow(1, m2 + s - dim * ki + dim - i));
        }
        let t = t.mul(&f);
        if t.is_zero() {
            continue;
        }
        acc = &acc + &t.expand().expect("cleared transformation summand must expand");
    }
    acc
}

/// Exact check of the transformation: the n-side times F_m equals the
/// m-side times F_n (cross-multiplication of the two clearing factors). A
/// failure is a first-class result and ships both expanded polynomials.
pub fn verify_conjecture(p: &ConjectureParams) -> VerificationReport {
    let timer = ReportTimer::start(
        "conjecture",
        format!(
            "n={} m={} m1={} m2={} s1={} s2={}",
            p.n, p.m, p.m1, p.m2, p.s1, p.s2
        ),
    );
    let side_n = conj_side(p.n, p.m, p.m1, p.m2, p.s1);
    let side_m = conj_side(p.m, p.n, p.m1, p.m2, p.s2);
    let f_n = clearing_factor(p.n, p.m1, p.m2)
        .expand()
        .expect("clearing factor is a polynomial");
    let f_m = clearing_factor(p.m, p.m1, p.m2)
        .expand()
        .expect("clearing factor is a polynomial");
    let lhs = &side_n * &f_m;
    let rhs = &side_m * &f_n;
    if lhs == rhs {
        timer.pass()
    } else {
        timer.fail(format!(
            "n-side*F_m = {lhs}; m-side*F_n = {rhs}; difference = {}",
            &lhs - &rhs
        ))
    }
}
