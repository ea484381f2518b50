//! Exact symbolic verification engine for a family of multidimensional
//! basic hypergeometric (q-series) summation and transformation identities.
//!
//! The crate provides the arithmetic substrate (arbitrary-precision
//! integers/rationals, sparse Laurent polynomials, factored q-Pochhammer
//! calculus with zero/pole tracking, cyclotomic fields, truncated formal
//! series) and, built on it, verifiers for a type-A lattice summation
//! identity, a conjectured transformation between sums of different
//! dimensions, and every intermediate identity of the reduction pipeline
//! (Watson-type transformation at exact rational points, a bilateral 1psi1
//! summation, root-of-unity sections, a two-sided determinant lemma).
//!
//! Everything is exact: no floating point, no tolerances. Checks either
//! hold termwise or ship a witness of the discrepancy.

pub mod cyclo;
pub mod identities;
pub mod laurent;
pub mod proofsteps;
pub mod qfactored;
pub mod report;
pub mod ring;
pub mod series;

pub use cyclo::{cyclotomic_poly, verify_cyclo_products, CycloContext, CycloCtxRef, CycloElem};
pub use identities::{
    enumerate_compositions, lhs_theorem, rhs_theorem, rotate_composition, rotation_map,
    support_bounds, verify_conjecture, verify_theorem, Composition, ConjectureParams,
    RotationData, TheoremParams,
};
pub use laurent::{LaurentError, LaurentPoly};
pub use qfactored::{
    poch_qpow, poch_qpow_base, qf_sum, qf_sum_scaled, qratio_eq, QFactored, QFactoredError,
    QRatio,
};
pub use report::{Status, VerificationReport};
pub use ring::{Int, Rational, RingElem};
pub use series::{inf_poch, n_section, n_section_by_roots, SeriesError, TruncSeries};
