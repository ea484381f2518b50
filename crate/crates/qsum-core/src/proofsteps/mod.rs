//! Verifiers for the intermediate identities of the reduction pipeline and
//! for its two external ingredients: the multidimensional Watson-type
//! transformation (checked at exact rational parameter points) and the
//! two-sided determinant evaluation lemma.
//!
//! Each verifier computes both sides of one displayed identity through an
//! independent route and compares exactly; a failing report carries the
//! rendered discrepancy. The chain runner executes the steps in reduction
//! order and never stops early.

mod chain;
mod cyclochain;
mod detlemma;
mod milne;

pub use chain::{
    vandermonde_point_report, verify_eq2, verify_eq3, verify_eq4, verify_eq5,
    verify_milne_lim, verify_vandermonde_rewrite,
};
pub use cyclochain::{
    run_chain, verify_1psi1_special, verify_cancellation, verify_eq6, verify_eq7,
    verify_eq8, verify_eq9_eq10,
};
pub use detlemma::{
    det_lemma_point_report, sample_det_instance, verify_det_lemma, DetLemmaInstance,
};
pub use milne::{
    milne_point_report, mix_seed, run_milne_points, sample_milne, verify_milne_mod,
    verify_milne_watson, MilneParams,
};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StepError {
    /// A precondition of the step does not hold (usage error at the CLI).
    #[error("domain error: {0}")]
    Domain(String),
}

/// Default truncation order for the series-side checks, derived from the
/// degree bound of the cleared identity plus a safety margin.
pub fn default_truncation(n: i64, m2: i64) -> i64 {
    n * n * (n + m2) + 10
}

pub(crate) fn require_divisible(n: i64, m1: i64, m2: i64) -> Result<(), StepError> {
    if m1 % n != 0 {
        return Err(StepError::Domain(format!("n={n} must divide M1={m1}")));
    }
    if m2 % n != 0 {
        return Err(StepError::Domain(format!("n={n} must divide M2={m2}")));
    }
    Ok(())
}
