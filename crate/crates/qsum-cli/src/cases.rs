//! Immutable case descriptors: everything a worker needs to run one check.
//! Seeded cases derive their randomness from (seed, index) only, so the
//! report stream is independent of worker count and scheduling.

use qsum_core::cyclo::{verify_cyclo_products, CycloContext};
use qsum_core::identities::{verify_conjecture, verify_theorem, ConjectureParams, TheoremParams};
use qsum_core::proofsteps::{
    det_lemma_point_report, milne_point_report, run_chain, vandermonde_point_report,
    verify_1psi1_special, verify_cancellation, verify_eq2, verify_eq3, verify_eq4, verify_eq5,
    verify_eq6, verify_eq7, verify_eq8, verify_eq9_eq10, verify_milne_lim,
    verify_vandermonde_rewrite,
};
use qsum_core::report::VerificationReport;

#[derive(Debug, Clone)]
pub enum Case {
    Theorem(TheoremParams),
    Conjecture(ConjectureParams),
    Eq2 { n: i64, m1: i64, m2: i64 },
    Eq3 { n: i64, m1: i64, m2: i64 },
    MilnePoint { l: usize, n_cap: i64, big_m: i64, mod_form: bool, index: u64 },
    MilneLim { n: i64, m1: i64, m2: i64 },
    Eq4 { n: i64, m1: i64, m2: i64 },
    VandermondeGiven { n: i64, k: Vec<i64> },
    VandermondePoint { n: i64, index: u64 },
    Eq5 { n: i64, m1: i64, m2: i64 },
    Psi1 { a_pow: i64, b_pow: i64, z_pow: i64, ell: i64, n: i64, trunc: i64 },
    Eq6 { n: i64, m1: i64, m2: i64, trunc: Option<i64> },
    Eq7 { n: i64, m1: i64, m2: i64 },
    Cancel { n: i64, m1: i64, m2: i64 },
    DetPoint { size: usize, index: u64 },
    Eq8 { n: i64, m1: i64, m2: i64 },
    Eq9 { n: i64, m1: i64, m2: i64 },
    Cyclo { n: i64 },
}

impl Case {
    /// Run the check. Preconditions were validated when the case list was
    /// built, so step-level domain errors cannot occur here.
    pub fn run(&self, seed: u64) -> VerificationReport {
        match self {
            Case::Theorem(p) => verify_theorem(p),
            Case::Conjecture(p) => verify_conjecture(p),
            Case::Eq2 { n, m1, m2 } => verify_eq2(*n, *m1, *m2).expect("validated"),
            Case::Eq3 { n, m1, m2 } => verify_eq3(*n, *m1, *m2).expect("validated"),
            Case::MilnePoint {
                l,
                n_cap,
                big_m,
                mod_form,
                index,
            } => milne_point_report(*l, *n_cap, *big_m, *mod_form, seed, *index),
            Case::MilneLim { n, m1, m2 } => verify_milne_lim(*n, *m1, *m2).expect("validated"),
            Case::Eq4 { n, m1, m2 } => verify_eq4(*n, *m1, *m2).expect("validated"),
            Case::VandermondeGiven { n, k } => {
                verify_vandermonde_rewrite(*n, k).expect("validated")
            }
            Case::VandermondePoint { n, index } => {
                vandermonde_point_report(*n, seed, *index).expect("validated")
            }
            Case::Eq5 { n, m1, m2 } => verify_eq5(*n, *m1, *m2).expect("validated"),
            Case::Psi1 {
                a_pow,
                b_pow,
                z_pow,
                ell,
                n,
                trunc,
            } => {
                let ctx = CycloContext::new(*n);
                verify_1psi1_special(*a_pow, *b_pow, *z_pow, *ell, &ctx, *trunc)
                    .expect("validated")
            }
            Case::Eq6 { n, m1, m2, trunc } => {
                verify_eq6(*n, *m1, *m2, *trunc).expect("validated")
            }
            Case::Eq7 { n, m1, m2 } => verify_eq7(*n, *m1, *m2).expect("validated"),
            Case::Cancel { n, m1, m2 } => verify_cancellation(*n, *m1, *m2).expect("validated"),
            Case::DetPoint { size, index } => det_lemma_point_report(*size, seed, *index),
            Case::Eq8 { n, m1, m2 } => verify_eq8(*n, *m1, *m2).expect("validated"),
            Case::Eq9 { n, m1, m2 } => verify_eq9_eq10(*n, *m1, *m2).expect("validated"),
            Case::Cyclo { n } => verify_cyclo_products(*n),
        }
    }
}

/// The chain command runs sequentially; it has its own entry point.
pub fn run_proofchain(
    n: i64,
    m1: i64,
    m2: i64,
    trunc: Option<i64>,
) -> Result<Vec<VerificationReport>, String> {
    run_chain(n, m1, m2, trunc).map_err(|e| e.to_string())
}
