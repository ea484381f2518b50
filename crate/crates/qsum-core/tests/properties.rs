//! Property tests for the arithmetic substrate: ring axioms, evaluation
//! homomorphism, factored-expansion against brute force, section
//! reassembly, and series division round trips.

use proptest::collection::vec;
use proptest::prelude::*;

use qsum_core::cyclo::{CycloContext, CycloElem};
use qsum_core::laurent::LaurentPoly;
use qsum_core::qfactored::{poch_qpow, QFactored};
use qsum_core::ring::{int, rat, Int, Rational};
use qsum_core::series::{eq_to_order, n_section, n_section_by_roots, TruncSeries};

fn small_poly() -> impl Strategy<Value = LaurentPoly<Int>> {
    vec((-6i64..=8, -5i64..=5), 0..6)
        .prop_map(|terms| LaurentPoly::from_terms(terms.into_iter().map(|(e, c)| (e, int(c)))))
}

fn small_rat_poly() -> impl Strategy<Value = LaurentPoly<Rational>> {
    vec((-4i64..=6, (-5i64..=5, 1i64..=4)), 0..5).prop_map(|terms| {
        LaurentPoly::from_terms(terms.into_iter().map(|(e, (n, d))| (e, rat(n, d))))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laurent_ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, LaurentPoly::zero());
    }

    #[test]
    fn eval_is_ring_homomorphism(
        f in small_rat_poly(),
        g in small_rat_poly(),
        num in 1i64..=5,
        den in 1i64..=5,
    ) {
        // nonzero rational points only; negative exponents are allowed
        let q0 = rat(num, den);
        let fg = (&f * &g).eval(&q0).unwrap();
        let f0 = f.eval(&q0).unwrap();
        let g0 = g.eval(&q0).unwrap();
        prop_assert_eq!(fg, f0 * g0);
        let sum0 = (&f + &g).eval(&q0).unwrap();
        prop_assert_eq!(sum0, f.eval(&q0).unwrap() + g.eval(&q0).unwrap());
    }

    #[test]
    fn poch_expansion_matches_brute_force(s in -6i64..=6, k in 0i64..=5) {
        let fast = poch_qpow(s, k).expand().unwrap();
        let mut slow = LaurentPoly::constant(int(1));
        for j in 0..k {
            slow = &slow * &LaurentPoly::from_terms([(0, int(1)), (s + j, int(-1))]);
        }
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn poch_negative_normalization(m in 1i64..=9) {
        // (q^-m; q)_1 = -q^-m (1 - q^m)
        let p = poch_qpow(-m, 1);
        let direct = QFactored::monomial(-m).negate().mul(&QFactored::base_factor(m, 1));
        prop_assert_eq!(p, direct);
    }

    #[test]
    fn reciprocal_poch_vanishing(s in 1i64..=8, k in -8i64..=-1) {
        let r = QFactored::unit().div(&poch_qpow(s, k));
        prop_assert_eq!(r.is_zero(), s <= -k);
    }

    #[test]
    fn sections_reassemble(
        terms in vec((-8i64..=12, (-5i64..=5, 1i64..=4)), 0..8),
        n in 1i64..=5,
    ) {
        let f = {
            let mut acc = TruncSeries::zero(12);
            for (e, (num, den)) in terms {
                if e <= 12 {
                    let c = rat(num, den);
                    acc = acc.add(&TruncSeries::monomial(e, c, 12));
                }
            }
            acc
        };
        let mut sum = TruncSeries::zero(12);
        for r in 0..n {
            sum = sum.add(&n_section(&f, n, r));
        }
        prop_assert_eq!(sum, f);
    }

    #[test]
    fn sections_by_roots_agree(
        terms in vec((-6i64..=10, -4i64..=4), 0..7),
        n in 2i64..=4,
        r in 0i64..=3,
    ) {
        prop_assume!(r < n);
        let ctx = CycloContext::new(n);
        let mut f = TruncSeries::zero(10);
        for (e, c) in terms {
            f = f.add(&TruncSeries::monomial(e, CycloElem::from_int(&ctx, c), 10));
        }
        let a = n_section(&f, n, r);
        let b = n_section_by_roots(&f, &ctx, r);
        let (equal, certified) = eq_to_order(&a, &b);
        prop_assert!(equal);
        prop_assert_eq!(certified, 10);
    }

    #[test]
    fn series_div_mul_roundtrip(
        nterms in vec((0i64..=6, (-4i64..=4, 1i64..=3)), 0..5),
        dterms in vec((1i64..=6, (-4i64..=4, 1i64..=3)), 0..4),
    ) {
        // denominator with constant term 1 so the leading coefficient is a unit
        let mut den = TruncSeries::constant(rat(1, 1), 10);
        for (e, (n, d)) in dterms {
            den = den.add(&TruncSeries::monomial(e, rat(n, d), 10));
        }
        let mut num = TruncSeries::zero(10);
        for (e, (n, d)) in nterms {
            num = num.add(&TruncSeries::monomial(e, rat(n, d), 10));
        }
        let q = num.div(&den).unwrap();
        let back = q.mul(&den);
        let (equal, _certified) = eq_to_order(&back, &num);
        prop_assert!(equal);
    }
}
