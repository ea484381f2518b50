//! The two-sided determinant evaluation lemma over exact rationals.
//!
//! det_{1<=i,j<=n} ( (X_i+A_n)...(X_i+A_{j+1}) (X_i+B_j)...(X_i+B_2) )
//!   = prod_{1<=i<j<=n} (X_i - X_j) * prod_{2<=i<=j<=n} (B_i - A_j).
//!
//! The determinant is computed by cofactor expansion (sizes <= 8; exactness
//! trumps asymptotics here) and compared against the product formula.

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::report::{ReportTimer, VerificationReport};
use crate::ring::{rat, Rational};

/// One instance: X_1..X_n, A_2..A_n, B_2..B_n (A and B stored 0-based,
/// entry j-2 holding index j).
#[derive(Debug, Clone)]
pub struct DetLemmaInstance {
    pub x: Vec<Rational>,
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
}

impl DetLemmaInstance {
    pub fn new(x: Vec<Rational>, a: Vec<Rational>, b: Vec<Rational>) -> Self {
        assert!(!x.is_empty());
        assert_eq!(a.len(), x.len() - 1, "A has entries 2..=n");
        assert_eq!(b.len(), x.len() - 1, "B has entries 2..=n");
        DetLemmaInstance { x, a, b }
    }

    pub fn size(&self) -> usize {
        self.x.len()
    }

    fn a_at(&self, j: usize) -> &Rational {
        &self.a[j - 2]
    }

    fn b_at(&self, j: usize) -> &Rational {
        &self.b[j - 2]
    }
}

fn det_cofactor(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 0 {
        return Rational::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Rational::zero();
    for (col, top) in m[0].iter().enumerate() {
        if top.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rational>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != col)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = top * &det_cofactor(&minor);
        if col % 2 == 0 {
            acc = acc + term;
        } else {
            acc = acc - term;
        }
    }
    acc
}

/// Check the lemma on one instance.
pub fn verify_det_lemma(inst: &DetLemmaInstance) -> VerificationReport {
    let n = inst.size();
    let timer = ReportTimer::start(
        "detlemma",
        format!("n={n} x={:?} a={:?} b={:?}", rfmt(&inst.x), rfmt(&inst.a), rfmt(&inst.b)),
    );
    let mut matrix = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in 1..=n {
            let mut e = Rational::one();
            for t in (j + 1)..=n {
                e = e * (&inst.x[i] + inst.a_at(t));
            }
            for t in 2..=j {
                e = e * (&inst.x[i] + inst.b_at(t));
            }
            matrix[i][j - 1] = e;
        }
    }
    let det = det_cofactor(&matrix);

    let mut product = Rational::one();
    for i in 0..n {
        for j in (i + 1)..n {
            product = product * (&inst.x[i] - &inst.x[j]);
        }
    }
    for i in 2..=n {
        for j in i..=n {
            product = product * (inst.b_at(i) - inst.a_at(j));
        }
    }

    if det == product {
        timer.pass()
    } else {
        timer.fail(format!("determinant = {det}, product formula = {product}"))
    }
}

fn rfmt(v: &[Rational]) -> Vec<String> {
    v.iter().map(|r| r.to_string()).collect()
}

/// One seeded instance check, with the instance derived from (seed, size,
/// index) alone so results are schedule-independent.
pub fn det_lemma_point_report(size: usize, seed: u64, index: u64) -> VerificationReport {
    use rand::SeedableRng;
    let salt = ((size as u64) << 32) | index;
    let mut rng = ChaCha8Rng::seed_from_u64(super::milne::mix_seed(seed, salt));
    let inst = sample_det_instance(size, &mut rng);
    verify_det_lemma(&inst)
}

/// Seeded random instance with small rational entries.
pub fn sample_det_instance(size: usize, rng: &mut ChaCha8Rng) -> DetLemmaInstance {
    let draw = |rng: &mut ChaCha8Rng| -> Rational {
        let num = rng.gen_range(-7i64..=7);
        let den = rng.gen_range(1i64..=7);
        rat(num, den)
    };
    let x = (0..size).map(|_| draw(rng)).collect();
    let a = (0..size.saturating_sub(1)).map(|_| draw(rng)).collect();
    let b = (0..size.saturating_sub(1)).map(|_| draw(rng)).collect();
    DetLemmaInstance::new(x, a, b)
}
