//! Seeded random inputs and randomized sweeps over the worked examples.

use std::str::FromStr;
use std::sync::Arc;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::canonical::{assoc_theta_example, bi_myb_left_right, gl_example, so_example};
use crate::checks::{check_bi_myb, check_even_tempered, check_theta_rho, check_xvr};
use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linear::{Matrix, Vector};
use crate::report::CheckReport;
use crate::scalar::{frac, int, Scalar};

pub const DEFAULT_MAX_NUM: i64 = 9;
pub const DEFAULT_MAX_DEN: i64 = 4;

/// Rationals `n/d` with `|n| <= max_num` and `1 <= d <= max_den`, drawn
/// from a ChaCha8 stream.
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
    max_num: i64,
    max_den: i64,
}

impl Sampler {
    pub fn new(seed: u64, max_num: i64, max_den: i64) -> Result<Self> {
        if max_num < 0 || max_den < 1 {
            return Err(Error::InvalidInput(format!(
                "need max_num >= 0 and max_den >= 1, got {max_num} and {max_den}"
            )));
        }
        Ok(Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_num,
            max_den,
        })
    }

    pub fn with_defaults(seed: u64) -> Self {
        Self::new(seed, DEFAULT_MAX_NUM, DEFAULT_MAX_DEN).expect("defaults are valid")
    }

    pub fn scalar(&mut self) -> Scalar {
        let n = self.rng.gen_range(-self.max_num..=self.max_num);
        let d = self.rng.gen_range(1..=self.max_den);
        frac(n, d)
    }

    pub fn vector(&mut self, n: usize) -> Vector {
        Vector::new((0..n).map(|_| self.scalar()).collect())
    }

    pub fn matrix(&mut self, n: usize) -> Matrix {
        let entries: Vec<Scalar> = (0..n * n).map(|_| self.scalar()).collect();
        Matrix::from_fn(n, |r, c| entries[r * n + c].clone())
    }

    /// Strictly upper entries drawn, the rest fixed by `q^T = -q`.
    pub fn antisymmetric(&mut self, n: usize) -> Matrix {
        let mut m = Matrix::zeros(n);
        for r in 0..n {
            for c in r + 1..n {
                let s = self.scalar();
                m = &(&m + &Matrix::unit(n, r, c).scale(&s)) - &Matrix::unit(n, c, r).scale(&s);
            }
        }
        m
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RandomKind {
    XvrGl,
    XvrSo,
    BiMybLr,
    AssocTheta,
}

impl RandomKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            RandomKind::XvrGl => "xvr-gl",
            RandomKind::XvrSo => "xvr-so",
            RandomKind::BiMybLr => "bimyb-lr",
            RandomKind::AssocTheta => "assoc-theta",
        }
    }
}

impl FromStr for RandomKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "xvr-gl" => Ok(RandomKind::XvrGl),
            "xvr-so" => Ok(RandomKind::XvrSo),
            "bimyb-lr" => Ok(RandomKind::BiMybLr),
            "assoc-theta" => Ok(RandomKind::AssocTheta),
            _ => Err(Error::InvalidInput(format!(
                "unknown random kind {s:?} (expected xvr-gl, xvr-so, bimyb-lr or assoc-theta)"
            ))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepFailure {
    pub index: usize,
    pub q: Matrix,
    pub report: CheckReport,
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub kind: RandomKind,
    pub n: usize,
    pub seed: u64,
    pub samples: usize,
    pub passed: usize,
    pub first_failure: Option<SweepFailure>,
}

impl SweepReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.samples
    }
}

/// The matrix `q` the sweep draws for `kind`.
pub fn draw_q(sampler: &mut Sampler, kind: RandomKind, n: usize) -> Matrix {
    match kind {
        RandomKind::XvrSo => sampler.antisymmetric(n),
        _ => sampler.matrix(n),
    }
}

/// Factory and checker for one sample.
pub fn check_sample(kind: RandomKind, n: usize, q: &Matrix) -> Result<CheckReport> {
    match kind {
        RandomKind::XvrGl => check_xvr(&gl_example(n, q)?.1),
        RandomKind::XvrSo => check_xvr(&so_example(n, q)?.1),
        RandomKind::BiMybLr => {
            let (l, r1, r2) = bi_myb_left_right(n, q)?;
            match check_even_tempered(&l, &r1, &r2) {
                Err(Error::Precondition { report, .. }) => Ok(*report),
                other => other,
            }
        }
        RandomKind::AssocTheta => {
            let (l, theta, rho) = assoc_theta_example(n, q)?;
            check_theta_rho(&l, &theta, &rho, true)
        }
    }
}

pub fn random_sweep(
    kind: RandomKind,
    n: usize,
    samples: usize,
    seed: u64,
    max_num: i64,
    max_den: i64,
) -> Result<SweepReport> {
    let mut sampler = Sampler::new(seed, max_num, max_den)?;
    let mut passed = 0;
    let mut first_failure = None;
    for index in 0..samples {
        let q = draw_q(&mut sampler, kind, n);
        let report = check_sample(kind, n, &q)?;
        if report.passed() {
            passed += 1;
        } else if first_failure.is_none() {
            first_failure = Some(SweepFailure { index, q, report });
        }
    }
    Ok(SweepReport {
        kind,
        n,
        seed,
        samples,
        passed,
        first_failure,
    })
}

/// Outcome of the search for a bi-mYB pair on so(3) whose image
/// `(R1 - R2, R1 R2)` is `(ad q, rho_q)` with `rho_q x = -(q·x) q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiMybSearchReport {
    pub samples: usize,
    pub seed: u64,
    /// Samples with `R1 R2 = rho_q`.
    pub product_matches: usize,
    pub bi_myb: usize,
    pub even_tempered: usize,
    /// Indices of samples that are even-tempered and map onto the target.
    pub found: Vec<usize>,
}

/// Draws `q` and `R1 = c0 + c1 ad q + c2 (ad q)^2 + c3 q q^T`, sets
/// `R2 = R1 - ad q` (so `xi` matches by construction), and tests the pair.
/// All operators in this span commute.
pub fn bi_myb_search(samples: usize, seed: u64) -> Result<BiMybSearchReport> {
    let l = Arc::new(LieAlgebra::so3_cross());
    let mut sampler = Sampler::with_defaults(seed);
    let mut report = BiMybSearchReport {
        samples,
        seed,
        product_matches: 0,
        bi_myb: 0,
        even_tempered: 0,
        found: Vec::new(),
    };
    for index in 0..samples {
        let mut q = sampler.vector(3);
        while q.is_zero() {
            q = sampler.vector(3);
        }
        let adq = l.ad(&q)?;
        let qqt = Matrix::from_fn(3, |r, c| &q[r] * &q[c]);
        let target = qqt.scale(&int(-1));
        let c: Vec<Scalar> = (0..4).map(|_| sampler.scalar()).collect();
        let r1 = [Matrix::identity(3), adq.clone(), &adq * &adq, qqt.clone()]
            .iter()
            .zip(&c)
            .filter(|(_, k)| !k.is_zero())
            .fold(Matrix::zeros(3), |acc, (m, k)| &acc + &m.scale(k));
        let r2 = &r1 - &adq;
        let matches = (&r1 * &r2) == target;
        if matches {
            report.product_matches += 1;
        }
        if !check_bi_myb(&l, &r1, &r2)?.passed() {
            continue;
        }
        report.bi_myb += 1;
        if check_even_tempered(&l, &r1, &r2)?.passed() {
            report.even_tempered += 1;
            if matches {
                report.found.push(index);
            }
        }
    }
    Ok(report)
}
