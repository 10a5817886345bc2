//! Equivariant quadratic ξϱ-structures on so(3).
//!
//! On so(3) in vector form (`[x, y] = x × y`) every equivariant quadratic
//! family is `rho_q x = a (q·q) x + b (q·x) q`; the third invariant
//! `q × (q × x) = (q·x) q - (q·q) x` is dependent. The ξϱ identities with
//! `xi = ad q` are expanded symbolically in `(a, b)` for each sample `q`
//! and each basis pair, and the resulting system is solved exactly.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::canonical::MatrixAlgebraBasis;
use crate::error::Result;
use crate::family::{check_xvr_structure, default_samples, QuadraticRhoFamily};
use crate::lie::LieAlgebra;
use crate::linear::{Matrix, Vector};
use crate::poly::{groebner, solve, Poly, SolutionSet};
use crate::scalar::{format_scalar, frac, half, int, Scalar};

pub const ANSATZ: &str = "rho_q x = a (q.q) x + b (q.x) q on so(3) = (Q^3, cross product)";

type PVec = [Poly; 3];

fn lift(v: &Vector) -> PVec {
    [0, 1, 2].map(|i| Poly::constant(v[i].clone()))
}

fn add(x: &PVec, y: &PVec) -> PVec {
    [0, 1, 2].map(|i| x[i].add(&y[i]))
}

fn sub(x: &PVec, y: &PVec) -> PVec {
    [0, 1, 2].map(|i| x[i].sub(&y[i]))
}

fn scale(x: &PVec, s: &Scalar) -> PVec {
    [0, 1, 2].map(|i| x[i].scale(s))
}

fn cross(x: &PVec, y: &PVec) -> PVec {
    [0, 1, 2].map(|i| {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        x[j].mul(&y[k]).sub(&x[k].mul(&y[j]))
    })
}

/// Symbolic `xi = q ×` and `rho = a (q·q) + b q q^T` for a fixed `q`.
struct Ops {
    q: PVec,
    qq: Scalar,
    qv: Vector,
}

impl Ops {
    fn new(q: &Vector) -> Self {
        Ops {
            q: lift(q),
            qq: q.dot(q),
            qv: q.clone(),
        }
    }

    fn xi(&self, x: &PVec) -> PVec {
        cross(&self.q, x)
    }

    fn rho(&self, x: &PVec) -> PVec {
        let qx = (0..3).fold(Poly::zero(), |acc, i| acc.add(&x[i].scale(&self.qv[i])));
        let first = scale(x, &self.qq).map(|p| p.mul(&Poly::a()));
        let second = self.q.clone().map(|c| c.mul(&qx).mul(&Poly::b()));
        add(&first, &second)
    }

    /// `[x,y]_rho = [rho x,y] + [x,rho y] - rho[x,y] - [xi x,xi y]`.
    fn deformed(&self, x: &PVec, y: &PVec) -> PVec {
        let leibniz = sub(
            &add(&cross(&self.rho(x), y), &cross(x, &self.rho(y))),
            &self.rho(&cross(x, y)),
        );
        sub(&leibniz, &cross(&self.xi(x), &self.xi(y)))
    }
}

/// One nonzero coordinate of an identity residual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub identity: &'static str,
    pub sample: usize,
    /// Basis pair `(i, j)` or, for `C`, the column `(k)`.
    pub indices: Vec<usize>,
    pub component: usize,
    pub poly: Poly,
}

fn residuals(ops: &Ops, x: &Vector, y: &Vector) -> Vec<(&'static str, PVec)> {
    let (x, y) = (lift(x), lift(y));
    let b = ops.deformed(&x, &y);
    let (rx, ry) = (ops.rho(&x), ops.rho(&y));
    let (xx, xy) = (ops.xi(&x), ops.xi(&y));
    let d = sub(
        &ops.xi(&cross(&x, &y)),
        &add(&cross(&xx, &y), &cross(&x, &xy)),
    );
    let i1 = sub(&ops.rho(&b), &cross(&rx, &ry));
    let i2 = sub(&ops.xi(&b), &add(&cross(&rx, &xy), &cross(&xx, &ry)));
    let rhs3 = sub(
        &add(&cross(&ops.rho(&rx), &y), &cross(&x, &ops.rho(&ry))),
        &scale(&cross(&rx, &ry), &int(2)),
    );
    let i3 = sub(&ops.xi(&ops.xi(&b)), &rhs3);
    vec![("D", d), ("I1", i1), ("I2", i2), ("I3", i3)]
}

/// Every nonzero coordinate of the ξϱ identities over `qs` and basis pairs.
pub fn generate_constraints(qs: &[Vector]) -> Vec<Constraint> {
    let e: Vec<Vector> = (0..3).map(|i| Vector::basis(3, i)).collect();
    let mut out = Vec::new();
    let mut push = |identity, sample, indices: Vec<usize>, r: PVec| {
        for (component, poly) in r.into_iter().enumerate() {
            if !poly.is_zero() {
                out.push(Constraint {
                    identity,
                    sample,
                    indices: indices.clone(),
                    component,
                    poly,
                });
            }
        }
    };
    for (s, q) in qs.iter().enumerate() {
        let ops = Ops::new(q);
        for (k, ek) in e.iter().enumerate() {
            let ek = lift(ek);
            push(
                "C",
                s,
                vec![k],
                sub(&ops.xi(&ops.rho(&ek)), &ops.rho(&ops.xi(&ek))),
            );
        }
        for i in 0..3 {
            for j in i + 1..3 {
                for (id, r) in residuals(&ops, &e[i], &e[j]) {
                    push(id, s, vec![i, j], r);
                }
            }
        }
    }
    out
}

/// The ansatz as a family on `so(3)` in vector form.
pub fn ansatz_family(a: &Scalar, b: &Scalar) -> Result<QuadraticRhoFamily> {
    let algebra = Arc::new(LieAlgebra::so3_cross());
    let hb = b * half();
    QuadraticRhoFamily::from_polar_operators(
        algebra,
        format!(
            "so(3) ansatz a={}, b={}",
            format_scalar(a),
            format_scalar(b)
        ),
        |i, j| {
            let mut m = (&Matrix::unit(3, j, i) + &Matrix::unit(3, i, j)).scale(&hb);
            if i == j {
                m = &m + &Matrix::scalar(3, a.clone());
            }
            Ok(m)
        },
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointCheck {
    pub a: Scalar,
    pub b: Scalar,
    pub passed: bool,
    pub failed: Vec<String>,
}

fn verify_point(a: &Scalar, b: &Scalar, qs: &[Vector]) -> Result<PointCheck> {
    let report = check_xvr_structure(&ansatz_family(a, b)?, qs)?;
    Ok(PointCheck {
        a: a.clone(),
        b: b.clone(),
        passed: report.passed(),
        failed: report.failed_ids().into_iter().map(String::from).collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridCheck {
    pub max_num: i64,
    pub max_den: i64,
    pub points_tested: usize,
    /// Grid points where the numeric checker passes.
    pub passing: Vec<(Scalar, Scalar)>,
    /// Grid points where the checker and the solution set disagree, or
    /// where the solution set cannot decide membership.
    pub disagreements: Vec<(Scalar, Scalar)>,
}

impl GridCheck {
    pub fn agrees(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Distinct rationals `n/d` with `|n| <= max_num`, `1 <= d <= max_den`.
pub fn grid_values(max_num: i64, max_den: i64) -> Vec<Scalar> {
    let mut v: Vec<Scalar> = (-max_num..=max_num)
        .flat_map(|n| (1..=max_den).map(move |d| frac(n, d)))
        .collect();
    v.sort();
    v.dedup();
    v
}

/// Runs the numeric structure checker on every grid point and compares
/// with `solutions`. Independent of the symbolic expansion.
pub fn grid_scan(solutions: &SolutionSet, max_num: i64, max_den: i64) -> Result<GridCheck> {
    let values = grid_values(max_num, max_den);
    let qs = default_samples(3);
    let mut passing = Vec::new();
    let mut disagreements = Vec::new();
    for a in &values {
        for b in &values {
            let passed = check_xvr_structure(&ansatz_family(a, b)?, &qs)?.passed();
            if passed {
                passing.push((a.clone(), b.clone()));
            }
            if solutions.contains(a, b) != Some(passed) {
                disagreements.push((a.clone(), b.clone()));
            }
        }
    }
    Ok(GridCheck {
        max_num,
        max_den,
        points_tested: values.len() * values.len(),
        passing,
        disagreements,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub ansatz: String,
    pub samples: Vec<Vector>,
    /// Raw constraints with their origin.
    pub constraints: Vec<Constraint>,
    /// Distinct constraints up to scaling, made monic.
    pub distinct: Vec<Poly>,
    pub groebner: Vec<Poly>,
    pub solutions: SolutionSet,
    /// Solutions re-verified with the numeric checker: every point, or
    /// sample points of a curve.
    pub verified: Vec<PointCheck>,
    /// `(a, b) = (0, -1)` lies in the solution set.
    pub contains_canonical: bool,
    /// The ansatz at `(0, -1)` equals the qxq family of the hat-map
    /// embedding, tensor-exactly.
    pub canonical_is_hat_qxq: bool,
    /// The solution set is exactly `{(0, -1)}`.
    pub unique: bool,
    pub grid: Option<GridCheck>,
}

impl ClassificationReport {
    pub fn all_verified(&self) -> bool {
        !self.verified.is_empty() && self.verified.iter().all(|p| p.passed)
    }
}

/// Curve sample points used for re-verification.
const CURVE_B: [(i64, i64); 7] = [(-1, 1), (0, 1), (-1, 2), (1, 1), (2, 1), (-3, 1), (1, 3)];

pub fn classify_so3() -> Result<ClassificationReport> {
    let samples = default_samples(3);
    let constraints = generate_constraints(&samples);
    let mut distinct: Vec<Poly> = Vec::new();
    for c in &constraints {
        let m = c.poly.monic();
        if !distinct.contains(&m) {
            distinct.push(m);
        }
    }
    let gb = groebner(&distinct);
    let solutions = solve(&gb);

    let points: Vec<(Scalar, Scalar)> = match &solutions {
        SolutionSet::Points { points, .. } => points.clone(),
        SolutionSet::Curve { param, .. } => CURVE_B
            .iter()
            .map(|&(n, d)| {
                let b = frac(n, d);
                (param.eval(&Scalar::zero(), &b), b)
            })
            .collect(),
        SolutionSet::Plane => vec![(Scalar::zero(), Scalar::zero()), (int(0), -Scalar::one())],
        SolutionSet::Empty | SolutionSet::Unresolved => Vec::new(),
    };
    let verified = points
        .iter()
        .map(|(a, b)| verify_point(a, b, &samples))
        .collect::<Result<Vec<_>>>()?;

    let canonical = (Scalar::zero(), -Scalar::one());
    let contains_canonical = solutions.contains(&canonical.0, &canonical.1) == Some(true);
    let hat_qxq = QuadraticRhoFamily::from_matrix_basis(&MatrixAlgebraBasis::so3_hat())?;
    let canonical_is_hat_qxq =
        ansatz_family(&canonical.0, &canonical.1)?.polar() == hat_qxq.polar();
    let unique = matches!(&solutions, SolutionSet::Points { points, complete: true }
        if points.as_slice() == [canonical.clone()]);

    Ok(ClassificationReport {
        ansatz: ANSATZ.to_string(),
        samples,
        constraints,
        distinct,
        groebner: gb,
        solutions,
        verified,
        contains_canonical,
        canonical_is_hat_qxq,
        unique,
        grid: None,
    })
}

/// [`classify_so3`] followed by a [`grid_scan`] of the solution set.
pub fn classify_so3_with_grid(max_num: i64, max_den: i64) -> Result<ClassificationReport> {
    let mut report = classify_so3()?;
    report.grid = Some(grid_scan(&report.solutions, max_num, max_den)?);
    Ok(report)
}
