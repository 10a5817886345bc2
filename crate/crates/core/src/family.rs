//! Quadratic families `q -> rho_q`, the bracket pencil they induce, and
//! the I-pair built from it.
//!
//! A family is stored through its polarization: `rho(e_i, e_j)` is the
//! operator with `rho(e_i, e_j) e_k = sum_l P[i][j][k][l] e_l`, and
//! `rho_q = rho(q, q)`.

use std::sync::Arc;

use num_traits::Zero;

use crate::brackets::{bracket_xvr, OperatorTriple};
use crate::canonical::MatrixAlgebraBasis;
use crate::checks::check_xvr;
use crate::error::{Error, Result};
use crate::lie::{BilinearMap, LieAlgebra, Verdict, Witness};
use crate::linear::{Matrix, Vector};
use crate::report::{zero_matrix, CheckReport, CheckRole, StructureKind};
use crate::scalar::{half, int, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    Gl,
    So,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticRhoFamily {
    algebra: Arc<LieAlgebra>,
    name: String,
    polar: Vec<Scalar>,
}

impl QuadraticRhoFamily {
    /// Validates the length of `polar` and its symmetry in `(i, j)`.
    pub fn new(
        algebra: Arc<LieAlgebra>,
        name: impl Into<String>,
        polar: Vec<Scalar>,
    ) -> Result<Self> {
        let f = Self::new_unchecked(algebra, name, polar)?;
        let n = f.dim();
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    for l in 0..n {
                        if f.entry(i, j, k, l) != f.entry(j, i, k, l) {
                            return Err(Error::AsymmetricPolarization { i, j, k, l });
                        }
                    }
                }
            }
        }
        Ok(f)
    }

    /// Skips the symmetry validation; only the length is checked. Used to
    /// build corrupted fixtures.
    pub fn new_unchecked(
        algebra: Arc<LieAlgebra>,
        name: impl Into<String>,
        polar: Vec<Scalar>,
    ) -> Result<Self> {
        let n = algebra.dim();
        if polar.len() != n.pow(4) {
            return Err(Error::dims(n.pow(4), polar.len()));
        }
        Ok(QuadraticRhoFamily {
            algebra,
            name: name.into(),
            polar,
        })
    }

    /// Builds `P` from the polar operators `rho(e_i, e_j)`, `i <= j`.
    pub fn from_polar_operators(
        algebra: Arc<LieAlgebra>,
        name: impl Into<String>,
        mut f: impl FnMut(usize, usize) -> Result<Matrix>,
    ) -> Result<Self> {
        let n = algebra.dim();
        let mut polar = vec![Scalar::zero(); n.pow(4)];
        for i in 0..n {
            for j in i..n {
                let m = f(i, j)?;
                algebra.check_operator(&m)?;
                for k in 0..n {
                    for l in 0..n {
                        let v = m.get(l, k).clone();
                        polar[((i * n + j) * n + k) * n + l] = v.clone();
                        polar[((j * n + i) * n + k) * n + l] = v;
                    }
                }
            }
        }
        Self::new(algebra, name, polar)
    }

    pub fn zero(algebra: Arc<LieAlgebra>) -> Self {
        let n = algebra.dim();
        QuadraticRhoFamily {
            algebra,
            name: "zero".into(),
            polar: vec![Scalar::zero(); n.pow(4)],
        }
    }

    /// `rho(q1, q2) x = (q1 x q2 + q2 x q1) / 2` on a matrix algebra.
    pub fn from_matrix_basis(basis: &MatrixAlgebraBasis) -> Result<Self> {
        let algebra = Arc::new(basis.lie_algebra()?);
        let b = basis.basis_matrices();
        Self::from_polar_operators(algebra, format!("qxq on {}", basis.name()), |i, j| {
            basis.operator(|x| (&(&(&b[i] * x) * &b[j]) + &(&(&b[j] * x) * &b[i])).scale(&half()))
        })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn algebra_arc(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn polar(&self) -> &[Scalar] {
        &self.polar
    }

    pub fn entry(&self, i: usize, j: usize, k: usize, l: usize) -> &Scalar {
        let n = self.dim();
        &self.polar[((i * n + j) * n + k) * n + l]
    }

    /// `rho(e_i, e_j)` as a matrix.
    pub fn polar_operator(&self, i: usize, j: usize) -> Matrix {
        Matrix::from_fn(self.dim(), |l, k| self.entry(i, j, k, l).clone())
    }

    pub fn rho_polar(&self, q1: &Vector, q2: &Vector) -> Result<Matrix> {
        let n = self.dim();
        q1.check_dim(n)?;
        q2.check_dim(n)?;
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            if q1[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if q2[j].is_zero() {
                    continue;
                }
                m = &m + &self.polar_operator(i, j).scale(&(&q1[i] * &q2[j]));
            }
        }
        Ok(m)
    }

    pub fn rho_at(&self, q: &Vector) -> Result<Matrix> {
        self.rho_polar(q, q)
    }

    /// `(g, ad q, rho_q)`.
    pub fn triple_at(&self, q: &Vector) -> Result<OperatorTriple> {
        let xi = self.algebra.ad(q)?;
        OperatorTriple::new(self.algebra.clone(), xi, self.rho_at(q)?)
    }
}

/// The qxq family on gl(n) or so(n) in the fixed bases of
/// [`MatrixAlgebraBasis`].
pub fn canonical_family(kind: FamilyKind, n: usize) -> Result<QuadraticRhoFamily> {
    let basis = match kind {
        FamilyKind::Gl => MatrixAlgebraBasis::gl(n)?,
        FamilyKind::So => MatrixAlgebraBasis::so(n)?,
    };
    QuadraticRhoFamily::from_matrix_basis(&basis)
}

/// All basis vectors followed by all sums `e_i + e_j`, `i < j`.
pub fn default_samples(n: usize) -> Vec<Vector> {
    let mut qs: Vec<Vector> = (0..n).map(|i| Vector::basis(n, i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            qs.push(&Vector::basis(n, i) + &Vector::basis(n, j));
        }
    }
    qs
}

fn sample_sweep(count: usize, mut f: impl FnMut(usize) -> Result<Matrix>) -> Result<Verdict> {
    for s in 0..count {
        let v = zero_matrix(&f(s)?, &[s]);
        if !v.is_pass() {
            return Ok(v);
        }
    }
    Ok(Verdict::Pass)
}

/// Homogeneity and the parallelogram law per sample `(q1, q2, lambda)`,
/// plus symmetry of the polarization on basis pairs. Witnesses are
/// `[sample, column]` and `[i, j, column]`.
pub fn check_quadratic_law(
    family: &QuadraticRhoFamily,
    samples: &[(Vector, Vector, Scalar)],
) -> Result<CheckReport> {
    let mut report = CheckReport::new(StructureKind::QuadraticLaw);
    let hom = sample_sweep(samples.len(), |s| {
        let (q1, _, lambda) = &samples[s];
        let lhs = family.rho_at(&q1.scale(lambda))?;
        Ok(&lhs - &family.rho_at(q1)?.scale(&(lambda * lambda)))
    })?;
    report.push("HOM", "rho_{lambda q} = lambda^2 rho_q", hom);
    let par = sample_sweep(samples.len(), |s| {
        let (q1, q2, _) = &samples[s];
        let lhs = &family.rho_at(&(q1 + q2))? + &family.rho_at(&(q1 - q2))?;
        let rhs = (&family.rho_at(q1)? + &family.rho_at(q2)?).scale(&int(2));
        Ok(&lhs - &rhs)
    })?;
    report.push(
        "PAR",
        "rho_{q1+q2} + rho_{q1-q2} = 2 rho_{q1} + 2 rho_{q2}",
        par,
    );
    let n = family.dim();
    let mut sym = Verdict::Pass;
    'outer: for i in 0..n {
        for j in i + 1..n {
            let v = zero_matrix(
                &(&family.polar_operator(i, j) - &family.polar_operator(j, i)),
                &[i, j],
            );
            if !v.is_pass() {
                sym = v;
                break 'outer;
            }
        }
    }
    report.push("SYM", "rho(e_i,e_j) = rho(e_j,e_i)", sym);
    Ok(report)
}

/// Runs [`check_xvr`] on `(g, ad q, rho_q)` for every `q` in `qs` and checks
/// equivariance in polarized form on all basis triples.
///
/// Each identity of the ξϱ report is aggregated over the samples; its
/// witness is prefixed with the sample index. The verdict is exact for the
/// given samples only.
pub fn check_xvr_structure(family: &QuadraticRhoFamily, qs: &[Vector]) -> Result<CheckReport> {
    if qs.is_empty() {
        return Err(Error::InvalidInput(
            "at least one sample q is required".into(),
        ));
    }
    let mut report = CheckReport::new(StructureKind::XvrStructure);
    for (s, q) in qs.iter().enumerate() {
        let sub = check_xvr(&family.triple_at(q)?)?;
        if report.checks.is_empty() {
            for c in &sub.checks {
                report.push_with_role(c.id.clone(), c.statement.clone(), c.role, Verdict::Pass);
            }
        }
        for (agg, c) in report.checks.iter_mut().zip(sub.checks) {
            if let (Verdict::Pass, Verdict::Fail(w)) = (&agg.verdict, c.verdict) {
                let mut indices = vec![s];
                indices.extend(w.indices);
                agg.verdict = Verdict::Fail(Witness {
                    indices,
                    residual: w.residual,
                });
            }
        }
    }
    report.push("EQ", EQ_STATEMENT, equivariance(family)?);
    Ok(report)
}

const EQ_STATEMENT: &str =
    "[ad z, rho(q1,q2)] = rho([z,q1],q2) + rho(q1,[z,q2]), i.e. [ad z, rho_q] = 2 rho([z,q],q)";

/// Polarized equivariance on basis elements `z`, `q1 = e_i`, `q2 = e_j`
/// with `i <= j`; witness `[z, i, j, column]`.
fn equivariance(family: &QuadraticRhoFamily) -> Result<Verdict> {
    let l = family.algebra();
    let n = l.dim();
    for z in 0..n {
        let ez = l.basis(z);
        let adz = l.ad(&ez)?;
        for i in 0..n {
            let zi = l.bracket(&ez, &l.basis(i));
            for j in i..n {
                let zj = l.bracket(&ez, &l.basis(j));
                let lhs = adz.commutator(&family.polar_operator(i, j))?;
                let rhs =
                    &family.rho_polar(&zi, &l.basis(j))? + &family.rho_polar(&l.basis(i), &zj)?;
                let v = zero_matrix(&(&lhs - &rhs), &[z, i, j]);
                if !v.is_pass() {
                    return Ok(v);
                }
            }
        }
    }
    Ok(Verdict::Pass)
}

/// `[x,y]_q = [x,y] + [x,y]_rho` for the triple `(g, ad q, rho_q)`.
///
/// Refuses unless the triple is a ξϱ-algebra; the result is checked to be
/// Lie before it is returned.
pub fn ipair_bracket(family: &QuadraticRhoFamily, q: &Vector) -> Result<BilinearMap> {
    let triple = family.triple_at(q)?;
    let report = check_xvr(&triple)?;
    if !report.passed() {
        return Err(Error::precondition(
            format!("(g, ad q, rho_q) is not a xi-rho algebra at q = {q}"),
            report,
        ));
    }
    let b = family.algebra().structure().add(&bracket_xvr(&triple)?)?;
    if let Verdict::Fail(witness) = b.is_lie_bracket() {
        return Err(Error::NotLieBracket {
            what: format!("[x,y]_q at q = {q}"),
            witness,
        });
    }
    Ok(b)
}

/// An I-pair on `(g, g)` with `h1 = h2 = (q -> [.,.]_q)`.
#[derive(Debug, Clone)]
pub struct IPair {
    family: QuadraticRhoFamily,
    samples: Vec<Vector>,
    conformance: CheckReport,
}

impl IPair {
    pub fn family(&self) -> &QuadraticRhoFamily {
        &self.family
    }

    pub fn samples(&self) -> &[Vector] {
        &self.samples
    }

    /// One Jacobi check per sample `q`, id `LIE[s]`.
    pub fn conformance(&self) -> &CheckReport {
        &self.conformance
    }

    pub fn h1(&self, a: &Vector) -> Result<BilinearMap> {
        ipair_bracket(&self.family, a)
    }

    pub fn h2(&self, a: &Vector) -> Result<BilinearMap> {
        ipair_bracket(&self.family, a)
    }
}

/// Builds the I-pair of a family that passes [`check_xvr_structure`] on
/// [`default_samples`], and checks that each `h1(q)` is Lie on them.
pub fn build_ipair(family: &QuadraticRhoFamily) -> Result<IPair> {
    let samples = default_samples(family.dim());
    let structure = check_xvr_structure(family, &samples)?;
    if !structure.passed() {
        return Err(Error::precondition(
            format!(
                "{} is not a xi-rho structure on the default samples",
                family.name()
            ),
            structure,
        ));
    }
    let mut conformance = CheckReport::new(StructureKind::IPair);
    for (s, q) in samples.iter().enumerate() {
        let triple = family.triple_at(q)?;
        let b = family.algebra().structure().add(&bracket_xvr(&triple)?)?;
        conformance.push_with_role(
            format!("LIE[{s}]"),
            format!("[x,y]_q is a Lie bracket for q = {q}"),
            CheckRole::Gating,
            b.is_lie_bracket(),
        );
    }
    Ok(IPair {
        family: family.clone(),
        samples,
        conformance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::{gl_example, so_example};
    use crate::scalar::frac;

    fn v(xs: &[i64]) -> Vector {
        Vector::new(xs.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn diagonal_recovers_qxq() {
        let f = canonical_family(FamilyKind::Gl, 2).unwrap();
        let (_, t) = gl_example(2, &Matrix::unit(2, 0, 0)).unwrap();
        assert_eq!(&f.rho_at(&v(&[1, 0, 0, 0])).unwrap(), t.rho());
        assert!(f.rho_at(&v(&[0, 0, 0, 0])).unwrap().is_zero());

        let so = canonical_family(FamilyKind::So, 3).unwrap();
        let f12 = v(&[1, 0, 0]);
        assert_eq!(
            so.rho_at(&f12).unwrap().apply(&f12).unwrap(),
            v(&[-1, 0, 0])
        );
        let q = &Matrix::unit(3, 0, 1) - &Matrix::unit(3, 1, 0);
        let (_, t) = so_example(3, &q).unwrap();
        assert_eq!(&so.rho_at(&f12).unwrap(), t.rho());
    }

    #[test]
    fn quadratic_law_on_canonical_family() {
        let f = canonical_family(FamilyKind::Gl, 2).unwrap();
        let samples = vec![
            (v(&[1, 2, 0, -1]), v(&[0, 0, 0, 0]), int(1)),
            (v(&[1, -2, 3, 1]), v(&[2, 0, 1, 5]), int(3)),
            (v(&[0, 1, 1, 0]), v(&[1, 1, 1, 1]), frac(-2, 3)),
        ];
        assert!(check_quadratic_law(&f, &samples).unwrap().all_passed());
    }

    #[test]
    fn asymmetric_polarization() {
        let l = Arc::new(LieAlgebra::so3_cross());
        let mut p = vec![Scalar::zero(); 81];
        // P(e0, e1) e2 = e2 without the (e1, e0) partner.
        p[(3 + 2) * 3 + 2] = int(1);
        let err = QuadraticRhoFamily::new(l.clone(), "bad", p.clone()).unwrap_err();
        assert!(matches!(
            err,
            Error::AsymmetricPolarization {
                i: 0,
                j: 1,
                k: 2,
                l: 2
            }
        ));

        // Only the symmetric part of P reaches rho_q, so the two laws hold
        // and the asymmetry shows up in SYM alone.
        let f = QuadraticRhoFamily::new_unchecked(l, "bad", p).unwrap();
        let r = check_quadratic_law(&f, &[(v(&[1, 2, 3]), v(&[0, 1, -1]), int(2))]).unwrap();
        assert_eq!(r.failed_ids(), vec!["SYM"]);
        let w = r.check("SYM").unwrap().verdict.witness().unwrap();
        assert_eq!(w.indices, vec![0, 1, 2]);
        assert_eq!(w.residual, v(&[0, 0, 1]));
    }

    #[test]
    fn structures_on_samples() {
        let so3 = canonical_family(FamilyKind::So, 3).unwrap();
        let r = check_xvr_structure(&so3, &default_samples(3)).unwrap();
        assert!(r.passed(), "{:?}", r.failed_ids());

        let gl2 = canonical_family(FamilyKind::Gl, 2).unwrap();
        let r = check_xvr_structure(&gl2, &[v(&[1, 1, 0, 0])]).unwrap();
        assert!(r.passed());
        assert!(check_xvr_structure(&gl2, &[]).is_err());
    }

    #[test]
    fn zero_family_on_so3_is_a_structure() {
        // [q×x, q×y] = (q·(x×y)) q, so ad q [ad q x, ad q y] = 0 on so(3).
        let z = QuadraticRhoFamily::zero(Arc::new(LieAlgebra::so3_cross()));
        let r = check_xvr_structure(&z, &default_samples(3)).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn zero_family_fails_on_gl3() {
        // gl(2) is sl(2) plus its center and behaves like so(3) here.
        let gl3 = canonical_family(FamilyKind::Gl, 3).unwrap();
        let z = QuadraticRhoFamily::zero(gl3.algebra_arc().clone());
        let r = check_xvr_structure(&z, &default_samples(9)).unwrap();
        assert!(!r.passed());
        assert!(r.failed_ids().contains(&"I2"));
    }

    #[test]
    fn ipair_at_zero_is_ambient() {
        let so3 = canonical_family(FamilyKind::So, 3).unwrap();
        let b = ipair_bracket(&so3, &v(&[0, 0, 0])).unwrap();
        assert_eq!(&b, so3.algebra().structure());
    }

    #[test]
    fn ipair_gl2_closed_form() {
        let gl2 = canonical_family(FamilyKind::Gl, 2).unwrap();
        let basis = MatrixAlgebraBasis::gl(2).unwrap();
        let q = Matrix::unit(2, 0, 0);
        let q2 = &q * &q;
        let b = ipair_bracket(&gl2, &v(&[1, 0, 0, 0])).unwrap();
        let m = basis.basis_matrices();
        for i in 0..4 {
            for j in 0..4 {
                let (x, y) = (&m[i], &m[j]);
                let expect = &x.commutator(y).unwrap() + &(&(&(x * &q2) * y) - &(&(y * &q2) * x));
                assert_eq!(basis.element(&b.pair(i, j)).unwrap(), expect);
            }
        }
    }

    #[test]
    fn build_ipair_refuses_non_structures() {
        let gl3 = canonical_family(FamilyKind::Gl, 3).unwrap();
        let z = QuadraticRhoFamily::zero(gl3.algebra_arc().clone());
        assert!(matches!(build_ipair(&z), Err(Error::Precondition { .. })));
        let gl2 = canonical_family(FamilyKind::Gl, 2).unwrap();
        let p = build_ipair(&gl2).unwrap();
        assert!(p.conformance().passed());
        assert_eq!(p.conformance().checks.len(), 10);
    }

    #[test]
    fn abelian_ipair_is_zero() {
        let l = Arc::new(LieAlgebra::abelian(2).unwrap());
        let p: Vec<Scalar> = (0..16).map(|t| int(t as i64 % 3)).collect();
        let mut sym = p.clone();
        for i in 0..2 {
            for j in 0..2 {
                for t in 0..4 {
                    sym[(i * 2 + j) * 4 + t] = p[(i.min(j) * 2 + i.max(j)) * 4 + t].clone();
                }
            }
        }
        let f = QuadraticRhoFamily::new(l, "arbitrary", sym).unwrap();
        let pair = build_ipair(&f).unwrap();
        assert!(pair.conformance().passed());
        assert!(pair.h1(&v(&[3, -1])).unwrap().is_zero());
    }
}
