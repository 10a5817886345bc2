//! Factories for the worked matrix examples: gl(n) and so(n) with the
//! operators `xi_q x = qx - xq` and `rho_q x = qxq`, the left/right
//! multiplication bi-mYB pair, and the associative Θϱ example.
//!
//! Basis orders are fixed: `E_ab` lexicographic for gl(n), and
//! `f_ab = E_ab - E_ba` with `a < b` lexicographic for so(n).

use std::sync::Arc;

use num_traits::Zero;

use crate::brackets::OperatorTriple;
use crate::checks::check_even_tempered;
use crate::error::{Error, Result};
use crate::lie::{BilinearMap, LieAlgebra};
use crate::linear::{Matrix, Vector};
use crate::scalar::{int, Scalar};

pub const GL_MAX_N: usize = 5;
pub const SO_MAX_N: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixAlgebraKind {
    Gl,
    SoTranspose,
    /// so(3) in the hat-map basis, matching [`LieAlgebra::so3_cross`].
    So3Hat,
}

/// A Lie subalgebra of `Mat_n` given by an explicit basis.
///
/// Each basis matrix owns a pivot entry where it is 1 and every other basis
/// matrix is 0, so coordinates are read off the pivots and membership is
/// confirmed by reconstruction.
#[derive(Debug, Clone)]
pub struct MatrixAlgebraBasis {
    n: usize,
    kind: MatrixAlgebraKind,
    basis: Vec<Matrix>,
    pivots: Vec<(usize, usize, Scalar)>,
    labels: Vec<String>,
}

impl MatrixAlgebraBasis {
    pub fn gl(n: usize) -> Result<Self> {
        check_size("gl(n)", n, 1, GL_MAX_N)?;
        let mut basis = Vec::new();
        let mut pivots = Vec::new();
        let mut labels = Vec::new();
        for a in 0..n {
            for b in 0..n {
                basis.push(Matrix::unit(n, a, b));
                pivots.push((a, b, int(1)));
                labels.push(format!("E{}{}", a + 1, b + 1));
            }
        }
        Ok(MatrixAlgebraBasis {
            n,
            kind: MatrixAlgebraKind::Gl,
            basis,
            pivots,
            labels,
        })
    }

    pub fn so(n: usize) -> Result<Self> {
        check_size("so(n)", n, 2, SO_MAX_N)?;
        let mut basis = Vec::new();
        let mut pivots = Vec::new();
        let mut labels = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                basis.push(&Matrix::unit(n, a, b) - &Matrix::unit(n, b, a));
                pivots.push((a, b, int(1)));
                labels.push(format!("f{}{}", a + 1, b + 1));
            }
        }
        Ok(MatrixAlgebraBasis {
            n,
            kind: MatrixAlgebraKind::SoTranspose,
            basis,
            pivots,
            labels,
        })
    }

    /// Antisymmetric 3x3 matrices with basis `hat(e_i)`, where
    /// `hat(u) v = u × v`.
    pub fn so3_hat() -> Self {
        let basis: Vec<Matrix> = (0..3).map(|i| hat(&Vector::basis(3, i))).collect();
        MatrixAlgebraBasis {
            n: 3,
            kind: MatrixAlgebraKind::So3Hat,
            basis,
            pivots: vec![(2, 1, int(1)), (0, 2, int(1)), (1, 0, int(1))],
            labels: vec!["e1".into(), "e2".into(), "e3".into()],
        }
    }

    pub fn kind(&self) -> MatrixAlgebraKind {
        self.kind
    }

    pub fn matrix_size(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_matrices(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `sum_l v_l b_l`.
    pub fn element(&self, v: &Vector) -> Result<Matrix> {
        v.check_dim(self.dim())?;
        let mut m = Matrix::zeros(self.n);
        for (c, b) in v.coords().iter().zip(&self.basis) {
            if !c.is_zero() {
                m = &m + &b.scale(c);
            }
        }
        Ok(m)
    }

    /// Coordinates of `m` in this basis; fails if `m` is outside the span.
    pub fn coordinates(&self, m: &Matrix) -> Result<Vector> {
        m.check_dim(self.n)?;
        let v = Vector::new(
            self.pivots
                .iter()
                .map(|(r, c, s)| m.get(*r, *c) / s)
                .collect(),
        );
        if &self.element(&v)? != m {
            return Err(Error::InvalidInput(format!(
                "matrix is not in the span of the {} basis",
                self.name()
            )));
        }
        Ok(v)
    }

    pub fn name(&self) -> String {
        match self.kind {
            MatrixAlgebraKind::Gl => format!("gl({})", self.n),
            MatrixAlgebraKind::SoTranspose => format!("so({})", self.n),
            MatrixAlgebraKind::So3Hat => "so(3)".to_string(),
        }
    }

    /// Structure constants from matrix commutators.
    pub fn lie_algebra(&self) -> Result<LieAlgebra> {
        let bracket = BilinearMap::from_basis_pairs(self.dim(), |i, j| {
            self.coordinates(&self.basis[i].commutator(&self.basis[j])?)
        })?;
        LieAlgebra::new(self.name(), self.labels.clone(), bracket)
    }

    /// Matrix of the linear map induced by `f` on the subalgebra; fails if
    /// `f` leaves the subalgebra.
    pub fn operator(&self, f: impl Fn(&Matrix) -> Matrix) -> Result<Matrix> {
        let cols = self
            .basis
            .iter()
            .map(|b| self.coordinates(&f(b)))
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_columns(&cols)
    }
}

fn check_size(what: &'static str, n: usize, min: usize, cap: usize) -> Result<()> {
    if n < min {
        return Err(Error::InvalidInput(format!(
            "{what} needs n >= {min}, got {n}"
        )));
    }
    if n > cap {
        return Err(Error::SizeCap { what, size: n, cap });
    }
    Ok(())
}

/// `hat(u)`: the antisymmetric matrix with `hat(u) v = u × v`.
pub fn hat(u: &Vector) -> Matrix {
    assert_eq!(u.dim(), 3, "hat map needs a 3-vector");
    let z = Scalar::zero();
    Matrix::from_rows(vec![
        vec![z.clone(), -&u[2], u[1].clone()],
        vec![u[2].clone(), z.clone(), -&u[0]],
        vec![-&u[1], u[0].clone(), z],
    ])
    .expect("3x3")
}

fn is_antisymmetric(q: &Matrix) -> bool {
    (&q.transpose() + q).is_zero()
}

fn xi_rho(basis: &MatrixAlgebraBasis, q: &Matrix) -> Result<(Arc<LieAlgebra>, OperatorTriple)> {
    let algebra = Arc::new(basis.lie_algebra()?);
    let xi = basis.operator(|x| &(q * x) - &(x * q))?;
    let rho = basis.operator(|x| &(q * x) * q)?;
    let triple = OperatorTriple::new(algebra.clone(), xi, rho)?;
    Ok((algebra, triple))
}

/// gl(n) with `xi x = qx - xq` and `rho x = qxq`.
pub fn gl_example(n: usize, q: &Matrix) -> Result<(Arc<LieAlgebra>, OperatorTriple)> {
    let basis = MatrixAlgebraBasis::gl(n)?;
    q.check_dim(n)?;
    xi_rho(&basis, q)
}

/// so(n) (transpose involution) with `xi_q`, `rho_q` restricted to it.
/// `q` must be antisymmetric so that `rho_q` maps so(n) to itself.
pub fn so_example(n: usize, q: &Matrix) -> Result<(Arc<LieAlgebra>, OperatorTriple)> {
    let basis = MatrixAlgebraBasis::so(n)?;
    q.check_dim(n)?;
    if !is_antisymmetric(q) {
        return Err(Error::InvalidInput(
            "q must be antisymmetric (q^T = -q) so that x -> qxq preserves so(n)".into(),
        ));
    }
    xi_rho(&basis, q)
}

/// gl(n) with `R1 x = qx` and `R2 x = xq`.
pub fn bi_myb_left_right(n: usize, q: &Matrix) -> Result<(Arc<LieAlgebra>, Matrix, Matrix)> {
    let basis = MatrixAlgebraBasis::gl(n)?;
    q.check_dim(n)?;
    let algebra = Arc::new(basis.lie_algebra()?);
    let r1 = basis.operator(|x| q * x)?;
    let r2 = basis.operator(|x| x * q)?;
    Ok((algebra, r1, r2))
}

/// The commutator algebra of `Mat_n` with `Theta x = q^2 x + x q^2` and
/// `rho x = qxq`.
pub fn assoc_theta_example(n: usize, q: &Matrix) -> Result<(Arc<LieAlgebra>, Matrix, Matrix)> {
    let basis = MatrixAlgebraBasis::gl(n)?;
    q.check_dim(n)?;
    let algebra = Arc::new(basis.lie_algebra()?);
    let q2 = q * q;
    let theta = basis.operator(|x| &(&q2 * x) + &(x * &q2))?;
    let rho = basis.operator(|x| &(q * x) * q)?;
    Ok((algebra, theta, rho))
}

/// `xi = R1 - R2`, `rho = R1 R2` for an even-tempered bi-mYB pair; other
/// pairs are refused with the failing report attached.
pub fn xvr_from_bi_myb(
    algebra: Arc<LieAlgebra>,
    r1: &Matrix,
    r2: &Matrix,
) -> Result<OperatorTriple> {
    let report = check_even_tempered(&algebra, r1, r2)?;
    if !report.passed() {
        return Err(Error::precondition(
            "the pair is not an even-tempered bi-mYB-algebra",
            report,
        ));
    }
    OperatorTriple::new(algebra, r1 - r2, r1 * r2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brackets::{bracket_r, bracket_xvr};
    use crate::checks::{check_bi_myb, check_myb, check_theta_rho, check_xvr, witness_of};

    fn e(n: usize, a: usize, b: usize) -> Matrix {
        Matrix::unit(n, a, b)
    }

    #[test]
    fn gl2_with_e11() {
        let (l, t) = gl_example(2, &e(2, 0, 0)).unwrap();
        assert_eq!(l.labels(), &["E11", "E12", "E21", "E22"]);
        // rho(E12) = E11 E12 E11 = 0, rho(E11) = E11, xi(E12) = E12
        assert!(t.rho().column(1).is_zero());
        assert_eq!(t.rho().column(0), Vector::basis(4, 0));
        assert_eq!(t.xi().column(1), Vector::basis(4, 1));
        assert!(check_xvr(&t).unwrap().all_passed());
    }

    #[test]
    fn gl_degenerate_q() {
        let (_, t) = gl_example(3, &Matrix::zeros(3)).unwrap();
        assert!(t.xi().is_zero() && t.rho().is_zero());
        let (_, t) = gl_example(3, &Matrix::identity(3)).unwrap();
        assert!(t.xi().is_zero());
        assert_eq!(t.rho(), &Matrix::identity(9));
    }

    #[test]
    fn size_caps() {
        assert!(matches!(
            gl_example(6, &Matrix::zeros(6)),
            Err(Error::SizeCap { cap: GL_MAX_N, .. })
        ));
        assert!(gl_example(0, &Matrix::zeros(0)).is_err());
        assert!(so_example(1, &Matrix::zeros(1)).is_err());
    }

    #[test]
    fn so3_hat_identity() {
        // q = f12 corresponds to u = -e3 under the hat map; rho_u v = -(u.v) u.
        let q = &e(3, 0, 1) - &e(3, 1, 0);
        let (l, t) = so_example(3, &q).unwrap();
        assert_eq!(l.labels(), &["f12", "f13", "f23"]);
        assert_eq!(t.rho().column(0), -&Vector::basis(3, 0));
        assert!(t.rho().column(2).is_zero());
        assert!(check_xvr(&t).unwrap().all_passed());
        let (_, t0) = so_example(3, &Matrix::zeros(3)).unwrap();
        assert!(t0.xi().is_zero() && t0.rho().is_zero());
    }

    #[test]
    fn so_rejects_symmetric_q() {
        let err = so_example(3, &Matrix::identity(3)).unwrap_err();
        assert!(err.to_string().contains("antisymmetric"));
    }

    #[test]
    fn hat_basis_matches_cross_product_algebra() {
        let hb = MatrixAlgebraBasis::so3_hat();
        assert_eq!(
            hb.lie_algebra().unwrap().structure(),
            LieAlgebra::so3_cross().structure()
        );
    }

    /// `[x,y]_R` for `R x = qx` is `xqy - yqx`, and the gl_example bracket is
    /// `x q^2 y - y q^2 x`; both computed here from raw matrix products.
    #[test]
    fn closed_forms_on_gl2() {
        let q = Matrix::from_rows(vec![vec![int(1), int(2)], vec![int(-1), int(3)]]).unwrap();
        let basis = MatrixAlgebraBasis::gl(2).unwrap();
        let (l, r1, _) = bi_myb_left_right(2, &q).unwrap();
        let (_, t) = gl_example(2, &q).unwrap();
        let br = bracket_r(&l, &r1).unwrap();
        let bx = bracket_xvr(&t).unwrap();
        let q2 = &q * &q;
        let bm = basis.basis_matrices();
        for i in 0..4 {
            for j in 0..4 {
                let (x, y) = (&bm[i], &bm[j]);
                let want_r = &(&(x * &q) * y) - &(&(y * &q) * x);
                let want_x = &(&(x * &q2) * y) - &(&(y * &q2) * x);
                assert_eq!(br.pair(i, j), basis.coordinates(&want_r).unwrap());
                assert_eq!(bx.pair(i, j), basis.coordinates(&want_x).unwrap());
            }
        }
    }

    #[test]
    fn left_multiplication_is_myb() {
        let (l, r1, r2) = bi_myb_left_right(2, &e(2, 0, 1)).unwrap();
        assert!(check_myb(&l, &r1).unwrap().passed());
        assert!(check_myb(&l, &r2).unwrap().passed());
    }

    #[test]
    fn left_right_pair() {
        let (l, r1, r2) = bi_myb_left_right(2, &e(2, 0, 0)).unwrap();
        assert!(check_bi_myb(&l, &r1, &r2).unwrap().passed());
        assert!(check_even_tempered(&l, &r1, &r2).unwrap().passed());
        let (_, t) = gl_example(2, &e(2, 0, 0)).unwrap();
        assert_eq!(&(&r1 - &r2), t.xi());
        assert_eq!(&(&r1 * &r2), t.rho());
        let conv = xvr_from_bi_myb(l.clone(), &r1, &r2).unwrap();
        assert_eq!(conv, t);

        let (l, r1, r2) = bi_myb_left_right(2, &e(2, 0, 1)).unwrap();
        assert!(check_even_tempered(&l, &r1, &r2).unwrap().passed());

        let (l, r1, r2) = bi_myb_left_right(2, &Matrix::zeros(2)).unwrap();
        assert!(r1.is_zero() && r2.is_zero());
        assert!(check_even_tempered(&l, &r1, &r2).unwrap().passed());
    }

    #[test]
    fn left_with_zero_breaks_bracket_equality() {
        let (l, r1, _) = bi_myb_left_right(2, &e(2, 0, 0)).unwrap();
        let r = check_bi_myb(&l, &r1, &Matrix::zeros(4)).unwrap();
        assert_eq!(r.failed_ids(), vec!["B"]);
        assert!(!witness_of(&r, "B").unwrap().residual.is_zero());
    }

    /// R1 = R2 = L_q with q = E11 (trivially bi-mYB). For idempotent q,
    ///   LHS = 2(qxqy - qyqx) - q[x,y],  RHS = xqy - yqx.
    /// On (E12, E21): LHS = -E11, RHS = -E22, so both ET identities fail.
    #[test]
    fn equal_left_pair_is_not_even_tempered() {
        let (l, r1, _) = bi_myb_left_right(2, &e(2, 0, 0)).unwrap();
        let r = check_even_tempered(&l, &r1, &r1).unwrap();
        assert_eq!(r.failed_ids(), vec!["ET1", "ET2"]);
        let basis = MatrixAlgebraBasis::gl(2).unwrap();
        let want = basis.coordinates(&(&e(2, 1, 1) - &e(2, 0, 0))).unwrap();
        let w = witness_of(&r, "ET1").unwrap();
        if w.indices == vec![1, 2] {
            assert_eq!(w.residual, want);
        } else {
            assert!(w.indices < vec![1, 2]);
        }
    }

    #[test]
    fn xvr_from_bi_myb_refuses() {
        let (l, r1, _) = bi_myb_left_right(2, &e(2, 0, 0)).unwrap();
        assert!(matches!(
            xvr_from_bi_myb(l, &r1, &Matrix::zeros(4)),
            Err(Error::Precondition { .. })
        ));
    }

    #[test]
    fn identity_pair_converts_to_trivial_triple() {
        let l = Arc::new(LieAlgebra::so3_cross());
        let id = Matrix::identity(3);
        let t = xvr_from_bi_myb(l, &id, &id).unwrap();
        assert!(t.xi().is_zero());
        assert_eq!(t.rho(), &id);
    }

    #[test]
    fn assoc_theta_closed_forms() {
        let (_, th, rho) = assoc_theta_example(2, &Matrix::identity(2)).unwrap();
        assert_eq!(th, Matrix::scalar(4, int(2)));
        assert_eq!(rho, Matrix::identity(4));
        let (_, th, rho) = assoc_theta_example(2, &Matrix::zeros(2)).unwrap();
        assert!(th.is_zero() && rho.is_zero());
    }

    #[test]
    fn assoc_theta_special() {
        let q = Matrix::diagonal(vec![int(1), int(2)]);
        let (l, th, rho) = assoc_theta_example(2, &q).unwrap();
        let r = check_theta_rho(&l, &th, &rho, true).unwrap();
        assert!(r.all_passed(), "{:?}", r.failed_ids());
    }

    #[test]
    fn so_operators_restrict_gl_operators() {
        let q = &(&e(4, 0, 1) - &e(4, 1, 0)).scale(&int(2)) + &(&e(4, 2, 3) - &e(4, 3, 2));
        let (_, gl_t) = gl_example(4, &q).unwrap();
        let (_, so_t) = so_example(4, &q).unwrap();
        let glb = MatrixAlgebraBasis::gl(4).unwrap();
        let sob = MatrixAlgebraBasis::so(4).unwrap();
        let include = |v: &Vector| glb.coordinates(&sob.element(v).unwrap()).unwrap();
        for l in 0..sob.dim() {
            let f = Vector::basis(sob.dim(), l);
            assert_eq!(gl_t.rho() * &include(&f), include(&so_t.rho().column(l)));
            assert_eq!(gl_t.xi() * &include(&f), include(&so_t.xi().column(l)));
        }
    }
}
