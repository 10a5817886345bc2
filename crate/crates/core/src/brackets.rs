//! Deformed brackets built from an ambient Lie bracket and linear operators.
//!
//! Every constructor materializes the full tensor by evaluating its formula
//! on all ordered basis pairs; antisymmetry is then verified rather than
//! imposed.

use std::sync::Arc;

use crate::error::Result;
use crate::lie::{BilinearMap, LieAlgebra};
use crate::linear::{Matrix, Vector};
use crate::scalar::{half, int};

/// A Lie algebra with two operators `xi` and `rho`, plus the derived
/// `theta = 2 rho + xi^2` and `s = xi rho`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorTriple {
    algebra: Arc<LieAlgebra>,
    xi: Matrix,
    rho: Matrix,
    theta: Matrix,
    s: Matrix,
}

impl OperatorTriple {
    pub fn new(algebra: Arc<LieAlgebra>, xi: Matrix, rho: Matrix) -> Result<Self> {
        algebra.check_operator(&xi)?;
        algebra.check_operator(&rho)?;
        let theta = &rho.scale(&int(2)) + &(&xi * &xi);
        let s = &xi * &rho;
        Ok(OperatorTriple {
            algebra,
            xi,
            rho,
            theta,
            s,
        })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn algebra_arc(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn xi(&self) -> &Matrix {
        &self.xi
    }

    pub fn rho(&self) -> &Matrix {
        &self.rho
    }

    /// `2 rho + xi^2`.
    pub fn theta(&self) -> &Matrix {
        &self.theta
    }

    /// `xi rho`.
    pub fn s(&self) -> &Matrix {
        &self.s
    }
}

fn images(op: &Matrix) -> Vec<Vector> {
    (0..op.dim()).map(|l| op.column(l)).collect()
}

/// `[A e_i, e_j] + [e_i, A e_j] - A [e_i, e_j]`, for all `(i, j)` at once.
struct Leibniz<'a> {
    algebra: &'a LieAlgebra,
    op: &'a Matrix,
    cols: Vec<Vector>,
}

impl<'a> Leibniz<'a> {
    fn new(algebra: &'a LieAlgebra, op: &'a Matrix) -> Self {
        Leibniz {
            algebra,
            op,
            cols: images(op),
        }
    }

    fn at(&self, i: usize, j: usize) -> Vector {
        let l = self.algebra;
        let ei = l.basis(i);
        let ej = l.basis(j);
        let sum = &l.bracket(&self.cols[i], &ej) + &l.bracket(&ei, &self.cols[j]);
        &sum - &(self.op * &l.structure().pair(i, j))
    }
}

/// `[x,y]_R = [Rx,y] + [x,Ry] - R[x,y]`.
pub fn bracket_r(algebra: &LieAlgebra, r: &Matrix) -> Result<BilinearMap> {
    algebra.check_operator(r)?;
    let lz = Leibniz::new(algebra, r);
    BilinearMap::from_basis_pairs(algebra.dim(), |i, j| Ok(lz.at(i, j)))
}

/// The bracket of a ξϱ-triple:
/// `[x,y]_rho = [rho x,y] + [x,rho y] - rho[x,y] - [xi x, xi y]`.
pub fn bracket_xvr(triple: &OperatorTriple) -> Result<BilinearMap> {
    let l = triple.algebra();
    let lz = Leibniz::new(l, triple.rho());
    let xi_cols = images(triple.xi());
    BilinearMap::from_basis_pairs(l.dim(), |i, j| {
        Ok(&lz.at(i, j) - &l.bracket(&xi_cols[i], &xi_cols[j]))
    })
}

/// `[x,y]_Theta = 1/2 ([Theta x,y] + [x,Theta y] - Theta[x,y])`.
pub fn bracket_theta(algebra: &LieAlgebra, theta: &Matrix) -> Result<BilinearMap> {
    algebra.check_operator(theta)?;
    let lz = Leibniz::new(algebra, theta);
    let h = half();
    BilinearMap::from_basis_pairs(algebra.dim(), |i, j| Ok(lz.at(i, j).scale(&h)))
}

/// The ϱ-bracket of an Rϱ-pair:
/// `[x,y]_rho = [rho x,y] + [x,rho y] - rho[x,y] + [Rx,Ry] - R[x,y]_R`.
///
/// Not the same formula as [`bracket_xvr`], despite the shared notation.
pub fn bracket_rrho(algebra: &LieAlgebra, r: &Matrix, rho: &Matrix) -> Result<BilinearMap> {
    algebra.check_operator(r)?;
    algebra.check_operator(rho)?;
    let lz_rho = Leibniz::new(algebra, rho);
    let lz_r = Leibniz::new(algebra, r);
    let r_cols = images(r);
    BilinearMap::from_basis_pairs(algebra.dim(), |i, j| {
        let a = &lz_rho.at(i, j) + &algebra.bracket(&r_cols[i], &r_cols[j]);
        Ok(&a - &(r * &lz_r.at(i, j)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::scalar::{frac, Scalar};
    use proptest::prelude::*;

    fn so3() -> Arc<LieAlgebra> {
        Arc::new(LieAlgebra::so3_cross())
    }

    #[test]
    fn identity_and_zero_operators() {
        let l = so3();
        let id = Matrix::identity(3);
        let zero = Matrix::zeros(3);
        let amb = l.structure();
        assert_eq!(&bracket_r(&l, &id).unwrap(), amb);
        assert!(bracket_r(&l, &zero).unwrap().is_zero());

        let t = OperatorTriple::new(l.clone(), zero.clone(), id.clone()).unwrap();
        assert_eq!(&bracket_xvr(&t).unwrap(), amb);
        let t0 = OperatorTriple::new(l.clone(), zero.clone(), zero.clone()).unwrap();
        assert!(bracket_xvr(&t0).unwrap().is_zero());

        assert_eq!(bracket_theta(&l, &id).unwrap(), amb.scale(&half()));
        assert!(bracket_theta(&l, &zero).unwrap().is_zero());

        assert_eq!(&bracket_rrho(&l, &zero, &id).unwrap(), amb);
        assert!(bracket_rrho(&l, &zero, &zero).unwrap().is_zero());
    }

    #[test]
    fn dimension_mismatch() {
        let l = so3();
        assert!(matches!(
            bracket_r(&l, &Matrix::identity(2)),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(OperatorTriple::new(l, Matrix::identity(3), Matrix::identity(4)).is_err());
    }

    fn small() -> impl Strategy<Value = Scalar> {
        (-4i64..5, 1i64..3).prop_map(|(n, d)| frac(n, d))
    }

    fn op3() -> impl Strategy<Value = Matrix> {
        proptest::collection::vec(small(), 9)
            .prop_map(|e| Matrix::from_fn(3, |r, c| e[r * 3 + c].clone()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        /// [·,·]_rho coincides with [·,·]_Theta for Theta = 2 rho + xi^2 whenever
        /// xi is a derivation; rho is arbitrary.
        #[test]
        fn xvr_bracket_equals_theta_bracket(q in proptest::collection::vec(small(), 3), rho in op3()) {
            let l = so3();
            let xi = l.ad(&Vector::new(q)).unwrap();
            let t = OperatorTriple::new(l, xi, rho).unwrap();
            let lhs = bracket_xvr(&t).unwrap();
            let rhs = bracket_theta(t.algebra(), t.theta()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn bracket_r_is_linear_in_r(a in op3(), b in op3()) {
            let l = so3();
            let sum = bracket_r(&l, &(&a + &b)).unwrap();
            let parts = bracket_r(&l, &a).unwrap().add(&bracket_r(&l, &b).unwrap()).unwrap();
            prop_assert_eq!(sum, parts);
        }
    }

    #[test]
    fn theta_coincidence_needs_a_derivation() {
        // xi = E_11 is not a derivation of so(3): [xi e1, e2] + [e1, xi e2]
        // - xi[e1, e2] = e3 while -[xi e1, xi e2] = 0.
        let l = so3();
        let t = OperatorTriple::new(l.clone(), Matrix::unit(3, 0, 0), Matrix::zeros(3)).unwrap();
        assert_ne!(
            bracket_xvr(&t).unwrap(),
            bracket_theta(&l, t.theta()).unwrap()
        );
    }

    #[test]
    fn xvr_and_rrho_brackets_are_not_additive() {
        // Witness: xi = 0 and rho = 0 versus xi = ad e1 split across two
        // triples. The [xi x, xi y] term is quadratic, so the sum differs.
        let l = so3();
        let ad = l.ad(&l.basis(0)).unwrap();
        let zero = Matrix::zeros(3);
        let whole =
            bracket_xvr(&OperatorTriple::new(l.clone(), ad.scale(&int(2)), zero.clone()).unwrap())
                .unwrap();
        let half_b =
            bracket_xvr(&OperatorTriple::new(l.clone(), ad.clone(), zero.clone()).unwrap())
                .unwrap();
        assert_ne!(whole, half_b.add(&half_b).unwrap());

        let r2 = bracket_rrho(&l, &ad.scale(&int(2)), &zero).unwrap();
        let r1 = bracket_rrho(&l, &ad, &zero).unwrap();
        assert_ne!(r2, r1.add(&r1).unwrap());
    }
}
