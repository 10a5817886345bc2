//! Lie algebras as structure-constant tensors, candidate brackets, the
//! Jacobiator and compatibility of bracket pairs.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linear::{Matrix, Vector};
use crate::scalar::{int, Scalar};

/// A failing basis tuple together with the nonzero residual
/// `lhs - rhs` of the identity that failed there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub indices: Vec<usize>,
    pub residual: Vector,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        write!(f, "({}) residual {}", idx.join(", "), self.residual)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Witness),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(w) => Some(w),
        }
    }
}

/// Antisymmetric bilinear operation on an `n`-dimensional space, stored as
/// `b[i][j][k]` with `B(e_i, e_j) = sum_k b[i][j][k] e_k`.
///
/// The Jacobi identity is not assumed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearMap {
    n: usize,
    data: Vec<Scalar>,
}

impl BilinearMap {
    pub fn zero(n: usize) -> Self {
        BilinearMap {
            n,
            data: vec![Scalar::zero(); n * n * n],
        }
    }

    /// Wraps a full `n^3` tensor, rejecting it unless antisymmetric.
    pub fn from_tensor(n: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != n * n * n {
            return Err(Error::dims(n * n * n, data.len()));
        }
        let map = BilinearMap { n, data };
        map.check_antisymmetric()?;
        Ok(map)
    }

    /// Evaluates `f` on every ordered basis pair `(i, j)` and checks that the
    /// resulting tensor is antisymmetric.
    pub fn from_basis_pairs(
        n: usize,
        mut f: impl FnMut(usize, usize) -> Result<Vector>,
    ) -> Result<Self> {
        let mut data = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                let v = f(i, j)?;
                v.check_dim(n)?;
                data.extend(v.into_coords());
            }
        }
        Self::from_tensor(n, data)
    }

    /// Builds a map from records `(i, j, k, c)` with `i < j`; the `(j, i)`
    /// entries follow by antisymmetry and omitted entries are zero.
    pub fn from_records(
        n: usize,
        records: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
    ) -> Result<Self> {
        let mut map = Self::zero(n);
        for (i, j, k, c) in records {
            if i >= n || j >= n || k >= n {
                return Err(Error::InvalidInput(format!(
                    "structure index ({i}, {j}, {k}) out of range for dimension {n}"
                )));
            }
            if i >= j {
                return Err(Error::InvalidInput(format!(
                    "structure record ({i}, {j}, {k}) must have i < j"
                )));
            }
            let neg = -&c;
            map.data[(i * n + j) * n + k] = c;
            map.data[(j * n + i) * n + k] = neg;
        }
        Ok(map)
    }

    fn check_antisymmetric(&self) -> Result<()> {
        let n = self.n;
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    let a = &self.data[(i * n + j) * n + k];
                    let b = &self.data[(j * n + i) * n + k];
                    if (a + b) != Scalar::zero() {
                        return Err(Error::NotAntisymmetric { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.data[(i * self.n + j) * self.n + k]
    }

    /// `B(e_i, e_j)`.
    pub fn pair(&self, i: usize, j: usize) -> Vector {
        let start = (i * self.n + j) * self.n;
        Vector::new(self.data[start..start + self.n].to_vec())
    }

    pub fn tensor(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Bilinear extension of the basis values to arbitrary `x`, `y`.
    pub fn eval(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        x.check_dim(self.n)?;
        y.check_dim(self.n)?;
        Ok(self.apply(x, y))
    }

    /// [`eval`](Self::eval) for already validated dimensions.
    pub(crate) fn apply(&self, x: &Vector, y: &Vector) -> Vector {
        let n = self.n;
        let mut out = vec![Scalar::zero(); n];
        for (i, xi) in x.coords().iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.coords().iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let xy = xi * yj;
                let row = &self.data[(i * n + j) * n..(i * n + j + 1) * n];
                for (o, c) in out.iter_mut().zip(row) {
                    if !c.is_zero() {
                        *o += &xy * c;
                    }
                }
            }
        }
        Vector::new(out)
    }

    /// `B(B(x,y),z) + B(B(y,z),x) + B(B(z,x),y)`.
    pub fn jacobiator(&self, x: &Vector, y: &Vector, z: &Vector) -> Result<Vector> {
        for v in [x, y, z] {
            v.check_dim(self.n)?;
        }
        let mut acc = Vector::zeros(self.n);
        for (u, v, w) in [(x, y, z), (y, z, x), (z, x, y)] {
            acc = &acc + &self.apply(&self.apply(u, v), w);
        }
        Ok(acc)
    }

    /// Sweeps basis triples `i < j < k` in lexicographic order and returns
    /// the first one with a nonzero Jacobiator.
    pub fn is_lie_bracket(&self) -> Verdict {
        first_failing_triple(self.n, |x, y, z| {
            self.jacobiator(x, y, z).expect("basis vectors match")
        })
    }

    pub fn linear_combination(&self, a: &Scalar, other: &BilinearMap, b: &Scalar) -> Result<Self> {
        if other.n != self.n {
            return Err(Error::dims(self.n, other.n));
        }
        Ok(BilinearMap {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(x, y)| a * x + b * y)
                .collect(),
        })
    }

    pub fn add(&self, other: &BilinearMap) -> Result<Self> {
        self.linear_combination(&int(1), other, &int(1))
    }

    pub fn sub(&self, other: &BilinearMap) -> Result<Self> {
        self.linear_combination(&int(1), other, &int(-1))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        BilinearMap {
            n: self.n,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }
}

/// `B1(B2(x,y),z) + B2(B1(x,y),z)` summed over cyclic permutations.
/// For `B1 = B2 = B` this is twice the Jacobiator of `B`.
fn mixed_jacobiator(
    b1: &BilinearMap,
    b2: &BilinearMap,
    x: &Vector,
    y: &Vector,
    z: &Vector,
) -> Vector {
    let mut acc = Vector::zeros(b1.n);
    for (u, v, w) in [(x, y, z), (y, z, x), (z, x, y)] {
        acc = &acc + &b1.apply(&b2.apply(u, v), w);
        acc = &acc + &b2.apply(&b1.apply(u, v), w);
    }
    acc
}

fn first_failing_triple(n: usize, f: impl Fn(&Vector, &Vector, &Vector) -> Vector) -> Verdict {
    let basis: Vec<Vector> = (0..n).map(|i| Vector::basis(n, i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let r = f(&basis[i], &basis[j], &basis[k]);
                if !r.is_zero() {
                    return Verdict::Fail(Witness {
                        indices: vec![i, j, k],
                        residual: r,
                    });
                }
            }
        }
    }
    Verdict::Pass
}

/// Decides whether two Lie brackets are compatible, i.e. whether their mixed
/// Jacobiator vanishes (equivalently, every pencil `λB1 + μB2` is Lie).
///
/// Fails with [`Error::NotLieBracket`] if either argument is not itself a
/// Lie bracket; that is a precondition failure, not incompatibility.
pub fn are_compatible(b1: &BilinearMap, b2: &BilinearMap) -> Result<Verdict> {
    if b1.n != b2.n {
        return Err(Error::dims(b1.n, b2.n));
    }
    for (what, b) in [("first argument", b1), ("second argument", b2)] {
        if let Verdict::Fail(witness) = b.is_lie_bracket() {
            return Err(Error::NotLieBracket {
                what: what.to_string(),
                witness,
            });
        }
    }
    Ok(first_failing_triple(b1.n, |x, y, z| {
        mixed_jacobiator(b1, b2, x, y, z)
    }))
}

/// A finite-dimensional Lie algebra over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    labels: Vec<String>,
    bracket: BilinearMap,
}

impl LieAlgebra {
    /// Validates the Jacobi identity eagerly; antisymmetry is guaranteed by
    /// [`BilinearMap`].
    pub fn new(name: impl Into<String>, labels: Vec<String>, bracket: BilinearMap) -> Result<Self> {
        let name = name.into();
        if bracket.dim() == 0 {
            return Err(Error::InvalidInput(
                "a Lie algebra needs dimension >= 1".into(),
            ));
        }
        if labels.len() != bracket.dim() {
            return Err(Error::InvalidInput(format!(
                "{} basis labels for a {}-dimensional algebra",
                labels.len(),
                bracket.dim()
            )));
        }
        if let Verdict::Fail(witness) = bracket.is_lie_bracket() {
            return Err(Error::NotLieBracket {
                what: format!("structure of {name}"),
                witness,
            });
        }
        Ok(LieAlgebra {
            name,
            labels,
            bracket,
        })
    }

    pub fn abelian(n: usize) -> Result<Self> {
        let labels = (1..=n).map(|i| format!("e{i}")).collect();
        Self::new(format!("abelian({n})"), labels, BilinearMap::zero(n))
    }

    /// so(3) in the cross-product basis: `[e1,e2] = e3` and cyclic.
    pub fn so3_cross() -> Self {
        let one = int(1);
        let bracket = BilinearMap::from_records(
            3,
            [
                (0, 1, 2, one.clone()),
                (1, 2, 0, one.clone()),
                (0, 2, 1, -one),
            ],
        )
        .expect("static structure");
        Self::new(
            "so(3)",
            vec!["e1".into(), "e2".into(), "e3".into()],
            bracket,
        )
        .expect("so(3) is Lie")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.bracket.dim()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn structure(&self) -> &BilinearMap {
        &self.bracket
    }

    pub fn basis(&self, i: usize) -> Vector {
        Vector::basis(self.dim(), i)
    }

    pub fn try_bracket(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        self.bracket.eval(x, y)
    }

    /// `[x, y]`; panics if the dimensions do not match the algebra.
    pub fn bracket(&self, x: &Vector, y: &Vector) -> Vector {
        self.bracket
            .eval(x, y)
            .expect("dimension mismatch in bracket")
    }

    /// Matrix of `ad x = [x, .]`.
    pub fn ad(&self, x: &Vector) -> Result<Matrix> {
        x.check_dim(self.dim())?;
        let cols: Vec<Vector> = (0..self.dim())
            .map(|l| self.bracket.apply(x, &self.basis(l)))
            .collect();
        Matrix::from_columns(&cols)
    }

    pub fn check_operator(&self, m: &Matrix) -> Result<()> {
        m.check_dim(self.dim())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::frac;
    use proptest::prelude::*;

    fn e(n: usize, i: usize) -> Vector {
        Vector::basis(n, i)
    }

    /// `[e1,e2] = e1`, `[e1,e3] = e2`, `[e2,e3] = 0` (1-based labels).
    fn non_jacobi() -> BilinearMap {
        BilinearMap::from_records(3, [(0, 1, 0, int(1)), (0, 2, 1, int(1))]).unwrap()
    }

    #[test]
    fn so3_bracket_on_basis() {
        let so3 = LieAlgebra::so3_cross();
        assert_eq!(so3.bracket(&e(3, 0), &e(3, 1)), e(3, 2));
    }

    #[test]
    fn bracket_of_x_with_itself_vanishes() {
        let so3 = LieAlgebra::so3_cross();
        let x = Vector::new(vec![frac(1, 2), int(-3), int(4)]);
        assert!(so3.bracket(&x, &x).is_zero());
        let ab = LieAlgebra::abelian(3).unwrap();
        assert!(ab.bracket(&x, &e(3, 1)).is_zero());
    }

    #[test]
    fn non_jacobi_fixture() {
        // Hand expansion on (e1, e2, e3):
        //   B(B(e1,e2),e3) = B(e1,e3) = e2
        //   B(B(e2,e3),e1) = 0
        //   B(B(e3,e1),e2) = B(-e2,e2) = 0
        let b = non_jacobi();
        let j = b.jacobiator(&e(3, 0), &e(3, 1), &e(3, 2)).unwrap();
        assert_eq!(j, Vector::new(vec![int(0), int(1), int(0)]));
        match b.is_lie_bracket() {
            Verdict::Fail(w) => {
                assert_eq!(w.indices, vec![0, 1, 2]);
                assert_eq!(w.residual, j);
            }
            Verdict::Pass => panic!("expected a Jacobi failure"),
        }
        assert!(LieAlgebra::new("bad", vec!["a".into(), "b".into(), "c".into()], b).is_err());
    }

    #[test]
    fn jacobiator_cyclic_symmetry_with_repeat() {
        let b = non_jacobi();
        let x = Vector::new(vec![int(1), int(2), int(0)]);
        let z = Vector::new(vec![int(0), int(-1), frac(1, 3)]);
        let lhs = b.jacobiator(&x, &x, &z).unwrap();
        assert_eq!(lhs, b.jacobiator(&x, &z, &x).unwrap());
        assert_eq!(lhs, b.jacobiator(&z, &x, &x).unwrap());
    }

    #[test]
    fn zero_map_is_lie() {
        assert!(BilinearMap::zero(4).is_lie_bracket().is_pass());
    }

    #[test]
    fn compatibility_basics() {
        let so3 = LieAlgebra::so3_cross();
        let b = so3.structure();
        assert!(are_compatible(b, b).unwrap().is_pass());
        assert!(are_compatible(b, &BilinearMap::zero(3)).unwrap().is_pass());
        match are_compatible(b, &non_jacobi()) {
            Err(Error::NotLieBracket { what, .. }) => assert_eq!(what, "second argument"),
            other => panic!("expected a precondition failure, got {other:?}"),
        }
    }

    #[test]
    fn antisymmetry_is_enforced() {
        let mut data = vec![Scalar::zero(); 8];
        data[2] = int(1);
        assert!(matches!(
            BilinearMap::from_tensor(2, data),
            Err(Error::NotAntisymmetric { i: 0, j: 1, k: 0 })
        ));
    }

    #[test]
    fn ad_columns() {
        let so3 = LieAlgebra::so3_cross();
        let ad = so3.ad(&e(3, 0)).unwrap();
        assert_eq!(ad.column(1), e(3, 2));
        assert_eq!(ad.column(2), -&e(3, 1));
    }

    fn small() -> impl Strategy<Value = Scalar> {
        (-5i64..6, 1i64..4).prop_map(|(n, d)| frac(n, d))
    }

    fn vec3() -> impl Strategy<Value = Vector> {
        proptest::collection::vec(small(), 3).prop_map(Vector::new)
    }

    /// Random antisymmetric map on a 3-dimensional space.
    fn map3() -> impl Strategy<Value = BilinearMap> {
        proptest::collection::vec(small(), 9).prop_map(|c| {
            let mut recs = Vec::new();
            for (p, (i, j)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
                for k in 0..3 {
                    recs.push((i, j, k, c[p * 3 + k].clone()));
                }
            }
            BilinearMap::from_records(3, recs).unwrap()
        })
    }

    proptest! {
        #[test]
        fn bracket_is_antisymmetric(b in map3(), x in vec3(), y in vec3()) {
            prop_assert_eq!(b.eval(&x, &y).unwrap(), -&b.eval(&y, &x).unwrap());
        }

        #[test]
        fn jacobiator_is_half_the_self_mixed_jacobiator(b in map3(), x in vec3(), y in vec3(), z in vec3()) {
            let mixed = mixed_jacobiator(&b, &b, &x, &y, &z);
            prop_assert_eq!(b.jacobiator(&x, &y, &z).unwrap().scale(&int(2)), mixed);
        }

        #[test]
        fn jacobiator_is_trilinear(b in map3(), x in vec3(), x2 in vec3(), y in vec3(), z in vec3()) {
            let lhs = b.jacobiator(&(&x + &x2), &y, &z).unwrap();
            let rhs = &b.jacobiator(&x, &y, &z).unwrap() + &b.jacobiator(&x2, &y, &z).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        /// Two routes to compatibility: mixed Jacobiator vs. Jacobi of the sum.
        #[test]
        fn compatible_iff_sum_is_lie(a in -2i64..3, b in -2i64..3, c in -2i64..3, d in -2i64..3) {
            // Lie brackets on a 3-dim space of the form [e0, v] = M v on span(e1, e2)
            // with [e1, e2] = 0 are always Lie; pairs of them are compatible.
            // Adding the so(3) bracket produces incompatible pairs in general.
            let m = BilinearMap::from_records(3, [
                (0, 1, 1, int(a)), (0, 1, 2, int(b)), (0, 2, 1, int(c)), (0, 2, 2, int(d)),
            ]).unwrap();
            let so3 = LieAlgebra::so3_cross();
            for other in [so3.structure().clone(), m.scale(&int(2))] {
                if m.is_lie_bracket().is_pass() && other.is_lie_bracket().is_pass() {
                    let route1 = are_compatible(&m, &other).unwrap().is_pass();
                    let route2 = m.add(&other).unwrap().is_lie_bracket().is_pass();
                    prop_assert_eq!(route1, route2);
                }
            }
        }
    }
}
