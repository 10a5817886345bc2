//! Operator recursions generating new structures from a seed, with every
//! level verified exactly. A failing level does not stop the tower.

use crate::brackets::OperatorTriple;
use crate::checks::{check_rrho, check_theta_rho, check_xvr};
use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linear::Matrix;
use crate::report::CheckReport;
use crate::scalar::int;
use std::sync::Arc;

pub const MAX_DEPTH: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TowerFamily {
    /// `R_{n+1} = R R_n - rho R_{n-1}`, levels `(R_n, rho^n)`.
    Rrho,
    /// `R_n` and `xi_n` driven by `Theta`, levels `(R_n, rho^{2n})` and
    /// `(xi_n, rho^{2n+1})`.
    Xvr,
    /// `Theta_{n+1} = Theta Theta_n - rho^2 Theta_{n-1}`, levels
    /// `(Theta_n, rho^{2n})`.
    Theta,
}

impl TowerFamily {
    pub fn as_str(&self) -> &'static str {
        match self {
            TowerFamily::Rrho => "rrho",
            TowerFamily::Xvr => "xvr",
            TowerFamily::Theta => "theta",
        }
    }
}

/// Which `Theta` drives the ξϱ tower.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaVariant {
    /// `Theta = 2 rho + xi^2`
    TwoRhoPlusXi2,
    /// `Theta = rho + xi^2`
    RhoPlusXi2,
}

impl ThetaVariant {
    pub fn as_str(&self) -> &'static str {
        match self {
            ThetaVariant::TwoRhoPlusXi2 => "2rho+xi2",
            ThetaVariant::RhoPlusXi2 => "rho+xi2",
        }
    }

    pub fn theta(&self, xi: &Matrix, rho: &Matrix) -> Matrix {
        let xi2 = xi * xi;
        match self {
            ThetaVariant::TwoRhoPlusXi2 => &rho.scale(&int(2)) + &xi2,
            ThetaVariant::RhoPlusXi2 => rho + &xi2,
        }
    }
}

impl std::str::FromStr for ThetaVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "2rho+xi2" => Ok(ThetaVariant::TwoRhoPlusXi2),
            "rho+xi2" => Ok(ThetaVariant::RhoPlusXi2),
            _ => Err(Error::InvalidInput(format!(
                "unknown theta variant {s:?} (expected 2rho+xi2 or rho+xi2)"
            ))),
        }
    }
}

/// Initial conditions and signs of the recursions.
///
/// `Printed` follows the recursions exactly as stated: `R_0 = Theta_0 = 1`,
/// `xi_{n+1} = Theta xi_n + rho^2 xi_{n-1}` and Θ levels paired with
/// `rho^{2n}`. `Lucas` uses the power-sum normalization under which every
/// level of the matrix examples is again an example of the same kind:
/// `R_0 = Theta_0 = 2`, `xi_{n+1} = Theta xi_n - rho^2 xi_{n-1}`, and Θ
/// levels paired with `rho^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TowerConvention {
    #[default]
    Printed,
    Lucas,
}

impl TowerConvention {
    pub fn as_str(&self) -> &'static str {
        match self {
            TowerConvention::Printed => "printed",
            TowerConvention::Lucas => "lucas",
        }
    }

    fn unit(&self, n: usize) -> Matrix {
        match self {
            TowerConvention::Printed => Matrix::identity(n),
            TowerConvention::Lucas => Matrix::scalar(n, int(2)),
        }
    }
}

impl std::str::FromStr for TowerConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "printed" => Ok(TowerConvention::Printed),
            "lucas" => Ok(TowerConvention::Lucas),
            _ => Err(Error::InvalidInput(format!(
                "unknown tower convention {s:?} (expected printed or lucas)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerLevel {
    pub n: usize,
    pub operators: Vec<(String, Matrix)>,
    pub reports: Vec<CheckReport>,
}

impl TowerLevel {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(CheckReport::passed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerReport {
    pub family: TowerFamily,
    pub depth: usize,
    pub theta_variant: Option<ThetaVariant>,
    pub convention: TowerConvention,
    pub levels: Vec<TowerLevel>,
}

impl TowerReport {
    pub fn passed(&self) -> bool {
        self.levels.iter().all(TowerLevel::passed)
    }

    /// Verdict over the levels `n >= from`.
    pub fn passed_from(&self, from: usize) -> bool {
        self.levels
            .iter()
            .filter(|l| l.n >= from)
            .all(TowerLevel::passed)
    }

    pub fn failing_levels(&self) -> Vec<usize> {
        self.levels
            .iter()
            .filter(|l| !l.passed())
            .map(|l| l.n)
            .collect()
    }
}

fn check_depth(depth: usize) -> Result<()> {
    if depth > MAX_DEPTH {
        return Err(Error::SizeCap {
            what: "tower depth",
            size: depth,
            cap: MAX_DEPTH,
        });
    }
    Ok(())
}

/// `T_0 = t0`, `T_1 = t1`, `T_{n+1} = a T_n + sign * b T_{n-1}`.
fn three_term(
    t0: Matrix,
    t1: Matrix,
    a: &Matrix,
    b: &Matrix,
    sign: i64,
    depth: usize,
) -> Vec<Matrix> {
    let mut seq = vec![t0, t1];
    while seq.len() <= depth {
        let k = seq.len();
        let next = &(a * &seq[k - 1]) + &(b * &seq[k - 2]).scale(&int(sign));
        seq.push(next);
    }
    seq.truncate(depth + 1);
    seq
}

fn powers(m: &Matrix, count: usize) -> Vec<Matrix> {
    let mut out = Vec::with_capacity(count);
    let mut acc = Matrix::identity(m.dim());
    for _ in 0..count {
        out.push(acc.clone());
        acc = &acc * m;
    }
    out
}

/// Regular Rϱ tower. The seed must be a regular Rϱ-algebra with commuting
/// `R` and `rho`.
pub fn rrho_tower(
    algebra: &LieAlgebra,
    r: &Matrix,
    rho: &Matrix,
    depth: usize,
) -> Result<TowerReport> {
    rrho_tower_with(algebra, r, rho, depth, TowerConvention::Printed)
}

pub fn rrho_tower_with(
    algebra: &LieAlgebra,
    r: &Matrix,
    rho: &Matrix,
    depth: usize,
    convention: TowerConvention,
) -> Result<TowerReport> {
    check_depth(depth)?;
    let seed = check_rrho(algebra, r, rho, true)?;
    if !seed.passed() {
        return Err(Error::precondition(
            "the seed is not a regular Lie Rϱ-algebra",
            seed,
        ));
    }
    if !r.commutes_with(rho)? {
        return Err(Error::precondition("R and rho do not commute", seed));
    }
    let rs = three_term(convention.unit(algebra.dim()), r.clone(), r, rho, -1, depth);
    let rho_pows = powers(rho, depth + 1);
    let levels = (0..=depth)
        .map(|n| {
            Ok(TowerLevel {
                n,
                operators: vec![
                    (format!("R_{n}"), rs[n].clone()),
                    (format!("rho^{n}"), rho_pows[n].clone()),
                ],
                reports: vec![check_rrho(algebra, &rs[n], &rho_pows[n], true)?],
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TowerReport {
        family: TowerFamily::Rrho,
        depth,
        theta_variant: None,
        convention,
        levels,
    })
}

/// The two sequences generated from a ξϱ-algebra. Level `n` carries the
/// regular Rϱ check of `(R_n, rho^{2n})` and the ξϱ check of
/// `(xi_n, rho^{2n+1})`.
pub fn xvr_tower(
    algebra: &Arc<LieAlgebra>,
    xi: &Matrix,
    rho: &Matrix,
    depth: usize,
    variant: ThetaVariant,
) -> Result<TowerReport> {
    xvr_tower_with(algebra, xi, rho, depth, variant, TowerConvention::Printed)
}

pub fn xvr_tower_with(
    algebra: &Arc<LieAlgebra>,
    xi: &Matrix,
    rho: &Matrix,
    depth: usize,
    variant: ThetaVariant,
    convention: TowerConvention,
) -> Result<TowerReport> {
    check_depth(depth)?;
    let seed = check_xvr(&OperatorTriple::new(
        algebra.clone(),
        xi.clone(),
        rho.clone(),
    )?)?;
    if !seed.passed() {
        return Err(Error::precondition(
            "the seed is not a Lie ξϱ-algebra",
            seed,
        ));
    }
    let theta = variant.theta(xi, rho);
    let rho2 = rho * rho;
    let rs = three_term(
        convention.unit(algebra.dim()),
        theta.clone(),
        &theta,
        &rho2,
        -1,
        depth,
    );
    let xi1 = &(&theta + rho) * xi;
    let xi_sign = match convention {
        TowerConvention::Printed => 1,
        TowerConvention::Lucas => -1,
    };
    let xis = three_term(xi.clone(), xi1, &theta, &rho2, xi_sign, depth);
    let rho_pows = powers(rho, 2 * depth + 2);
    let mut levels = Vec::with_capacity(depth + 1);
    for n in 0..=depth {
        let even = &rho_pows[2 * n];
        let odd = &rho_pows[2 * n + 1];
        let triple = OperatorTriple::new(algebra.clone(), xis[n].clone(), odd.clone())?;
        levels.push(TowerLevel {
            n,
            operators: vec![
                (format!("R_{n}"), rs[n].clone()),
                (format!("rho^{}", 2 * n), even.clone()),
                (format!("xi_{n}"), xis[n].clone()),
                (format!("rho^{}", 2 * n + 1), odd.clone()),
            ],
            reports: vec![
                check_rrho(algebra, &rs[n], even, true)?,
                check_xvr(&triple)?,
            ],
        });
    }
    Ok(TowerReport {
        family: TowerFamily::Xvr,
        depth,
        theta_variant: Some(variant),
        convention,
        levels,
    })
}

/// Θϱ tower from a Θϱ-algebra seed.
pub fn theta_tower(
    algebra: &LieAlgebra,
    theta: &Matrix,
    rho: &Matrix,
    depth: usize,
) -> Result<TowerReport> {
    theta_tower_with(algebra, theta, rho, depth, TowerConvention::Printed)
}

pub fn theta_tower_with(
    algebra: &LieAlgebra,
    theta: &Matrix,
    rho: &Matrix,
    depth: usize,
    convention: TowerConvention,
) -> Result<TowerReport> {
    check_depth(depth)?;
    let seed = check_theta_rho(algebra, theta, rho, false)?;
    if !seed.passed() {
        return Err(Error::precondition(
            "the seed is not a Lie Θϱ-algebra",
            seed,
        ));
    }
    let rho2 = rho * rho;
    let thetas = three_term(
        convention.unit(algebra.dim()),
        theta.clone(),
        theta,
        &rho2,
        -1,
        depth,
    );
    let (step, exp) = match convention {
        TowerConvention::Printed => (rho2, 2),
        TowerConvention::Lucas => (rho.clone(), 1),
    };
    let rho_pows = powers(&step, depth + 1);
    let levels = (0..=depth)
        .map(|n| {
            Ok(TowerLevel {
                n,
                operators: vec![
                    (format!("Theta_{n}"), thetas[n].clone()),
                    (format!("rho^{}", exp * n), rho_pows[n].clone()),
                ],
                reports: vec![check_theta_rho(algebra, &thetas[n], &rho_pows[n], false)?],
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TowerReport {
        family: TowerFamily::Theta,
        depth,
        theta_variant: None,
        convention,
        levels,
    })
}

/// `Theta = 2 rho + xi^2` from a ξϱ-algebra, with its Θϱ verdict.
pub fn xvr_to_theta(
    algebra: &Arc<LieAlgebra>,
    xi: &Matrix,
    rho: &Matrix,
) -> Result<(Matrix, CheckReport)> {
    let seed = check_xvr(&OperatorTriple::new(
        algebra.clone(),
        xi.clone(),
        rho.clone(),
    )?)?;
    if !seed.passed() {
        return Err(Error::precondition(
            "the input is not a Lie ξϱ-algebra",
            seed,
        ));
    }
    let theta = ThetaVariant::TwoRhoPlusXi2.theta(xi, rho);
    let report = check_theta_rho(algebra, &theta, rho, false)?;
    Ok((theta, report))
}

/// `Theta = R^2 - 2 rho` from a regular Rϱ-algebra with commuting
/// operators, with its Θϱ verdict.
pub fn rrho_to_theta(
    algebra: &LieAlgebra,
    r: &Matrix,
    rho: &Matrix,
) -> Result<(Matrix, CheckReport)> {
    let seed = check_rrho(algebra, r, rho, true)?;
    if !seed.passed() {
        return Err(Error::precondition(
            "the input is not a regular Lie Rϱ-algebra",
            seed,
        ));
    }
    if !r.commutes_with(rho)? {
        return Err(Error::precondition("R and rho do not commute", seed));
    }
    let theta = &(r * r) - &rho.scale(&int(2));
    let report = check_theta_rho(algebra, &theta, rho, false)?;
    Ok((theta, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::{assoc_theta_example, gl_example, so_example};
    use crate::scalar::frac;

    fn so3() -> Arc<LieAlgebra> {
        Arc::new(LieAlgebra::so3_cross())
    }

    #[test]
    fn zero_seed_rrho_tower() {
        let l = so3();
        let z = Matrix::zeros(3);
        let t = rrho_tower(&l, &z, &z, 3).unwrap();
        assert_eq!(t.levels.len(), 4);
        assert_eq!(t.levels[0].operators[0].1, Matrix::identity(3));
        for lvl in &t.levels[2..] {
            assert!(lvl.operators[0].1.is_zero());
        }
        assert!(t.passed_from(1));
    }

    /// Level 0 is (R_0, rho^0) = (1, 1): the Rϱ identities reduce to
    /// tautologies but regularity reads [x,y] = 4[x,y].
    #[test]
    fn level_zero_is_not_regular() {
        let l = so3();
        let z = Matrix::zeros(3);
        let t = rrho_tower(&l, &z, &z, 0).unwrap();
        assert_eq!(t.levels.len(), 1);
        let r = &t.levels[0].reports[0];
        assert_eq!(r.failed_ids(), vec!["REG"]);
        assert!(!t.passed());
    }

    #[test]
    fn theta_tower_scalar_recursion() {
        // t_{n+1} = 2 t_n - t_{n-1}, t_0 = 1, t_1 = 2  =>  Theta_n = (n+1) * 1.
        let l = so3();
        let t = theta_tower(&l, &Matrix::scalar(3, int(2)), &Matrix::identity(3), 4).unwrap();
        for lvl in &t.levels {
            assert_eq!(lvl.operators[0].1, Matrix::scalar(3, int(lvl.n as i64 + 1)));
        }
    }

    #[test]
    fn theta_tower_zero_seed() {
        let l = so3();
        let z = Matrix::zeros(3);
        let t = theta_tower(&l, &z, &z, 3).unwrap();
        for lvl in &t.levels[2..] {
            assert!(lvl.operators[0].1.is_zero());
        }
    }

    #[test]
    fn hypothesis_failures_are_refusals() {
        let l = so3();
        let xi = l.ad(&l.basis(0)).unwrap();
        assert!(matches!(
            xvr_tower(
                &l,
                &xi,
                &Matrix::identity(3),
                2,
                ThetaVariant::TwoRhoPlusXi2
            ),
            Err(Error::Precondition { .. })
        ));
        assert!(matches!(
            theta_tower(&l, &Matrix::zeros(3), &Matrix::identity(3), 2),
            Err(Error::Precondition { .. })
        ));
        assert!(matches!(
            rrho_tower(&l, &Matrix::identity(3), &Matrix::zeros(3), 2),
            Err(Error::Precondition { .. })
        ));
        assert!(matches!(
            rrho_tower(&l, &Matrix::zeros(3), &Matrix::zeros(3), MAX_DEPTH + 1),
            Err(Error::SizeCap { .. })
        ));
    }

    #[test]
    fn trivial_xvr_tower() {
        let l = so3();
        for v in [ThetaVariant::TwoRhoPlusXi2, ThetaVariant::RhoPlusXi2] {
            let t = xvr_tower(&l, &Matrix::zeros(3), &Matrix::identity(3), 3, v).unwrap();
            for lvl in &t.levels {
                assert!(lvl.operators[2].1.is_zero());
                assert!(lvl.reports[1].passed());
            }
        }
    }

    /// Cached recursion versus recomputation from scratch for each index.
    #[test]
    fn recursion_matches_recomputation() {
        let q = Matrix::from_rows(vec![vec![int(1), frac(1, 2)], vec![int(0), int(-1)]]).unwrap();
        let (_, t) = gl_example(2, &q).unwrap();
        let theta = t.theta().clone();
        let rho2 = t.rho() * t.rho();
        let cached = three_term(Matrix::identity(4), theta.clone(), &theta, &rho2, -1, 6);
        for n in 0..=6 {
            let (mut prev, mut cur) = (Matrix::identity(4), theta.clone());
            if n == 0 {
                assert_eq!(cached[0], prev);
                continue;
            }
            for _ in 1..n {
                let next = &(&theta * &cur) - &(&rho2 * &prev);
                prev = cur;
                cur = next;
            }
            assert_eq!(cached[n], cur, "level {n}");
            assert!(cached[n].commutes_with(t.rho()).unwrap());
        }
    }

    #[test]
    fn xvr_to_theta_examples() {
        let l = so3();
        let (th, r) = xvr_to_theta(&l, &Matrix::zeros(3), &Matrix::identity(3)).unwrap();
        assert_eq!(th, Matrix::scalar(3, int(2)));
        assert!(r.passed());

        let q = Matrix::unit(2, 0, 0);
        let (l, t) = gl_example(2, &q).unwrap();
        let (th, r) = xvr_to_theta(&l, t.xi(), t.rho()).unwrap();
        let (_, th3, _) = assoc_theta_example(2, &q).unwrap();
        assert_eq!(th, th3);
        assert!(r.passed());

        let f12 = &Matrix::unit(3, 0, 1) - &Matrix::unit(3, 1, 0);
        let (l, t) = so_example(3, &f12).unwrap();
        assert!(xvr_to_theta(&l, t.xi(), t.rho()).unwrap().1.passed());
    }

    #[test]
    fn rrho_to_theta_examples() {
        let l = so3();
        let z = Matrix::zeros(3);
        let (th, r) = rrho_to_theta(&l, &z, &z).unwrap();
        assert!(th.is_zero());
        assert!(r.passed());
        // R = 1, rho = 0 is not regular: R[x,y]_R = [x,y] while the right side is 0.
        assert!(matches!(
            rrho_to_theta(&l, &Matrix::identity(3), &z),
            Err(Error::Precondition { .. })
        ));
    }

    #[test]
    fn lucas_convention_keeps_every_level() {
        let q = Matrix::from_rows(vec![vec![int(1), int(2)], vec![int(-1), int(3)]]).unwrap();
        let (l, t) = gl_example(2, &q).unwrap();
        let c = TowerConvention::Lucas;
        let x = xvr_tower_with(&l, t.xi(), t.rho(), 3, ThetaVariant::TwoRhoPlusXi2, c).unwrap();
        assert!(x.passed());
        let printed = xvr_tower(&l, t.xi(), t.rho(), 3, ThetaVariant::TwoRhoPlusXi2).unwrap();
        assert!(!printed.passed());
        let (l3, th, rho) = assoc_theta_example(2, &q).unwrap();
        assert!(theta_tower_with(&l3, &th, &rho, 3, c).unwrap().passed());
        let r = ThetaVariant::TwoRhoPlusXi2.theta(t.xi(), t.rho());
        assert!(rrho_tower_with(&l, &r, &(t.rho() * t.rho()), 4, c)
            .unwrap()
            .passed());
    }
}
