//! Membership checks for the operator-algebra classes.
//!
//! Every identity is bilinear and antisymmetric in `(x, y)`, so it holds
//! for all `x, y` iff it holds on basis pairs `i < j`. Each identity is
//! swept completely even after another one fails; the witness of a failure
//! is the lexicographically first failing tuple with its residual
//! `lhs - rhs`.

use crate::brackets::{bracket_r, bracket_rrho, bracket_theta, bracket_xvr, OperatorTriple};
use crate::error::{Error, Result};
use crate::lie::{are_compatible, BilinearMap, LieAlgebra, Verdict, Witness};
use crate::linear::{Matrix, Vector};
use crate::report::{first_failure, sweep_pairs, zero_matrix, CheckReport, StructureKind};
use crate::scalar::int;

/// First basis pair where two tensors differ; the residual is `a - b`.
fn tensor_equality(a: &BilinearMap, b: &BilinearMap) -> Verdict {
    let n = a.dim();
    sweep_pairs(n, |x, y| &a.apply(x, y) - &b.apply(x, y))
}

fn jacobi(b: &BilinearMap) -> Verdict {
    b.is_lie_bracket()
}

/// The ξϱ-algebra identities: `xi` is a derivation commuting with `rho` and
/// (I1)-(I3) hold for the bracket [`bracket_xvr`]. The reformulations
/// SFORM, TBRACKET, TSQUARE and XDER are informational sub-checks.
pub fn check_xvr(triple: &OperatorTriple) -> Result<CheckReport> {
    let l = triple.algebra();
    let n = l.dim();
    let (xi, rho, theta, s) = (triple.xi(), triple.rho(), triple.theta(), triple.s());
    let xi2 = xi * xi;
    let rho2 = rho * rho;
    let b = bracket_xvr(triple)?;
    let br = |x: &Vector, y: &Vector| l.bracket(x, y);
    let mut report = CheckReport::new(StructureKind::Xvr);

    report.push(
        "D",
        "xi[x,y] = [xi x,y] + [x,xi y]",
        sweep_pairs(n, |x, y| {
            &(xi * &br(x, y)) - &(&br(&(xi * x), y) + &br(x, &(xi * y)))
        }),
    );
    report.push(
        "C",
        "xi rho = rho xi",
        zero_matrix(&xi.commutator(rho)?, &[]),
    );
    report.push(
        "I1",
        "rho[x,y]_rho = [rho x,rho y]",
        sweep_pairs(n, |x, y| {
            &(rho * &b.apply(x, y)) - &br(&(rho * x), &(rho * y))
        }),
    );
    let i2 = sweep_pairs(n, |x, y| {
        &(xi * &b.apply(x, y)) - &(&br(&(rho * x), &(xi * y)) + &br(&(xi * x), &(rho * y)))
    });
    report.push(
        "I2",
        "xi[x,y]_rho = [rho x,xi y] + [xi x,rho y]",
        i2.clone(),
    );
    report.push(
        "I3",
        "xi^2[x,y]_rho = [rho^2 x,y] + [x,rho^2 y] - 2[rho x,rho y]",
        sweep_pairs(n, |x, y| {
            let rhs = &(&br(&(&rho2 * x), y) + &br(x, &(&rho2 * y)))
                - &br(&(rho * x), &(rho * y)).scale(&int(2));
            &(&xi2 * &b.apply(x, y)) - &rhs
        }),
    );

    report.push_info(
        "SFORM",
        "xi[xi x,xi y] = [Sx,y] + [x,Sy] - S[x,y], S = xi rho",
        sweep_pairs(n, |x, y| {
            let rhs = &(&br(&(s * x), y) + &br(x, &(s * y))) - &(s * &br(x, y));
            &(xi * &br(&(xi * x), &(xi * y))) - &rhs
        }),
    );
    let bt = bracket_theta(l, theta)?;
    report.push_info(
        "TBRACKET",
        "[x,y]_rho = [x,y]_Theta, Theta = 2 rho + xi^2",
        tensor_equality(&b, &bt),
    );
    report.push_info(
        "TSQUARE",
        "Theta[x,y]_Theta = [rho^2 x,y] + [x,rho^2 y]",
        sweep_pairs(n, |x, y| {
            &(theta * &bt.apply(x, y)) - &(&br(&(&rho2 * x), y) + &br(x, &(&rho2 * y)))
        }),
    );
    let r3 = sweep_pairs(n, |x, y| {
        &(xi * &b.apply(x, y)) - &(&b.apply(&(xi * x), y) + &b.apply(x, &(xi * y)))
    });
    report.push_info(
        "XDER",
        "xi[x,y]_rho = [xi x,y]_rho + [x,xi y]_rho",
        r3.clone(),
    );
    let agreement = match (&r3, &i2) {
        (Verdict::Pass, Verdict::Pass) | (Verdict::Fail(_), Verdict::Fail(_)) => Verdict::Pass,
        (Verdict::Fail(w), Verdict::Pass) | (Verdict::Pass, Verdict::Fail(w)) => {
            Verdict::Fail(w.clone())
        }
    };
    report.push_info("XDER~I2", "XDER and I2 agree", agreement);
    Ok(report)
}

fn myb_verdict(l: &LieAlgebra, r: &Matrix) -> Verdict {
    let r2 = r * r;
    sweep_pairs(l.dim(), |x, y| {
        let rx = r * x;
        let ry = r * y;
        let lhs = &(r * &l.bracket(&rx, y)) + &(r * &l.bracket(x, &ry));
        let rhs = &l.bracket(&rx, &ry) + &(&r2 * &l.bracket(x, y));
        &lhs - &rhs
    })
}

/// `R[Rx,y] + R[x,Ry] = [Rx,Ry] + R^2[x,y]`.
pub fn check_myb(algebra: &LieAlgebra, r: &Matrix) -> Result<CheckReport> {
    algebra.check_operator(r)?;
    let mut report = CheckReport::new(StructureKind::Myb);
    report.push(
        "mYB",
        "R[Rx,y] + R[x,Ry] = [Rx,Ry] + R^2[x,y]",
        myb_verdict(algebra, r),
    );
    Ok(report)
}

/// Commuting mYB pair with identical deformed brackets.
pub fn check_bi_myb(algebra: &LieAlgebra, r1: &Matrix, r2: &Matrix) -> Result<CheckReport> {
    algebra.check_operator(r1)?;
    algebra.check_operator(r2)?;
    let mut report = CheckReport::new(StructureKind::BiMyb);
    report.push("C", "R1 R2 = R2 R1", zero_matrix(&r1.commutator(r2)?, &[]));
    report.push("mYB(R1)", "R1 satisfies mYB", myb_verdict(algebra, r1));
    report.push("mYB(R2)", "R2 satisfies mYB", myb_verdict(algebra, r2));
    report.push(
        "B",
        "[x,y]_R1 = [x,y]_R2",
        tensor_equality(&bracket_r(algebra, r1)?, &bracket_r(algebra, r2)?),
    );
    Ok(report)
}

/// Even-tempered bi-mYB check. A pair that is not bi-mYB is refused with
/// [`Error::Precondition`] rather than reported as an identity failure.
pub fn check_even_tempered(algebra: &LieAlgebra, r1: &Matrix, r2: &Matrix) -> Result<CheckReport> {
    let pre = check_bi_myb(algebra, r1, r2)?;
    if !pre.passed() {
        return Err(Error::precondition(
            "the pair is not a Lie bi-mYB-algebra",
            pre,
        ));
    }
    let mut report = CheckReport::new(StructureKind::EvenTempered);
    report.absorb("", pre);
    let r12 = r1 * r2;
    let br = |x: &Vector, y: &Vector| algebra.bracket(x, y);
    let lhs = |x: &Vector, y: &Vector| {
        &(&br(&(r1 * x), &(r2 * y)) + &br(&(r2 * x), &(r1 * y))) - &(&r12 * &br(x, y))
    };
    for (id, r) in [("ET1", r1), ("ET2", r2)] {
        let sq = r * r;
        let v = sweep_pairs(algebra.dim(), |x, y| {
            let rhs = &(&br(&(&sq * x), y) + &br(x, &(&sq * y))) - &(&sq * &br(x, y));
            &lhs(x, y) - &rhs
        });
        let which = if id == "ET1" { "R1" } else { "R2" };
        report.push(
            id,
            format!(
                "[R1x,R2y] + [R2x,R1y] - R1R2[x,y] = [{which}^2 x,y] + [x,{which}^2 y] - {which}^2[x,y]"
            ),
            v,
        );
    }
    Ok(report)
}

/// The Rϱ-algebra identities, with regularity when `require_regular`.
/// Whether the ϱ-bracket satisfies Jacobi and whether `R`, `rho` commute
/// are reported as informational checks.
pub fn check_rrho(
    algebra: &LieAlgebra,
    r: &Matrix,
    rho: &Matrix,
    require_regular: bool,
) -> Result<CheckReport> {
    algebra.check_operator(r)?;
    algebra.check_operator(rho)?;
    let n = algebra.dim();
    let br = |x: &Vector, y: &Vector| algebra.bracket(x, y);
    let b = bracket_rrho(algebra, r, rho)?;
    let b_r = bracket_r(algebra, r)?;
    let kind = if require_regular {
        StructureKind::RrhoRegular
    } else {
        StructureKind::Rrho
    };
    let mut report = CheckReport::new(kind);
    report.push(
        "I1",
        "rho[x,y]_rho = [rho x,rho y]",
        sweep_pairs(n, |x, y| {
            &(rho * &b.apply(x, y)) - &br(&(rho * x), &(rho * y))
        }),
    );
    report.push(
        "I2",
        "R[x,y]_rho + rho[x,y]_R = [Rx,rho y] + [rho x,Ry]",
        sweep_pairs(n, |x, y| {
            let lhs = &(r * &b.apply(x, y)) + &(rho * &b_r.apply(x, y));
            &lhs - &(&br(&(r * x), &(rho * y)) + &br(&(rho * x), &(r * y)))
        }),
    );
    if require_regular {
        report.push(
            "REG",
            "R[x,y]_R = 2([rho x,y] + [x,rho y])",
            sweep_pairs(n, |x, y| {
                let rhs = (&br(&(rho * x), y) + &br(x, &(rho * y))).scale(&int(2));
                &(r * &b_r.apply(x, y)) - &rhs
            }),
        );
    }
    report.push_info("LIE", "[.,.]_rho satisfies Jacobi", jacobi(&b));
    report.push_info(
        "COMM",
        "R rho = rho R",
        zero_matrix(&r.commutator(rho)?, &[]),
    );
    Ok(report)
}

/// The Θϱ-algebra identities (commutation first), plus the special
/// identity when `require_special`.
pub fn check_theta_rho(
    algebra: &LieAlgebra,
    theta: &Matrix,
    rho: &Matrix,
    require_special: bool,
) -> Result<CheckReport> {
    algebra.check_operator(theta)?;
    algebra.check_operator(rho)?;
    let n = algebra.dim();
    let br = |x: &Vector, y: &Vector| algebra.bracket(x, y);
    let bt = bracket_theta(algebra, theta)?;
    let rho2 = rho * rho;
    let kind = if require_special {
        StructureKind::ThetaRhoSpecial
    } else {
        StructureKind::ThetaRho
    };
    let mut report = CheckReport::new(kind);
    report.push(
        "C",
        "Theta rho = rho Theta",
        zero_matrix(&theta.commutator(rho)?, &[]),
    );
    report.push(
        "T1",
        "rho[x,y]_Theta = [rho x,rho y]",
        sweep_pairs(n, |x, y| {
            &(rho * &bt.apply(x, y)) - &br(&(rho * x), &(rho * y))
        }),
    );
    report.push(
        "T2",
        "Theta[x,y]_Theta = [rho^2 x,y] + [x,rho^2 y]",
        sweep_pairs(n, |x, y| {
            &(theta * &bt.apply(x, y)) - &(&br(&(&rho2 * x), y) + &br(x, &(&rho2 * y)))
        }),
    );
    report.push(
        "T3",
        "[Theta x,rho y] + [rho x,Theta y] = rho[rho x,y] + rho[x,rho y] + [x,rho y]_Theta + [rho x,y]_Theta",
        sweep_pairs(n, |x, y| {
            let (rx, ry) = (rho * x, rho * y);
            let lhs = &br(&(theta * x), &ry) + &br(&rx, &(theta * y));
            let rhs = &(&(rho * &br(&rx, y)) + &(rho * &br(x, &ry)))
                + &(&bt.apply(x, &ry) + &bt.apply(&rx, y));
            &lhs - &rhs
        }),
    );
    report.push(
        "T4",
        "[rho x,rho y]_Theta = rho([Theta x,Theta y] - [rho^2 x,y] - [x,rho^2 y] - rho^2[x,y])",
        sweep_pairs(n, |x, y| {
            let inner = &(&br(&(theta * x), &(theta * y)) - &br(&(&rho2 * x), y))
                - &(&br(x, &(&rho2 * y)) + &(&rho2 * &br(x, y)));
            &bt.apply(&(rho * x), &(rho * y)) - &(rho * &inner)
        }),
    );
    if require_special {
        let mut verdicts = Vec::with_capacity(n);
        for m in 0..n {
            let x = algebra.basis(m);
            let ad_x = algebra.ad(&x)?;
            let lhs = &(&ad_x.commutator(theta)? - &algebra.ad(&(theta * &x))?) * rho;
            let rhs = (rho * &algebra.ad(&(rho * &x))?).scale(&int(2));
            verdicts.push(zero_matrix(&(&lhs + &rhs), &[m]));
        }
        report.push(
            "SP",
            "([ad x,Theta] - ad Theta x) rho + 2 rho ad(rho x) = 0",
            first_failure(verdicts),
        );
    }
    report.push_info("LIE", "[.,.]_Theta satisfies Jacobi", jacobi(&bt));
    Ok(report)
}

fn lie_verdict(b: &BilinearMap) -> Verdict {
    b.is_lie_bracket()
}

/// The deformed bracket of a ξϱ-algebra is Lie and compatible with the
/// ambient bracket; sample pencils are checked directly as well.
pub fn pencil_suite(triple: &OperatorTriple) -> Result<CheckReport> {
    let pre = check_xvr(triple)?;
    if !pre.passed() {
        return Err(Error::precondition(
            "the triple is not a Lie ξϱ-algebra",
            pre,
        ));
    }
    let amb = triple.algebra().structure();
    let b = bracket_xvr(triple)?;
    let mut report = CheckReport::new(StructureKind::Pencil);
    report.push("LIE", "[.,.]_rho satisfies Jacobi", lie_verdict(&b));
    let compat = match are_compatible(amb, &b) {
        Ok(v) => v,
        Err(Error::NotLieBracket { witness, .. }) => Verdict::Fail(witness),
        Err(e) => return Err(e),
    };
    report.push("COMPAT", "[.,.] and [.,.]_rho are compatible", compat);
    for (lam, mu) in [(1, 1), (2, -3)] {
        let pencil = amb.linear_combination(&int(lam), &b, &int(mu))?;
        report.push(
            format!("PENCIL({lam},{mu})"),
            format!("{lam}[.,.] + ({mu})[.,.]_rho satisfies Jacobi"),
            lie_verdict(&pencil),
        );
    }
    Ok(report)
}

/// Shorthand used by tests and sweeps: a failing witness or `None`.
pub fn witness_of<'a>(report: &'a CheckReport, id: &str) -> Option<&'a Witness> {
    report.check(id).and_then(|c| c.verdict.witness())
}
