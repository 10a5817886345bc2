//! Witness-bearing verdicts for identity systems.

use crate::lie::{Verdict, Witness};
use crate::linear::{Matrix, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StructureKind {
    Xvr,
    Myb,
    BiMyb,
    EvenTempered,
    Rrho,
    RrhoRegular,
    ThetaRho,
    ThetaRhoSpecial,
    Pencil,
    QuadraticLaw,
    XvrStructure,
    IPair,
}

impl StructureKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            StructureKind::Xvr => "xvr",
            StructureKind::Myb => "myb",
            StructureKind::BiMyb => "bi_myb",
            StructureKind::EvenTempered => "even_tempered",
            StructureKind::Rrho => "rrho",
            StructureKind::RrhoRegular => "rrho_regular",
            StructureKind::ThetaRho => "theta_rho",
            StructureKind::ThetaRhoSpecial => "theta_rho_special",
            StructureKind::Pencil => "pencil",
            StructureKind::QuadraticLaw => "quadratic_law",
            StructureKind::XvrStructure => "xvr_structure",
            StructureKind::IPair => "ipair",
        }
    }
}

/// Gating checks decide the overall verdict; informational ones are
/// reported alongside (consequences, cross-checks, findings).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckRole {
    Gating,
    Informational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub id: String,
    pub statement: String,
    pub role: CheckRole,
    pub verdict: Verdict,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.verdict.is_pass()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub kind: StructureKind,
    pub checks: Vec<IdentityCheck>,
}

impl CheckReport {
    pub fn new(kind: StructureKind) -> Self {
        CheckReport {
            kind,
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, id: impl Into<String>, statement: impl Into<String>, verdict: Verdict) {
        self.push_with_role(id, statement, CheckRole::Gating, verdict);
    }

    pub fn push_info(
        &mut self,
        id: impl Into<String>,
        statement: impl Into<String>,
        verdict: Verdict,
    ) {
        self.push_with_role(id, statement, CheckRole::Informational, verdict);
    }

    pub fn push_with_role(
        &mut self,
        id: impl Into<String>,
        statement: impl Into<String>,
        role: CheckRole,
        verdict: Verdict,
    ) {
        if let Verdict::Fail(w) = &verdict {
            debug_assert!(!w.residual.is_zero(), "witness residual must be nonzero");
        }
        self.checks.push(IdentityCheck {
            id: id.into(),
            statement: statement.into(),
            role,
            verdict,
        });
    }

    /// Appends the checks of `other`, prefixing their ids.
    pub fn absorb(&mut self, prefix: &str, other: CheckReport) {
        for mut c in other.checks {
            c.id = format!("{prefix}{}", c.id);
            self.checks.push(c);
        }
    }

    /// Overall verdict: every gating check passes.
    pub fn passed(&self) -> bool {
        self.checks
            .iter()
            .filter(|c| c.role == CheckRole::Gating)
            .all(IdentityCheck::passed)
    }

    /// Every check, informational ones included, passes.
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(IdentityCheck::passed)
    }

    pub fn check(&self, id: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn failed_ids(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.passed())
            .map(|c| c.id.as_str())
            .collect()
    }

    pub fn first_gating_failure(&self) -> Option<&IdentityCheck> {
        self.checks
            .iter()
            .find(|c| c.role == CheckRole::Gating && !c.passed())
    }
}

/// Evaluates `residual(e_i, e_j)` for basis pairs `i < j` in lexicographic
/// order; the first nonzero residual becomes the witness.
pub(crate) fn sweep_pairs(n: usize, residual: impl Fn(&Vector, &Vector) -> Vector) -> Verdict {
    let basis: Vec<Vector> = (0..n).map(|i| Vector::basis(n, i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            let r = residual(&basis[i], &basis[j]);
            if !r.is_zero() {
                return Verdict::Fail(Witness {
                    indices: vec![i, j],
                    residual: r,
                });
            }
        }
    }
    Verdict::Pass
}

/// Verdict for the matrix equation `m = 0`: the witness is the first
/// column with a nonzero entry, appended to `prefix`.
pub(crate) fn zero_matrix(m: &Matrix, prefix: &[usize]) -> Verdict {
    for l in 0..m.dim() {
        let col = m.column(l);
        if !col.is_zero() {
            let mut indices = prefix.to_vec();
            indices.push(l);
            return Verdict::Fail(Witness {
                indices,
                residual: col,
            });
        }
    }
    Verdict::Pass
}

/// Combines verdicts from a sweep, keeping the first failure.
pub(crate) fn first_failure(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
    verdicts
        .into_iter()
        .find(|v| !v.is_pass())
        .unwrap_or(Verdict::Pass)
}
