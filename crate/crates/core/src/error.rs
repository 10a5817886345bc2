use thiserror::Error;

use crate::lie::Witness;
use crate::report::CheckReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid rational literal {0:?}")]
    InvalidLiteral(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{0}")]
    InvalidInput(String),

    #[error("size {size} exceeds the cap of {cap} for {what}")]
    SizeCap {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("bilinear map is not antisymmetric at ({i}, {j}, {k})")]
    NotAntisymmetric { i: usize, j: usize, k: usize },

    #[error("polarization tensor is not symmetric at ({i}, {j}, {k}, {l})")]
    AsymmetricPolarization {
        i: usize,
        j: usize,
        k: usize,
        l: usize,
    },

    /// A bracket that must be Lie violates the Jacobi identity.
    #[error("{what} is not a Lie bracket: Jacobi fails at {witness}")]
    NotLieBracket { what: String, witness: Witness },

    /// The input does not satisfy the hypothesis of the requested operation.
    /// The failing report is attached so callers can show the witness.
    #[error("precondition failed: {what}")]
    Precondition {
        what: String,
        report: Box<CheckReport>,
    },
}

impl Error {
    pub(crate) fn dims(expected: usize, found: usize) -> Self {
        Error::DimensionMismatch { expected, found }
    }

    pub(crate) fn precondition(what: impl Into<String>, report: CheckReport) -> Self {
        Error::Precondition {
            what: what.into(),
            report: Box::new(report),
        }
    }
}
