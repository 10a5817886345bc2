//! Exact-arithmetic workbench for finite-dimensional Lie algebras equipped
//! with additional unary operators.
//!
//! The crate builds deformed brackets from an ambient bracket and a few
//! operators, and decides (with witnesses) whether the operators satisfy
//! the defining identities of ξϱ-, mYB-, bi-mYB-, Rϱ- and Θϱ-algebras.
//! All arithmetic is over the rationals, so every verdict is exact.

pub mod brackets;
pub mod canonical;
pub mod checks;
pub mod classify;
pub mod error;
pub mod family;
pub mod lie;
pub mod linear;
pub mod poly;
pub mod report;
pub mod sample;
pub mod scalar;
pub mod towers;

pub use error::{Error, Result};
pub use lie::{BilinearMap, LieAlgebra, Verdict, Witness};
pub use linear::{Matrix, Vector};
pub use report::{CheckReport, CheckRole, StructureKind};
pub use scalar::Scalar;
