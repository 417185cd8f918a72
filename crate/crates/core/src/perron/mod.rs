//! Periodic products of companion-like matrices and their Perron data.

mod fixed_point;
mod identities;
mod matrix;

use thiserror::Error;

use crate::numerics::NumericsError;

pub use fixed_point::{periodic_fixed_point, quadratic_enclosure, ExactFixedPoint, FixedPoint, RouteEnclosures};
pub use identities::{check_identities, recurrence_holds, IdentityCheck, IdentityKind, IdentityReport};
pub use matrix::{build_finite_matrices, build_parry_matrices, first_row_digits, Alignment, MatrixSeq, Shape};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PerronError {
    #[error("malformed matrix sequence: {0}")]
    Shape(String),
    #[error("entry {index} has leading digit 0")]
    ZeroLeadDigit { index: usize },
    #[error("entry {index} ends in 0^ω; apply the quasi-greedy transform first")]
    ZeroTail { index: usize },
    #[error("no period product is primitive")]
    NotPrimitive,
    #[error("Perron eigenvector has a vanishing first entry")]
    DegenerateEigenvector,
    #[error("exact and enclosure routes disagree: {0}")]
    RouteMismatch(String),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}
