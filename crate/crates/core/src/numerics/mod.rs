//! Exact and enclosure arithmetic: dyadic intervals, integer polynomials,
//! characteristic polynomials, real-root isolation, verified linear solves,
//! and exact arithmetic in real number fields `Q(λ)`.

pub mod algebraic;
pub mod charpoly;
pub mod dyadic;
pub mod interval;
pub mod linsolve;
pub mod poly;
pub mod real;
pub mod roots;

use thiserror::Error;

pub use algebraic::{AlgNum, NumberField};
pub use charpoly::{charpoly, IntMatrix};
pub use dyadic::{Dyadic, DyadicJson};
pub use interval::{Interval, IntervalJson};
pub use linsolve::linear_solve_enclosure;
pub use poly::{IntPoly, RatPoly};
pub use real::Real;
pub use roots::{alpha_root, perron_root, RootEnclosure};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericsError {
    #[error("division by an interval that contains zero")]
    DivisionByEnclosedZero,
    #[error("division by zero in an exact field")]
    ZeroDivision,
    #[error("no sign change on the isolating interval")]
    NoSignChange,
    #[error("polynomial has no positive real root")]
    NoPositiveRoot,
    #[error("linear system could not be verified after refinement")]
    SingularAfterRefinement,
    #[error("matrix is not square or dimensions disagree")]
    Dimension,
    #[error("comparison of approximate values is undecidable at the available precision")]
    Undecidable,
    #[error("values live in different number fields")]
    FieldMismatch,
}
