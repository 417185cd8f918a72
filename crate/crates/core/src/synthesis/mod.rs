//! Construction of the alternate base realizing prescribed expansions of 1,
//! with value-1 residuals, a-priori bounds and certification.

mod base;
mod bounds;
mod certify;
mod general;
mod periodic;

use thiserror::Error;

use crate::expansion::ExpansionError;
use crate::perron::PerronError;
use crate::words::WordsError;

pub use base::{AlternateBase, DEFAULT_BITS};
pub use bounds::{bounds, bounds_to_depth, BoundsCert};
pub use certify::{certify, Certificate, Classification, Uniqueness};
pub use general::{e_bound, synthesize_general, GeneralSynthesis};
pub use periodic::{synthesize_periodic, verify_value_one, PeriodicSynthesis, ValueOneReport};

#[derive(Debug, Error, Clone)]
pub enum SynthesisError {
    #[error("a base needs at least one element")]
    EmptyBase,
    #[error("β_{index} is not certified above 1")]
    NotAboveOne { index: usize },
    #[error("entry {index} has fewer than two non-zero digits")]
    NoSecondNonzero { index: usize },
    #[error("β_{index} escapes the a-priori bounds")]
    OutOfBounds { index: usize },
    #[error("tolerance not reached by depth {}; best width 2^{:?}", .0.depth, .0.width_log2)]
    DepthExhausted(Box<GeneralSynthesis>),
    #[error(transparent)]
    Words(#[from] WordsError),
    #[error(transparent)]
    Perron(#[from] PerronError),
    #[error(transparent)]
    Expansion(#[from] ExpansionError),
}
