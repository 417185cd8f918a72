//! B-integers of alternate bases, the faithful coding of their gaps, and the
//! S-adic substitutions that generate it.

mod directive;
mod integers;
mod subst;

use thiserror::Error;

use crate::expansion::ExpansionError;
use crate::perron::PerronError;
use crate::synthesis::SynthesisError;
use crate::words::{Digit, WordsError};

pub use directive::{ar_to_eta, base_from_directive, ncf_to_eta, Directive, DirectiveBase};
pub use integers::{
    enumerate_b_integers, faithful_coding, gap_table, phi, BInteger, FaithfulCoding, GapTable,
};
pub use subst::{eta, l_morphism, r_morphism, sadic_limit, sigma_hat, Substitution, SubstitutionSeq};

/// Letters of coding words; gap classes are named by their first index.
pub type Letter = u32;

#[derive(Debug, Error, Clone)]
pub enum CodingError {
    #[error("η needs k ≥ 2, got {k}")]
    ArityTooSmall { k: usize },
    #[error("parameter {index} is zero")]
    ZeroParameter { index: usize },
    #[error("tuple {index} is not non-increasing with last entry ≥ 1")]
    NotMonotone { index: usize },
    #[error("tuple {index} has a different arity")]
    ArityMismatch { index: usize },
    #[error("empty directive")]
    EmptyDirective,
    #[error("d_{index} = {d} is below N = {n}")]
    DLessThanN { index: usize, d: Digit, n: Digit },
    #[error("S-adic limit stalls at {reached} letters, {length} requested")]
    NoLimit { length: usize, reached: usize },
    #[error("Δ_{n} and Δ_{other} neither separate nor coincide")]
    ClassingUndecidable { n: usize, other: usize },
    #[error("gap {index} matches no Δ value")]
    GapNotInTable { index: usize },
    #[error("the base carries no quasi-greedy expansions of 1")]
    MissingQuasiGreedy,
    #[error("undecidable: {0}")]
    Undecidable(String),
    #[error("cannot parse directive {0:?}")]
    Parse(String),
    #[error(transparent)]
    Words(#[from] WordsError),
    #[error(transparent)]
    Perron(#[from] PerronError),
    #[error(transparent)]
    Synthesis(#[from] SynthesisError),
    #[error(transparent)]
    Expansion(#[from] ExpansionError),
}
