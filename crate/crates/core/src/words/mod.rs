//! Digit words, ultimately periodic sequences, expansion lists, the
//! quasi-greedy transform and Parry-condition checking.

mod list;
mod parry;
mod quasi;
mod up;

use thiserror::Error;

pub use list::{DigitStream, Entry, ExpansionList, FnStream, Mode};
pub use parry::{DEFAULT_STREAM_DEPTH, check_parry, check_parry_depth, ParryReport, Violation};
pub use quasi::{quasi_greedy_transform, quasi_greedy_words};
pub use up::{canonicalize, UPWord};

pub type Digit = u32;

/// A finite digit word.
pub type Word = Vec<Digit>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordsError {
    #[error("period must be non-empty")]
    EmptyPeriod,
    #[error("cannot parse ultimately periodic word {0:?}")]
    Parse(String),
    #[error("expansion list needs p >= 1 entries")]
    EmptyList,
    #[error("entry {index} is not lexicographically greater than 10^ω")]
    NotAboveOneZero { index: usize },
    #[error("entry {index} has digit {digit} above the configured maximum {max}")]
    DigitTooLarge { index: usize, digit: Digit, max: Digit },
    #[error("entry {index} ends in 0^ω but was declared quasi-greedy, or the reverse")]
    ModeMismatch { index: usize },
    #[error("quasi-greedy recursion from entry {index} cycles through zero tails only")]
    AllZeroTail { index: usize },
    #[error("entry {index} is a lazy stream in greedy mode; its zero tail cannot be located")]
    StreamNotTransformable { index: usize },
    #[error("operation needs ultimately periodic entries; entry {index} is a stream")]
    NotUltimatelyPeriodic { index: usize },
}
