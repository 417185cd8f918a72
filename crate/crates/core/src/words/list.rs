use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Digit, UPWord, Word, WordsError};

/// A lazily supplied one-sided digit sequence; `digit(n)` is `a_n`, `n ≥ 1`.
pub trait DigitStream: Send + Sync {
    fn digit(&self, n: usize) -> Digit;
}

/// Adapts a closure `n ↦ a_n` into a [`DigitStream`].
pub struct FnStream<F>(pub F);

impl<F: Fn(usize) -> Digit + Send + Sync> DigitStream for FnStream<F> {
    fn digit(&self, n: usize) -> Digit {
        (self.0)(n)
    }
}

impl DigitStream for UPWord {
    fn digit(&self, n: usize) -> Digit {
        UPWord::digit(self, n)
    }
}

/// Whether an entry is meant as a greedy expansion of 1 (ending in `0^ω`)
/// or a quasi-greedy one (not ending in `0^ω`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Greedy,
    QuasiGreedy,
}

#[derive(Clone)]
pub enum Entry {
    Up(UPWord),
    Stream(Arc<dyn DigitStream>),
}

impl fmt::Debug for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Up(w) => write!(f, "Up({w})"),
            Entry::Stream(s) => {
                write!(f, "Stream(")?;
                for n in 1..=8 {
                    write!(f, "{}", s.digit(n))?;
                }
                write!(f, "…)")
            }
        }
    }
}

impl Entry {
    pub fn stream<F: Fn(usize) -> Digit + Send + Sync + 'static>(f: F) -> Entry {
        Entry::Stream(Arc::new(FnStream(f)))
    }

    /// `a_n`, 1-based.
    pub fn digit(&self, n: usize) -> Digit {
        match self {
            Entry::Up(w) => w.digit(n),
            Entry::Stream(s) => s.digit(n),
        }
    }

    pub fn prefix(&self, len: usize) -> Word {
        (1..=len).map(|n| self.digit(n)).collect()
    }

    pub fn as_up(&self) -> Option<&UPWord> {
        match self {
            Entry::Up(w) => Some(w),
            Entry::Stream(_) => None,
        }
    }
}

/// The list `a_0, …, a_{p−1}` of candidate expansions of 1, indexed by shift.
#[derive(Clone, Debug)]
pub struct ExpansionList {
    entries: Vec<Entry>,
    modes: Vec<Mode>,
}

impl ExpansionList {
    /// Modes are read off the zero tail for UP entries; streams default to
    /// quasi-greedy.
    pub fn new(entries: Vec<Entry>) -> Result<Self, WordsError> {
        let modes = entries
            .iter()
            .map(|e| match e {
                Entry::Up(w) if w.ends_in_zeros() => Mode::Greedy,
                _ => Mode::QuasiGreedy,
            })
            .collect();
        ExpansionList::with_modes(entries, modes)
    }

    pub fn from_up(words: Vec<UPWord>) -> Result<Self, WordsError> {
        ExpansionList::new(words.into_iter().map(Entry::Up).collect())
    }

    pub fn with_modes(entries: Vec<Entry>, modes: Vec<Mode>) -> Result<Self, WordsError> {
        if entries.is_empty() {
            return Err(WordsError::EmptyList);
        }
        assert_eq!(entries.len(), modes.len(), "one mode per entry");
        let one_zero = UPWord::finite(&[1]);
        for (index, (e, m)) in entries.iter().zip(&modes).enumerate() {
            match e {
                Entry::Up(w) => {
                    if w.lex_cmp(&one_zero) != Ordering::Greater {
                        return Err(WordsError::NotAboveOneZero { index });
                    }
                    if w.ends_in_zeros() != (*m == Mode::Greedy) {
                        return Err(WordsError::ModeMismatch { index });
                    }
                }
                Entry::Stream(s) => {
                    if s.digit(1) == 0 {
                        return Err(WordsError::NotAboveOneZero { index });
                    }
                }
            }
        }
        Ok(ExpansionList { entries, modes })
    }

    pub fn p(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    /// Entry `a_i` with `i` taken mod `p`.
    pub fn entry(&self, i: i64) -> &Entry {
        &self.entries[i.rem_euclid(self.p() as i64) as usize]
    }

    pub fn mode(&self, i: usize) -> Mode {
        self.modes[i]
    }

    pub fn modes(&self) -> &[Mode] {
        &self.modes
    }

    pub fn all_up(&self) -> bool {
        self.entries.iter().all(|e| e.as_up().is_some())
    }

    pub fn up_words(&self) -> Result<Vec<UPWord>, WordsError> {
        self.entries
            .iter()
            .enumerate()
            .map(|(index, e)| {
                e.as_up()
                    .cloned()
                    .ok_or(WordsError::NotUltimatelyPeriodic { index })
            })
            .collect()
    }

    /// Rejects UP digits above `max`; streams are checked on their first
    /// `depth` digits.
    pub fn check_digit_bound(&self, max: Digit, depth: usize) -> Result<(), WordsError> {
        for (index, e) in self.entries.iter().enumerate() {
            let m = match e {
                Entry::Up(w) => w.max_digit(),
                Entry::Stream(_) => e.prefix(depth).into_iter().max().unwrap_or(0),
            };
            if m > max {
                return Err(WordsError::DigitTooLarge { index, digit: m, max });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(s: &str) -> UPWord {
        s.parse().unwrap()
    }

    #[test]
    fn modes_follow_zero_tail() {
        let l = ExpansionList::from_up(vec![up("2(0)"), up("(21)")]).unwrap();
        assert_eq!(l.modes(), &[Mode::Greedy, Mode::QuasiGreedy]);
        assert_eq!(l.entry(-1).as_up(), Some(&up("(21)")));
    }

    #[test]
    fn rejects_small_entries() {
        assert_eq!(
            ExpansionList::from_up(vec![up("1(0)")]).unwrap_err(),
            WordsError::NotAboveOneZero { index: 0 }
        );
        assert!(ExpansionList::from_up(vec![up("0(1)")]).is_err());
        assert!(ExpansionList::from_up(vec![up("10(1)")]).is_ok());
        let e = ExpansionList::with_modes(vec![Entry::Up(up("(1)"))], vec![Mode::Greedy]);
        assert_eq!(e.unwrap_err(), WordsError::ModeMismatch { index: 0 });
    }

    #[test]
    fn stream_entries() {
        let l = ExpansionList::new(vec![Entry::stream(|n| if n % 2 == 1 { 2 } else { 1 })]).unwrap();
        assert_eq!(l.entries()[0].prefix(4), vec![2, 1, 2, 1]);
        assert!(!l.all_up());
        assert!(l.check_digit_bound(1, 10).is_err());
    }
}
