//! Ultimately periodic words `pre · period^ω`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Digit, Word, WordsError};

/// An ultimately periodic one-sided word in canonical form: the period is
/// primitive and the preperiod is as short as possible.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UPWord {
    pre: Word,
    period: Word,
}

/// Canonical form of `pre · period^ω`.
pub fn canonicalize(pre: &[Digit], period: &[Digit]) -> Result<UPWord, WordsError> {
    if period.is_empty() {
        return Err(WordsError::EmptyPeriod);
    }
    let n = period.len();
    let d = (1..=n)
        .find(|&d| n % d == 0 && (d..n).all(|i| period[i] == period[i - d]))
        .unwrap_or(n);
    let mut per: Word = period[..d].to_vec();
    let mut pre: Word = pre.to_vec();
    while let Some(&last) = pre.last() {
        if last != *per.last().expect("non-empty period") {
            break;
        }
        pre.pop();
        per.rotate_right(1);
    }
    Ok(UPWord { pre, period: per })
}

impl UPWord {
    pub fn new(pre: &[Digit], period: &[Digit]) -> Result<UPWord, WordsError> {
        canonicalize(pre, period)
    }

    /// `d^ω`.
    pub fn constant(d: Digit) -> UPWord {
        UPWord {
            pre: vec![],
            period: vec![d],
        }
    }

    /// `w · 0^ω`.
    pub fn finite(w: &[Digit]) -> UPWord {
        canonicalize(w, &[0]).expect("non-empty period")
    }

    pub fn preperiod(&self) -> &[Digit] {
        &self.pre
    }

    pub fn period(&self) -> &[Digit] {
        &self.period
    }

    pub fn is_purely_periodic(&self) -> bool {
        self.pre.is_empty()
    }

    /// Whether the word ends in `0^ω`.
    pub fn ends_in_zeros(&self) -> bool {
        self.period == [0]
    }

    /// Digit at 0-based position `i`.
    pub fn at(&self, i: usize) -> Digit {
        if i < self.pre.len() {
            self.pre[i]
        } else {
            self.period[(i - self.pre.len()) % self.period.len()]
        }
    }

    /// Digit `a_n` at 1-based position `n`.
    pub fn digit(&self, n: usize) -> Digit {
        assert!(n >= 1, "digit positions start at 1");
        self.at(n - 1)
    }

    pub fn prefix(&self, len: usize) -> Word {
        (0..len).map(|i| self.at(i)).collect()
    }

    pub fn max_digit(&self) -> Digit {
        self.pre
            .iter()
            .chain(&self.period)
            .copied()
            .max()
            .unwrap_or(0)
    }

    /// The suffix starting at 1-based position `j + 1`.
    pub fn shift_suffix(&self, j: usize) -> UPWord {
        if j <= self.pre.len() {
            return UPWord {
                pre: self.pre[j..].to_vec(),
                period: self.period.clone(),
            };
        }
        let mut per = self.period.clone();
        let r = (j - self.pre.len()) % per.len();
        per.rotate_left(r);
        UPWord {
            pre: vec![],
            period: per,
        }
    }

    /// Exact lexicographic comparison.
    pub fn lex_cmp(&self, other: &UPWord) -> Ordering {
        let bound = self.pre.len().max(other.pre.len())
            + self.period.len().lcm(&other.period.len());
        for i in 0..bound {
            match self.at(i).cmp(&other.at(i)) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        Ordering::Equal
    }

    /// First 0-based position where the words differ.
    pub fn first_difference(&self, other: &UPWord) -> Option<usize> {
        let bound = self.pre.len().max(other.pre.len())
            + self.period.len().lcm(&other.period.len());
        (0..bound).find(|&i| self.at(i) != other.at(i))
    }

    /// Unrolls into a preperiod of length `pre_len` and a period of length
    /// `per_len`, without canonicalizing. Panics unless `pre_len` is at least
    /// the canonical preperiod length and `per_len` is a multiple of the
    /// canonical period length.
    pub fn aligned(&self, pre_len: usize, per_len: usize) -> (Word, Word) {
        assert!(pre_len >= self.pre.len() && per_len % self.period.len() == 0);
        let pre = self.prefix(pre_len);
        let per = (pre_len..pre_len + per_len).map(|i| self.at(i)).collect();
        (pre, per)
    }

    /// Number of positions needed before the digit stream repeats.
    pub fn span(&self) -> usize {
        self.pre.len() + self.period.len()
    }
}

impl Ord for UPWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lex_cmp(other)
    }
}

impl PartialOrd for UPWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn write_digits(f: &mut fmt::Formatter<'_>, w: &[Digit], wide: bool) -> fmt::Result {
    if wide {
        for (i, d) in w.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    } else {
        w.iter().try_for_each(|d| write!(f, "{d}"))
    }
}

impl fmt::Display for UPWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.max_digit() > 9;
        if wide && !self.pre.is_empty() {
            write!(f, "[")?;
            write_digits(f, &self.pre, true)?;
            write!(f, "]")?;
        } else {
            write_digits(f, &self.pre, false)?;
        }
        write!(f, "(")?;
        write_digits(f, &self.period, wide)?;
        write!(f, ")")
    }
}

fn parse_list(s: &str, whole: &str) -> Result<Word, WordsError> {
    let err = || WordsError::Parse(whole.to_string());
    if s.contains(',') {
        s.split(',')
            .map(|t| t.trim().parse::<Digit>().map_err(|_| err()))
            .collect()
    } else {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| c.to_digit(10).ok_or_else(err))
            .collect()
    }
}

impl FromStr for UPWord {
    type Err = WordsError;

    /// Accepts `pre(period)`, e.g. `2(12)`, `(21)`, `120(0)`, and the
    /// bracketed form `[12,3](4,1)` for digits above 9.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let err = || WordsError::Parse(s.to_string());
        let open = t.find('(').ok_or_else(err)?;
        if !t.ends_with(')') || open + 1 >= t.len() {
            return Err(err());
        }
        let head = &t[..open];
        let body = &t[open + 1..t.len() - 1];
        if body.contains(['(', ')', '[', ']']) {
            return Err(err());
        }
        let pre = if let Some(inner) = head.strip_prefix('[') {
            let inner = inner.strip_suffix(']').ok_or_else(err)?;
            if inner.trim().is_empty() {
                vec![]
            } else {
                parse_list(inner, s)?
            }
        } else {
            if head.contains([',', '[', ']']) {
                return Err(err());
            }
            parse_list(head, s)?
        };
        let period = parse_list(body, s)?;
        if period.is_empty() {
            return Err(WordsError::EmptyPeriod);
        }
        canonicalize(&pre, &period)
    }
}

impl Serialize for UPWord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for UPWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
