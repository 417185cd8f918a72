use std::cmp::Ordering;

use num_integer::Integer;
use serde::Serialize;

use super::subst::{sadic_limit, Substitution, SubstitutionSeq};
use super::{CodingError, Letter};
use crate::expansion::val_up;
use crate::numerics::{IntervalJson, Real};
use crate::synthesis::AlternateBase;
use crate::words::{Digit, UPWord, Word};

/// Enclosure precision for reported values.
const REPORT_BITS: i64 = 64;

/// A B-integer with its integer-part digits `a_{N−1} ⋯ a_0`, most
/// significant first; zero has the empty word.
#[derive(Clone, Debug)]
pub struct BInteger {
    pub digits: Word,
    pub value: Real,
}

impl BInteger {
    pub fn word_string(&self) -> String {
        if self.digits.is_empty() {
            return "0".into();
        }
        self.digits.iter().map(Digit::to_string).collect()
    }
}

fn quasi_greedy(base: &AlternateBase) -> Result<&[UPWord], CodingError> {
    base.quasi_greedy().ok_or(CodingError::MissingQuasiGreedy)
}

fn d_at(ds: &[UPWord], i: i64) -> &UPWord {
    &ds[i.rem_euclid(ds.len() as i64) as usize]
}

/// `a_0 + β_m (a_1 + β_{m+1} (a_2 + ⋯))`.
fn integer_value(base: &AlternateBase, shift: i64, digits: &[Digit]) -> Real {
    let n = digits.len();
    let mut acc = Real::from_int(0);
    for (pos, &a) in digits.iter().enumerate() {
        let j = (n - 1 - pos) as i64;
        acc = acc.add(&Real::from_int(i64::from(a)));
        if j > 0 {
            acc = acc.mul(&base.beta_real(shift + j - 1));
        }
    }
    acc
}

struct Enumerator<'a> {
    ds: &'a [UPWord],
    shift: i64,
    count: usize,
    out: Vec<Word>,
}

impl Enumerator<'_> {
    /// Places `a_j` below the fixed digits `word`. `tight` holds every `n`
    /// whose constraint `a_{n−1}⋯a_0 ≤_lex d_{m+n}` is still equal so far.
    fn fill(&mut self, word: &mut Word, j: usize, tight: &mut Vec<usize>) {
        if self.out.len() >= self.count {
            return;
        }
        tight.push(j + 1);
        let limit = tight
            .iter()
            .map(|&n| d_at(self.ds, self.shift + n as i64).digit(n - j))
            .min()
            .expect("non-empty");
        let lowest = if word.is_empty() { 1 } else { 0 };
        for a in lowest..=limit {
            let mut next: Vec<usize> = tight
                .iter()
                .copied()
                .filter(|&n| d_at(self.ds, self.shift + n as i64).digit(n - j) == a)
                .collect();
            word.push(a);
            if j == 0 {
                self.out.push(word.clone());
            } else {
                self.fill(word, j - 1, &mut next);
            }
            word.pop();
            if self.out.len() >= self.count {
                break;
            }
        }
        tight.pop();
    }
}

/// The `count` smallest `S^shift(B)`-integers, in increasing order.
///
/// Integer-part words `a_{N−1}⋯a_0` are admissible when
/// `a_{n−1}⋯a_0 ≤_lex d_{shift+n,1}⋯d_{shift+n,n}` for every `n ≤ N`, the
/// quasi-greedy expansions having no zero tail. Every admissible prefix
/// extends by zeros, so the depth-first search never backtracks, and
/// (length, lexicographic) order on admissible words is value order.
/// Consecutive values are compared to confirm it.
pub fn enumerate_b_integers(
    base: &AlternateBase,
    shift: i64,
    count: usize,
) -> Result<Vec<BInteger>, CodingError> {
    let ds = quasi_greedy(base)?;
    let mut e = Enumerator { ds, shift, count, out: vec![Vec::new()] };
    let mut len = 1;
    while e.out.len() < count {
        e.fill(&mut Vec::with_capacity(len), len - 1, &mut Vec::new());
        len += 1;
    }
    e.out.truncate(count);
    let ints: Vec<BInteger> = e
        .out
        .into_iter()
        .map(|digits| BInteger {
            value: integer_value(base, shift, &digits),
            digits,
        })
        .collect();
    for (i, w) in ints.windows(2).enumerate() {
        match w[0].value.cmp(&w[1].value) {
            Ok(Ordering::Less) => {}
            Ok(_) => {
                return Err(CodingError::Undecidable(format!(
                    "radix order disagrees with value order at {i}"
                )))
            }
            Err(_) => {
                return Err(CodingError::Undecidable(format!(
                    "B-integers {i} and {} are not separated",
                    i + 1
                )))
            }
        }
    }
    Ok(ints)
}

/// `Δ_{m,n}` for `n` below the periodicity threshold, with the class map
/// `π_m`. For `n ≥ from`, `Δ_{m,n} = Δ_{m, from + (n − from) mod period}`.
#[derive(Clone, Debug)]
pub struct GapTable {
    pub m: i64,
    pub deltas: Vec<Real>,
    pub tails: Vec<UPWord>,
    pub pi: Vec<Letter>,
    pub alphabet: Vec<Letter>,
    pub from: usize,
    pub period: usize,
}

#[derive(Serialize)]
struct GapTableJson {
    m: i64,
    delta: Vec<IntervalJson>,
    pi: Vec<Letter>,
    alphabet: Vec<Letter>,
    periodic_from: usize,
    period: usize,
}

impl GapTable {
    fn reduce(&self, n: usize) -> usize {
        if n < self.from {
            n
        } else {
            self.from + (n - self.from) % self.period
        }
    }

    pub fn delta(&self, n: usize) -> &Real {
        &self.deltas[self.reduce(n)]
    }

    /// `π_m(n)` for any `n`.
    pub fn letter(&self, n: usize) -> Letter {
        self.pi[self.reduce(n)]
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(GapTableJson {
            m: self.m,
            delta: self.deltas.iter().map(|d| (&d.enclose(REPORT_BITS)).into()).collect(),
            pi: self.pi.clone(),
            alphabet: self.alphabet.clone(),
            periodic_from: self.from,
            period: self.period,
        })
        .expect("serializable")
    }
}

/// Whether two Δ values coincide: identical tails are equal, disjoint
/// enclosures are not, exact values decide themselves.
fn same_delta(a: (&Real, &UPWord), b: (&Real, &UPWord)) -> Option<bool> {
    if a.1.lex_cmp(b.1) == Ordering::Equal {
        return Some(true);
    }
    match a.0.cmp(b.0) {
        Ok(o) => Some(o == Ordering::Equal && a.0.is_exact() && b.0.is_exact()),
        Err(_) => None,
    }
}

/// `Δ_{m,n} = val_{S^m(B)}(0·d_{m+n,n+1} d_{m+n,n+2} ⋯)` and `π_m`, covering
/// at least `depth` indices and always a full preperiod plus period.
pub fn gap_table(base: &AlternateBase, m: i64, depth: usize) -> Result<GapTable, CodingError> {
    let ds = quasi_greedy(base)?;
    let from = ds.iter().map(|d| d.preperiod().len()).max().unwrap_or(0);
    let period = ds.iter().fold(ds.len(), |l, d| l.lcm(&d.period().len()));
    let len = depth.max(from + period);
    let mut deltas = Vec::with_capacity(len);
    let mut tails = Vec::with_capacity(len);
    let mut pi = Vec::with_capacity(len);
    let mut alphabet: Vec<Letter> = Vec::new();
    for n in 0..len {
        let tail = d_at(ds, m + n as i64).shift_suffix(n);
        let delta = val_up(base, m, &tail);
        let mut class = None;
        for &r in &alphabet {
            let r = r as usize;
            match same_delta((&delta, &tail), (&deltas[r], &tails[r])) {
                Some(true) => {
                    class = Some(r as Letter);
                    break;
                }
                Some(false) => {}
                None => return Err(CodingError::ClassingUndecidable { n, other: r }),
            }
        }
        let letter = class.unwrap_or_else(|| {
            alphabet.push(n as Letter);
            n as Letter
        });
        deltas.push(delta);
        tails.push(tail);
        pi.push(letter);
    }
    Ok(GapTable { m, deltas, tails, pi, alphabet, from, period })
}

/// `φ_m(n) = 0^{d_{m+n+1,n+1}} π_m(n+1)` on `A_{m+1}`; other letters map
/// to the empty word.
pub fn phi(base: &AlternateBase, m: i64) -> Result<Substitution, CodingError> {
    let ds = quasi_greedy(base)?;
    let here = gap_table(base, m, 0)?;
    let next = gap_table(base, m + 1, 0)?;
    let top = *next.alphabet.iter().max().expect("Δ_{m,0} is a class") as usize;
    let mut images = vec![Vec::new(); top + 1];
    for &n in &next.alphabet {
        let n = n as usize;
        let zeros = d_at(ds, m + n as i64 + 1).digit(n + 1);
        let mut img = vec![0; zeros as usize];
        img.push(here.letter(n + 1));
        images[n] = img;
    }
    Ok(Substitution::new(images))
}

/// The faithful coding of the B-integers computed twice: from consecutive
/// gaps of enumerated B-integers, and as the S-adic limit of the `φ_m`.
#[derive(Clone, Debug)]
pub struct FaithfulCoding {
    pub direct: Vec<Letter>,
    pub sadic: Vec<Letter>,
    pub table: GapTable,
    pub phis: Vec<Substitution>,
}

impl FaithfulCoding {
    pub fn agree(&self) -> bool {
        self.direct == self.sadic
    }

    /// Index of the first disagreement.
    pub fn first_mismatch(&self) -> Option<usize> {
        self.direct
            .iter()
            .zip(&self.sadic)
            .position(|(a, b)| a != b)
            .or_else(|| (self.direct.len() != self.sadic.len()).then(|| self.direct.len().min(self.sadic.len())))
    }
}

fn classify_gap(table: &GapTable, gap: &Real, index: usize) -> Result<Letter, CodingError> {
    let mut found: Option<Letter> = None;
    for &r in &table.alphabet {
        let delta = &table.deltas[r as usize];
        let hit = match gap.cmp(delta) {
            Ok(o) => o == Ordering::Equal,
            // not separated: with an approximate base, treat as a candidate
            Err(_) => !gap.is_exact() || !delta.is_exact(),
        };
        if hit {
            if let Some(other) = found {
                return Err(CodingError::ClassingUndecidable {
                    n: r as usize,
                    other: other as usize,
                });
            }
            found = Some(r);
        }
    }
    found.ok_or(CodingError::GapNotInTable { index })
}

/// First `length` letters of the faithful coding of the B-integers.
pub fn faithful_coding(base: &AlternateBase, length: usize) -> Result<FaithfulCoding, CodingError> {
    let table = gap_table(base, 0, 0)?;
    let ints = enumerate_b_integers(base, 0, length + 1)?;
    let direct = ints
        .windows(2)
        .enumerate()
        .map(|(i, w)| classify_gap(&table, &w[1].value.sub(&w[0].value), i))
        .collect::<Result<Vec<_>, _>>()?;
    let phis = (0..base.p() as i64)
        .map(|m| phi(base, m))
        .collect::<Result<Vec<_>, _>>()?;
    let sadic = sadic_limit(SubstitutionSeq::Periodic(&phis), length)?;
    Ok(FaithfulCoding { direct, sadic, table, phis })
}
