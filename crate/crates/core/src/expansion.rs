//! Evaluation of `B`-representations and the greedy and quasi-greedy digit
//! algorithms for alternate bases.
//!
//! Fractional digits are indexed from 1: under `S^i(B)` the word `0·a_1a_2⋯`
//! has value `Σ_j a_j / (β_{i−1} β_{i−2} ⋯ β_{i−j})`.

use std::cmp::Ordering;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;
use thiserror::Error;

use crate::numerics::{NumericsError, Real};
use crate::synthesis::AlternateBase;
use crate::words::{Digit, UPWord, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExpansionError {
    /// `β_n r_n` straddles an integer; `position` is the digit index `n`.
    #[error("floor undecidable at digit position {position}")]
    FloorUndecidable { position: i64 },
    /// `γ r` straddles an integer at 1-based digit `position`.
    #[error("ceiling undecidable at digit {position}")]
    CeilUndecidable { position: usize },
    #[error("comparison undecidable: {0}")]
    Undecidable(String),
    #[error("negative input")]
    Negative,
    #[error("digit does not fit in a machine word")]
    DigitOverflow,
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// `Σ_{j=1}^{n} a_j / (β_{i−1}⋯β_{i−j}) + tail / (β_{i−1}⋯β_{i−n})`, by Horner.
fn horner(base: &AlternateBase, shift: i64, digits: &[Digit], tail: Real) -> Real {
    let mut acc = tail;
    for (j, &a) in digits.iter().enumerate().rev() {
        let beta = base.beta_real(shift - j as i64 - 1);
        acc = acc
            .add(&Real::from_int(i64::from(a)))
            .div(&beta)
            .expect("every β exceeds 1");
    }
    acc
}

/// `val_{S^i(B)}(0·w 0^ω)`.
pub fn val_digits(base: &AlternateBase, shift: i64, w: &[Digit]) -> Real {
    horner(base, shift, w, Real::from_int(0))
}

/// `val_{S^i(B)}(0·w)` in closed form: the preperiod by Horner, the period
/// (unrolled to a multiple of `p`) as a geometric series in `1/δ^m`.
pub fn val_up(base: &AlternateBase, shift: i64, w: &UPWord) -> Real {
    let p = base.p();
    let pre = w.preperiod();
    let len = w.period().len().lcm(&p);
    let (_, period) = w.aligned(pre.len(), len);
    if period.iter().all(|&d| d == 0) {
        return val_digits(base, shift, pre);
    }
    let s = shift - pre.len() as i64;
    let head = val_digits(base, s, &period);
    // product over a full aligned period is δ^{len/p}
    let mut dm = Real::from_int(1);
    let delta = base.delta_real();
    for _ in 0..len / p {
        dm = dm.mul(&delta);
    }
    let ratio = dm
        .div(&dm.sub(&Real::from_int(1)))
        .expect("δ exceeds 1");
    horner(base, shift, pre, head.mul(&ratio))
}

/// Digits of `⟨x⟩` under `S^i(B)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GreedyExpansion {
    /// Integer-part digits `a_{N−1} ⋯ a_0`, most significant first; empty for `x < 1`.
    pub integer: Word,
    /// Fractional digits `a_{−1} a_{−2} ⋯`.
    pub fraction: Word,
    /// True when the remainder reached exactly 0, so every later digit is 0.
    pub terminates: bool,
}

fn digit_of(v: &num_bigint::BigInt) -> Result<Digit, ExpansionError> {
    v.to_u32().ok_or(ExpansionError::DigitOverflow)
}

/// The greedy algorithm: `N` minimal with `x < β_{N−1}⋯β_0`, then
/// `a_n = ⌊β_n r_n⌋`, `r_{n−1} = β_n r_n − a_n`, producing `count`
/// fractional digits.
pub fn greedy_expand(
    base: &AlternateBase,
    shift: i64,
    x: &Real,
    count: usize,
) -> Result<GreedyExpansion, ExpansionError> {
    match x.sign() {
        Ok(Ordering::Less) => return Err(ExpansionError::Negative),
        Err(_) if x.enclose(0).hi().signum() < 0 => return Err(ExpansionError::Negative),
        _ => {}
    }
    let beta = |n: i64| base.beta_real(n + shift);
    let mut n_int = 0i64;
    let mut prod = Real::from_int(1);
    loop {
        match x.cmp(&prod) {
            Ok(Ordering::Less) => break,
            Ok(_) => {
                prod = prod.mul(&beta(n_int));
                n_int += 1;
            }
            Err(_) => return Err(ExpansionError::FloorUndecidable { position: n_int }),
        }
    }
    let mut r = x.div(&prod)?;
    let mut integer = Vec::with_capacity(n_int as usize);
    let mut fraction = Vec::with_capacity(count);
    let mut terminates = false;
    let mut n = n_int - 1;
    while n >= -(count as i64) {
        if terminates {
            if n < 0 {
                fraction.push(0);
            } else {
                integer.push(0);
            }
            n -= 1;
            continue;
        }
        let y = beta(n).mul(&r);
        let a = y
            .floor()
            .map_err(|_| ExpansionError::FloorUndecidable { position: n })?;
        r = y.sub(&Real::from_bigint(a.clone()));
        if n < 0 {
            fraction.push(digit_of(&a)?);
        } else {
            integer.push(digit_of(&a)?);
        }
        terminates = matches!(&r, Real::Exact(e) if e.is_zero());
        n -= 1;
    }
    Ok(GreedyExpansion {
        integer,
        fraction,
        terminates,
    })
}

/// First `count` digits of `d_i`: `r_0 = 1`,
/// `d_{i,n} = ⌈β_{i−n} r_{n−1}⌉ − 1`, `r_n = β_{i−n} r_{n−1} − d_{i,n}`.
pub fn quasi_greedy_expand_one(
    base: &AlternateBase,
    shift: i64,
    count: usize,
) -> Result<Word, ExpansionError> {
    let mut r = Real::from_int(1);
    let mut out = Vec::with_capacity(count);
    for n in 1..=count {
        let y = base.beta_real(shift - n as i64).mul(&r);
        let c = y
            .ceil()
            .map_err(|_| ExpansionError::CeilUndecidable { position: n })?;
        let d: num_bigint::BigInt = c - 1;
        if d.is_negative() {
            return Err(ExpansionError::Negative);
        }
        r = y.sub(&Real::from_bigint(d.clone()));
        out.push(digit_of(&d)?);
    }
    Ok(out)
}

/// Greedy test for a fractional word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum GreedyVerdict {
    Greedy,
    /// `val_{S^{i−k+1}(B)}(0·w_k w_{k+1}⋯) ≥ 1` with `k` the first such index.
    Violation { k: usize },
}

/// Whether `0·w` is the `S^i(B)`-expansion of its value. Suffix tails of a
/// UP word recur once `j` passes the preperiod and a multiple of both the
/// period and `p`, so finitely many comparisons decide it.
pub fn is_greedy(base: &AlternateBase, shift: i64, w: &UPWord) -> Result<GreedyVerdict, ExpansionError> {
    let bound = w.preperiod().len() + w.period().len().lcm(&base.p());
    let one = Real::from_int(1);
    for j in 0..bound {
        let v = val_up(base, shift - j as i64, &w.shift_suffix(j));
        match v.cmp(&one) {
            Ok(Ordering::Less) => {}
            Ok(_) => return Ok(GreedyVerdict::Violation { k: j + 1 }),
            Err(_) => {
                return Err(ExpansionError::Undecidable(format!(
                    "tail value at k={} is not separated from 1",
                    j + 1
                )))
            }
        }
    }
    Ok(GreedyVerdict::Greedy)
}
