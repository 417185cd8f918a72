use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow};
use serde::Serialize;

use super::{AlternateBase, SynthesisError};
use crate::numerics::{AlgNum, Dyadic, Interval};
use crate::words::{Digit, ExpansionList};

/// A-priori bounds `C^L/(C^L−1) < β_i ≤ C` for any base realizing a list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsCert {
    /// Largest digit `H`.
    pub h: Digit,
    /// Least `ℓ ≥ 2` such that every entry has two non-zero digits among its first `ℓ`.
    pub l: usize,
    /// `C = Hp + 1`.
    pub c: BigInt,
    /// `C^L/(C^L − 1)`.
    pub lower: BigRational,
}

#[derive(Serialize)]
struct BoundsJson {
    h: Digit,
    l: usize,
    c: String,
    lower: String,
}

impl Serialize for BoundsCert {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        BoundsJson {
            h: self.h,
            l: self.l,
            c: self.c.to_string(),
            lower: self.lower.to_string(),
        }
        .serialize(s)
    }
}

/// Bounds for a list of UP entries, which must already be quasi-greedy
/// candidates.
pub fn bounds(list: &ExpansionList) -> Result<BoundsCert, SynthesisError> {
    let words = list.up_words()?;
    let h = words.iter().map(|w| w.max_digit()).max().unwrap_or(0);
    // a second non-zero digit, if any, shows up within one span of the word
    let depth = words.iter().map(|w| w.span() + w.period().len()).max().unwrap_or(0);
    compute(list, h, depth.max(2))
}

/// Bounds for lists with stream entries, reading `depth` digits per entry.
pub fn bounds_to_depth(list: &ExpansionList, depth: usize) -> Result<BoundsCert, SynthesisError> {
    let h = list
        .entries()
        .iter()
        .flat_map(|e| e.prefix(depth))
        .max()
        .unwrap_or(0);
    compute(list, h, depth.max(2))
}

fn compute(list: &ExpansionList, h: Digit, depth: usize) -> Result<BoundsCert, SynthesisError> {
    let p = list.p();
    let mut l = 2;
    for (index, e) in list.entries().iter().enumerate() {
        let mut seen = 0;
        let pos = (1..=depth).find(|&n| {
            if e.digit(n) != 0 {
                seen += 1;
            }
            seen == 2
        });
        match pos {
            Some(n) => l = l.max(n),
            None => return Err(SynthesisError::NoSecondNonzero { index }),
        }
    }
    let c = BigInt::from(h) * BigInt::from(p) + BigInt::one();
    let cl: BigInt = Pow::pow(&c, l);
    let lower = BigRational::new(cl.clone(), cl - BigInt::one());
    Ok(BoundsCert { h, l, c, lower })
}

impl BoundsCert {
    /// Whether every `β` lies in `(lower, C]`; exact values are compared
    /// exactly, others through their enclosures.
    pub fn contains(&self, base: &AlternateBase) -> Result<(), SynthesisError> {
        let lower = AlgNum::from_rational(self.lower.clone());
        let upper = AlgNum::from_bigint(self.c.clone());
        for index in 0..base.p() {
            let ok = match base.exact_beta(index as i64) {
                Some(b) => b.cmp_exact(&lower) == Ordering::Greater && b.cmp_exact(&upper) != Ordering::Greater,
                None => {
                    let iv = base.beta(index as i64);
                    let lo = self.lower_enclosure(iv.width_msb().map_or(128, |w| 32 - w));
                    lo.certainly_lt(iv) && iv.hi() <= &Dyadic::from_bigint(self.c.clone())
                }
            };
            if !ok {
                return Err(SynthesisError::OutOfBounds { index });
            }
        }
        Ok(())
    }

    /// `lower` as an enclosure.
    pub fn lower_enclosure(&self, bits: i64) -> Interval {
        AlgNum::from_rational(self.lower.clone()).enclose(bits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::UPWord;

    fn list(ws: &[&str]) -> ExpansionList {
        ExpansionList::from_up(ws.iter().map(|s| s.parse::<UPWord>().unwrap()).collect()).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn examples() {
        let b = bounds(&list(&["(21)"])).unwrap();
        assert_eq!((b.h, b.l, b.c.clone(), b.lower.clone()), (2, 2, BigInt::from(3), q(9, 8)));
        let b = bounds(&list(&["(21)", "(12)"])).unwrap();
        assert_eq!((b.h, b.l, b.c.clone(), b.lower.clone()), (2, 2, BigInt::from(5), q(25, 24)));
        let b = bounds(&list(&["(1)"])).unwrap();
        assert_eq!((b.c.clone(), b.l, b.lower.clone()), (BigInt::from(2), 2, q(4, 3)));
        // 1 0 0 1 ⋯ needs four digits
        let b = bounds(&list(&["(1001)"])).unwrap();
        assert_eq!((b.l, b.lower.clone()), (4, q(16, 15)));
    }

    #[test]
    fn needs_two_nonzero_digits() {
        let l = ExpansionList::new(vec![crate::words::Entry::stream(|n| u32::from(n == 1))]).unwrap();
        assert!(matches!(
            bounds_to_depth(&l, 40),
            Err(SynthesisError::NoSecondNonzero { index: 0 })
        ));
    }
}
