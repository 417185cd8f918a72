use std::fmt;

use serde::Serialize;

use super::SynthesisError;
use crate::numerics::{AlgNum, Interval, IntervalJson, Real};
use crate::words::UPWord;

/// Default enclosure width exponent for bases built from exact values.
pub const DEFAULT_BITS: i64 = 64;

/// An alternate base `B = (β_{p−1}, …, β_0)`, extended periodically to all
/// of `Z`.
///
/// Enclosures are always present. Bases coming out of the periodic
/// constructions also carry exact values in a common number field, which
/// makes every floor, ceiling and comparison downstream decidable.
#[derive(Clone, Debug)]
pub struct AlternateBase {
    betas: Vec<Interval>,
    delta: Interval,
    exact: Option<Vec<AlgNum>>,
    quasi_greedy: Option<Vec<UPWord>>,
}

impl AlternateBase {
    /// `betas[i]` is `β_i`.
    pub fn from_exact(betas: Vec<AlgNum>, bits: i64) -> Result<Self, SynthesisError> {
        if betas.is_empty() {
            return Err(SynthesisError::EmptyBase);
        }
        for (index, b) in betas.iter().enumerate() {
            if b.cmp_exact(&AlgNum::one()) != std::cmp::Ordering::Greater {
                return Err(SynthesisError::NotAboveOne { index });
            }
        }
        let encl = betas.iter().map(|b| b.enclose(bits)).collect();
        let mut base = AlternateBase::from_enclosures(encl)?;
        base.exact = Some(betas);
        Ok(base)
    }

    /// Rational base from `(numerator, denominator)` pairs, `betas[i] = β_i`.
    pub fn from_rationals(betas: &[(i64, i64)]) -> Result<Self, SynthesisError> {
        let exact = betas
            .iter()
            .map(|&(n, d)| AlgNum::from_rational(num_rational::BigRational::new(n.into(), d.into())))
            .collect();
        AlternateBase::from_exact(exact, DEFAULT_BITS)
    }

    /// A base known only through enclosures; every `lo` must exceed 1.
    pub fn from_enclosures(betas: Vec<Interval>) -> Result<Self, SynthesisError> {
        if betas.is_empty() {
            return Err(SynthesisError::EmptyBase);
        }
        let one = Interval::one();
        for (index, b) in betas.iter().enumerate() {
            if !one.certainly_lt(b) {
                return Err(SynthesisError::NotAboveOne { index });
            }
        }
        let delta = betas.iter().fold(Interval::one(), |acc, b| &acc * b);
        Ok(AlternateBase {
            betas,
            delta,
            exact: None,
            quasi_greedy: None,
        })
    }

    /// Records the quasi-greedy expansions of 1 at each shift, `words[i] = d_i`.
    pub fn with_quasi_greedy(mut self, words: Vec<UPWord>) -> Self {
        assert_eq!(words.len(), self.p());
        self.quasi_greedy = Some(words);
        self
    }

    pub fn p(&self) -> usize {
        self.betas.len()
    }

    /// `β_n` for any integer `n`.
    pub fn beta(&self, n: i64) -> &Interval {
        &self.betas[self.idx(n)]
    }

    /// Exact `β_n` when available.
    pub fn exact_beta(&self, n: i64) -> Option<&AlgNum> {
        self.exact.as_ref().map(|e| &e[self.idx(n)])
    }

    /// `β_n` as a [`Real`], exact when available.
    pub fn beta_real(&self, n: i64) -> Real {
        match self.exact_beta(n) {
            Some(a) => Real::Exact(a.clone()),
            None => Real::Approx(self.beta(n).clone()),
        }
    }

    /// `β_0, …, β_{p−1}`.
    pub fn betas(&self) -> &[Interval] {
        &self.betas
    }

    /// `β_{p−1}, …, β_0`, the conventional display order.
    pub fn betas_display(&self) -> Vec<Interval> {
        self.betas.iter().rev().cloned().collect()
    }

    pub fn exact(&self) -> Option<&[AlgNum]> {
        self.exact.as_deref()
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    /// `δ = β_0 ⋯ β_{p−1}`.
    pub fn delta(&self) -> &Interval {
        &self.delta
    }

    /// `δ` as a [`Real`].
    pub fn delta_real(&self) -> Real {
        match &self.exact {
            Some(e) => Real::Exact(e.iter().fold(AlgNum::one(), |acc, b| &acc * b)),
            None => Real::Approx(self.delta.clone()),
        }
    }

    pub fn quasi_greedy(&self) -> Option<&[UPWord]> {
        self.quasi_greedy.as_deref()
    }

    /// `S^i(B)`, with `β'_n = β_{n+i}`.
    pub fn shifted(&self, i: i64) -> AlternateBase {
        let rot = |n: usize| self.idx(n as i64 + i);
        AlternateBase {
            betas: (0..self.p()).map(|n| self.betas[rot(n)].clone()).collect(),
            delta: self.delta.clone(),
            exact: self
                .exact
                .as_ref()
                .map(|e| (0..self.p()).map(|n| e[rot(n)].clone()).collect()),
            quasi_greedy: self
                .quasi_greedy
                .as_ref()
                .map(|q| (0..self.p()).map(|n| q[rot(n)].clone()).collect()),
        }
    }

    /// Re-encloses from the exact values at width `2^-bits`; bases without
    /// exact values are returned unchanged.
    pub fn refined(&self, bits: i64) -> AlternateBase {
        let Some(e) = &self.exact else {
            return self.clone();
        };
        let mut out = self.clone();
        out.betas = e.iter().map(|b| b.enclose(bits)).collect();
        let d = e.iter().fold(AlgNum::one(), |acc, b| &acc * b);
        out.delta = d.enclose(bits);
        out
    }

    /// Largest `log2` width among the `β` enclosures, `None` if all are points.
    pub fn width_msb(&self) -> Option<i64> {
        self.betas.iter().filter_map(Interval::width_msb).max()
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Out {
            p: usize,
            betas: Vec<IntervalJson>,
            delta: IntervalJson,
            exact: bool,
        }
        serde_json::to_value(Out {
            p: self.p(),
            betas: self.betas_display().iter().map(Into::into).collect(),
            delta: (&self.delta).into(),
            exact: self.is_exact(),
        })
        .expect("base serializes")
    }

    fn idx(&self, n: i64) -> usize {
        n.rem_euclid(self.p() as i64) as usize
    }
}

impl fmt::Display for AlternateBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (t, b) in self.betas_display().iter().enumerate() {
            if t > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, ")")
    }
}
