use serde::Serialize;

use super::{bounds_to_depth, synthesize_periodic, AlternateBase, BoundsCert, SynthesisError};
use crate::numerics::{Dyadic, Interval, IntervalJson};
use crate::words::{ExpansionList, UPWord};

/// One truncation depth of [`synthesize_general`].
#[derive(Clone, Debug)]
pub struct GeneralStep {
    pub n: usize,
    /// `β_i^{(N)}` for the list `a_{i,1}⋯a_{i,N} 1^ω`.
    pub betas: Vec<Interval>,
    /// `H/(c^N (c−1))` with `c` the least `β^{(N)}`.
    pub e_bound: Interval,
    /// Radius added to every `β^{(N)}`.
    pub radius: Dyadic,
}

#[derive(Clone, Debug)]
pub struct GeneralSynthesis {
    /// Inflated enclosure from the last depth tried.
    pub base: AlternateBase,
    pub depth: usize,
    /// `log2` of the widest `β` enclosure.
    pub width_log2: Option<i64>,
    /// True when the radius is a proof (`p = 1`), false when it is a
    /// first-order estimate.
    pub rigorous: bool,
    pub converged: bool,
    pub bounds: BoundsCert,
    pub steps: Vec<GeneralStep>,
}

impl GeneralSynthesis {
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Out {
            depth: usize,
            width_log2: Option<i64>,
            rigorous: bool,
            converged: bool,
            betas: Vec<IntervalJson>,
        }
        serde_json::to_value(Out {
            depth: self.depth,
            width_log2: self.width_log2,
            rigorous: self.rigorous,
            converged: self.converged,
            betas: self.base.betas_display().iter().map(Into::into).collect(),
        })
        .expect("general synthesis serializes")
    }
}

/// `H / (c^N (c − 1))`, the bound on `|val(a_i) − val(a_{i,1}⋯a_{i,N}1^ω)|`
/// when every `β ≥ c`.
pub fn e_bound(h: u32, c: &Interval, n: usize) -> Interval {
    let denom = &c.powi(n as u32) * &(c - &Interval::one());
    Interval::from_int(i64::from(h))
        .div(&denom)
        .expect("c exceeds 1")
}

/// Approximates the base of a list with arbitrary entries by the bases of
/// the truncations `a_{i,1}⋯a_{i,N} 1^ω`.
///
/// Each `β^{(N)}` is inflated by a radius derived from the E-bound taken at
/// the iterate itself: for `p = 1`, `|β − β^{(N)}| ≤ ÊC/(1 − Ê)` because
/// `x ↦ val_x(a)` is decreasing with slope at least `val/x`. For `p ≥ 2`
/// the radius `ÊC²` is a first-order estimate and the result is flagged
/// non-rigorous. Depth grows geometrically from `L`; the run stops once an
/// enclosure is narrower than `2^-tol_bits` and meets its predecessor.
pub fn synthesize_general(
    list: &ExpansionList,
    tol_bits: i64,
    max_depth: usize,
) -> Result<GeneralSynthesis, SynthesisError> {
    let p = list.p();
    let bounds = bounds_to_depth(list, max_depth)?;
    let c_upper = Dyadic::from_bigint(bounds.c.clone());
    let lower = bounds.lower_enclosure(tol_bits + 32);
    let admissible = Interval::new(lower.lo().clone(), c_upper.clone());
    let rigorous = p == 1;
    let target = Dyadic::pow2(-tol_bits);
    let mut steps: Vec<GeneralStep> = Vec::new();
    let mut prev: Option<Vec<Interval>> = None;
    let mut n = bounds.l;
    loop {
        let words = list
            .entries()
            .iter()
            .map(|e| UPWord::new(&e.prefix(n), &[1]))
            .collect::<Result<Vec<_>, _>>()?;
        let trunc = ExpansionList::from_up(words)?;
        let synth = synthesize_periodic(&trunc, tol_bits + 16)?;
        bounds.contains(&synth.base)?;
        let betas = synth.base.betas().to_vec();
        let c = betas.iter().map(|b| b.lo().clone()).min().expect("non-empty");
        let e = e_bound(bounds.h.max(1), &Interval::point(c), n);
        let ehat = e.hi().clone();
        let radius = if ehat >= Dyadic::one() {
            c_upper.clone()
        } else if rigorous {
            let num = &Interval::point(ehat.clone()) * &Interval::point(c_upper.clone());
            let den = &Interval::one() - &Interval::point(ehat.clone());
            num.div(&den).expect("Ê < 1").hi().clone()
        } else {
            &(&ehat * &c_upper) * &c_upper
        };
        let inflated: Vec<Interval> = betas
            .iter()
            .map(|b| {
                b.inflate(&radius)
                    .intersect(&admissible)
                    .unwrap_or_else(|| b.clone())
            })
            .collect();
        steps.push(GeneralStep {
            n,
            betas,
            e_bound: e,
            radius,
        });
        let narrow = inflated.iter().all(|b| b.width() <= target);
        let agrees = prev
            .as_ref()
            .is_some_and(|q| q.iter().zip(&inflated).all(|(a, b)| a.overlaps(b)));
        let done = narrow && agrees;
        if done || n >= max_depth {
            let base = AlternateBase::from_enclosures(inflated)?;
            let out = GeneralSynthesis {
                width_log2: base.width_msb(),
                base,
                depth: n,
                rigorous,
                converged: done,
                bounds,
                steps,
            };
            return if done {
                Ok(out)
            } else {
                Err(SynthesisError::DepthExhausted(Box::new(out)))
            };
        }
        prev = Some(inflated);
        n = (n + n.div_ceil(4)).min(max_depth);
    }
}
