use std::cmp::Ordering;

use serde::Serialize;

use super::{bounds, AlternateBase, BoundsCert, SynthesisError};
use crate::expansion::{val_digits, val_up};
use crate::numerics::{AlgNum, Dyadic, Interval, IntervalJson, Real};
use crate::perron::{build_parry_matrices, periodic_fixed_point, Alignment, FixedPoint, MatrixSeq};
use crate::words::{check_parry, quasi_greedy_transform, Entry, ExpansionList, UPWord, DEFAULT_STREAM_DEPTH};

/// Everything produced on the way from a UP list to its base.
#[derive(Clone, Debug)]
pub struct PeriodicSynthesis {
    pub base: AlternateBase,
    pub fixed_point: FixedPoint,
    pub matrices: MatrixSeq,
    pub alignment: Alignment,
    pub bounds: BoundsCert,
    /// Quasi-greedy candidates `b_i` the matrices were built from.
    pub words: Vec<UPWord>,
}

/// Builds the base with `val_{S^i(B)}(0·a_i) = 1` for every `i`, setting
/// `β_i = γ_{−i}`. The Parry conditions are not needed for this; when the
/// transformed list satisfies them the words are recorded as the base's
/// quasi-greedy expansions.
pub fn synthesize_periodic(list: &ExpansionList, tol_bits: i64) -> Result<PeriodicSynthesis, SynthesisError> {
    let q = quasi_greedy_transform(list)?;
    let words = q.up_words()?;
    let bounds = bounds(&q)?;
    let (matrices, alignment) = build_parry_matrices(&words)?;
    let fixed_point = periodic_fixed_point(&matrices, tol_bits)?;
    let p = list.p() as i64;
    let exact: Vec<AlgNum> = (0..p)
        .map(|i| fixed_point.exact.gammas[(-i).rem_euclid(p) as usize].clone())
        .collect();
    let mut base = AlternateBase::from_exact(exact, tol_bits)?;
    if check_parry(&q).ok {
        base = base.with_quasi_greedy(words.clone());
    }
    bounds.contains(&base)?;
    Ok(PeriodicSynthesis {
        base,
        fixed_point,
        matrices,
        alignment,
        bounds,
        words,
    })
}

/// `|val_{S^i(B)}(0·a_i) − 1|` per entry.
#[derive(Clone, Debug)]
pub struct ValueOneReport {
    pub ok: bool,
    /// False when some entry is a stream, checked only to a finite depth.
    pub complete: bool,
    pub residuals: Vec<Interval>,
    pub per_entry: Vec<bool>,
}

#[derive(Serialize)]
struct ValueOneJson<'a> {
    ok: bool,
    complete: bool,
    residuals: Vec<IntervalJson>,
    per_entry: &'a [bool],
}

impl Serialize for ValueOneReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ValueOneJson {
            ok: self.ok,
            complete: self.complete,
            residuals: self.residuals.iter().map(Into::into).collect(),
            per_entry: &self.per_entry,
        }
        .serialize(s)
    }
}

/// Residual enclosure width used for reporting.
const RESIDUAL_BITS: i64 = 64;

/// Evaluates every entry in closed form and compares with 1. Exact bases
/// decide exactly; otherwise an entry passes when its residual enclosure
/// contains 0. Streams are summed to [`DEFAULT_STREAM_DEPTH`] digits with
/// the tail bounded by the largest digit seen.
pub fn verify_value_one(base: &AlternateBase, list: &ExpansionList) -> ValueOneReport {
    let one = Real::from_int(1);
    let mut residuals = Vec::with_capacity(list.p());
    let mut per_entry = Vec::with_capacity(list.p());
    let mut complete = true;
    for (i, e) in list.entries().iter().enumerate() {
        let (r, ok) = match e {
            Entry::Up(w) => {
                let v = val_up(base, i as i64, w).sub(&one);
                let ok = match &v {
                    Real::Exact(x) => x.is_zero(),
                    Real::Approx(iv) => iv.contains_zero(),
                };
                (v.enclose(RESIDUAL_BITS), ok)
            }
            Entry::Stream(_) => {
                complete = false;
                let r = stream_residual(base, i as i64, &e.prefix(DEFAULT_STREAM_DEPTH));
                let ok = r.contains_zero();
                (r, ok)
            }
        };
        residuals.push(abs(&r));
        per_entry.push(ok);
    }
    ValueOneReport {
        ok: per_entry.iter().all(|&b| b),
        complete,
        residuals,
        per_entry,
    }
}

/// `val(0·w) − 1` plus `[0, H/(c^D (c−1))]`, `c` the least `β` lower end.
fn stream_residual(base: &AlternateBase, shift: i64, prefix: &[u32]) -> Interval {
    let enclosed = AlternateBase::from_enclosures(base.betas().to_vec()).expect("base is valid");
    let partial = val_digits(&enclosed, shift, prefix).enclose(RESIDUAL_BITS);
    let h = prefix.iter().copied().max().unwrap_or(0);
    let c = base
        .betas()
        .iter()
        .map(|b| b.lo().clone())
        .min()
        .expect("non-empty base");
    let c = Interval::point(c);
    let denom = &c.powi(prefix.len() as u32) * &(&c - &Interval::one());
    let tail = Interval::from_int(i64::from(h))
        .div(&denom)
        .expect("c exceeds 1");
    let tail = Interval::new(Dyadic::zero(), tail.hi().clone());
    &(&partial + &tail) - &Interval::one()
}

fn abs(r: &Interval) -> Interval {
    match r.sign() {
        Some(Ordering::Less) => -r,
        Some(_) => r.clone(),
        None => Interval::new(Dyadic::zero(), r.mag()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perron::{check_identities, quadratic_enclosure};
    use num_rational::BigRational;

    fn list(ws: &[&str]) -> ExpansionList {
        ExpansionList::from_up(ws.iter().map(|s| s.parse::<UPWord>().unwrap()).collect()).unwrap()
    }

    #[test]
    fn examples() {
        let s = synthesize_periodic(&list(&["(21)", "(12)"]), 64).unwrap();
        assert_eq!(s.base.beta(0), &Interval::from_int(2));
        assert_eq!(s.base.beta(1), &Interval::from_int(3));
        assert!(s.base.quasi_greedy().is_some());
        assert!(check_identities(&s.matrices, &s.fixed_point).ok);
        let s = synthesize_periodic(&list(&["(21)"]), 64).unwrap();
        assert!(s.base.beta(0).overlaps(&quadratic_enclosure(1, 1, 3, 1, 80)));
        assert!(s.base.beta(0).width() <= Dyadic::pow2(-64));
        let s = synthesize_periodic(&list(&["(1)"]), 64).unwrap();
        assert_eq!(s.base.beta(0), &Interval::from_int(2));
        // greedy input goes through the transform: 11 0^ω is the golden ratio
        let s = synthesize_periodic(&list(&["11(0)"]), 64).unwrap();
        assert!(s.base.beta(0).overlaps(&quadratic_enclosure(1, 1, 5, 2, 80)));
        assert_eq!(s.words, vec!["(10)".parse::<UPWord>().unwrap()]);
    }

    #[test]
    fn value_one_examples() {
        let b = AlternateBase::from_rationals(&[(2, 1), (3, 1)]).unwrap();
        let r = verify_value_one(&b, &list(&["(21)", "(12)"]));
        assert!(r.ok && r.complete);
        assert_eq!(r.residuals[0], Interval::zero());
        let two = AlternateBase::from_rationals(&[(2, 1)]).unwrap();
        assert!(verify_value_one(&two, &list(&["(1)"])).ok);
        let r = verify_value_one(&two, &list(&["(21)"]));
        assert!(!r.ok);
        // val = 5/3
        let expect = Interval::from_rational(&BigRational::new(2.into(), 3.into()), -80);
        assert!(r.residuals[0].overlaps(&expect));
    }

    #[test]
    fn stream_residual_is_partial() {
        let two = AlternateBase::from_rationals(&[(2, 1)]).unwrap();
        let l = ExpansionList::new(vec![Entry::stream(|_| 1)]).unwrap();
        let r = verify_value_one(&two, &l);
        assert!(r.ok && !r.complete);
        assert!(r.residuals[0].hi() <= &Dyadic::pow2(-200));
    }

    #[test]
    fn perturbed_base_fails() {
        let s = synthesize_periodic(&list(&["(21)", "(12)"]), 64).unwrap();
        let tenth = AlgNum::from_rational(BigRational::new(1.into(), 10.into()));
        let e = s.base.exact().unwrap();
        let b = AlternateBase::from_exact(vec![&e[0] + &tenth, e[1].clone()], 64).unwrap();
        let r = verify_value_one(&b, &list(&["(21)", "(12)"]));
        assert!(!r.per_entry[0] && !r.per_entry[1]);
    }
}
