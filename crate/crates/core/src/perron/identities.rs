//! Summation identities satisfied by the fixed point, evaluated in interval
//! arithmetic, plus the recurrence residual check.

use serde::Serialize;

use super::{FixedPoint, MatrixSeq, Shape};
use crate::numerics::{Interval, IntervalJson};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityKind {
    /// `1 = Σ_{j≤h} a_{n+j,j}/(γ_{n+1}⋯γ_{n+j}) + f_{n+h,h+1}/(γ_{n+1}⋯γ_{n+h})`,
    /// or the full sum up to `k` for the finite shape.
    ValueOne,
    /// `f_{n+h,h+1} = Σ_{h<j≤k} a_{n+j,j}/(γ_{n+h+1}⋯γ_{n+j}) + f_{n+k,h+1}/(γ_{n+h+1}⋯γ_{n+k})`.
    Tail,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub n: usize,
    pub kind: IdentityKind,
    /// Enclosure of the right-hand side.
    pub computed: IntervalJson,
    /// The left-hand side: 1, or the enclosure of `f_{n+h,h+1}`.
    pub expected: IntervalJson,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub ok: bool,
    pub checks: Vec<IdentityCheck>,
}

/// Evaluates the shape's identities for every `n mod q`. A check passes when
/// the left-hand side lies in (or, for an enclosed `f` entry, meets) the
/// enclosure of the right-hand side.
pub fn check_identities(ms: &MatrixSeq, fp: &FixedPoint) -> IdentityReport {
    let q = ms.period();
    let k = ms.size();
    let mut checks = Vec::new();
    for n in 0..q {
        let n_i = n as i64;
        let a = |m: i64, j: usize| Interval::from_bigint(ms.a(m, j));
        match ms.shape() {
            Shape::Finite => {
                let rhs = partial_sum(fp, n_i, 1, k, &a, None);
                push(&mut checks, n, IdentityKind::ValueOne, rhs, Interval::one());
            }
            Shape::Parry { h } => {
                let f_h = fp.f(n_i + h as i64)[h].clone();
                let rhs = partial_sum(fp, n_i, 1, h, &a, Some(&f_h));
                push(&mut checks, n, IdentityKind::ValueOne, rhs, Interval::one());
                let f_k = fp.f(n_i + k as i64)[h].clone();
                let rhs = partial_sum(fp, n_i + h as i64, h + 1, k, &a, Some(&f_k));
                push(&mut checks, n, IdentityKind::Tail, rhs, f_h);
            }
        }
    }
    IdentityReport {
        ok: checks.iter().all(|c| c.ok),
        checks,
    }
}

/// `Σ_{j=from}^{to} a_{m_j, j} / (γ_{base+1} ⋯ γ_{m_j}) + tail / (γ_{base+1} ⋯ γ_{m_to})`
/// with `m_j = base + j − from + 1`.
fn partial_sum(
    fp: &FixedPoint,
    base: i64,
    from: usize,
    to: usize,
    a: &dyn Fn(i64, usize) -> Interval,
    tail: Option<&Interval>,
) -> Interval {
    let mut sum = Interval::zero();
    let mut prod = Interval::one();
    for (t, j) in (from..=to).enumerate() {
        let m = base + t as i64 + 1;
        prod = &prod * fp.gamma(m);
        let term = a(m, j).div(&prod).expect("gammas are positive");
        sum = &sum + &term;
    }
    if let Some(f) = tail {
        sum = &sum + &f.div(&prod).expect("gammas are positive");
    }
    sum
}

fn push(checks: &mut Vec<IdentityCheck>, n: usize, kind: IdentityKind, computed: Interval, expected: Interval) {
    let ok = if expected.is_point() {
        computed.contains(expected.lo())
    } else {
        computed.overlaps(&expected)
    };
    checks.push(IdentityCheck {
        n,
        kind,
        computed: (&computed).into(),
        expected: (&expected).into(),
        ok,
    });
}

/// Whether `γ_n f_{n−1}` and `f_n A_n` overlap componentwise for every `n`.
pub fn recurrence_holds(ms: &MatrixSeq, fp: &FixedPoint) -> bool {
    let q = ms.period() as i64;
    let k = ms.size();
    (0..q).all(|n| {
        let lhs: Vec<Interval> = fp.f(n - 1).iter().map(|x| fp.gamma(n) * x).collect();
        let a = ms.at(n);
        (0..k).all(|j| {
            let mut s = Interval::zero();
            for (i, fi) in fp.f(n).iter().enumerate() {
                s = &s + &(fi * &Interval::from_bigint(a.get(i, j)));
            }
            s.overlaps(&lhs[j])
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{Dyadic, IntMatrix};
    use crate::perron::{build_finite_matrices, build_parry_matrices, periodic_fixed_point};

    #[test]
    fn fibonacci_and_parry() {
        let fib = build_finite_matrices(&[vec![1, 1]]).unwrap();
        let fp = periodic_fixed_point(&fib, 64).unwrap();
        let r = check_identities(&fib, &fp);
        assert!(r.ok && r.checks.len() == 1);
        assert!(recurrence_holds(&fib, &fp));
        for ws in [vec!["(21)"], vec!["(21)", "(12)"], vec!["3(1)"], vec!["2(01)", "(2)"]] {
            let words: Vec<_> = ws.iter().map(|s| s.parse().unwrap()).collect();
            let (ms, _) = build_parry_matrices(&words).unwrap();
            let fp = periodic_fixed_point(&ms, 64).unwrap();
            let r = check_identities(&ms, &fp);
            assert!(r.ok, "{ws:?}");
            assert_eq!(r.checks.len(), 2 * ws.len());
            assert!(recurrence_holds(&ms, &fp), "{ws:?}");
        }
    }

    #[test]
    fn boundary_example_and_perturbation() {
        let a2 = IntMatrix::from_rows(&[vec![1, 1, 0], vec![1, 0, 0], vec![0, 1, 0]]);
        let a1 = IntMatrix::from_rows(&[vec![1, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]);
        let a0 = IntMatrix::from_rows(&[vec![1, 1, 1], vec![1, 0, 0], vec![0, 1, 0]]);
        let ms = MatrixSeq::new(vec![a0, a1, a2], Shape::Finite).unwrap();
        let fp = periodic_fixed_point(&ms, 64).unwrap();
        assert!(check_identities(&ms, &fp).ok);
        // n = −1: 1 = a_{0,1}/γ_0 with a_{0,1} = 1 and the rest of f_0 vanishing
        assert_eq!(fp.gamma(0), &Interval::one());
        let mut bad = fp.clone();
        bad.gammas[1] = &fp.gammas[1] + &Interval::point(Dyadic::pow2(-3));
        assert!(!check_identities(&ms, &bad).ok);
        let mut wide = fp.clone();
        wide.gammas[1] = fp.gammas[1].inflate(&Dyadic::pow2(-20));
        assert!(check_identities(&ms, &wide).ok);
    }
}
