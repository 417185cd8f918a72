//! The periodic fixed point `(γ_n, f_n)` of `γ_n f_{n−1} = f_n A_n`.
//!
//! Two independent routes produce it. The exact route reads the left
//! Perron eigenvector of a period product off the adjugate of `λI − P` and
//! propagates it in the number field `Q(λ)`. The enclosure route solves for
//! the eigenvector with a verified interval solve and propagates intervals.
//! Both must agree.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{MatrixSeq, PerronError, Shape};
use crate::numerics::roots::{isolate_largest_root, positive_search};
use crate::numerics::{
    linear_solve_enclosure, AlgNum, Dyadic, IntMatrix, IntPoly, Interval, IntervalJson, RatPoly,
};

/// Exact fixed point over `Q(λ)`.
#[derive(Clone, Debug)]
pub struct ExactFixedPoint {
    pub lambda: AlgNum,
    pub gammas: Vec<AlgNum>,
    pub fs: Vec<Vec<AlgNum>>,
}

/// Per-index enclosures; index `n` stands for every `n + q·Z`.
#[derive(Clone, Debug)]
pub struct FixedPoint {
    pub gammas: Vec<Interval>,
    pub fs: Vec<Vec<Interval>>,
    /// Enclosure of the Perron root `λ = γ_n γ_{n−1} ⋯ γ_{n−q+1}`.
    pub lambda: Interval,
    /// Offset `o` whose period product `P_o` was used.
    pub offset: usize,
    pub exact: ExactFixedPoint,
    /// The same quantities from the interval route.
    pub enclosure_route: RouteEnclosures,
}

#[derive(Clone, Debug)]
pub struct RouteEnclosures {
    pub gammas: Vec<Interval>,
    pub fs: Vec<Vec<Interval>>,
}

impl FixedPoint {
    pub fn period(&self) -> usize {
        self.gammas.len()
    }

    /// `γ_n` for any integer `n`.
    pub fn gamma(&self, n: i64) -> &Interval {
        &self.gammas[n.rem_euclid(self.period() as i64) as usize]
    }

    /// `f_n` for any integer `n`.
    pub fn f(&self, n: i64) -> &[Interval] {
        &self.fs[n.rem_euclid(self.period() as i64) as usize]
    }

    /// Re-encloses every value from the exact route at width `2^-bits`.
    pub fn refined(&self, bits: i64) -> FixedPoint {
        let mut out = self.clone();
        out.gammas = self.exact.gammas.iter().map(|g| g.enclose(bits)).collect();
        out.fs = self
            .exact
            .fs
            .iter()
            .map(|f| f.iter().map(|x| x.enclose(bits)).collect())
            .collect();
        out.lambda = self.exact.lambda.enclose(bits);
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Out {
            offset: usize,
            lambda: IntervalJson,
            gammas: Vec<IntervalJson>,
            fs: Vec<Vec<IntervalJson>>,
        }
        serde_json::to_value(Out {
            offset: self.offset,
            lambda: (&self.lambda).into(),
            gammas: self.gammas.iter().map(Into::into).collect(),
            fs: self
                .fs
                .iter()
                .map(|f| f.iter().map(Into::into).collect())
                .collect(),
        })
        .expect("fixed point serializes")
    }
}

/// Computes the periodic fixed point with every enclosure of width at most
/// `2^-tol_bits`.
pub fn periodic_fixed_point(ms: &MatrixSeq, tol_bits: i64) -> Result<FixedPoint, PerronError> {
    let q = ms.period();
    let k = ms.size();
    let offset = ms.primitive_offset().ok_or(PerronError::NotPrimitive)?;
    let prod = ms.period_product(offset as i64);
    let cp = prod.charpoly();
    let root = isolate_largest_root(&cp, &positive_search(&cp))?;
    let lambda = AlgNum::root_of(root.clone());

    // exact route
    let row = adjugate_first_row(&prod, &cp);
    let field = lambda.field().cloned();
    let eval = |poly: &IntPoly| -> AlgNum {
        let rp = RatPoly::from_int(poly);
        match &field {
            Some(f) => AlgNum::from_poly(f, rp),
            None => AlgNum::from_rational(rp.eval_rational(&lambda.as_rational().expect("rational root"))),
        }
    };
    let raw: Vec<AlgNum> = row.iter().map(eval).collect();
    let norm = raw[0].recip().map_err(|_| PerronError::DegenerateEigenvector)?;
    let f_o: Vec<AlgNum> = raw.iter().map(|x| x * &norm).collect();
    let mut gammas_x: Vec<Option<AlgNum>> = vec![None; q];
    let mut fs_x: Vec<Option<Vec<AlgNum>>> = vec![None; q];
    fs_x[offset] = Some(f_o.clone());
    let mut cur = f_o.clone();
    for step in 0..q {
        let n = offset as i64 - step as i64;
        let v = row_times_exact(&cur, ms.at(n));
        let gamma = v[0].clone();
        let inv = gamma.recip().map_err(|_| PerronError::DegenerateEigenvector)?;
        gammas_x[idx(n, q)] = Some(gamma);
        cur = v.iter().map(|x| x * &inv).collect();
        if step + 1 < q {
            fs_x[idx(n - 1, q)] = Some(cur.clone());
        }
    }
    if cur.iter().zip(&f_o).any(|(a, b)| !a.eq_exact(b)) {
        return Err(PerronError::RouteMismatch("exact propagation does not close the cycle".into()));
    }
    let exact = ExactFixedPoint {
        lambda: lambda.clone(),
        gammas: gammas_x.into_iter().map(|g| g.expect("every index visited")).collect(),
        fs: fs_x.into_iter().map(|f| f.expect("every index visited")).collect(),
    };

    // enclosure route, refined until its widths meet the tolerance
    let mut work = tol_bits + 16;
    let route = loop {
        let lam_iv = root.enclose(work + 8 * q as i64);
        let r = enclosure_route(ms, &prod, &lam_iv, offset)?;
        let widest = r
            .gammas
            .iter()
            .chain(r.fs.iter().flatten())
            .filter_map(|iv| iv.width_msb())
            .max();
        match widest {
            Some(w) if w > -tol_bits => {
                work += (w + tol_bits).max(16);
                if work > tol_bits + 4096 {
                    return Err(PerronError::Numerics(
                        crate::numerics::NumericsError::SingularAfterRefinement,
                    ));
                }
            }
            _ => break r,
        }
    };

    let gammas: Vec<Interval> = exact.gammas.iter().map(|g| g.enclose(tol_bits)).collect();
    let fs: Vec<Vec<Interval>> = exact
        .fs
        .iter()
        .map(|f| f.iter().map(|x| x.enclose(tol_bits)).collect())
        .collect();
    for n in 0..q {
        if !gammas[n].overlaps(&route.gammas[n]) {
            return Err(PerronError::RouteMismatch(format!("gamma_{n} disagrees")));
        }
        for j in 0..k {
            if !fs[n][j].overlaps(&route.fs[n][j]) {
                return Err(PerronError::RouteMismatch(format!("f_{n} entry {} disagrees", j + 1)));
            }
        }
    }
    let lower_ok = exact.gammas.iter().all(|g| match ms.shape() {
        Shape::Parry { .. } => g.cmp_exact(&AlgNum::one()) == Ordering::Greater,
        Shape::Finite => g.cmp_exact(&AlgNum::one()) != Ordering::Less,
    });
    if !lower_ok {
        return Err(PerronError::RouteMismatch("gamma below its shape bound".into()));
    }
    Ok(FixedPoint {
        gammas,
        fs,
        lambda: lambda.enclose(tol_bits),
        offset,
        exact,
        enclosure_route: route,
    })
}

fn idx(n: i64, q: usize) -> usize {
    n.rem_euclid(q as i64) as usize
}

fn row_times_exact(f: &[AlgNum], a: &IntMatrix) -> Vec<AlgNum> {
    let k = a.cols();
    (0..k)
        .map(|j| {
            let mut s = AlgNum::zero();
            for (i, fi) in f.iter().enumerate() {
                let c = a.get(i, j);
                if !c.is_zero() {
                    s = &s + &(fi * &AlgNum::from_bigint(c.clone()));
                }
            }
            s
        })
        .collect()
}

fn row_times_interval(f: &[Interval], a: &IntMatrix) -> Vec<Interval> {
    let k = a.cols();
    (0..k)
        .map(|j| {
            let mut s = Interval::zero();
            for (i, fi) in f.iter().enumerate() {
                let c = a.get(i, j);
                if !c.is_zero() {
                    s = &s + &(fi * &Interval::from_bigint(c));
                }
            }
            s
        })
        .collect()
}

/// First row of `adj(xI − P)` as integer polynomials in `x`, from
/// `B_{k−1} = I`, `B_{j−1} = B_j P + c_j I`, `adj = Σ x^j B_j`.
fn adjugate_first_row(p: &IntMatrix, cp: &IntPoly) -> Vec<IntPoly> {
    let k = p.rows();
    let c = cp.coeffs();
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); k]; k];
    let mut r: Vec<BigInt> = vec![BigInt::zero(); k];
    r[0] = BigInt::one();
    rows[k - 1] = r.clone();
    for j in (1..k).rev() {
        let mut next: Vec<BigInt> = (0..k)
            .map(|col| (0..k).map(|i| &r[i] * p.get(i, col)).sum())
            .collect();
        next[0] += &c[j];
        rows[j - 1] = next.clone();
        r = next;
    }
    (0..k)
        .map(|col| IntPoly::new((0..k).map(|j| rows[j][col].clone()).collect()))
        .collect()
}

fn enclosure_route(
    ms: &MatrixSeq,
    prod: &IntMatrix,
    lam: &Interval,
    offset: usize,
) -> Result<RouteEnclosures, PerronError> {
    let q = ms.period();
    let f_o = linear_solve_enclosure(prod, lam)?;
    // non-negativity of Perron vectors lets negative parts be discarded
    let f_o: Vec<Interval> = f_o.iter().map(|x| x.clamp_nonnegative()).collect();
    let mut gammas = vec![Interval::zero(); q];
    let mut fs = vec![Vec::new(); q];
    fs[offset] = f_o.clone();
    let mut cur = f_o;
    for step in 0..q {
        let n = offset as i64 - step as i64;
        let v = row_times_interval(&cur, ms.at(n));
        let gamma = v[0].clone();
        gammas[idx(n, q)] = gamma.clone();
        cur = v
            .iter()
            .map(|x| x.div(&gamma).map(|y| y.clamp_nonnegative()))
            .collect::<Result<_, _>>()?;
        cur[0] = Interval::one();
        if step + 1 < q {
            fs[idx(n - 1, q)] = cur.clone();
        }
    }
    Ok(RouteEnclosures { gammas, fs })
}

/// Exact rational value of `(a + b√d)/c` enclosed at `bits`, for tests and
/// examples that quote closed forms.
pub fn quadratic_enclosure(a: i64, b: i64, d: i64, c: i64, bits: i64) -> Interval {
    let p = IntPoly::from_i64(&[-d, 0, 1]);
    let s = Interval::new(Dyadic::zero(), Dyadic::from_int(d.max(1)));
    let mut r = isolate_largest_root(&p, &s).expect("d > 0");
    let sq = r.refine(bits + 16);
    let num = &Interval::from_int(a) + &(&Interval::from_int(b) * &sq);
    num.div_prec(&Interval::from_int(c), bits + 16)
        .expect("c != 0")
        .rounded(-bits - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perron::{build_finite_matrices, build_parry_matrices};

    pub(crate) fn boundary_seq() -> MatrixSeq {
        let a2 = IntMatrix::from_rows(&[vec![1, 1, 0], vec![1, 0, 0], vec![0, 1, 0]]);
        let a1 = IntMatrix::from_rows(&[vec![1, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]);
        let a0 = IntMatrix::from_rows(&[vec![1, 1, 1], vec![1, 0, 0], vec![0, 1, 0]]);
        MatrixSeq::new(vec![a0, a1, a2], Shape::Finite).unwrap()
    }

    #[test]
    fn boundary_example_values() {
        let ms = boundary_seq();
        assert_eq!(ms.primitive_offset(), Some(2));
        let fp = periodic_fixed_point(&ms, 64).unwrap();
        assert_eq!(fp.gammas[0], Interval::one());
        assert!(fp.exact.gammas[0].eq_exact(&AlgNum::one()));
        let g1 = quadratic_enclosure(3, 1, 17, 4, 80);
        let g2 = quadratic_enclosure(1, 1, 17, 2, 80);
        let f3 = quadratic_enclosure(-3, 1, 17, 2, 80);
        assert!(fp.gammas[1].overlaps(&g1));
        assert!(fp.gammas[2].overlaps(&g2));
        assert_eq!(fp.fs[0][1], Interval::zero());
        assert!(fp.fs[0][2].overlaps(&f3));
        assert!(fp.gammas[1].width() <= Dyadic::pow2(-64));
    }

    #[test]
    fn constant_sequences() {
        let fib = build_finite_matrices(&[vec![1, 1]]).unwrap();
        let fp = periodic_fixed_point(&fib, 64).unwrap();
        assert!(fp.gammas[0].overlaps(&quadratic_enclosure(1, 1, 5, 2, 80)));
        let (s, _) = build_parry_matrices(&["(21)".parse().unwrap()]).unwrap();
        let fp = periodic_fixed_point(&s, 64).unwrap();
        assert!(fp.gammas[0].overlaps(&quadratic_enclosure(1, 1, 3, 1, 80)));
        assert!(fp.lambda.overlaps(&fp.gammas[0]));
    }

    #[test]
    fn rational_alternate_base() {
        let words = ["(21)".parse().unwrap(), "(12)".parse().unwrap()];
        let (s, _) = build_parry_matrices(&words).unwrap();
        let fp = periodic_fixed_point(&s, 64).unwrap();
        // β_0 = γ_0 = 2, β_1 = γ_{−1} = γ_1 = 3
        assert_eq!(fp.gammas[0], Interval::from_int(2));
        assert_eq!(fp.gammas[1], Interval::from_int(3));
        assert_eq!(fp.lambda, Interval::from_int(6));
    }

    #[test]
    fn adjugate_row_is_left_null_vector() {
        let m = IntMatrix::from_rows(&[vec![2, 3, 2], vec![1, 2, 1], vec![1, 1, 1]]);
        let cp = m.charpoly();
        let row = adjugate_first_row(&m, &cp);
        // row(x)·(xI − M) = χ(x)·e_1, checked at integer points
        for x in -2i64..=4 {
            let xb = BigInt::from(x);
            let r: Vec<BigInt> = row.iter().map(|p| p.eval_bigint(&xb)).collect();
            for col in 0..3 {
                let mut s = BigInt::zero();
                for i in 0..3 {
                    let e = if i == col { xb.clone() } else { BigInt::zero() } - m.get(i, col);
                    s += &r[i] * e;
                }
                let expect = if col == 0 { cp.eval_bigint(&xb) } else { BigInt::zero() };
                assert_eq!(s, expect);
            }
        }
    }
}
