//! Verified left-eigenvector enclosures for a simple eigenvalue.
//!
//! The eigenvector is normalized by `f_1 = 1`, which turns `f (M − λI) = 0`
//! into a square system after one redundant equation is dropped. The system
//! is solved exactly at a dyadic point of the eigenvalue enclosure and the
//! error over the whole enclosure is bounded by a Krawczyk-type contraction
//! argument with an approximate inverse.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, Zero};

use super::charpoly::IntMatrix;
use super::dyadic::Dyadic;
use super::interval::{Interval, GUARD_BITS};
use super::NumericsError;

/// Enclosure of the left eigenvector of `m` for the simple eigenvalue
/// enclosed by `eigenvalue`, normalized so the first entry is exactly 1.
pub fn linear_solve_enclosure(m: &IntMatrix, eigenvalue: &Interval) -> Result<Vec<Interval>, NumericsError> {
    if !m.is_square() || m.rows() == 0 {
        return Err(NumericsError::Dimension);
    }
    let k = m.rows();
    if k == 1 {
        return Ok(vec![Interval::one()]);
    }
    let lam_mid = eigenvalue.mid();
    let lam_f = lam_mid.to_f64();
    let mut candidates: Vec<(f64, usize, Vec<Vec<f64>>)> = Vec::new();
    for drop in (0..k).rev() {
        let cols: Vec<usize> = (0..k).filter(|&j| j != drop).collect();
        let a = system_f64(m, lam_f, &cols);
        if let Some(inv) = invert_f64(&a) {
            let cond = norm_inf(&a) * norm_inf(&inv);
            if cond.is_finite() {
                candidates.push((cond, drop, inv));
            }
        }
    }
    candidates.sort_by(|x, y| x.0.total_cmp(&y.0));
    let bits = eigenvalue.width_msb().map_or(256, |w| (-w).max(64)) + GUARD_BITS;
    for (_, drop, inv) in candidates {
        let cols: Vec<usize> = (0..k).filter(|&j| j != drop).collect();
        let Some(x_exact) = solve_rational(m, &lam_mid.to_rational(), &cols) else {
            continue;
        };
        let x_mid: Vec<Dyadic> = x_exact
            .iter()
            .map(|q| Dyadic::from_rational_down(q, -bits))
            .collect();
        if let Some(err) = krawczyk_radius(m, eigenvalue, &cols, &inv, &x_mid) {
            let mut out = Vec::with_capacity(k);
            out.push(Interval::one());
            for x in x_mid {
                out.push(Interval::point(x).inflate(&err));
            }
            return Ok(out);
        }
    }
    Err(NumericsError::SingularAfterRefinement)
}

/// Row `r` is the equation from column `cols[r]`; column `s` is unknown `f_{s+2}`.
fn system_f64(m: &IntMatrix, lam: f64, cols: &[usize]) -> Vec<Vec<f64>> {
    let k = m.rows();
    cols.iter()
        .map(|&j| {
            (1..k)
                .map(|i| {
                    let v = bigint_f64(m.get(i, j));
                    if i == j {
                        v - lam
                    } else {
                        v
                    }
                })
                .collect()
        })
        .collect()
}

fn bigint_f64(v: &BigInt) -> f64 {
    num_traits::ToPrimitive::to_f64(v).unwrap_or(f64::INFINITY)
}

fn norm_inf(a: &[Vec<f64>]) -> f64 {
    a.iter()
        .map(|r| r.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Gauss–Jordan inverse with partial pivoting; `None` when a pivot vanishes
/// relative to the matrix scale.
fn invert_f64(a: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = a.len();
    let scale = norm_inf(a).max(1.0);
    let mut m: Vec<Vec<f64>> = a.to_vec();
    let mut inv: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    for c in 0..n {
        let p = (c..n).max_by(|&x, &y| m[x][c].abs().total_cmp(&m[y][c].abs()))?;
        if m[p][c].abs() <= 1e-12 * scale {
            return None;
        }
        m.swap(c, p);
        inv.swap(c, p);
        let d = m[c][c];
        for j in 0..n {
            m[c][j] /= d;
            inv[c][j] /= d;
        }
        for r in 0..n {
            if r != c && m[r][c] != 0.0 {
                let f = m[r][c];
                for j in 0..n {
                    m[r][j] -= f * m[c][j];
                    inv[r][j] -= f * inv[c][j];
                }
            }
        }
    }
    Some(inv)
}

/// Exact solve at a rational eigenvalue approximation.
fn solve_rational(m: &IntMatrix, lam: &BigRational, cols: &[usize]) -> Option<Vec<BigRational>> {
    let k = m.rows();
    let n = k - 1;
    let entry = |i: usize, j: usize| {
        let v = BigRational::from_integer(m.get(i, j).clone());
        if i == j {
            v - lam
        } else {
            v
        }
    };
    let mut a: Vec<Vec<BigRational>> = cols
        .iter()
        .map(|&j| {
            let mut row: Vec<BigRational> = (1..k).map(|i| entry(i, j)).collect();
            row.push(-entry(0, j));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        let d = a[c][c].clone();
        for j in c..=n {
            a[c][j] = &a[c][j] / &d;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for j in c..=n {
                    let t = &f * &a[c][j];
                    a[r][j] -= t;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n].clone()).collect())
}

/// Radius `ρ` such that, for every λ in `lam`, the exact solution lies in
/// `x_mid ± ρ` componentwise. `None` when the contraction cannot be verified.
fn krawczyk_radius(
    m: &IntMatrix,
    lam: &Interval,
    cols: &[usize],
    inv: &[Vec<f64>],
    x_mid: &[Dyadic],
) -> Option<Dyadic> {
    let k = m.rows();
    let n = k - 1;
    let entry = |i: usize, j: usize| {
        let v = Interval::from_bigint(m.get(i, j));
        if i == j {
            &v - lam
        } else {
            v
        }
    };
    let a: Vec<Vec<Interval>> = cols
        .iter()
        .map(|&j| (1..k).map(|i| entry(i, j)).collect())
        .collect();
    let b: Vec<Interval> = cols.iter().map(|&j| -entry(0, j)).collect();
    let r: Vec<Vec<Interval>> = inv
        .iter()
        .map(|row| {
            row.iter()
                .map(|&v| Interval::point(f64_dyadic(v)))
                .collect()
        })
        .collect();
    // θ = ‖ |I − R A| ‖_∞
    let mut theta = Dyadic::zero();
    for i in 0..n {
        let mut row_sum = Dyadic::zero();
        for j in 0..n {
            let mut c = if i == j { Interval::one() } else { Interval::zero() };
            for (l, al) in a.iter().enumerate() {
                c = &c - &(&r[i][l] * &al[j]);
            }
            row_sum = &row_sum + &c.mag();
        }
        if row_sum > theta {
            theta = row_sum;
        }
    }
    let half = Dyadic::new(BigInt::from(1), -1);
    if theta >= half {
        return None;
    }
    // ζ = ‖ |R (b − A x_mid)| ‖_∞
    let res: Vec<Interval> = (0..n)
        .map(|l| {
            let mut s = b[l].clone();
            for (s_idx, x) in x_mid.iter().enumerate() {
                s = &s - &(&a[l][s_idx] * &Interval::point(x.clone()));
            }
            s
        })
        .collect();
    let mut zeta = Dyadic::zero();
    for row in r.iter() {
        let mut z = Interval::zero();
        for (l, rl) in row.iter().enumerate() {
            z = &z + &(rl * &res[l]);
        }
        let mz = z.mag();
        if mz > zeta {
            zeta = mz;
        }
    }
    if zeta.is_zero() {
        return Some(Dyadic::zero());
    }
    let denom = &Dyadic::one() - &theta;
    let e = zeta.msb().unwrap_or(0) - GUARD_BITS;
    Some(Dyadic::div_up(&zeta, &denom, e))
}

fn f64_dyadic(v: f64) -> Dyadic {
    if v == 0.0 || !v.is_finite() {
        return Dyadic::zero();
    }
    let q = BigRational::from_f64(v).expect("finite float");
    let neg = q.is_negative();
    // floats are dyadic, so the conversion is exact
    let d = Dyadic::from_rational_down(&q.abs(), -1100);
    if neg {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::roots::{perron_root, positive_search};

    #[test]
    fn fibonacci_eigenvector() {
        let m = IntMatrix::from_rows(&[vec![1, 1], vec![1, 0]]);
        let cp = m.charpoly();
        let lam = perron_root(&cp, &positive_search(&cp)).unwrap().enclose(100);
        let f = linear_solve_enclosure(&m, &lam).unwrap();
        assert_eq!(f[0], Interval::one());
        let expect = (5f64.sqrt() - 1.0) / 2.0;
        assert!((f[1].to_f64() - expect).abs() < 1e-15);
        assert!(f[1].width() <= Dyadic::pow2(-90));
    }

    #[test]
    fn identity_is_rejected() {
        let m = IntMatrix::identity(2);
        let r = linear_solve_enclosure(&m, &Interval::one());
        assert_eq!(r, Err(NumericsError::SingularAfterRefinement));
    }

    #[test]
    fn boundary_product_eigenvector() {
        let a2 = IntMatrix::from_rows(&[vec![1, 1, 0], vec![1, 0, 0], vec![0, 1, 0]]);
        let a1 = IntMatrix::from_rows(&[vec![1, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]);
        let a0 = IntMatrix::from_rows(&[vec![1, 1, 1], vec![1, 0, 0], vec![0, 1, 0]]);
        let p = a2.mul(&a1).mul(&a0);
        assert!(p.is_positive());
        let cp = p.charpoly();
        let lam = perron_root(&cp, &positive_search(&cp)).unwrap().enclose(120);
        let f = linear_solve_enclosure(&p, &lam).unwrap();
        assert_eq!(f[0], Interval::one());
        // f A2 A1 A0 = λ f with f_1 = 1, checked through the residual
        for j in 0..3 {
            let mut lhs = Interval::zero();
            for (i, fi) in f.iter().enumerate() {
                lhs = &lhs + &(fi * &Interval::from_bigint(p.get(i, j)));
            }
            let rhs = &lam * &f[j];
            assert!(lhs.overlaps(&rhs));
        }
    }

    #[test]
    fn f64_conversion_exact() {
        assert_eq!(f64_dyadic(0.375).to_rational(), BigRational::new(3.into(), 8.into()));
        assert_eq!(f64_dyadic(-2.0), Dyadic::from_int(-2));
    }
}
