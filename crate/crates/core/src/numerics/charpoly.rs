//! Integer matrices and division-free characteristic polynomials.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::IntPoly;

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix rows");
            data.extend(row.iter().cloned().map(Into::into));
        }
        IntMatrix {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(l, j);
                    if !b.is_zero() {
                        out.data[i * o.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale_add_identity(&self, c: &BigInt) -> IntMatrix {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            let v = m.get(i, i) + c;
            m.set(i, i, v);
        }
        m
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|v| !v.is_negative())
    }

    pub fn is_positive(&self) -> bool {
        self.data.iter().all(|v| v.is_positive())
    }

    /// Zero/non-zero pattern of a non-negative matrix.
    pub fn support(&self) -> Vec<Vec<bool>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| !v.is_zero()).collect())
            .collect()
    }

    /// Primitivity of a non-negative square matrix via the Wielandt bound:
    /// primitive iff its `(n²−2n+2)`-th power is positive.
    pub fn is_primitive(&self) -> bool {
        if !self.is_square() || self.rows == 0 || !self.is_nonnegative() {
            return false;
        }
        let n = self.rows;
        let base = self.support();
        let exp = n * n - 2 * n + 2;
        let mut acc: Option<Vec<Vec<bool>>> = None;
        let mut pow = base;
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => pow.clone(),
                    Some(a) => bool_mul(&a, &pow),
                });
            }
            e >>= 1;
            if e > 0 {
                pow = bool_mul(&pow, &pow);
            }
        }
        acc.is_some_and(|a| a.iter().all(|r| r.iter().all(|&b| b)))
    }

    /// Row-major entries as `i64`, if they fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| v.to_i64()).collect())
            .collect()
    }

    /// Characteristic polynomial `det(xI − self)`.
    pub fn charpoly(&self) -> IntPoly {
        charpoly(self)
    }
}

fn bool_mul(a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![false; m]; n];
    for i in 0..n {
        for (l, &al) in a[i].iter().enumerate() {
            if al {
                for j in 0..m {
                    out[i][j] |= b[l][j];
                }
            }
        }
    }
    out
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// `det(xI − m)` by Berkowitz's division-free algorithm. Panics if `m` is not
/// square.
pub fn charpoly(m: &IntMatrix) -> IntPoly {
    assert!(m.is_square(), "charpoly of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return IntPoly::from_i64(&[1]);
    }
    // v holds coefficients in descending degree
    let mut v: Vec<BigInt> = vec![BigInt::one(), -m.get(0, 0).clone()];
    for r in 1..n {
        // leading (r+1)×(r+1) block: [[M, C], [R, a]]
        let a = m.get(r, r).clone();
        let col: Vec<BigInt> = (0..r).map(|i| m.get(i, r).clone()).collect();
        let row: Vec<BigInt> = (0..r).map(|j| m.get(r, j).clone()).collect();
        let mut t = Vec::with_capacity(r + 2);
        t.push(BigInt::one());
        t.push(-a);
        // M^s C for s = 0..r-1
        let mut mc = col;
        for s in 0..r {
            let dot: BigInt = row.iter().zip(&mc).map(|(x, y)| x * y).sum();
            t.push(-dot);
            if s + 1 < r {
                mc = (0..r)
                    .map(|i| (0..r).map(|j| m.get(i, j) * &mc[j]).sum())
                    .collect();
            }
        }
        let mut nv = vec![BigInt::zero(); r + 2];
        for (i, slot) in nv.iter_mut().enumerate() {
            for (j, vj) in v.iter().enumerate().take(i + 1) {
                *slot += &t[i - j] * vj;
            }
        }
        v = nv;
    }
    v.reverse();
    IntPoly::new(v)
}
