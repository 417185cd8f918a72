use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::PerronError;
use crate::numerics::IntMatrix;
use crate::words::{Digit, UPWord};

/// Companion-like shapes: the first row is free, rows below carry an identity
/// block, and the last column below the first row is either the unit vector
/// `e_h` or zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "shape", rename_all = "kebab-case")]
pub enum Shape {
    Parry { h: usize },
    Finite,
}

/// A purely periodic sequence `A_n = matrices[n mod q]` of square matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixSeq {
    matrices: Vec<IntMatrix>,
    shape: Shape,
}

impl MatrixSeq {
    /// Validates the shape of every matrix and that some period product is
    /// primitive.
    pub fn new(matrices: Vec<IntMatrix>, shape: Shape) -> Result<Self, PerronError> {
        let Some(first) = matrices.first() else {
            return Err(PerronError::Shape("empty matrix sequence".into()));
        };
        let k = first.rows();
        if k < 2 {
            return Err(PerronError::Shape("matrices must have size at least 2".into()));
        }
        if let Shape::Parry { h } = shape {
            if h < 1 || h > k - 1 {
                return Err(PerronError::Shape(format!("need 1 <= h <= k-1, got h={h}, k={k}")));
            }
        }
        for (n, m) in matrices.iter().enumerate() {
            if m.rows() != k || m.cols() != k {
                return Err(PerronError::Shape(format!("matrix {n} is not {k}x{k}")));
            }
            if m.row(0).iter().any(|v| v.is_negative()) || m.get(0, 0) < &BigInt::one() {
                return Err(PerronError::Shape(format!(
                    "matrix {n} needs a non-negative first row with (1,1) entry >= 1"
                )));
            }
            for i in 1..k {
                for j in 0..k {
                    let mut expect = u32::from(j + 1 == i);
                    if let Shape::Parry { h } = shape {
                        expect += u32::from(i == h && j == k - 1);
                    }
                    if *m.get(i, j) != BigInt::from(expect) {
                        return Err(PerronError::Shape(format!(
                            "matrix {n} entry ({},{}) should be {expect}",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        let seq = MatrixSeq { matrices, shape };
        if seq.primitive_offset().is_none() {
            return Err(PerronError::NotPrimitive);
        }
        Ok(seq)
    }

    pub fn period(&self) -> usize {
        self.matrices.len()
    }

    pub fn size(&self) -> usize {
        self.matrices[0].rows()
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn matrices(&self) -> &[IntMatrix] {
        &self.matrices
    }

    /// `A_n` for any integer `n`.
    pub fn at(&self, n: i64) -> &IntMatrix {
        &self.matrices[n.rem_euclid(self.period() as i64) as usize]
    }

    /// First-row entry `a_{n,j}` of `A_n`, `j` 1-based.
    pub fn a(&self, n: i64, j: usize) -> &BigInt {
        self.at(n).get(0, j - 1)
    }

    /// `P_n = A_n A_{n−1} ⋯ A_{n−q+1}`.
    pub fn period_product(&self, n: i64) -> IntMatrix {
        let q = self.period() as i64;
        let mut acc = self.at(n).clone();
        for t in 1..q {
            acc = acc.mul(self.at(n - t));
        }
        acc
    }

    /// Smallest offset `o` in `0..q` whose period product is primitive.
    pub fn primitive_offset(&self) -> Option<usize> {
        (0..self.period()).find(|&o| self.period_product(o as i64).is_primitive())
    }

    /// Row-major matrices, for debugging output.
    pub fn to_json(&self) -> serde_json::Value {
        let mats: Vec<Vec<Vec<i64>>> = self
            .matrices
            .iter()
            .map(|m| m.to_i64_rows().unwrap_or_default())
            .collect();
        let mut v = serde_json::json!({ "k": self.size(), "q": self.period(), "matrices": mats });
        let shape = serde_json::to_value(self.shape).expect("shape serializes");
        if let (Some(obj), serde_json::Value::Object(s)) = (v.as_object_mut(), shape) {
            obj.extend(s);
        }
        v
    }
}

/// Alignment chosen for a list of UP words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Alignment {
    /// Common preperiod is `m·p`, with `m ≥ 1`.
    pub m: usize,
    /// Common period is `n·p`.
    pub n: usize,
    pub k: usize,
    pub h: usize,
}

/// Matrices `A_n` of size `k = (M+N)p` with first row `a_{j−n, j}` and an
/// extra 1 at `(Mp+1, k)`, for quasi-greedy candidate words `a_0, …, a_{p−1}`.
///
/// Purely periodic inputs are unrolled once so that `h = Mp ≥ 1`.
pub fn build_parry_matrices(words: &[UPWord]) -> Result<(MatrixSeq, Alignment), PerronError> {
    let p = words.len();
    if p == 0 {
        return Err(PerronError::Shape("empty expansion list".into()));
    }
    for (index, w) in words.iter().enumerate() {
        if w.ends_in_zeros() {
            return Err(PerronError::ZeroTail { index });
        }
        if w.digit(1) == 0 {
            return Err(PerronError::ZeroLeadDigit { index });
        }
    }
    let np = words.iter().fold(p, |acc, w| acc.lcm(&w.period().len()));
    let pmax = words.iter().map(|w| w.preperiod().len()).max().unwrap_or(0);
    let m = pmax.div_ceil(p).max(1);
    let n = np / p;
    let h = m * p;
    let k = h + np;
    let mut mats = Vec::with_capacity(p);
    for idx in 0..p {
        let mut a = IntMatrix::zeros(k, k);
        for j in 1..=k {
            let src = &words[(j as i64 - idx as i64).rem_euclid(p as i64) as usize];
            a.set(0, j - 1, BigInt::from(src.digit(j)));
        }
        for i in 1..k {
            a.set(i, i - 1, BigInt::one());
        }
        let v = a.get(h, k - 1) + BigInt::one();
        a.set(h, k - 1, v);
        mats.push(a);
    }
    let seq = MatrixSeq::new(mats, Shape::Parry { h })?;
    Ok((seq, Alignment { m, n, k, h }))
}

/// Finite-shape matrices for a purely periodic directive `ψ_0, …, ψ_{q−1}`
/// with parameter tuples `tuples[n]`; `A_n` has first row `tuples[(−n) mod q]`.
pub fn build_finite_matrices(tuples: &[Vec<Digit>]) -> Result<MatrixSeq, PerronError> {
    let q = tuples.len();
    let Some(k) = tuples.first().map(|t| t.len()) else {
        return Err(PerronError::Shape("empty directive".into()));
    };
    if tuples.iter().any(|t| t.len() != k) {
        return Err(PerronError::Shape("directive tuples differ in arity".into()));
    }
    let mut mats = Vec::with_capacity(q);
    for n in 0..q {
        let c = &tuples[(q - n) % q];
        let mut a = IntMatrix::zeros(k, k);
        for (j, &cj) in c.iter().enumerate() {
            a.set(0, j, BigInt::from(cj));
        }
        for i in 1..k {
            a.set(i, i - 1, BigInt::one());
        }
        mats.push(a);
    }
    MatrixSeq::new(mats, Shape::Finite)
}

/// First-row entries as machine integers, for callers that need digits back.
pub fn first_row_digits(m: &IntMatrix) -> Vec<Digit> {
    m.row(0)
        .iter()
        .map(|v| v.to_u32().unwrap_or(if v.is_zero() { 0 } else { u32::MAX }))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(s: &str) -> UPWord {
        s.parse().unwrap()
    }

    #[test]
    fn parry_examples() {
        let (s, al) = build_parry_matrices(&[up("(21)")]).unwrap();
        assert_eq!((al.m, al.n, al.k, al.h), (1, 2, 3, 1));
        assert_eq!(s.at(0), &IntMatrix::from_rows(&[vec![2, 1, 2], vec![1, 0, 1], vec![0, 1, 0]]));
        let (s, al) = build_parry_matrices(&[up("(1)")]).unwrap();
        assert_eq!((al.m, al.n), (1, 1));
        assert_eq!(s.at(0), &IntMatrix::from_rows(&[vec![1, 1], vec![1, 1]]));
        let (s, al) = build_parry_matrices(&[up("(21)"), up("(12)")]).unwrap();
        assert_eq!((al.m, al.n, al.k), (1, 1, 4));
        // (A_0)_{1,j} = a_{j mod 2, j}: a_{1,1} a_{0,2} a_{1,3} a_{0,4} = 1 1 1 1
        assert_eq!(first_row_digits(s.at(0)), vec![1, 1, 1, 1]);
        assert_eq!(first_row_digits(s.at(1)), vec![2, 2, 2, 2]);
    }

    #[test]
    fn parry_rejects_bad_input() {
        assert_eq!(
            build_parry_matrices(&[up("0(1)")]).unwrap_err(),
            PerronError::ZeroLeadDigit { index: 0 }
        );
        assert_eq!(
            build_parry_matrices(&[up("2(0)")]).unwrap_err(),
            PerronError::ZeroTail { index: 0 }
        );
    }

    #[test]
    fn finite_examples() {
        let s = build_finite_matrices(&[vec![1, 1]]).unwrap();
        assert_eq!(s.at(0), &IntMatrix::from_rows(&[vec![1, 1], vec![1, 0]]));
        let s = build_finite_matrices(&[vec![2, 2]]).unwrap();
        assert_eq!(s.at(0), &IntMatrix::from_rows(&[vec![2, 2], vec![1, 0]]));
        let s = build_finite_matrices(&[vec![1, 1, 1]]).unwrap();
        assert_eq!(
            s.at(0),
            &IntMatrix::from_rows(&[vec![1, 1, 1], vec![1, 0, 0], vec![0, 1, 0]])
        );
        let s = build_finite_matrices(&[vec![3, 1], vec![1, 1]]).unwrap();
        assert_eq!(first_row_digits(s.at(0)), vec![3, 1]);
        assert_eq!(first_row_digits(s.at(1)), vec![1, 1]);
        assert_eq!(first_row_digits(s.at(-1)), vec![1, 1]);
    }

    #[test]
    fn shape_validation() {
        let bad = IntMatrix::from_rows(&[vec![1, 1], vec![0, 0]]);
        assert!(MatrixSeq::new(vec![bad], Shape::Finite).is_err());
        let perm_like = IntMatrix::from_rows(&[vec![1, 0], vec![1, 0]]);
        assert_eq!(
            MatrixSeq::new(vec![perm_like], Shape::Finite).unwrap_err(),
            PerronError::NotPrimitive
        );
    }
}
