//! Univariate polynomials over `Z` (public) and `Q` (internal helper for
//! gcds, Sturm chains and number-field arithmetic).

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::dyadic::Dyadic;
use super::interval::Interval;

/// Integer polynomial, coefficients in ascending degree. The zero polynomial
/// has no coefficients; otherwise the leading coefficient is non-zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `x - r`.
    pub fn linear(r: i64) -> Self {
        IntPoly::from_i64(&[-r, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval_bigint(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Exact value at a dyadic point.
    pub fn eval_dyadic(&self, x: &Dyadic) -> Dyadic {
        let mut acc = Dyadic::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &Dyadic::from_bigint(c.clone());
        }
        acc
    }

    /// Sign of the exact value at a dyadic point.
    pub fn sign_at(&self, x: &Dyadic) -> Ordering {
        self.eval_dyadic(x).signum().cmp(&0)
    }

    /// Horner evaluation over an interval.
    pub fn eval_interval(&self, x: &Interval) -> Interval {
        let mut acc = Interval::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &Interval::from_bigint(c);
        }
        acc
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::new(vec![]);
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn pow(&self, n: u32) -> IntPoly {
        let mut acc = IntPoly::from_i64(&[1]);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Number of trailing zero coefficients, i.e. the multiplicity of 0 as a root.
    pub fn zero_root_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divides by `x^k`.
    pub fn shift_down(&self, k: usize) -> IntPoly {
        IntPoly::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        if self.leading().is_some_and(|l| l.is_negative()) {
            g = -g;
        }
        IntPoly::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Squarefree part `p / gcd(p, p')`, made primitive.
    pub fn squarefree(&self) -> IntPoly {
        let p = RatPoly::from_int(self);
        let g = p.gcd(&p.derivative());
        if g.degree().unwrap_or(0) == 0 {
            return self.primitive();
        }
        p.divrem(&g).0.to_primitive_int()
    }

    /// Sturm chain of a squarefree polynomial, each member scaled by a
    /// positive factor to integer coefficients.
    pub fn sturm_chain(&self) -> Vec<IntPoly> {
        let mut chain = vec![self.primitive_keep_sign(), self.derivative().primitive_keep_sign()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            if chain[n - 1].degree() == Some(0) {
                break;
            }
            let a = RatPoly::from_int(&chain[n - 2]);
            let b = RatPoly::from_int(&chain[n - 1]);
            let r = a.divrem(&b).1.neg();
            if r.is_zero() {
                break;
            }
            chain.push(r.to_int_keep_sign());
        }
        chain
    }

    fn primitive_keep_sign(&self) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        IntPoly::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Number of distinct real roots in `(a, b]`, assuming `self` squarefree
    /// and `a` not a root.
    pub fn count_roots(chain: &[IntPoly], a: &Dyadic, b: &Dyadic) -> usize {
        let va = sign_variations(chain, a);
        let vb = sign_variations(chain, b);
        va.saturating_sub(vb)
    }

    /// Cauchy bound: every complex root has modulus `< bound`.
    pub fn root_bound(&self) -> BigInt {
        let lead = self.leading().expect("nonzero polynomial").abs();
        let mut m = BigInt::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let q = c.abs().div_ceil(&lead);
            if q > m {
                m = q;
            }
        }
        m + 1
    }
}

fn sign_variations(chain: &[IntPoly], x: &Dyadic) -> usize {
    let mut last = 0;
    let mut count = 0;
    for p in chain {
        let s = p.eval_dyadic(x).signum();
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let show_coeff = !abs.is_one() || i == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Rational polynomial, ascending degree, trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: vec![] }
    }

    pub fn constant(c: BigRational) -> Self {
        RatPoly::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        RatPoly::new(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn from_int(p: &IntPoly) -> Self {
        RatPoly::new(
            p.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// The constant value, if the polynomial has degree ≤ 0.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = BigRational::zero();
        RatPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, o: &RatPoly) -> RatPoly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> RatPoly {
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, s: &BigRational) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, o: &RatPoly) -> RatPoly {
        if self.is_zero() || o.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        RatPoly::new(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &RatPoly) -> (RatPoly, RatPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.coeffs[dd].clone();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (RatPoly::zero(), self.clone());
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            let c = &r[i] / &lead;
            for (j, dc) in d.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    let t = &c * dc;
                    r[i - dd + j] -= t;
                }
            }
            q[i - dd] = c;
        }
        r.truncate(dd);
        (RatPoly::new(q), RatPoly::new(r))
    }

    pub fn rem(&self, d: &RatPoly) -> RatPoly {
        if self.degree() < d.degree() {
            return self.clone();
        }
        self.divrem(d).1
    }

    pub fn monic(&self) -> RatPoly {
        match self.leading() {
            None => self.clone(),
            Some(l) => {
                let inv = l.recip();
                self.scale(&inv)
            }
        }
    }

    pub fn derivative(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, o: &RatPoly) -> RatPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.to_primitive_rat();
        }
        a.monic()
    }

    /// Returns `(g, s)` with `g = gcd(self, m)` monic and `s·self ≡ g (mod m)`.
    pub fn ext_gcd(&self, m: &RatPoly) -> (RatPoly, RatPoly) {
        let (mut r0, mut r1) = (m.clone(), self.rem(m));
        let (mut s0, mut s1) = (RatPoly::zero(), RatPoly::constant(BigRational::one()));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        let l = r0.leading().cloned().unwrap_or_else(BigRational::one).recip();
        (r0.scale(&l), s0.scale(&l))
    }

    /// Positive rational multiple with coprime integer coefficients; keeps
    /// the sign of the leading coefficient.
    fn to_primitive_rat(&self) -> RatPoly {
        if self.is_zero() {
            return self.clone();
        }
        let ip = self.to_int_keep_sign();
        RatPoly::from_int(&ip)
    }

    /// Positive rational multiple with integer coefficients.
    pub fn to_int_keep_sign(&self) -> IntPoly {
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        IntPoly::new(ints).primitive_keep_sign()
    }

    /// Integer multiple, primitive, positive leading coefficient.
    pub fn to_primitive_int(&self) -> IntPoly {
        self.to_int_keep_sign().primitive()
    }

    /// Exact value at a rational point.
    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Horner evaluation over an interval; coefficients are enclosed on the
    /// grid `2^e`.
    pub fn eval_interval(&self, x: &Interval, e: i64) -> Interval {
        let mut acc = Interval::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &Interval::from_rational(c, e);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_derivative() {
        let p = IntPoly::from_i64(&[0, -2, -2, 1]);
        assert_eq!(p.to_string(), "x^3 - 2x^2 - 2x");
        assert_eq!(p.derivative(), IntPoly::from_i64(&[-2, -4, 3]));
        assert_eq!(IntPoly::from_i64(&[-1, -1, 1]).to_string(), "x^2 - x - 1");
    }

    #[test]
    fn squarefree_removes_repeated_factors() {
        // (x-1)^3 (x+2)
        let p = IntPoly::linear(1).pow(3).mul(&IntPoly::linear(-2));
        assert_eq!(p.squarefree(), IntPoly::linear(1).mul(&IntPoly::linear(-2)));
    }

    #[test]
    fn sturm_counts_distinct_real_roots() {
        // (x-1)(x-2)(x^2+1): two real roots
        let p = IntPoly::linear(1)
            .mul(&IntPoly::linear(2))
            .mul(&IntPoly::from_i64(&[1, 0, 1]));
        let chain = p.sturm_chain();
        let n = IntPoly::count_roots(&chain, &Dyadic::from_int(-10), &Dyadic::from_int(10));
        assert_eq!(n, 2);
        let n = IntPoly::count_roots(
            &chain,
            &Dyadic::new(3.into(), -1),
            &Dyadic::from_int(10),
        );
        assert_eq!(n, 1);
    }

    #[test]
    fn ext_gcd_inverts_modulo() {
        let m = RatPoly::from_int(&IntPoly::from_i64(&[-1, -1, 1]));
        let a = RatPoly::from_int(&IntPoly::from_i64(&[2, 3]));
        let (g, s) = a.ext_gcd(&m);
        assert_eq!(g.degree(), Some(0));
        let prod = a.mul(&s).rem(&m);
        assert_eq!(prod, RatPoly::constant(BigRational::one()));
    }

    #[test]
    fn gcd_detects_common_factor() {
        let a = RatPoly::from_int(&IntPoly::linear(3).mul(&IntPoly::linear(1)));
        let b = RatPoly::from_int(&IntPoly::linear(3).mul(&IntPoly::linear(-4)));
        assert_eq!(a.gcd(&b), RatPoly::from_int(&IntPoly::linear(3)));
    }

    #[test]
    fn root_bound_dominates_roots() {
        let p = IntPoly::from_i64(&[0, -2, -2, 1]);
        assert!(p.root_bound() >= BigInt::from(3));
    }
}
