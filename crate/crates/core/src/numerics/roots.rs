//! Certified isolation of real roots of integer polynomials.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::One;

use super::dyadic::Dyadic;
use super::interval::Interval;
use super::poly::IntPoly;
use super::NumericsError;

/// An isolating enclosure of one simple real root of a squarefree polynomial.
///
/// Invariant: either `lo == hi` and the root is exactly `lo`, or the
/// polynomial is non-zero at both endpoints with opposite signs and has no
/// other root in `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootEnclosure {
    poly: IntPoly,
    lo: Dyadic,
    hi: Dyadic,
    sign_lo: Ordering,
}

impl RootEnclosure {
    /// The squarefree polynomial whose root is enclosed.
    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn interval(&self) -> Interval {
        Interval::new(self.lo.clone(), self.hi.clone())
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    /// One bisection step; the new interval is contained in the old one.
    pub fn bisect(&mut self) {
        if self.is_exact() {
            return;
        }
        let mid = Dyadic::midpoint(&self.lo, &self.hi);
        match self.poly.sign_at(&mid) {
            Ordering::Equal => {
                self.lo = mid.clone();
                self.hi = mid;
            }
            s if s == self.sign_lo => self.lo = mid,
            _ => self.hi = mid,
        }
    }

    /// Bisects until the width is at most `2^-bits`.
    pub fn refine(&mut self, bits: i64) -> Interval {
        let target = Dyadic::pow2(-bits);
        while !self.is_exact() && &self.hi - &self.lo > target {
            self.bisect();
        }
        self.interval()
    }

    /// Encloses the root with width at most `2^-bits`, without mutating.
    pub fn enclose(&self, bits: i64) -> Interval {
        let mut c = self.clone();
        c.refine(bits)
    }

    /// Replaces the enclosure polynomial by a squarefree factor that still
    /// vanishes at the root.
    pub fn with_factor(&self, factor: IntPoly) -> RootEnclosure {
        let sign_lo = if self.is_exact() {
            Ordering::Equal
        } else {
            factor.sign_at(&self.lo)
        };
        RootEnclosure {
            poly: factor,
            lo: self.lo.clone(),
            hi: self.hi.clone(),
            sign_lo,
        }
    }

    /// Decides whether a squarefree divisor `g` of the enclosing polynomial
    /// vanishes at the root.
    pub fn divisor_vanishes(&self, g: &IntPoly) -> bool {
        if self.is_exact() {
            return g.sign_at(&self.lo) == Ordering::Equal;
        }
        g.sign_at(&self.lo) != g.sign_at(&self.hi)
    }

    /// The root as an exact integer, if it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.is_exact() && self.lo.exponent() >= 0 {
            Some(self.lo.floor())
        } else {
            None
        }
    }
}

/// Isolates the largest real root of `p` inside `(search.lo, search.hi]`.
///
/// Works on the squarefree part, so the root is simple there. Integer
/// candidates are tested exactly once the enclosure is narrower than 1, so
/// integer roots always come back as point enclosures.
pub fn isolate_largest_root(p: &IntPoly, search: &Interval) -> Result<RootEnclosure, NumericsError> {
    if p.degree().unwrap_or(0) == 0 {
        return Err(NumericsError::NoSignChange);
    }
    let q = p.squarefree();
    let chain = q.sturm_chain();
    let mut lo = search.lo().clone();
    let mut hi = search.hi().clone();
    if IntPoly::count_roots(&chain, &lo, &hi) == 0 {
        return Err(NumericsError::NoSignChange);
    }
    // shrink until exactly one root remains in (lo, hi]
    while IntPoly::count_roots(&chain, &lo, &hi) > 1 {
        let mid = Dyadic::midpoint(&lo, &hi);
        if IntPoly::count_roots(&chain, &mid, &hi) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if q.sign_at(&hi) == Ordering::Equal {
        return Ok(exact(q, hi));
    }
    // the root is now interior to (lo, hi); lo may itself be a smaller root
    if q.sign_at(&lo) == Ordering::Equal {
        loop {
            let mid = Dyadic::midpoint(&lo, &hi);
            let s = q.sign_at(&mid);
            if s == Ordering::Equal {
                return Ok(exact(q, mid));
            }
            if IntPoly::count_roots(&chain, &mid, &hi) == 1 {
                lo = mid;
                break;
            }
            hi = mid;
        }
    }
    let sign_lo = q.sign_at(&lo);
    let mut enc = RootEnclosure {
        poly: q,
        lo,
        hi,
        sign_lo,
    };
    while !enc.is_exact() && &enc.hi - &enc.lo >= Dyadic::one() {
        enc.bisect();
    }
    if !enc.is_exact() {
        let a = enc.lo.ceil();
        let b = enc.hi.floor();
        let mut n = a;
        while n <= b {
            let d = Dyadic::from_bigint(n.clone());
            if enc.poly.sign_at(&d) == Ordering::Equal {
                return Ok(exact(enc.poly, d));
            }
            n += 1;
        }
    }
    Ok(enc)
}

fn exact(poly: IntPoly, x: Dyadic) -> RootEnclosure {
    RootEnclosure {
        poly,
        lo: x.clone(),
        hi: x,
        sign_lo: Ordering::Equal,
    }
}

/// Isolates the dominant real root of `p` in `search`, refined to width
/// `2^-64`. The caller certifies that `search` contains the Perron root.
pub fn perron_root(p: &IntPoly, search: &Interval) -> Result<RootEnclosure, NumericsError> {
    let mut enc = isolate_largest_root(p, search)?;
    enc.refine(64);
    Ok(enc)
}

/// Search interval `[0, bound]` with every real root of `p` inside.
pub fn positive_search(p: &IntPoly) -> Interval {
    Interval::new(Dyadic::zero(), Dyadic::from_bigint(p.root_bound()))
}

/// `X^p − X^{p−1} − ⋯ − 1`.
pub fn alpha_poly(p: usize) -> IntPoly {
    let mut c = vec![-BigInt::one(); p + 1];
    c[p] = BigInt::one();
    IntPoly::new(c)
}

/// The root in `[1, 2)` of `X^p − X^{p−1} − ⋯ − 1`; exactly 1 when `p = 1`.
pub fn alpha_root(p: usize) -> RootEnclosure {
    assert!(p >= 1, "alpha_root needs p >= 1");
    let search = Interval::new(Dyadic::new(BigInt::from(1), -1), Dyadic::from_int(2));
    let mut enc = isolate_largest_root(&alpha_poly(p), &search)
        .expect("alpha polynomial has a root in [1, 2)");
    enc.refine(64);
    enc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn approx(enc: &RootEnclosure, bits: i64) -> f64 {
        enc.enclose(bits).to_f64()
    }

    #[test]
    fn golden_ratio() {
        let p = IntPoly::from_i64(&[-1, -1, 1]);
        let s = Interval::new(Dyadic::from_int(1), Dyadic::from_int(2));
        let mut r = perron_root(&p, &s).unwrap();
        let iv = r.refine(45);
        assert!(iv.width() <= Dyadic::pow2(-40));
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((iv.to_f64() - phi).abs() < 1e-12);
    }

    #[test]
    fn one_plus_sqrt3() {
        let p = IntPoly::from_i64(&[-2, -2, 1]);
        let s = Interval::new(Dyadic::from_int(2), Dyadic::from_int(3));
        let r = perron_root(&p, &s).unwrap();
        assert!((approx(&r, 50) - (1.0 + 3f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn integer_root_is_exact() {
        let p = IntPoly::linear(1);
        let s = Interval::new(Dyadic::new(BigInt::from(1), -1), Dyadic::new(BigInt::from(3), -1));
        let r = perron_root(&p, &s).unwrap();
        assert!(r.is_exact());
        assert_eq!(r.interval(), Interval::from_int(1));
        // x^3 - 2x^2 - 2x has roots 0 and 1 ± sqrt3; the largest is irrational
        let q = IntPoly::from_i64(&[0, -6, 1, 1]); // x(x-2)(x+3)
        let r = perron_root(&q, &positive_search(&q)).unwrap();
        assert_eq!(r.as_integer(), Some(BigInt::from(2)));
    }

    #[test]
    fn no_root() {
        let p = IntPoly::from_i64(&[1, 0, 1]);
        let s = Interval::new(Dyadic::from_int(-3), Dyadic::from_int(3));
        assert_eq!(perron_root(&p, &s), Err(NumericsError::NoSignChange));
    }

    #[test]
    fn alpha_values() {
        assert_eq!(alpha_root(1).interval(), Interval::from_int(1));
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((approx(&alpha_root(2), 50) - phi).abs() < 1e-12);
        let a3 = alpha_root(3).enclose(40);
        assert!(a3.width() <= Dyadic::pow2(-34));
        assert!((a3.to_f64() - 1.839_286_755_2).abs() < 1e-9);
    }

    #[test]
    fn refinement_is_monotone() {
        let p = IntPoly::from_i64(&[-1, -1, -1, 1]);
        let mut r = isolate_largest_root(&p, &positive_search(&p)).unwrap();
        let mut prev = r.interval();
        for _ in 0..80 {
            r.bisect();
            let cur = r.interval();
            assert!(prev.encloses(&cur));
            prev = cur;
        }
    }
}
