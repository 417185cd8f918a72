//! Reals that are either exact algebraic numbers or bare enclosures.
//!
//! Decisions (sign, floor, comparison) are exact on `Exact` values; on
//! `Approx` values they succeed only when the enclosure settles them.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::algebraic::AlgNum;
use super::interval::{Interval, GUARD_BITS};
use super::NumericsError;

/// Precision used when an exact operand meets a point enclosure.
const MIX_BITS: i64 = 256;

#[derive(Clone, Debug)]
pub enum Real {
    Exact(AlgNum),
    Approx(Interval),
}

impl Real {
    pub fn from_int(n: i64) -> Self {
        Real::Exact(AlgNum::from_int(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Real::Exact(AlgNum::from_bigint(n))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Real::Exact(AlgNum::from_rational(q))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Real::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&AlgNum> {
        match self {
            Real::Exact(a) => Some(a),
            Real::Approx(_) => None,
        }
    }

    /// Enclosure with width at most `2^-bits`; approximate values return
    /// their own enclosure whatever its width.
    pub fn enclose(&self, bits: i64) -> Interval {
        match self {
            Real::Exact(a) => a.enclose(bits),
            Real::Approx(iv) => iv.clone(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.enclose(60).to_f64()
    }

    fn mix_bits(iv: &Interval) -> i64 {
        match iv.width_msb() {
            None => MIX_BITS,
            Some(w) => -w + GUARD_BITS,
        }
    }

    fn lift(a: &Real, b: &Real) -> (Interval, Interval) {
        match (a, b) {
            (Real::Approx(x), Real::Approx(y)) => (x.clone(), y.clone()),
            (Real::Exact(x), Real::Approx(y)) => (x.enclose(Real::mix_bits(y)), y.clone()),
            (Real::Approx(x), Real::Exact(y)) => (x.clone(), y.enclose(Real::mix_bits(x))),
            (Real::Exact(_), Real::Exact(_)) => unreachable!("exact pair is handled directly"),
        }
    }

    pub fn add(&self, o: &Real) -> Real {
        match (self, o) {
            (Real::Exact(a), Real::Exact(b)) => Real::Exact(a + b),
            _ => {
                let (x, y) = Real::lift(self, o);
                Real::Approx(&x + &y)
            }
        }
    }

    pub fn sub(&self, o: &Real) -> Real {
        match (self, o) {
            (Real::Exact(a), Real::Exact(b)) => Real::Exact(a - b),
            _ => {
                let (x, y) = Real::lift(self, o);
                Real::Approx(&x - &y)
            }
        }
    }

    pub fn mul(&self, o: &Real) -> Real {
        match (self, o) {
            (Real::Exact(a), Real::Exact(b)) => Real::Exact(a * b),
            _ => {
                let (x, y) = Real::lift(self, o);
                Real::Approx(&x * &y)
            }
        }
    }

    pub fn div(&self, o: &Real) -> Result<Real, NumericsError> {
        match (self, o) {
            (Real::Exact(a), Real::Exact(b)) => Ok(Real::Exact(a.div(b)?)),
            _ => {
                let (x, y) = Real::lift(self, o);
                Ok(Real::Approx(x.div(&y)?))
            }
        }
    }

    pub fn sign(&self) -> Result<Ordering, NumericsError> {
        match self {
            Real::Exact(a) => Ok(a.signum()),
            Real::Approx(iv) => iv.sign().ok_or(NumericsError::Undecidable),
        }
    }

    pub fn cmp(&self, o: &Real) -> Result<Ordering, NumericsError> {
        self.sub(o).sign()
    }

    pub fn floor(&self) -> Result<BigInt, NumericsError> {
        match self {
            Real::Exact(a) => Ok(a.floor()),
            Real::Approx(iv) => iv.floor().ok_or(NumericsError::Undecidable),
        }
    }

    pub fn ceil(&self) -> Result<BigInt, NumericsError> {
        match self {
            Real::Exact(a) => Ok(a.ceil()),
            Real::Approx(iv) => iv.ceil().ok_or(NumericsError::Undecidable),
        }
    }
}

impl From<AlgNum> for Real {
    fn from(a: AlgNum) -> Self {
        Real::Exact(a)
    }
}

impl From<Interval> for Real {
    fn from(iv: Interval) -> Self {
        Real::Approx(iv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::dyadic::Dyadic;

    #[test]
    fn exact_decisions() {
        let a = Real::from_rational(BigRational::new(7.into(), 2.into()));
        assert_eq!(a.floor().unwrap(), BigInt::from(3));
        assert_eq!(a.ceil().unwrap(), BigInt::from(4));
        let b = Real::from_int(4);
        assert_eq!(b.ceil().unwrap(), BigInt::from(4));
        assert_eq!(a.cmp(&b).unwrap(), Ordering::Less);
    }

    #[test]
    fn approx_straddle_is_undecidable() {
        let iv = Interval::new(Dyadic::new(BigInt::from(15), -2), Dyadic::new(BigInt::from(17), -2));
        let r = Real::Approx(iv);
        assert_eq!(r.floor(), Err(NumericsError::Undecidable));
        let s = r.mul(&Real::from_int(2));
        assert!(s.enclose(0).contains(&Dyadic::from_int(8)));
    }
}
