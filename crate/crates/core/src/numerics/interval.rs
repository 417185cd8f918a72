//! Closed intervals with dyadic endpoints and outward rounding.
//!
//! Sums and products of dyadics are exact; after each operation the result
//! is trimmed outward to `GUARD_BITS` below the magnitude of its own width,
//! so mantissas stay proportional to the information the interval carries.
//! Point intervals are never trimmed.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::dyadic::{Dyadic, DyadicJson};
use super::NumericsError;

/// Extra bits kept below the width when trimming.
pub const GUARD_BITS: i64 = 64;

/// Relative precision used when dividing by a point interval through the
/// `/` operator.
pub const DEFAULT_DIV_BITS: i64 = 256;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
}

impl Interval {
    /// Panics if `lo > hi`.
    pub fn new(lo: Dyadic, hi: Dyadic) -> Self {
        assert!(lo <= hi, "interval with lo > hi");
        Interval { lo, hi }
    }

    pub fn point(x: Dyadic) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Interval::point(Dyadic::from_int(n))
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        Interval::point(Dyadic::from_bigint(n.clone()))
    }

    pub fn zero() -> Self {
        Interval::from_int(0)
    }

    pub fn one() -> Self {
        Interval::from_int(1)
    }

    /// Enclosure of `q` with endpoints on the grid `2^e`.
    pub fn from_rational(q: &BigRational, e: i64) -> Self {
        let lo = Dyadic::from_rational_down(q, e);
        if lo.to_rational() == *q {
            return Interval::point(lo);
        }
        Interval {
            lo,
            hi: Dyadic::from_rational_up(q, e),
        }
    }

    /// Enclosure of `q` with width at most `2^-bits` relative to its magnitude.
    pub fn from_rational_rel(q: &BigRational, bits: i64) -> Self {
        let mag = Dyadic::from_rational_down(&num_traits::Signed::abs(q), 0)
            .msb()
            .unwrap_or(0);
        Interval::from_rational(q, mag - bits)
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn width(&self) -> Dyadic {
        &self.hi - &self.lo
    }

    /// `floor(log2(width))`, `None` for point intervals.
    pub fn width_msb(&self) -> Option<i64> {
        self.width().msb()
    }

    /// True when the width is at most `2^-bits`.
    pub fn width_below(&self, bits: i64) -> bool {
        self.width() <= Dyadic::pow2(-bits)
    }

    pub fn mid(&self) -> Dyadic {
        Dyadic::midpoint(&self.lo, &self.hi)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        self.lo.to_rational() <= *q && *q <= self.hi.to_rational()
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&Dyadic::zero())
    }

    pub fn encloses(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = std::cmp::max(&self.lo, &other.lo).clone();
        let hi = std::cmp::min(&self.hi, &other.hi).clone();
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: std::cmp::min(&self.lo, &other.lo).clone(),
            hi: std::cmp::max(&self.hi, &other.hi).clone(),
        }
    }

    /// Widens by `r ≥ 0` on both sides.
    pub fn inflate(&self, r: &Dyadic) -> Interval {
        Interval {
            lo: &self.lo - r,
            hi: &self.hi + r,
        }
    }

    /// Largest absolute value of a member.
    pub fn mag(&self) -> Dyadic {
        std::cmp::max(self.lo.abs(), self.hi.abs())
    }

    /// Smallest absolute value of a member.
    pub fn mig(&self) -> Dyadic {
        if self.contains_zero() {
            Dyadic::zero()
        } else {
            std::cmp::min(self.lo.abs(), self.hi.abs())
        }
    }

    /// Sign of every member, when they all agree.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.signum() > 0 {
            Some(Ordering::Greater)
        } else if self.hi.signum() < 0 {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Every member strictly below every member of `other`.
    pub fn certainly_lt(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    /// `floor` of the enclosed value, when all members share it.
    pub fn floor(&self) -> Option<BigInt> {
        let a = self.lo.floor();
        (a == self.hi.floor()).then_some(a)
    }

    /// `ceil` of the enclosed value, when all members share it.
    pub fn ceil(&self) -> Option<BigInt> {
        let a = self.lo.ceil();
        (a == self.hi.ceil()).then_some(a)
    }

    /// Restricts to `[0, ∞)`; used where non-negativity is known a priori.
    pub fn clamp_nonnegative(&self) -> Interval {
        let z = Dyadic::zero();
        Interval {
            lo: std::cmp::max(&self.lo, &z).clone(),
            hi: std::cmp::max(&self.hi, &z).clone(),
        }
    }

    /// Rounds the endpoints outward to `GUARD_BITS` below the width.
    pub fn trimmed(self) -> Interval {
        match self.width_msb() {
            None => self,
            Some(m) => {
                let e = m - GUARD_BITS;
                Interval {
                    lo: self.lo.round_down(e),
                    hi: self.hi.round_up(e),
                }
            }
        }
    }

    /// Rounds the endpoints outward to the grid `2^e`.
    pub fn rounded(&self, e: i64) -> Interval {
        Interval {
            lo: self.lo.round_down(e),
            hi: self.hi.round_up(e),
        }
    }

    /// `1 / self`; point operands are rounded to `bits` bits relative.
    pub fn recip_prec(&self, bits: i64) -> Result<Interval, NumericsError> {
        if self.contains_zero() {
            return Err(NumericsError::DivisionByEnclosedZero);
        }
        let mig = self.mig();
        let mag = self.mag();
        let mig_msb = mig.msb().expect("nonzero");
        let mag_msb = mag.msb().expect("nonzero");
        let e = match self.width_msb() {
            None => -mag_msb - 2 - bits,
            Some(w) => (w - mig_msb - mag_msb - 2 - GUARD_BITS).min(-mag_msb - 2 - GUARD_BITS),
        };
        let one = Dyadic::one();
        // 1/x is decreasing on each sign branch
        let lo = Dyadic::div_down(&one, &self.hi, e);
        let hi = Dyadic::div_up(&one, &self.lo, e);
        Ok(Interval { lo, hi })
    }

    pub fn recip(&self) -> Result<Interval, NumericsError> {
        self.recip_prec(DEFAULT_DIV_BITS)
    }

    pub fn div_prec(&self, rhs: &Interval, bits: i64) -> Result<Interval, NumericsError> {
        if self.lo.is_zero() && self.hi.is_zero() {
            if rhs.contains_zero() {
                return Err(NumericsError::DivisionByEnclosedZero);
            }
            return Ok(Interval::zero());
        }
        if rhs.is_point() && !rhs.lo.is_zero() {
            // direct directed division keeps point quotients tight
            let mag_msb = self.mag().msb().unwrap_or(0) - rhs.mig().msb().unwrap_or(0);
            let e = match self.width_msb() {
                None => mag_msb - 2 - bits,
                Some(w) => w - rhs.mig().msb().unwrap_or(0) - 1 - GUARD_BITS,
            };
            let (a, b) = if rhs.lo.signum() > 0 {
                (&self.lo, &self.hi)
            } else {
                (&self.hi, &self.lo)
            };
            let lo = Dyadic::div_down(a, &rhs.lo, e);
            let hi = Dyadic::div_up(b, &rhs.lo, e);
            if lo == hi {
                return Ok(Interval::point(lo));
            }
            return Ok(Interval { lo, hi });
        }
        Ok(self * &rhs.recip_prec(bits)?)
    }

    pub fn div(&self, rhs: &Interval) -> Result<Interval, NumericsError> {
        self.div_prec(rhs, DEFAULT_DIV_BITS)
    }

    pub fn powi(&self, n: u32) -> Interval {
        let mut acc = Interval::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        self.mid().to_f64()
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &rhs.lo,
            hi: &self.hi + &rhs.hi,
        }
        .trimmed()
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, rhs: &Interval) -> Interval {
        Interval {
            lo: &self.lo - &rhs.hi,
            hi: &self.hi - &rhs.lo,
        }
        .trimmed()
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, rhs: &Interval) -> Interval {
        if self.is_point() && rhs.is_point() {
            return Interval::point(&self.lo * &rhs.lo);
        }
        let c = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = c.iter().min().expect("nonempty").clone();
        let hi = c.iter().max().expect("nonempty").clone();
        Interval { lo, hi }.trimmed()
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Interval {
            type Output = Interval;
            fn $m(self, rhs: Interval) -> Interval {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Interval> for Interval {
            type Output = Interval;
            fn $m(self, rhs: &Interval) -> Interval {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = match self.width_msb() {
            None => 20,
            Some(m) => ((-m).max(0) as f64 * std::f64::consts::LOG10_2) as usize + 2,
        };
        write!(
            f,
            "[{}, {}]",
            self.lo.to_decimal(digits.min(60)),
            self.hi.to_decimal(digits.min(60))
        )
    }
}

/// Wire form `{lo, hi}` with exact dyadic endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalJson {
    pub lo: DyadicJson,
    pub hi: DyadicJson,
}

impl From<&Interval> for IntervalJson {
    fn from(x: &Interval) -> Self {
        IntervalJson {
            lo: (&x.lo).into(),
            hi: (&x.hi).into(),
        }
    }
}
