//! Dyadic rationals `m · 2^e` with arbitrary-size mantissa.
//!
//! Addition, subtraction and multiplication are exact. Division and
//! conversion from general rationals take an explicit granularity `2^e` and
//! a rounding direction, which is all the interval layer needs for outward
//! rounding.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// A dyadic rational. The representation is normalized: the mantissa is odd,
/// or it is zero and the exponent is zero, so structural equality is value
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return Dyadic::zero();
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            Dyadic {
                mant: mant >> tz,
                exp: exp + tz as i64,
            }
        } else {
            Dyadic { mant, exp }
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Dyadic::new(BigInt::from(n), 0)
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Dyadic::new(n, 0)
    }

    /// `2^e`.
    pub fn pow2(e: i64) -> Self {
        Dyadic {
            mant: BigInt::one(),
            exp: e,
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    /// `floor(log2 |x|)`, or `None` for zero.
    pub fn msb(&self) -> Option<i64> {
        if self.mant.is_zero() {
            None
        } else {
            Some(self.mant.bits() as i64 - 1 + self.exp)
        }
    }

    /// Number of significant mantissa bits.
    pub fn precision(&self) -> u64 {
        self.mant.bits()
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as usize)
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.mant.is_zero() {
            return 0.0;
        }
        // keep 64 leading bits so the conversion does not overflow
        let bits = self.mant.bits() as i64;
        let drop = (bits - 64).max(0);
        let m = (&self.mant >> drop as usize).to_f64().unwrap_or(f64::NAN);
        m * 2f64.powi((self.exp + drop).clamp(i32::MIN as i64, i32::MAX as i64) as i32)
    }

    /// Largest integer `≤ self`.
    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as usize
        } else {
            self.mant.div_floor(&(BigInt::one() << (-self.exp) as usize))
        }
    }

    /// Smallest integer `≥ self`.
    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    /// Largest multiple of `2^e` that is `≤ self`.
    pub fn round_down(&self, e: i64) -> Dyadic {
        if self.exp >= e {
            return self.clone();
        }
        let shift = (e - self.exp) as usize;
        Dyadic::new(self.mant.div_floor(&(BigInt::one() << shift)), e)
    }

    /// Smallest multiple of `2^e` that is `≥ self`.
    pub fn round_up(&self, e: i64) -> Dyadic {
        -(-self).round_down(e)
    }

    fn quotient_parts(a: &Dyadic, b: &Dyadic, e: i64) -> (BigInt, BigInt) {
        let s = a.exp - b.exp - e;
        if s >= 0 {
            (&a.mant << s as usize, b.mant.clone())
        } else {
            (a.mant.clone(), &b.mant << (-s) as usize)
        }
    }

    /// Largest multiple of `2^e` that is `≤ a / b`.
    pub fn div_down(a: &Dyadic, b: &Dyadic, e: i64) -> Dyadic {
        assert!(!b.is_zero(), "dyadic division by zero");
        let (n, d) = Self::quotient_parts(a, b, e);
        Dyadic::new(n.div_floor(&d), e)
    }

    /// Smallest multiple of `2^e` that is `≥ a / b`.
    pub fn div_up(a: &Dyadic, b: &Dyadic, e: i64) -> Dyadic {
        assert!(!b.is_zero(), "dyadic division by zero");
        let (n, d) = Self::quotient_parts(a, b, e);
        Dyadic::new(n.div_ceil(&d), e)
    }

    /// Largest multiple of `2^e` that is `≤ q`.
    pub fn from_rational_down(q: &BigRational, e: i64) -> Dyadic {
        let (n, d) = if e >= 0 {
            (q.numer().clone(), q.denom() << e as usize)
        } else {
            (q.numer() << (-e) as usize, q.denom().clone())
        };
        Dyadic::new(n.div_floor(&d), e)
    }

    /// Smallest multiple of `2^e` that is `≥ q`.
    pub fn from_rational_up(q: &BigRational, e: i64) -> Dyadic {
        -Dyadic::from_rational_down(&-q, e)
    }

    /// Exact midpoint.
    pub fn midpoint(a: &Dyadic, b: &Dyadic) -> Dyadic {
        let s = a + b;
        Dyadic::new(s.mant, s.exp - 1)
    }

    pub fn mul_pow2(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    /// Decimal rendering truncated toward zero after `frac_digits` digits.
    pub fn to_decimal(&self, frac_digits: usize) -> String {
        let q = self.to_rational();
        let neg = q.is_negative();
        let q = q.abs();
        let scale = num_traits::pow(BigInt::from(10), frac_digits);
        let scaled = (q.numer() * &scale) / q.denom();
        let int_part = &scaled / &scale;
        let frac_part = &scaled % &scale;
        let mut s = String::new();
        if neg && !scaled.is_zero() {
            s.push('-');
        }
        s.push_str(&int_part.to_string());
        if frac_digits > 0 {
            let f = frac_part.to_string();
            s.push('.');
            for _ in f.len()..frac_digits {
                s.push('0');
            }
            s.push_str(&f);
            while s.ends_with('0') && !s.ends_with(".0") {
                s.pop();
            }
        }
        s
    }
}

impl Default for Dyadic {
    fn default() -> Self {
        Dyadic::zero()
    }
}

impl From<i64> for Dyadic {
    fn from(n: i64) -> Self {
        Dyadic::from_int(n)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let sa = self.signum();
        let sb = other.signum();
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &other.mant << (other.exp - e) as usize;
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(rhs.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &rhs.mant << (rhs.exp - e) as usize;
        Dyadic::new(a + b, e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() || rhs.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            mant: &self.mant * &rhs.mant,
            exp: self.exp + rhs.exp,
        }
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            mant: -&self.mant,
            exp: self.exp,
        }
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: Dyadic) -> Dyadic {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp >= 0 {
            write!(f, "{}", &self.mant << self.exp as usize)
        } else {
            write!(f, "{}*2^{}", self.mant, self.exp)
        }
    }
}

/// Wire form of a dyadic endpoint: exact `{mantissa, exponent}` plus a
/// decimal rendering for humans.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DyadicJson {
    pub mantissa: String,
    pub exponent: i64,
    pub decimal: String,
}

impl From<&Dyadic> for DyadicJson {
    fn from(d: &Dyadic) -> Self {
        DyadicJson {
            mantissa: d.mant.to_string(),
            exponent: d.exp,
            decimal: d.to_decimal(30),
        }
    }
}

impl TryFrom<&DyadicJson> for Dyadic {
    type Error = num_bigint::ParseBigIntError;
    fn try_from(j: &DyadicJson) -> Result<Self, Self::Error> {
        Ok(Dyadic::new(j.mantissa.parse()?, j.exponent))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn normalization_makes_equality_structural() {
        assert_eq!(Dyadic::new(BigInt::from(12), -2), Dyadic::from_int(3));
        assert_eq!(Dyadic::new(BigInt::zero(), 17), Dyadic::zero());
    }

    #[test]
    fn floor_ceil_negative() {
        let x = Dyadic::new(BigInt::from(-5), -1); // -2.5
        assert_eq!(x.floor(), BigInt::from(-3));
        assert_eq!(x.ceil(), BigInt::from(-2));
        let y = Dyadic::from_int(4);
        assert_eq!(y.floor(), y.ceil());
    }

    #[test]
    fn directed_division_brackets_the_quotient() {
        let one = Dyadic::one();
        let three = Dyadic::from_int(3);
        let lo = Dyadic::div_down(&one, &three, -20);
        let hi = Dyadic::div_up(&one, &three, -20);
        assert!(lo.to_rational() < q(1, 3));
        assert!(hi.to_rational() > q(1, 3));
        assert_eq!(&hi - &lo, Dyadic::pow2(-20));
        let m = Dyadic::from_int(-1);
        assert!(Dyadic::div_down(&m, &three, -8).to_rational() <= q(-1, 3));
        assert!(Dyadic::div_up(&m, &three, -8).to_rational() >= q(-1, 3));
    }

    #[test]
    fn rational_conversion_directions() {
        let r = q(-7, 3);
        assert!(Dyadic::from_rational_down(&r, -10).to_rational() <= r);
        assert!(Dyadic::from_rational_up(&r, -10).to_rational() >= r);
        assert_eq!(Dyadic::from_rational_down(&q(3, 4), -2), Dyadic::new(3.into(), -2));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(Dyadic::new(BigInt::from(3), -2).to_decimal(5), "0.75");
        assert_eq!(Dyadic::from_int(2).to_decimal(3), "2.0");
        assert_eq!(Dyadic::new(BigInt::from(-1), -1).to_decimal(4), "-0.5");
    }

    #[test]
    fn ordering_across_exponents() {
        let a = Dyadic::new(BigInt::from(3), -1);
        let b = Dyadic::from_int(1);
        assert!(a > b);
        assert!(-&a < -&b);
        assert_eq!(a.msb(), Some(0));
        assert_eq!(Dyadic::pow2(-5).msb(), Some(-5));
    }
}
