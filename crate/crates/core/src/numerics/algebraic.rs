//! Exact arithmetic in a real number field `Q(λ)`.
//!
//! `λ` is a real root of an integer polynomial, pinned down by an isolating
//! enclosure. Elements are rational polynomials in `λ`, reduced modulo a
//! monic squarefree modulus `m` with `m(λ) = 0`. Zero tests never factor:
//! `g(λ) = 0` iff `h = gcd(g, m)` vanishes at `λ`, which the isolating
//! interval decides by a sign change, and `m` is then replaced by `h` or
//! `m / h`. The modulus only ever shrinks to a divisor, so earlier
//! representatives stay valid.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::dyadic::Dyadic;
use super::interval::{Interval, GUARD_BITS};
use super::poly::RatPoly;
use super::roots::RootEnclosure;
use super::NumericsError;

struct FieldState {
    modulus: RatPoly,
    root: RootEnclosure,
}

pub struct NumberField {
    state: Mutex<FieldState>,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let st = self.state.lock().expect("field lock");
        write!(f, "NumberField({} ~ {})", st.root.poly(), st.root.interval())
    }
}

impl NumberField {
    /// The field generated by the root enclosed by `root`.
    pub fn new(root: RootEnclosure) -> Arc<NumberField> {
        let modulus = RatPoly::from_int(root.poly()).monic();
        Arc::new(NumberField {
            state: Mutex::new(FieldState { modulus, root }),
        })
    }

    /// Current degree of the modulus; an upper bound on `[Q(λ):Q]`.
    pub fn degree(&self) -> usize {
        self.lock().modulus.degree().unwrap_or(0)
    }

    pub fn modulus(&self) -> RatPoly {
        self.lock().modulus.clone()
    }

    /// Enclosure of `λ` with width at most `2^-bits`.
    pub fn generator_enclosure(&self, bits: i64) -> Interval {
        let mut st = self.lock();
        st.root.refine(bits)
    }

    fn lock(&self) -> std::sync::MutexGuard<'_, FieldState> {
        self.state.lock().expect("field lock")
    }

    pub fn reduce(&self, p: &RatPoly) -> RatPoly {
        let st = self.lock();
        p.rem(&st.modulus)
    }

    /// Exact test `p(λ) = 0`.
    pub fn is_zero(&self, p: &RatPoly) -> bool {
        let mut st = self.lock();
        let r = p.rem(&st.modulus);
        if let Some(c) = r.as_constant() {
            return c.is_zero();
        }
        let h = r.gcd(&st.modulus);
        if h.degree().unwrap_or(0) == 0 {
            return false;
        }
        let h_int = h.to_primitive_int();
        let vanishes = st.root.divisor_vanishes(&h_int);
        let new_mod = if vanishes {
            h
        } else {
            st.modulus.divrem(&h).0.monic()
        };
        let new_root = st.root.with_factor(new_mod.to_primitive_int());
        st.modulus = new_mod;
        st.root = new_root;
        vanishes
    }

    /// Enclosure of `p(λ)` with width at most `2^-bits`.
    pub fn enclose(&self, p: &RatPoly, bits: i64) -> Interval {
        let r = self.reduce(p);
        if let Some(c) = r.as_constant() {
            return Interval::from_rational(&c, -bits - 2);
        }
        let target = Dyadic::pow2(-bits);
        let mut work = bits + GUARD_BITS / 2;
        loop {
            let lam = self.generator_enclosure(work);
            let v = r.eval_interval(&lam, -work - GUARD_BITS).trimmed();
            if v.width() <= target {
                return v;
            }
            let excess = v.width_msb().unwrap_or(0) + bits;
            work += excess.max(8) + 2;
        }
    }

    /// Sign of `p(λ)`, exact.
    pub fn sign(&self, p: &RatPoly) -> Ordering {
        if self.is_zero(p) {
            return Ordering::Equal;
        }
        let mut bits = 32;
        loop {
            if let Some(s) = self.enclose(p, bits).sign() {
                if s != Ordering::Equal {
                    return s;
                }
            }
            bits *= 2;
        }
    }

    /// Inverse of `p(λ)` as a polynomial in `λ`.
    pub fn inverse(&self, p: &RatPoly) -> Result<RatPoly, NumericsError> {
        if self.is_zero(p) {
            return Err(NumericsError::ZeroDivision);
        }
        let st = self.lock();
        let (g, s) = p.rem(&st.modulus).ext_gcd(&st.modulus);
        // is_zero split off every common factor, so g is constant here
        debug_assert_eq!(g.degree(), Some(0));
        Ok(s)
    }
}

/// An element of `Q` or of a real number field `Q(λ)`.
#[derive(Clone, Debug)]
pub struct AlgNum {
    field: Option<Arc<NumberField>>,
    poly: RatPoly,
}

impl AlgNum {
    pub fn from_rational(q: BigRational) -> Self {
        AlgNum {
            field: None,
            poly: RatPoly::constant(q),
        }
    }

    pub fn from_int(n: i64) -> Self {
        AlgNum::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        AlgNum::from_rational(BigRational::from_integer(n))
    }

    pub fn zero() -> Self {
        AlgNum::from_int(0)
    }

    pub fn one() -> Self {
        AlgNum::from_int(1)
    }

    /// `λ` itself, or the exact rational when the enclosure is a point.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        AlgNum::from_poly(field, RatPoly::x())
    }

    /// The root enclosed by `root` as an exact number.
    pub fn root_of(root: RootEnclosure) -> Self {
        if root.is_exact() {
            return AlgNum::from_rational(root.interval().lo().to_rational());
        }
        AlgNum::generator(&NumberField::new(root))
    }

    pub fn from_poly(field: &Arc<NumberField>, poly: RatPoly) -> Self {
        let poly = field.reduce(&poly);
        let field = if poly.degree().unwrap_or(0) == 0 {
            None
        } else {
            Some(field.clone())
        };
        AlgNum { field, poly }
    }

    pub fn field(&self) -> Option<&Arc<NumberField>> {
        self.field.as_ref()
    }

    pub fn poly(&self) -> &RatPoly {
        &self.poly
    }

    /// The value as a rational, if its representative is constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.poly.as_constant()
    }

    fn join(&self, o: &AlgNum) -> Option<Arc<NumberField>> {
        match (&self.field, &o.field) {
            (None, None) => None,
            (Some(f), None) | (None, Some(f)) => Some(f.clone()),
            (Some(f), Some(g)) => {
                assert!(Arc::ptr_eq(f, g), "arithmetic across different number fields");
                Some(f.clone())
            }
        }
    }

    fn make(field: Option<Arc<NumberField>>, poly: RatPoly) -> AlgNum {
        match field {
            None => AlgNum { field: None, poly },
            Some(f) => AlgNum::from_poly(&f, poly),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.field {
            None => self.poly.is_zero(),
            Some(f) => f.is_zero(&self.poly),
        }
    }

    pub fn signum(&self) -> Ordering {
        match &self.field {
            None => match self.poly.as_constant() {
                Some(c) => c.cmp(&BigRational::zero()),
                None => unreachable!("rational AlgNum is constant"),
            },
            Some(f) => f.sign(&self.poly),
        }
    }

    pub fn recip(&self) -> Result<AlgNum, NumericsError> {
        match &self.field {
            None => {
                let c = self.poly.as_constant().expect("constant");
                if c.is_zero() {
                    return Err(NumericsError::ZeroDivision);
                }
                Ok(AlgNum::from_rational(c.recip()))
            }
            Some(f) => {
                let inv = f.inverse(&self.poly)?;
                Ok(AlgNum::from_poly(f, inv))
            }
        }
    }

    pub fn div(&self, o: &AlgNum) -> Result<AlgNum, NumericsError> {
        Ok(self * &o.recip()?)
    }

    pub fn pow(&self, n: u32) -> AlgNum {
        let mut acc = AlgNum::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Enclosure with width at most `2^-bits`.
    pub fn enclose(&self, bits: i64) -> Interval {
        match &self.field {
            None => Interval::from_rational(&self.poly.as_constant().expect("constant"), -bits - 2),
            Some(f) => f.enclose(&self.poly, bits),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.enclose(60).to_f64()
    }

    /// Exact `⌊self⌋`.
    pub fn floor(&self) -> BigInt {
        if let Some(c) = self.as_rational() {
            return c.floor().to_integer();
        }
        let mut bits = 16;
        let mut tested: Option<BigInt> = None;
        loop {
            let iv = self.enclose(bits);
            if let Some(f) = iv.floor() {
                return f;
            }
            let n = iv.hi().floor();
            if iv.width() < Dyadic::one() && tested.as_ref() != Some(&n) {
                if (self - &AlgNum::from_bigint(n.clone())).is_zero() {
                    return n;
                }
                tested = Some(n);
            }
            bits *= 2;
        }
    }

    /// Exact `⌈self⌉`.
    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    pub fn cmp_exact(&self, o: &AlgNum) -> Ordering {
        (self - o).signum()
    }

    pub fn eq_exact(&self, o: &AlgNum) -> bool {
        (self - o).is_zero()
    }
}

impl Add for &AlgNum {
    type Output = AlgNum;
    fn add(self, o: &AlgNum) -> AlgNum {
        AlgNum::make(self.join(o), self.poly.add(&o.poly))
    }
}

impl Sub for &AlgNum {
    type Output = AlgNum;
    fn sub(self, o: &AlgNum) -> AlgNum {
        AlgNum::make(self.join(o), self.poly.sub(&o.poly))
    }
}

impl Mul for &AlgNum {
    type Output = AlgNum;
    fn mul(self, o: &AlgNum) -> AlgNum {
        AlgNum::make(self.join(o), self.poly.mul(&o.poly))
    }
}

impl Neg for &AlgNum {
    type Output = AlgNum;
    fn neg(self) -> AlgNum {
        AlgNum {
            field: self.field.clone(),
            poly: self.poly.neg(),
        }
    }
}

impl Neg for AlgNum {
    type Output = AlgNum;
    fn neg(self) -> AlgNum {
        -&self
    }
}

impl fmt::Display for AlgNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(c) => write!(f, "{c}"),
            None => write!(f, "{}", self.enclose(60).mid().to_decimal(15)),
        }
    }
}
