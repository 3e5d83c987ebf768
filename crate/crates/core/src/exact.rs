//! Exact arithmetic over Q and Q(sqrt(2)) with 2-adic valuations in (1/2)Z.
//!
//! The normalization is v(2) = 1, so v(sqrt(2)) = 1/2. Valuations are stored
//! as twice their value plus an infinity flag ([`HalfVal`]), which keeps every
//! comparison an integer comparison.
//!
//! Level-4 quantities are rational; only level 8 genuinely needs sqrt(2).
//! All values here still use [`QuadRat`] uniformly (with zero sqrt(2)-part
//! where applicable) so the series and matrix layers need a single scalar
//! type.

use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator (maintained by `num_rational`).
pub type Rat = BigRational;

/// `n` as a [`Rat`].
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d` as a [`Rat`].
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// A 2-adic valuation taking values in (1/2)Z together with `Infinity`
/// (the valuation of zero). Stored as twice the value, so `Finite(3)` means
/// valuation 3/2. The derived ordering places `Infinity` above every finite
/// value.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum HalfVal {
    /// Twice the valuation.
    Finite(i64),
    Infinity,
}

impl HalfVal {
    /// Valuation `n` (an integer).
    pub fn integer(n: i64) -> Self {
        HalfVal::Finite(2 * n)
    }

    /// Valuation `h/2`.
    pub fn halves(h: i64) -> Self {
        HalfVal::Finite(h)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, HalfVal::Finite(_))
    }

    /// Twice the valuation, if finite.
    pub fn twice(&self) -> Option<i64> {
        match self {
            HalfVal::Finite(h) => Some(*h),
            HalfVal::Infinity => None,
        }
    }

    /// The valuation as an exact rational, if finite.
    pub fn as_rat(&self) -> Option<Rat> {
        self.twice().map(|h| rat(h, 2))
    }
}

impl Add for HalfVal {
    type Output = HalfVal;
    fn add(self, rhs: HalfVal) -> HalfVal {
        match (self, rhs) {
            (HalfVal::Finite(a), HalfVal::Finite(b)) => HalfVal::Finite(a + b),
            _ => HalfVal::Infinity,
        }
    }
}

impl fmt::Display for HalfVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HalfVal::Infinity => write!(f, "inf"),
            HalfVal::Finite(h) if h % 2 == 0 => write!(f, "{}", h / 2),
            HalfVal::Finite(h) => write!(f, "{}/2", h),
        }
    }
}

/// 2-adic valuation of a rational: the exponent of 2 in `x`, negative when 2
/// divides the denominator, `Infinity` exactly for `x = 0`.
pub fn val2(x: &Rat) -> HalfVal {
    if x.is_zero() {
        return HalfVal::Infinity;
    }
    let vn = x.numer().trailing_zeros().unwrap_or(0) as i64;
    let vd = x.denom().trailing_zeros().unwrap_or(0) as i64;
    HalfVal::integer(vn - vd)
}

/// An element `a + b*sqrt(2)` of Q(sqrt(2)) with exact rational parts.
///
/// The field norm is `a^2 - 2 b^2`; since 2 is not a rational square, the
/// norm vanishes only at zero, so every nonzero element is invertible.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadRat {
    a: Rat,
    b: Rat,
}

impl QuadRat {
    pub fn new(a: Rat, b: Rat) -> Self {
        QuadRat { a, b }
    }

    pub fn from_rat(a: Rat) -> Self {
        QuadRat { a, b: Rat::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(rat_int(n))
    }

    /// `n/d` as an element with zero sqrt(2)-part.
    pub fn from_frac(n: i64, d: i64) -> Self {
        Self::from_rat(rat(n, d))
    }

    pub fn zero() -> Self {
        Self::from_rat(Rat::zero())
    }

    pub fn one() -> Self {
        Self::from_rat(Rat::one())
    }

    /// The fixed square root of 2.
    pub fn sqrt2() -> Self {
        QuadRat { a: Rat::zero(), b: Rat::one() }
    }

    pub fn rational_part(&self) -> &Rat {
        &self.a
    }

    pub fn sqrt2_part(&self) -> &Rat {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The Galois conjugate `a - b*sqrt(2)`; a ring automorphism.
    pub fn conjugate(&self) -> Self {
        QuadRat { a: self.a.clone(), b: -self.b.clone() }
    }

    /// Field norm `a^2 - 2 b^2`.
    pub fn norm(&self) -> Rat {
        &self.a * &self.a - rat_int(2) * &self.b * &self.b
    }

    /// Multiplicative inverse via conjugate over norm.
    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let c = self.conjugate();
        Ok(QuadRat { a: c.a / &n, b: c.b / n })
    }

    /// Integer power, negative exponents through [`QuadRat::inv`].
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = QuadRat::one();
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &sq;
            }
            k >>= 1;
            if k > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        QuadRat { a: &self.a * c, b: &self.b * c }
    }

    /// 2-adic valuation: `min(v(a), v(b) + 1/2)`. The two candidates are
    /// never equal when both are finite (one is an integer, the other a
    /// strict half-integer), so no tie-breaking is needed and the valuation
    /// is exactly multiplicative.
    pub fn val2(&self) -> HalfVal {
        let va = val2(&self.a);
        let vb = val2(&self.b) + HalfVal::halves(1);
        va.min(vb)
    }

    /// True when the element lies in Z_2[sqrt(2)], i.e. `val2 >= 0`.
    pub fn is_2_integral(&self) -> bool {
        self.val2() >= HalfVal::integer(0)
    }
}

impl fmt::Debug for QuadRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for QuadRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}*sqrt2", self.b);
        }
        if self.b.is_negative() {
            write!(f, "{} - {}*sqrt2", self.a, -self.b.clone())
        } else {
            write!(f, "{} + {}*sqrt2", self.a, self.b)
        }
    }
}

impl<'a, 'b> Add<&'b QuadRat> for &'a QuadRat {
    type Output = QuadRat;
    fn add(self, rhs: &'b QuadRat) -> QuadRat {
        QuadRat { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl<'a, 'b> Sub<&'b QuadRat> for &'a QuadRat {
    type Output = QuadRat;
    fn sub(self, rhs: &'b QuadRat) -> QuadRat {
        QuadRat { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl<'a, 'b> Mul<&'b QuadRat> for &'a QuadRat {
    type Output = QuadRat;
    fn mul(self, rhs: &'b QuadRat) -> QuadRat {
        // (a + b s)(c + d s) = (ac + 2bd) + (ad + bc) s  with  s^2 = 2
        let two = rat_int(2);
        QuadRat {
            a: &self.a * &rhs.a + two * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

impl<'a> Neg for &'a QuadRat {
    type Output = QuadRat;
    fn neg(self) -> QuadRat {
        QuadRat { a: -self.a.clone(), b: -self.b.clone() }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<QuadRat> for QuadRat {
            type Output = QuadRat;
            fn $method(self, rhs: QuadRat) -> QuadRat {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for QuadRat {
    type Output = QuadRat;
    fn neg(self) -> QuadRat {
        -&self
    }
}

impl AddAssign<&QuadRat> for QuadRat {
    fn add_assign(&mut self, rhs: &QuadRat) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl SubAssign<&QuadRat> for QuadRat {
    fn sub_assign(&mut self, rhs: &QuadRat) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl MulAssign<&QuadRat> for QuadRat {
    fn mul_assign(&mut self, rhs: &QuadRat) {
        *self = &*self * rhs;
    }
}
