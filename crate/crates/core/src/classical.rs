//! Classical-side evidence: Cohen-Oesterlé dimensions and CM theta series.
//!
//! The dimension of the cuspidal space attached to a primitive character of
//! conductor `2^m` (m >= 2) in weight `k` is `2^(m-3) (k-1) - 1`
//! (Cohen-Oesterlé, Théorème 1), clamped at zero. For m = 2 the same
//! expression is used with the conductor exponent of tau.
//!
//! The CM lattice sums follow the classical Schoeneberg construction as
//! displayed: at level 4 the sum runs over Gaussian integers,
//!
//! ```text
//! f_k = (1/4) sum_(m,n) (m + n i)^(k-1) q^(m^2 + n^2),   k = 1 mod 4, k >= 5,
//! ```
//!
//! and at level 8 over `(m + 2n i)` against the form `m^2 + 2n^2`,
//!
//! ```text
//! g_l = (1/2) sum_(m,n) (m + 2n i)^(l-1) q^(m^2 + 2n^2),   l odd, l >= 3.
//! ```
//!
//! Imaginary parts must cancel exactly and the coefficient of q must be 1;
//! both are asserted, not renormalized, so a discrepancy surfaces loudly.
//! The slope read off `v(a_2)` is `(k-1)/2` for `f_k` and `l-1` for `g_l`;
//! the latter sits exactly at the Coleman classicality boundary `l-1`, so
//! membership in the classical slope list is asserted only at level 4 and
//! reported otherwise.

use crate::exact::{rat_int, HalfVal, QuadRat, Rat};
use crate::qseries::QSeries;
use crate::scheme::by_level;
use crate::slopes::classical_slopes;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// A Gaussian integer `re + im * i` with exact arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn new(re: i64, im: i64) -> Self {
        GaussInt { re: BigInt::from(re), im: BigInt::from(im) }
    }

    pub fn zero() -> Self {
        GaussInt { re: BigInt::zero(), im: BigInt::zero() }
    }

    pub fn mul(&self, other: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }

    /// `self^e` by binary exponentiation; `e = 0` gives 1.
    pub fn pow(&self, e: u32) -> GaussInt {
        let mut acc = GaussInt { re: BigInt::from(1), im: BigInt::zero() };
        let mut base = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn add_assign(&mut self, other: &GaussInt) {
        self.re += &other.re;
        self.im += &other.im;
    }
}

/// `dim S_k` for a primitive character of conductor `2^m`:
/// `max(0, 2^(m-3) (k-1) - 1)`. Parameters that would make the expression
/// non-integral (even weight at m = 2) are rejected.
pub fn dimension_cuspforms(weight: u32, conductor_exp: u32) -> Result<usize> {
    if weight < 2 && conductor_exp < 2 {
        return Err(Error::InvalidInput("dimension formula needs k >= 2, m >= 2".into()));
    }
    let k = rat_int(weight as i64);
    let pow = if conductor_exp >= 3 {
        rat_int(1 << (conductor_exp - 3))
    } else {
        Rat::new(BigInt::from(1), BigInt::from(1 << (3 - conductor_exp)))
    };
    let dim = pow * (k - rat_int(1)) - rat_int(1);
    if !dim.is_integer() {
        return Err(Error::InvalidInput(format!(
            "dimension formula non-integral at weight {}, conductor exponent {}",
            weight, conductor_exp
        )));
    }
    let d = dim.to_integer();
    if d.is_negative() {
        Ok(0)
    } else {
        Ok(usize::try_from(d.magnitude().clone()).unwrap_or(usize::MAX))
    }
}

fn lattice_sum(
    prec: usize,
    points: impl Iterator<Item = (GaussInt, usize)>,
    exponent: u32,
    normalizer: i64,
) -> Result<QSeries> {
    let mut acc = vec![GaussInt::zero(); prec];
    for (g, norm) in points {
        if norm < prec {
            acc[norm].add_assign(&g.pow(exponent));
        }
    }
    let mut coeffs = Vec::with_capacity(prec);
    for (n, g) in acc.iter().enumerate() {
        if !g.im.is_zero() {
            return Err(Error::InvalidInput(format!(
                "nonzero imaginary residue at q^{}",
                n
            )));
        }
        coeffs.push(QuadRat::from_rat(Rat::new(g.re.clone(), BigInt::from(normalizer))));
    }
    let series = QSeries::from_coeffs(coeffs);
    if prec > 1 && series.coeff(1) != &QuadRat::one() {
        return Err(Error::InvalidInput(format!(
            "CM normalization broken: a_1 = {}",
            series.coeff(1)
        )));
    }
    Ok(series)
}

/// The weight-k CM form at level 4 (`k = 1 mod 4`, `k >= 5`), summed over
/// all lattice points with `m^2 + n^2 < prec`.
pub fn cm_form_level4(weight: u32, prec: usize) -> Result<QSeries> {
    if weight % 4 != 1 || weight < 5 {
        return Err(Error::InvalidInput(
            "level-4 CM form needs weight = 1 mod 4, weight >= 5".into(),
        ));
    }
    assert!(prec >= 3);
    let bound = (prec as f64).sqrt() as i64 + 1;
    let pts = (-bound..=bound).flat_map(move |m| {
        (-bound..=bound).map(move |n| (GaussInt::new(m, n), (m * m + n * n) as usize))
    });
    lattice_sum(prec, pts, weight - 1, 4)
}

/// The weight-l CM form at level 8 (`l` odd, `l >= 3`), summed over
/// `(m + 2n i)` with `m^2 + 2n^2 < prec`.
pub fn cm_form_level8(weight: u32, prec: usize) -> Result<QSeries> {
    if weight % 2 != 1 || weight < 3 {
        return Err(Error::InvalidInput("level-8 CM form needs odd weight >= 3".into()));
    }
    assert!(prec >= 3);
    let bound = (prec as f64).sqrt() as i64 + 1;
    let pts = (-bound..=bound).flat_map(move |m| {
        (-bound..=bound).map(move |n| (GaussInt::new(m, 2 * n), (m * m + 2 * n * n) as usize))
    });
    lattice_sum(prec, pts, weight - 1, 2)
}

/// How a CM slope sits against the certified classical slope list.
#[derive(Clone, Debug)]
pub struct CmReport {
    pub level: u32,
    pub weight: u32,
    /// `v(a_2)` of the CM form.
    pub slope: Rat,
    pub classical: Vec<Rat>,
    pub member: bool,
    /// Slope equals the classicality boundary `weight - 1`.
    pub at_boundary: bool,
    /// Membership is asserted at level 4; at level 8 the CM slope is the
    /// boundary slope and is reported only.
    pub membership_asserted: bool,
}

/// Compute the CM form's slope from `v(a_2)` and compare it with the
/// classical slope list of the same weight-character.
pub fn cm_slope_crosscheck(level: u32, weight: u32) -> Result<CmReport> {
    let scheme = by_level(level)?;
    let (form, asserted) = match level {
        4 => (cm_form_level4(weight, 8)?, true),
        8 => (cm_form_level8(weight, 8)?, false),
        _ => unreachable!("registry only carries 4 and 8"),
    };
    let a2 = form.coeff(2);
    let slope = match a2.val2() {
        HalfVal::Finite(_) => a2.val2().as_rat().unwrap(),
        HalfVal::Infinity => {
            return Err(Error::InvalidInput("CM form has a_2 = 0".into()))
        }
    };
    let classical = classical_slopes(scheme, weight)?;
    let member = classical.contains(&slope);
    let at_boundary = slope == rat_int(weight as i64 - 1);
    Ok(CmReport {
        level,
        weight,
        slope,
        classical,
        member,
        at_boundary,
        membership_asserted: asserted,
    })
}

/// `v(a_2)` of the CM form, used directly by tests and the CLI.
pub fn cm_slope(level: u32, weight: u32) -> Result<HalfVal> {
    let form = match level {
        4 => cm_form_level4(weight, 8)?,
        8 => cm_form_level8(weight, 8)?,
        _ => return Err(Error::InvalidInput(format!("no CM family at level {}", level))),
    };
    Ok(form.coeff(2).val2())
}
