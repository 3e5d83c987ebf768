//! Level strategies: everything that differs between Gamma_0(4) and
//! Gamma_0(8) lives behind the [`LevelScheme`] trait, so the matrix and slope
//! layers are written once against `&dyn LevelScheme`.
//!
//! The two implementations are registered in a static table and selected at
//! runtime by level number (`--level 4|8` on the CLI) or by name.

use crate::eisenstein::{eisenstein_ratio, DirichletChar, WeightChar};
use crate::exact::{rat_int, QuadRat, Rat};
use crate::modfunc::{j16_inv, j8_inv, z4, z8};
use crate::qseries::QSeries;
use crate::{Error, Result};

/// One level's worth of structure: character assignment, uniformizer,
/// coordinate series, weight-character multiplier, and the constants entering
/// the slope statements.
pub trait LevelScheme: Sync {
    /// The tame level: 4 or 8.
    fn level(&self) -> u32;

    /// Registry name.
    fn name(&self) -> &'static str;

    /// The curve carrying the coordinate: X_0(8) for level 4, X_0(16) for
    /// level 8 (the V operator doubles the level).
    fn curve_level(&self) -> u32;

    /// Conductor exponent `m` of the attached characters (2 for level 4,
    /// 3 for level 8); feeds the dimension formula.
    fn conductor_exponent(&self) -> u32;

    /// The character paired with this weight, or an error when no pairing
    /// exists. Level 4 admits only odd weights (character tau); level 8 pairs
    /// odd weights with chi*tau and even weights with chi.
    fn character_for_weight(&self, weight: u32) -> Result<DirichletChar>;

    /// Parity-checked weight-character.
    fn weight_char(&self, weight: u32) -> Result<WeightChar> {
        let chi = self.character_for_weight(weight)?;
        WeightChar::new(weight, chi)
    }

    /// Reciprocal `1/j_N'` of the uniformizer of the coordinate curve.
    fn uniformizer_recip(&self, prec: usize) -> QSeries;

    /// The coordinate series `z_N` (leading term at q^1).
    fn z_series(&self, prec: usize) -> QSeries;

    /// The diagonal scaling constant: 2 for level 4, sqrt(2) for level 8.
    fn alpha(&self) -> QuadRat;

    /// The slope rate `r = 8/N`: consecutive `U_2`-slopes are `r, 2r, 3r, ...`
    /// (2 at level 4, 1 at level 8).
    fn slope_rate(&self) -> Rat;

    /// The weight-character multiplier `(E*/V*)^t` as a q-series.
    ///
    /// Odd weights use the t-th power of the weight-1 ratio (whose
    /// z-expansion is `1 + 2 z_4` resp. `1 + sqrt(2) z_8`); even weights at
    /// level 8 use `E*_{k,chi}/V*_{k,chi}` directly.
    fn multiplier(&self, weight: u32, prec: usize) -> Result<QSeries>;

    /// Closed-form prediction for the coefficient of `z_N^i` in the
    /// z-expansion of `U(z_N^2)`:
    ///
    /// - level 4: `a_i = i (-1)^(i-1) 2^i` (from `2z/(1+2z)^2`),
    /// - level 8: `a_(2n+1) = sqrt(2) (-2)^n`, even coefficients zero
    ///   (from `sqrt(2) z/(1+2z^2)`).
    fn uz2_z_coefficient(&self, i: usize) -> QuadRat;
}

/// Level 4: odd weights, character tau, coordinate z_4 on X_0(8).
pub struct Level4;

/// Level 8: coordinate z_8 on X_0(16); chi*tau in odd weight, chi in even.
pub struct Level8;

impl LevelScheme for Level4 {
    fn level(&self) -> u32 {
        4
    }

    fn name(&self) -> &'static str {
        "gamma0-4"
    }

    fn curve_level(&self) -> u32 {
        8
    }

    fn conductor_exponent(&self) -> u32 {
        2
    }

    fn character_for_weight(&self, weight: u32) -> Result<DirichletChar> {
        if weight % 2 == 1 && weight >= 1 {
            Ok(DirichletChar::tau())
        } else {
            Err(Error::UnrealizableWeightCharacter { level: 4, weight })
        }
    }

    fn uniformizer_recip(&self, prec: usize) -> QSeries {
        j8_inv(prec)
    }

    fn z_series(&self, prec: usize) -> QSeries {
        z4(prec)
    }

    fn alpha(&self) -> QuadRat {
        QuadRat::from_int(2)
    }

    fn slope_rate(&self) -> Rat {
        rat_int(2)
    }

    fn multiplier(&self, weight: u32, prec: usize) -> Result<QSeries> {
        self.weight_char(weight)?;
        let base = eisenstein_ratio(&WeightChar::new(1, DirichletChar::tau())?, prec);
        Ok(base.pow(weight as usize).truncate(prec))
    }

    fn uz2_z_coefficient(&self, i: usize) -> QuadRat {
        // [z^i] 2z/(1+2z)^2 = i (-1)^(i-1) 2^i
        if i == 0 {
            return QuadRat::zero();
        }
        let sign = if i % 2 == 1 { 1i64 } else { -1 };
        let mut c = Rat::from_integer(num_bigint::BigInt::from(sign * i as i64));
        for _ in 0..i {
            c *= rat_int(2);
        }
        QuadRat::from_rat(c)
    }
}

impl LevelScheme for Level8 {
    fn level(&self) -> u32 {
        8
    }

    fn name(&self) -> &'static str {
        "gamma0-8"
    }

    fn curve_level(&self) -> u32 {
        16
    }

    fn conductor_exponent(&self) -> u32 {
        3
    }

    fn character_for_weight(&self, weight: u32) -> Result<DirichletChar> {
        if weight == 0 {
            return Err(Error::UnrealizableWeightCharacter { level: 8, weight });
        }
        if weight % 2 == 1 {
            Ok(DirichletChar::chi_tau())
        } else {
            Ok(DirichletChar::chi())
        }
    }

    fn uniformizer_recip(&self, prec: usize) -> QSeries {
        j16_inv(prec)
    }

    fn z_series(&self, prec: usize) -> QSeries {
        z8(prec)
    }

    fn alpha(&self) -> QuadRat {
        QuadRat::sqrt2()
    }

    fn slope_rate(&self) -> Rat {
        rat_int(1)
    }

    fn multiplier(&self, weight: u32, prec: usize) -> Result<QSeries> {
        let kappa = self.weight_char(weight)?;
        if weight % 2 == 1 {
            let base = eisenstein_ratio(&WeightChar::new(1, DirichletChar::chi_tau())?, prec);
            Ok(base.pow(weight as usize).truncate(prec))
        } else {
            Ok(eisenstein_ratio(&kappa, prec))
        }
    }

    fn uz2_z_coefficient(&self, i: usize) -> QuadRat {
        // [z^i] sqrt(2) z/(1+2z^2): sqrt(2)(-2)^n at i = 2n+1, zero at even i
        if i % 2 == 0 {
            return QuadRat::zero();
        }
        let n = (i - 1) / 2;
        let mut c = Rat::from_integer(num_bigint::BigInt::from(if n % 2 == 0 { 1 } else { -1 }));
        for _ in 0..n {
            c *= rat_int(2);
        }
        QuadRat::sqrt2().scale(&c)
    }
}

static LEVEL4: Level4 = Level4;
static LEVEL8: Level8 = Level8;
static SCHEMES: [&dyn LevelScheme; 2] = [&LEVEL4, &LEVEL8];

/// All registered level strategies.
pub fn schemes() -> &'static [&'static dyn LevelScheme] {
    &SCHEMES
}

/// Look a strategy up by tame level (4 or 8).
pub fn by_level(level: u32) -> Result<&'static dyn LevelScheme> {
    SCHEMES
        .iter()
        .copied()
        .find(|s| s.level() == level)
        .ok_or_else(|| Error::InvalidInput(format!("no scheme registered for level {}", level)))
}

/// Look a strategy up by registry name.
pub fn by_name(name: &str) -> Result<&'static dyn LevelScheme> {
    SCHEMES
        .iter()
        .copied()
        .find(|s| s.name() == name)
        .ok_or_else(|| Error::InvalidInput(format!("no scheme registered under {:?}", name)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_lookup() {
        assert_eq!(by_level(4).unwrap().name(), "gamma0-4");
        assert_eq!(by_level(8).unwrap().name(), "gamma0-8");
        assert!(by_level(16).is_err());
        assert_eq!(by_name("gamma0-8").unwrap().level(), 8);
        assert!(by_name("gamma0-16").is_err());
        assert_eq!(schemes().len(), 2);
    }

    #[test]
    fn character_assignment() {
        let l4 = by_level(4).unwrap();
        assert_eq!(l4.character_for_weight(3).unwrap(), DirichletChar::tau());
        assert!(matches!(
            l4.character_for_weight(4),
            Err(Error::UnrealizableWeightCharacter { level: 4, weight: 4 })
        ));

        let l8 = by_level(8).unwrap();
        assert_eq!(l8.character_for_weight(5).unwrap(), DirichletChar::chi_tau());
        assert_eq!(l8.character_for_weight(4).unwrap(), DirichletChar::chi());
        assert!(l8.character_for_weight(0).is_err());
    }

    #[test]
    fn alpha_and_rate() {
        assert_eq!(by_level(4).unwrap().alpha(), QuadRat::from_int(2));
        assert_eq!(by_level(8).unwrap().alpha(), QuadRat::sqrt2());
        assert_eq!(by_level(4).unwrap().slope_rate(), rat_int(2));
        assert_eq!(by_level(8).unwrap().slope_rate(), rat_int(1));
    }

    #[test]
    fn uz2_coefficient_closed_forms() {
        let l4 = by_level(4).unwrap();
        assert_eq!(l4.uz2_z_coefficient(1), QuadRat::from_int(2));
        assert_eq!(l4.uz2_z_coefficient(2), QuadRat::from_int(-8));
        assert_eq!(l4.uz2_z_coefficient(3), QuadRat::from_int(24));
        assert_eq!(l4.uz2_z_coefficient(4), QuadRat::from_int(-64));

        let l8 = by_level(8).unwrap();
        assert_eq!(l8.uz2_z_coefficient(1), QuadRat::sqrt2());
        assert_eq!(l8.uz2_z_coefficient(2), QuadRat::zero());
        assert_eq!(
            l8.uz2_z_coefficient(3),
            QuadRat::sqrt2().scale(&crate::exact::rat(-2, 1))
        );
        assert_eq!(
            l8.uz2_z_coefficient(5),
            QuadRat::sqrt2().scale(&crate::exact::rat(4, 1))
        );
    }
}
