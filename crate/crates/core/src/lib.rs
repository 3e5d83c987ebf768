//! Exact 2-adic slope computations for overconvergent modular forms of
//! levels Gamma_0(4) and Gamma_0(8).
//!
//! Everything here is exact: coefficients live in Q or Q(sqrt(2)), valuations
//! in (1/2)Z, and no floating point is used anywhere. The main pipeline is
//!
//! 1. build q-expansions of the Eisenstein series `E*_{k,chi}` and of the
//!    uniformizers `z_4`, `z_8` ([`qseries`], [`eisenstein`], [`modfunc`]);
//! 2. assemble the truncated matrix of `U_2` composed with the
//!    weight-character multiplier in the `z_N`-power basis ([`umatrix`]);
//! 3. take exact characteristic polynomials and Newton polygons to read off
//!    slope sequences, certified against a larger truncation ([`slopes`]);
//! 4. cross-check against classical dimension formulas and CM theta series
//!    ([`classical`]).
//!
//! The two levels are interchangeable strategies behind the
//! [`scheme::LevelScheme`] trait, selected at runtime by level number.
//! A registry of named self-contained identity checks lives in [`checks`].

pub mod exact;
pub mod qseries;
pub mod eisenstein;
pub mod modfunc;
pub mod scheme;
pub mod umatrix;
pub mod slopes;
pub mod classical;
pub mod checks;

pub use exact::{HalfVal, QuadRat, Rat};
pub use qseries::QSeries;

use std::fmt;

/// Errors surfaced by the exact-arithmetic pipeline.
///
/// Mathematical *check failures* (an identity that does not hold, a condition
/// that is violated on a synthetic input) are reported through report types,
/// not through this enum; `Error` is for operations that cannot produce a
/// meaningful result at all.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Division by a non-invertible element of Q(sqrt(2)).
    DivisionByZero,
    /// Series inversion requires an invertible constant term.
    NonInvertibleLeading,
    /// An operation needed more known q-coefficients than were available.
    InsufficientPrecision { needed: usize, have: usize },
    /// No character pairs with this weight at this level.
    UnrealizableWeightCharacter { level: u32, weight: u32 },
    /// A raw U-matrix column that must vanish (odd basis power) did not.
    RawParityViolated { column: usize },
    /// An entry that must be 2-adically integral was not.
    NonIntegralEntry { row: usize, column: usize },
    /// Two truncation sizes agreed on fewer slopes than requested.
    CertificationFailed { requested: usize, agreed: usize },
    /// A certified slope reached or exceeded the classicality bound k-1.
    ClassicalityViolated { weight: u32, slope: String },
    /// Malformed or out-of-domain input (message carries the specifics).
    InvalidInput(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => write!(f, "division by zero in Q(sqrt(2))"),
            Error::NonInvertibleLeading => {
                write!(f, "series has no invertible constant term")
            }
            Error::InsufficientPrecision { needed, have } => write!(
                f,
                "insufficient q-precision: needed {} coefficients, have {}",
                needed, have
            ),
            Error::UnrealizableWeightCharacter { level, weight } => write!(
                f,
                "no realizable weight-character: level {} weight {}",
                level, weight
            ),
            Error::RawParityViolated { column } => write!(
                f,
                "raw matrix column {} (odd basis power) is not identically zero",
                column
            ),
            Error::NonIntegralEntry { row, column } => write!(
                f,
                "matrix entry ({}, {}) is not 2-adically integral",
                row, column
            ),
            Error::CertificationFailed { requested, agreed } => write!(
                f,
                "slope certification failed: {} requested, truncations agree on {}",
                requested, agreed
            ),
            Error::ClassicalityViolated { weight, slope } => write!(
                f,
                "slope {} violates the classicality bound at weight {}",
                slope, weight
            ),
            Error::InvalidInput(msg) => write!(f, "{}", msg),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
