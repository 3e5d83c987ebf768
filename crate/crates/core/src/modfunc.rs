//! Uniformizers of X_0(8) and X_0(16) and the q-expansion identities that
//! tie the slope machinery together.
//!
//! Everything is handled through the *reciprocals* `1/j_8`, `1/j_16`, which
//! are honest power series `q + ...`:
//!
//! ```text
//! 1/j_8  = q * prod (1+q^n)^4 (1+q^2n)^2 (1+q^4n)^4
//! 1/j_16 = q * prod (1+q^n)^2 (1+q^2n)   (1+q^4n)   (1+q^8n)^2
//! ```
//!
//! In eta quotients, `1/j_8 = (D(q^2) D(q^8)^2 / (D(q)^2 D(q^4)))^(1/12)` and
//! `1/j_16 = (D(q^2) D(q^16)^2 / (D(q)^2 D(q^8)))^(1/24)` with `D = Delta`;
//! the fractional powers are never computed, the checks below clear them to
//! integrally-powered identities.
//!
//! The coordinates on the ordinary locus are
//!
//! ```text
//! z_4 = (E*_{1,tau}/V*_{1,tau} - 1)/2        = 2/(j_8 + 4)
//! z_8 = (E*_{1,chi tau}/V*_{1,chi tau} - 1)/sqrt(2) = sqrt(2)/(j_16 + 2)
//! ```
//!
//! and satisfy `U(z_4^2) = 2 z_4/(1+2 z_4)^2`, `U(z_8^2) = sqrt(2) z_8/(1+2 z_8^2)`.
//!
//! Each `verify_*` function re-derives both sides of one displayed identity
//! from scratch and compares q-expansions coefficientwise up to the requested
//! depth, reporting the first mismatching index on failure (so mutation tests
//! can see where a corrupted constant first bites).

use crate::eisenstein::{eisenstein_ratio, DirichletChar, WeightChar};
use crate::exact::QuadRat;
use crate::qseries::{delta_at, e4, u2, QSeries};

/// Outcome of one identity verification.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub name: &'static str,
    /// Number of q-coefficients actually compared.
    pub depth: usize,
    pub pass: bool,
    /// First q-index where the two sides differ, when they do.
    pub first_mismatch: Option<usize>,
    pub detail: String,
}

impl IdentityReport {
    fn from_comparison(
        name: &'static str,
        lhs: &QSeries,
        rhs: &QSeries,
        depth: usize,
        detail: &str,
    ) -> Self {
        let compared = depth.min(lhs.prec()).min(rhs.prec());
        let mismatch = lhs.first_mismatch(rhs, compared);
        IdentityReport {
            name,
            depth: compared,
            pass: mismatch.is_none(),
            first_mismatch: mismatch,
            detail: match mismatch {
                None => format!("{} (checked {} coefficients)", detail, compared),
                Some(i) => format!("{} (first mismatch at q^{})", detail, i),
            },
        }
    }

    fn merge(name: &'static str, parts: Vec<IdentityReport>) -> Self {
        let pass = parts.iter().all(|p| p.pass);
        let depth = parts.iter().map(|p| p.depth).min().unwrap_or(0);
        let first_mismatch = parts.iter().filter_map(|p| p.first_mismatch).min();
        let detail = parts
            .iter()
            .map(|p| format!("{}: {}", if p.pass { "ok" } else { "FAIL" }, p.detail))
            .collect::<Vec<_>>()
            .join("; ");
        IdentityReport { name, depth, pass, first_mismatch, detail }
    }
}

/// `1/j_8`, the reciprocal of the uniformizer of X_0(8).
pub fn j8_inv(prec: usize) -> QSeries {
    assert!(prec >= 2);
    product_with_exponents(prec, &[(1, 4), (2, 2), (4, 4)])
}

/// `1/j_16`, the reciprocal of the uniformizer of X_0(16).
pub fn j16_inv(prec: usize) -> QSeries {
    assert!(prec >= 2);
    product_with_exponents(prec, &[(1, 2), (2, 1), (4, 1), (8, 2)])
}

/// Horner evaluation of `sum coeffs[k] * s^k` at a series argument.
fn eval_poly_at(coeffs: &[i64], s: &QSeries, prec: usize) -> QSeries {
    let mut acc = QSeries::zero(prec);
    for &c in coeffs.iter().rev() {
        acc = &(&acc * s).truncate(prec) + &QSeries::monomial(QuadRat::from_int(c), 0, prec);
    }
    acc
}

/// `q * prod_n prod_(step,e) (1 + q^(step*n))^e`.
fn product_with_exponents(prec: usize, shape: &[(usize, u32)]) -> QSeries {
    let inner = prec - 1;
    let mut s = QSeries::one(inner.max(1));
    let one = QuadRat::one();
    for n in 1..=inner {
        for &(step, exp) in shape {
            let k = step * n;
            if k > inner {
                continue;
            }
            for _ in 0..exp {
                s.mul_binomial(k, &one);
            }
        }
    }
    s.shift_up(1)
}

/// A uniformizing modular function, stored in reciprocal form (an honest
/// power series `q + ...`).
#[derive(Clone, Debug)]
pub struct Uniformizer {
    /// The curve it uniformizes: X_0(8) or X_0(16).
    pub curve_level: u32,
    pub recip: QSeries,
    pub label: &'static str,
}

impl Uniformizer {
    pub fn x0_8(prec: usize) -> Self {
        Self::checked(8, j8_inv(prec), "j8")
    }

    pub fn x0_16(prec: usize) -> Self {
        Self::checked(16, j16_inv(prec), "j16")
    }

    fn checked(curve_level: u32, recip: QSeries, label: &'static str) -> Self {
        assert_eq!(recip.leading_order(), 1, "reciprocal uniformizer starts at q");
        assert!(!recip.coeff(1).is_zero());
        Uniformizer { curve_level, recip, label }
    }
}

/// The coordinate `z_4 = (E*_{1,tau}/V*_{1,tau} - 1)/2 = 2q - 8q^3 + ...`
/// on the level-4 ordinary locus. Only odd q-powers occur.
pub fn z4(prec: usize) -> QSeries {
    assert!(prec >= 2);
    let kappa = WeightChar::new(1, DirichletChar::tau()).unwrap();
    let r = eisenstein_ratio(&kappa, prec);
    (&r - &QSeries::one(prec)).scale(&QuadRat::from_frac(1, 2))
}

/// The coordinate `z_8 = (E*_{1,chi tau}/V*_{1,chi tau} - 1)/sqrt(2)
/// = sqrt(2)(q - 2q^5 + ...)`. Only odd q-powers occur, and every
/// coefficient is a rational multiple of sqrt(2).
pub fn z8(prec: usize) -> QSeries {
    assert!(prec >= 2);
    let kappa = WeightChar::new(1, DirichletChar::chi_tau()).unwrap();
    let r = eisenstein_ratio(&kappa, prec);
    let inv_sqrt2 = QuadRat::sqrt2().inv().unwrap();
    (&r - &QSeries::one(prec)).scale(&inv_sqrt2)
}

/// Eta-quotient cross-check of both product formulas, in cleared form:
///
/// ```text
/// (1/j_8)^12  * Delta(q)^2 Delta(q^4) = Delta(q^2) Delta(q^8)^2
/// (1/j_16)^24 * Delta(q)^2 Delta(q^8) = Delta(q^2) Delta(q^16)^2
/// ```
pub fn verify_eta_quotients(depth: usize) -> IdentityReport {
    let p = depth + 2;
    let x = j8_inv(p);
    let lhs8 = &(&x.pow(12) * &delta_at(1, p).pow(2)) * &delta_at(4, p);
    let rhs8 = &delta_at(2, p) * &delta_at(8, p).pow(2);
    let r8 = IdentityReport::from_comparison(
        "eta-quotient-j8",
        &lhs8,
        &rhs8,
        depth,
        "(1/j8)^12 D(q)^2 D(q^4) = D(q^2) D(q^8)^2",
    );

    let y = j16_inv(p);
    let lhs16 = &(&y.pow(24) * &delta_at(1, p).pow(2)) * &delta_at(8, p);
    let rhs16 = &delta_at(2, p) * &delta_at(16, p).pow(2);
    let r16 = IdentityReport::from_comparison(
        "eta-quotient-j16",
        &lhs16,
        &rhs16,
        depth,
        "(1/j16)^24 D(q)^2 D(q^8) = D(q^2) D(q^16)^2",
    );
    IdentityReport::merge("eta-quotients", vec![r8, r16])
}

/// The hauptmodul expressions for the z-coordinates, in cleared form:
/// `z_4 (1 + 4/j_8) = 2/j_8` and `z_8 (1 + 2/j_16) = sqrt(2)/j_16`.
pub fn verify_z_hauptmodul(depth: usize) -> IdentityReport {
    let p = depth + 2;

    let x = j8_inv(p);
    let z = z4(p);
    let lhs4 = &z * &(&QSeries::one(p) + &x.scale(&QuadRat::from_int(4)));
    let rhs4 = x.scale(&QuadRat::from_int(2));
    let r4 = IdentityReport::from_comparison(
        "z4-hauptmodul",
        &lhs4,
        &rhs4,
        depth,
        "z4 = 2/(j8 + 4)",
    );

    let y = j16_inv(p);
    let w = z8(p);
    let lhs8 = &w * &(&QSeries::one(p) + &y.scale(&QuadRat::from_int(2)));
    let rhs8 = y.scale(&QuadRat::sqrt2());
    let r8 = IdentityReport::from_comparison(
        "z8-hauptmodul",
        &lhs8,
        &rhs8,
        depth,
        "z8 = sqrt(2)/(j16 + 2)",
    );
    IdentityReport::merge("z-hauptmodul", vec![r4, r8])
}

/// Coefficients of the quartic `T^4 + 256 T^3 + 5120 T^2 + 32768 T + 65536`
/// (highest power first) whose cube is the numerator of j over j_8.
const J_NUMERATOR_QUARTIC: [i64; 5] = [1, 256, 5120, 32768, 65536];

/// The j-invariant as a rational function of the uniformizer:
///
/// ```text
/// j = (j_8^4 + 256 j_8^3 + 5120 j_8^2 + 32768 j_8 + 65536)^3
///     / ( j_8^8 * (j_8^2 + 16 j_8 + 64) * (j_8 + 4) )
/// ```
///
/// (a degree-12 map X_0(8) -> X(1), matching the index of Gamma_0(8)).
/// Checked in cleared form with `x = 1/j_8`:
///
/// ```text
/// E_4^3 * x * (1+8x)^2 (1+4x) = Delta * (1 + 256x + 5120x^2 + 32768x^3 + 65536x^4)^3 .
/// ```
pub fn verify_j_identity(depth: usize) -> IdentityReport {
    j_identity_with(depth, &J_NUMERATOR_QUARTIC)
}

fn j_identity_with(depth: usize, quartic: &[i64; 5]) -> IdentityReport {
    let p = depth + 2;
    let x = j8_inv(p);
    // denominator factors reversed: x^11 * den(1/x) = (1+8x)^2 (1+4x)
    let mut den_rev = &QSeries::one(p) + &x.scale(&QuadRat::from_int(8));
    den_rev = &den_rev.pow(2) * &(&QSeries::one(p) + &x.scale(&QuadRat::from_int(4)));
    let lhs = &(&e4(p).pow(3) * &x) * &den_rev;

    // numerator reversed: x^4 * quartic(1/x) = 1 + 256x + ... + 65536x^4,
    // evaluated at the series x (the highest-first quartic list reads off
    // the reversed coefficients directly)
    let num_rev = eval_poly_at(quartic, &x, p);
    let rhs = &delta_at(1, p) * &num_rev.pow(3);
    IdentityReport::from_comparison(
        "j-identity",
        &lhs,
        &rhs,
        depth,
        "E4^3 x (1+8x)^2 (1+4x) = Delta * reversed-numerator^3",
    )
}

/// `1/j_8 = 1/j_16 + 2/j_16^2`, the relation between the two uniformizers
/// under the degree-2 covering X_0(16) -> X_0(8).
pub fn verify_j8_j16_identity(depth: usize) -> IdentityReport {
    j8_j16_with(depth, 2)
}

fn j8_j16_with(depth: usize, c: i64) -> IdentityReport {
    let p = depth + 2;
    let x = j8_inv(p);
    let y = j16_inv(p);
    let rhs = &y + &(&y * &y).scale(&QuadRat::from_int(c));
    IdentityReport::from_comparison(
        "j8-j16",
        &x,
        &rhs,
        depth,
        "1/j8 = 1/j16 + 2/j16^2",
    )
}

/// Closed forms for the U-images of the squared coordinates,
/// `U(z_4^2) (1+2z_4)^2 = 2 z_4` and `U(z_8^2)(1+2z_8^2) = sqrt(2) z_8`,
/// plus the vanishing `U(z_N^3) = 0`. Comparisons run to roughly `depth/2`
/// because U halves the available precision.
pub fn verify_uz2_closed_forms(depth: usize) -> IdentityReport {
    uz2_closed_forms_with(depth, false)
}

fn uz2_closed_forms_with(depth: usize, flip_sign: bool) -> IdentityReport {
    let p = 2 * depth + 4;
    let mut parts = Vec::new();
    let sign = QuadRat::from_int(if flip_sign { -2 } else { 2 });

    let z = z4(p);
    let uz2 = u2(&(&z * &z));
    let half = uz2.prec();
    let one = QSeries::one(p);
    let lhs = &uz2 * &(&one + &z.scale(&sign)).pow(2);
    let rhs = z.scale(&QuadRat::from_int(2));
    parts.push(IdentityReport::from_comparison(
        "u-z4-squared",
        &lhs,
        &rhs,
        depth.min(half),
        "U(z4^2)(1+2z4)^2 = 2z4",
    ));
    let uz3 = u2(&(&(&z * &z) * &z));
    parts.push(IdentityReport {
        name: "u-z4-cubed",
        depth: uz3.prec(),
        pass: uz3.is_zero(),
        first_mismatch: (0..uz3.prec()).find(|&n| !uz3.coeff(n).is_zero()),
        detail: "U(z4^3) = 0".into(),
    });

    let w = z8(p);
    let uw2 = u2(&(&w * &w));
    let lhs8 = &uw2 * &(&one + &(&w * &w).scale(&sign));
    let rhs8 = w.scale(&QuadRat::sqrt2());
    parts.push(IdentityReport::from_comparison(
        "u-z8-squared",
        &lhs8,
        &rhs8,
        depth.min(uw2.prec()),
        "U(z8^2)(1+2z8^2) = sqrt(2) z8",
    ));
    let uw3 = u2(&(&(&w * &w) * &w));
    parts.push(IdentityReport {
        name: "u-z8-cubed",
        depth: uw3.prec(),
        pass: uw3.is_zero(),
        first_mismatch: (0..uw3.prec()).find(|&n| !uw3.coeff(n).is_zero()),
        detail: "U(z8^3) = 0".into(),
    });

    IdentityReport::merge("u-z-squared-closed-forms", parts)
}

/// Coefficients of the degree-5 rational function giving the weight-4
/// multiplier at level 8, in the rescaled variable `w = z_8/sqrt(2)`:
/// numerator `11 + 2w + 24w^2 - 48w^3 - 16w^4 - 352w^5` over
/// `11 + 24w^2 - 16w^4`.
const E4CHI_NUM_ODD: [i64; 3] = [2, -48, -352];
const E4CHI_DEN_EVEN: [i64; 3] = [11, 24, -16];

/// The rational-function expression of `E*_{4,chi}/V*_{4,chi}`. With
/// `w = z_8/sqrt(2) = (E*_{1,chi tau}/V*_{1,chi tau} - 1)/2`, the check in
/// cleared form is
///
/// ```text
/// (E*_{4,chi}/V*_{4,chi} - 1) * (11 + 24 w^2 - 16 w^4) = 2w - 48w^3 - 352w^5 .
/// ```
pub fn verify_e4chi_ratio(depth: usize) -> IdentityReport {
    e4chi_ratio_with(depth, &E4CHI_NUM_ODD, &E4CHI_DEN_EVEN)
}

fn e4chi_ratio_with(depth: usize, num_odd: &[i64; 3], den_even: &[i64; 3]) -> IdentityReport {
    let p = depth + 2;
    let kappa1 = WeightChar::new(1, DirichletChar::chi_tau()).unwrap();
    let w = (&eisenstein_ratio(&kappa1, p) - &QSeries::one(p)).scale(&QuadRat::from_frac(1, 2));
    let kappa4 = WeightChar::new(4, DirichletChar::chi()).unwrap();
    let r = eisenstein_ratio(&kappa4, p);

    let w2 = &w * &w;
    let w4 = &w2 * &w2;
    let den = &(&QSeries::monomial(QuadRat::from_int(den_even[0]), 0, p)
        + &w2.scale(&QuadRat::from_int(den_even[1])))
        + &w4.scale(&QuadRat::from_int(den_even[2]));
    let num = &(&w.scale(&QuadRat::from_int(num_odd[0]))
        + &(&w2 * &w).scale(&QuadRat::from_int(num_odd[1])))
        + &(&w4 * &w).scale(&QuadRat::from_int(num_odd[2]));

    let lhs = &(&r - &QSeries::one(p)) * &den;
    IdentityReport::from_comparison(
        "e4chi-ratio",
        &lhs,
        &num,
        depth,
        "(E*_{4,chi}/V*_{4,chi} - 1)(11+24w^2-16w^4) = 2w-48w^3-352w^5",
    )
}
