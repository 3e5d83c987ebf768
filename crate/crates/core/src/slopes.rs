//! Characteristic polynomials, Newton polygons, and certified slope
//! sequences.
//!
//! `det(1 - tM)` is computed exactly by the Faddeev-LeVerrier recurrence
//! (field arithmetic over Q(sqrt(2)); division only by integers), guarded in
//! the tests by a cofactor-expansion oracle at small sizes. Slopes are the
//! segment slopes of the lower convex hull of `(i, v(c_i))` and are emitted
//! as exact rationals, never floats.
//!
//! Truncation management follows Serre's theory of compact operators on
//! p-adic Banach spaces (Endomorphismes complètement continus des espaces de
//! Banach p-adiques, Publ. IHES 12): finite truncations converge
//! coefficientwise to the characteristic power series, but with no effective
//! rate, so a slope prefix is *certified* by agreement between two truncation
//! sizes (n and n + 4 on the compressed matrix).

use crate::classical::dimension_cuspforms;
use crate::exact::{rat, rat_int, HalfVal, QuadRat, Rat};
use crate::scheme::LevelScheme;
use crate::umatrix::{build_u_matrix, build_u_matrix_with, compress_even, UMatrix, UMatrixForm};
use crate::{Error, Result};

/// Exact coefficients `c_0 = 1, c_1, ..., c_n` of `det(1 - tM)`.
#[derive(Clone, Debug)]
pub struct CharPoly {
    pub coeffs: Vec<QuadRat>,
    pub meta: Option<CharPolyMeta>,
}

#[derive(Clone, Debug)]
pub struct CharPolyMeta {
    pub level: u32,
    pub weight: u32,
    pub form: UMatrixForm,
    pub size: usize,
    pub q_precision: usize,
}

/// `det(1 - tM)` of a square matrix given row-major, by Faddeev-LeVerrier:
/// `M_1 = A`, `c_k = -tr(M_k)/k`, `M_(k+1) = A (M_k + c_k I)`.
pub fn char_poly_dense(n: usize, a: &[QuadRat]) -> Vec<QuadRat> {
    assert_eq!(a.len(), n * n);
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(QuadRat::one());
    if n == 0 {
        return coeffs;
    }
    let mut m: Vec<QuadRat> = a.to_vec();
    for k in 1..=n {
        let mut trace = QuadRat::zero();
        for i in 0..n {
            trace += &m[i * n + i];
        }
        let ck = trace.scale(&rat(-1, k as i64));
        coeffs.push(ck.clone());
        if k == n {
            break;
        }
        // m <- a * (m + ck I)
        for i in 0..n {
            m[i * n + i] += &ck;
        }
        let mut next = vec![QuadRat::zero(); n * n];
        for i in 0..n {
            for l in 0..n {
                let ail = &a[i * n + l];
                if ail.is_zero() {
                    continue;
                }
                for j in 0..n {
                    if m[l * n + j].is_zero() {
                        continue;
                    }
                    next[i * n + j] += &(ail * &m[l * n + j]);
                }
            }
        }
        m = next;
    }
    coeffs
}

/// Characteristic polynomial of a U-matrix truncation, with provenance.
pub fn char_poly(m: &UMatrix) -> CharPoly {
    CharPoly {
        coeffs: char_poly_dense(m.size(), m.entries()),
        meta: Some(CharPolyMeta {
            level: m.level,
            weight: m.weight,
            form: m.form,
            size: m.size(),
            q_precision: m.q_precision_used,
        }),
    }
}

/// Lower convex hull of the points `(i, v(c_i))`, anchored at `(0, 0)`.
#[derive(Clone, Debug)]
pub struct NewtonPolygon {
    /// The finite-valuation points that entered the hull computation.
    pub points: Vec<(usize, HalfVal)>,
    /// Hull vertices, convex with strictly increasing segment slopes.
    pub vertices: Vec<(usize, i64)>, // (index, twice the valuation)
    /// `(slope, multiplicity)` per hull segment, slopes strictly increasing.
    pub segments: Vec<(Rat, usize)>,
}

impl NewtonPolygon {
    /// Slopes expanded with multiplicity, in nondecreasing order.
    pub fn slopes(&self) -> Vec<Rat> {
        let mut out = Vec::new();
        for (s, m) in &self.segments {
            for _ in 0..*m {
                out.push(s.clone());
            }
        }
        out
    }
}

/// Newton polygon of a characteristic polynomial. Coefficients that vanish
/// contribute no point (their valuation is infinite and never on the lower
/// hull).
pub fn newton_polygon(cp: &CharPoly) -> NewtonPolygon {
    let points: Vec<(usize, HalfVal)> = cp
        .coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.val2()))
        .collect();
    // lower hull, popping when the previous slope is >= the new one so that
    // collinear points merge into a single segment
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &(i, v) in &points {
        let x = i as i64;
        let y = v.twice().expect("finite by filter");
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 1];
            let (x2, y2) = hull[hull.len() - 2];
            // slope(prev -> last) >= slope(last -> new) ?
            let lhs = (y1 - y2) as i128 * (x - x1) as i128;
            let rhs = (y - y1) as i128 * (x1 - x2) as i128;
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push((x, y));
    }
    let vertices: Vec<(usize, i64)> = hull.iter().map(|&(x, y)| (x as usize, y)).collect();
    let mut segments = Vec::new();
    for w in vertices.windows(2) {
        let (x1, y1) = w[0];
        let (x2, y2) = w[1];
        let run = x2 - x1;
        let slope = rat(y2 - y1, 2 * run as i64);
        segments.push((slope, run));
    }
    NewtonPolygon { points, vertices, segments }
}

/// A slope sequence certified by agreement of two truncation sizes.
#[derive(Clone, Debug)]
pub struct SlopeReport {
    /// The common slope prefix of the two truncations (length >= requested).
    pub certified: Vec<Rat>,
    /// All slopes of the larger truncation, certified or not.
    pub provisional: Vec<Rat>,
    pub small_size: usize,
    pub large_size: usize,
    pub q_precision: usize,
}

/// Slopes of the compressed truncation of the given size (no certification).
pub fn slopes_at_truncation(
    scheme: &dyn LevelScheme,
    weight: u32,
    compressed_size: usize,
) -> Result<Vec<Rat>> {
    let raw = build_u_matrix(scheme, weight, 2 * compressed_size)?;
    let compressed = compress_even(&raw)?;
    Ok(newton_polygon(&char_poly(&compressed)).slopes())
}

/// First `count` slopes of `U_2` on cuspidal overconvergent forms of this
/// weight, certified by comparing compressed truncations of sizes `count`
/// and `count + 4` (built from one RAW matrix of size `2 count + 8`).
pub fn overconvergent_slopes(
    scheme: &dyn LevelScheme,
    weight: u32,
    count: usize,
) -> Result<SlopeReport> {
    overconvergent_slopes_with(scheme, weight, count, None)
}

/// As [`overconvergent_slopes`], with an optional q-precision override for
/// the matrix build.
pub fn overconvergent_slopes_with(
    scheme: &dyn LevelScheme,
    weight: u32,
    count: usize,
    precision: Option<usize>,
) -> Result<SlopeReport> {
    assert!(count >= 1);
    let raw = build_u_matrix_with(
        scheme,
        weight,
        2 * count + 8,
        crate::umatrix::BuildOptions { precision, multiplier_first: false },
    )?;
    let compressed = compress_even(&raw)?;
    let small = compressed.leading_minor(count);

    let slopes_large = newton_polygon(&char_poly(&compressed)).slopes();
    let slopes_small = newton_polygon(&char_poly(&small)).slopes();

    let agree = slopes_small
        .iter()
        .zip(slopes_large.iter())
        .take_while(|(a, b)| a == b)
        .count();
    if agree < count {
        return Err(Error::CertificationFailed { requested: count, agreed: agree });
    }
    Ok(SlopeReport {
        certified: slopes_small[..agree].to_vec(),
        provisional: slopes_large,
        small_size: count,
        large_size: compressed.size(),
        q_precision: raw.q_precision_used,
    })
}

/// Outcome of the compact-operator determinant conditions on a truncation.
///
/// Condition (a): `v(det M_m) = r m(m+1)/2` for every leading minor.
/// Condition (b) is recorded in two readings: the literal per-column bound
/// `v(column j) >= r j`, and the symmetric entry bound
/// `v(M_(i,j)) >= r (i+j)/2` that the conjugated matrices actually satisfy
/// (it is the bound that makes non-leading principal minors strictly
/// dominated, which is what the conclusion `v(c_m) = r m(m+1)/2` needs).
#[derive(Clone, Debug)]
pub struct SerreReport {
    pub size: usize,
    pub rate: Rat,
    /// Per m: (m, v(det M_m), expected r m(m+1)/2, pass).
    pub determinant_rows: Vec<(usize, HalfVal, Rat, bool)>,
    pub determinant_pass: bool,
    /// Measured minimum valuation per column.
    pub column_minima: Vec<HalfVal>,
    /// Whether `min v(column j) >= r j` holds for every column.
    pub literal_column_bound: bool,
    /// Whether `v(M_(i,j)) >= r (i+j)/2` holds for every entry.
    pub symmetric_bound: bool,
    pub pass: bool,
}

/// Check the determinant and valuation hypotheses with rate `r` on the
/// matrix (normally the compressed or conjugated truncation; the leading
/// minors and their determinants are conjugation-invariant).
pub fn serre_conditions_check(m: &UMatrix, rate: &Rat) -> SerreReport {
    let n = m.size();
    let mut determinant_rows = Vec::with_capacity(n);
    let mut determinant_pass = true;
    for k in 1..=n {
        let det = m.leading_minor(k).det();
        let v = det.val2();
        let expected = rate.clone() * rat_int((k * (k + 1) / 2) as i64);
        let ok = v.as_rat().map(|r| r == expected).unwrap_or(false);
        determinant_pass &= ok;
        determinant_rows.push((k, v, expected, ok));
    }

    let column_minima = m.column_min_valuations();
    let literal_column_bound = column_minima.iter().enumerate().all(|(c, v)| {
        let bound = rate.clone() * rat_int((c + 1) as i64);
        v.as_rat().map(|r| r >= bound).unwrap_or(true)
    });
    let mut symmetric_bound = true;
    for r in 1..=n {
        for c in 1..=n {
            let bound = rate.clone() * rat_int((r + c) as i64) / rat_int(2);
            let ok = m
                .entry(r, c)
                .val2()
                .as_rat()
                .map(|v| v >= bound)
                .unwrap_or(true);
            symmetric_bound &= ok;
        }
    }

    SerreReport {
        size: n,
        rate: rate.clone(),
        determinant_pass,
        determinant_rows,
        column_minima,
        literal_column_bound,
        symmetric_bound,
        pass: determinant_pass && symmetric_bound,
    }
}

/// The slopes of `U_2` on the classical cuspidal space of this weight.
///
/// The dimension comes from the Cohen-Oesterlé formula through the
/// character's conductor exponent; the slopes are the first `dim` certified
/// overconvergent slopes, each of which must clear the Coleman classicality
/// bound (slope strictly less than `weight - 1`) -- a violation signals a
/// bug and is an error, not a report.
pub fn classical_slopes(scheme: &dyn LevelScheme, weight: u32) -> Result<Vec<Rat>> {
    scheme.weight_char(weight)?;
    let dim = dimension_cuspforms(weight, scheme.conductor_exponent())?;
    if dim == 0 {
        return Ok(Vec::new());
    }
    let report = overconvergent_slopes(scheme, weight, dim)?;
    let slopes = report.certified[..dim].to_vec();
    let bound = rat_int(weight as i64 - 1);
    for s in &slopes {
        if *s >= bound {
            return Err(Error::ClassicalityViolated {
                weight,
                slope: s.to_string(),
            });
        }
    }
    Ok(slopes)
}

/// True iff the slopes are pairwise distinct (each classical eigenspace is
/// then pinned by its slope, which is what forces 2-adic rationality of the
/// eigenform coefficients).
pub fn distinct_slope_check(slopes: &[Rat]) -> bool {
    for i in 0..slopes.len() {
        for j in (i + 1)..slopes.len() {
            if slopes[i] == slopes[j] {
                return false;
            }
        }
    }
    true
}
