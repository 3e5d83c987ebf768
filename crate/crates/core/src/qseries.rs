//! Truncated q-expansions with coefficients in Q(sqrt(2)).
//!
//! A [`QSeries`] knows its coefficients for `q^0 .. q^(P-1)` and nothing
//! beyond; `P` is the *precision*. Arithmetic never claims coefficients it
//! cannot prove: a product of series known to precisions `P1`, `P2` with
//! leading orders `o1`, `o2` is known to `min(P1 + o2, P2 + o1)`.
//!
//! The operators specific to p = 2:
//!
//! - [`u2`]: `sum a_n q^n  ->  sum a_{2n} q^n` (halves precision, rounded up);
//! - [`v2op`]: `q -> q^2` (precision `2P - 1`; a one-sided inverse of `u2`).

use crate::exact::{rat_int, QuadRat, Rat};
use crate::{Error, Result};
use std::cmp::min;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<QuadRat>,
}

impl QSeries {
    /// The zero series known to precision `prec`.
    pub fn zero(prec: usize) -> Self {
        QSeries { coeffs: vec![QuadRat::zero(); prec] }
    }

    /// The constant series 1 known to precision `prec`.
    pub fn one(prec: usize) -> Self {
        Self::monomial(QuadRat::one(), 0, prec)
    }

    /// `c * q^k` known to precision `prec`.
    pub fn monomial(c: QuadRat, k: usize, prec: usize) -> Self {
        let mut s = Self::zero(prec);
        if k < prec {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<QuadRat>) -> Self {
        QSeries { coeffs }
    }

    /// Convenience: integer coefficients `c_0, c_1, ...`.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        QSeries { coeffs: coeffs.iter().map(|&n| QuadRat::from_int(n)).collect() }
    }

    /// Number of known coefficients.
    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, n: usize) -> &QuadRat {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[QuadRat] {
        &self.coeffs
    }

    /// Index of the first nonzero known coefficient; equals the precision
    /// when the series is zero as far as it is known.
    pub fn leading_order(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or_else(|| self.prec())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Restrict to at most `prec` known coefficients.
    pub fn truncate(&self, prec: usize) -> Self {
        let p = min(prec, self.prec());
        QSeries { coeffs: self.coeffs[..p].to_vec() }
    }

    /// Multiply by `q^k` (shifts coefficients up; precision grows by `k`).
    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![QuadRat::zero(); k];
        coeffs.extend_from_slice(&self.coeffs);
        QSeries { coeffs }
    }

    pub fn scale(&self, c: &QuadRat) -> Self {
        QSeries { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Multiply in place by the sparse binomial `1 + c*q^k` (`k >= 1`).
    pub fn mul_binomial(&mut self, k: usize, c: &QuadRat) {
        let p = self.prec();
        if k == 0 || k >= p {
            return;
        }
        for i in (k..p).rev() {
            let add = &self.coeffs[i - k] * c;
            self.coeffs[i] += &add;
        }
    }

    /// Inverse of a series with invertible constant term; the precision is
    /// preserved.
    pub fn inv(&self) -> Result<QSeries> {
        if self.prec() == 0 || self.coeffs[0].is_zero() {
            return Err(Error::NonInvertibleLeading);
        }
        let c0_inv = self.coeffs[0].inv()?;
        let p = self.prec();
        let mut out = vec![QuadRat::zero(); p];
        out[0] = c0_inv.clone();
        for n in 1..p {
            let mut acc = QuadRat::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &(&self.coeffs[k] * &out[n - k]);
                }
            }
            out[n] = -&(&acc * &c0_inv);
        }
        Ok(QSeries { coeffs: out })
    }

    /// `e`-th power by repeated squaring. `pow(0)` is 1 at this precision.
    pub fn pow(&self, e: usize) -> QSeries {
        if e == 0 {
            return QSeries::one(self.prec());
        }
        let mut acc: Option<QSeries> = None;
        let mut sq = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => sq.clone(),
                    Some(a) => &a * &sq,
                });
            }
            k >>= 1;
            if k > 0 {
                sq = &sq * &sq;
            }
        }
        acc.unwrap()
    }

    /// First index `< depth` where the two series differ, comparing only
    /// coefficients both sides know.
    pub fn first_mismatch(&self, other: &QSeries, depth: usize) -> Option<usize> {
        let p = min(min(self.prec(), other.prec()), depth);
        (0..p).find(|&n| self.coeffs[n] != other.coeffs[n])
    }

    /// True when all known coefficients up to `depth` vanish.
    pub fn is_zero_to(&self, depth: usize) -> bool {
        self.coeffs.iter().take(depth).all(|c| c.is_zero())
    }
}

// Renders the first few terms, mainly for test failure output.
impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut shown = 0;
        write!(f, "[")?;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if shown > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})q^{}", c, n)?;
            shown += 1;
            if shown >= 12 {
                write!(f, " + ...")?;
                break;
            }
        }
        if shown == 0 {
            write!(f, "0")?;
        }
        write!(f, " ; O(q^{})]", self.prec())
    }
}

impl<'a, 'b> Add<&'b QSeries> for &'a QSeries {
    type Output = QSeries;
    fn add(self, rhs: &'b QSeries) -> QSeries {
        let p = min(self.prec(), rhs.prec());
        let coeffs = (0..p).map(|n| &self.coeffs[n] + &rhs.coeffs[n]).collect();
        QSeries { coeffs }
    }
}

impl<'a, 'b> Sub<&'b QSeries> for &'a QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &'b QSeries) -> QSeries {
        let p = min(self.prec(), rhs.prec());
        let coeffs = (0..p).map(|n| &self.coeffs[n] - &rhs.coeffs[n]).collect();
        QSeries { coeffs }
    }
}

impl<'a> Neg for &'a QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl<'a, 'b> Mul<&'b QSeries> for &'a QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &'b QSeries) -> QSeries {
        let (p1, p2) = (self.prec(), rhs.prec());
        let (o1, o2) = (self.leading_order(), rhs.leading_order());
        let prec = min(p1 + o2, p2 + o1);
        let mut out = vec![QuadRat::zero(); prec];
        for i in o1..p1 {
            if self.coeffs[i].is_zero() {
                continue;
            }
            let jmax = min(p2, prec.saturating_sub(i));
            for j in o2..jmax {
                if rhs.coeffs[j].is_zero() {
                    continue;
                }
                out[i + j] += &(&self.coeffs[i] * &rhs.coeffs[j]);
            }
        }
        QSeries { coeffs: out }
    }
}

/// The U operator on q-expansions: keeps the even-index coefficients,
/// `U(sum a_n q^n) = sum a_{2n} q^n`. Output precision `ceil(P/2)`.
pub fn u2(f: &QSeries) -> QSeries {
    let p_out = f.prec().div_ceil(2);
    let coeffs = (0..p_out).map(|n| f.coeffs[2 * n].clone()).collect();
    QSeries { coeffs }
}

/// The V operator `q -> q^2`. Output precision `2P - 1`: all odd
/// coefficients vanish and the even coefficient `2n` equals coefficient `n`
/// of the input.
pub fn v2op(f: &QSeries) -> QSeries {
    if f.prec() == 0 {
        return f.clone();
    }
    let p_out = 2 * f.prec() - 1;
    let mut coeffs = vec![QuadRat::zero(); p_out];
    for (n, c) in f.coeffs.iter().enumerate() {
        coeffs[2 * n] = c.clone();
    }
    QSeries { coeffs }
}

/// Euler product `prod_{n>=1} (1 - q^n)` via the pentagonal number theorem
/// (sparse, exact).
pub(crate) fn euler_product(prec: usize) -> QSeries {
    let mut s = QSeries::zero(prec);
    if prec > 0 {
        s.coeffs[0] = QuadRat::one();
    }
    let mut k: usize = 1;
    loop {
        let g1 = k * (3 * k - 1) / 2;
        let g2 = k * (3 * k + 1) / 2;
        if g1 >= prec {
            break;
        }
        let sign = if k % 2 == 1 { -1 } else { 1 };
        s.coeffs[g1] = QuadRat::from_int(sign);
        if g2 < prec {
            s.coeffs[g2] = QuadRat::from_int(sign);
        }
        k += 1;
    }
    s
}

/// The discriminant cusp form `Delta = q prod_{n>=1} (1 - q^n)^24`.
pub fn delta(prec: usize) -> QSeries {
    assert!(prec >= 1, "delta needs precision >= 1");
    let e = euler_product(prec.saturating_sub(1).max(1));
    let e2 = &e * &e;
    let e4 = &e2 * &e2;
    let e8 = &e4 * &e4;
    let e16 = &e8 * &e8;
    let e24 = &e16 * &e8;
    e24.truncate(prec - 1).shift_up(1)
}

/// `Delta(q^k)` to the given precision.
pub fn delta_at(k: usize, prec: usize) -> QSeries {
    let inner = delta(prec.div_ceil(k));
    let mut coeffs = vec![QuadRat::zero(); prec];
    for (n, c) in inner.coeffs().iter().enumerate() {
        if n * k < prec {
            coeffs[n * k] = c.clone();
        }
    }
    QSeries { coeffs }
}

/// The weight-4 level-1 Eisenstein series `E_4 = 1 + 240 sum sigma_3(n) q^n`.
pub fn e4(prec: usize) -> QSeries {
    assert!(prec >= 1);
    let mut coeffs = vec![QuadRat::zero(); prec];
    coeffs[0] = QuadRat::one();
    // sigma_3 by sieving over divisors
    let mut sigma3 = vec![0i128; prec];
    for d in 1..prec {
        let d3 = (d as i128).pow(3);
        let mut m = d;
        while m < prec {
            sigma3[m] += d3;
            m += d;
        }
    }
    for n in 1..prec {
        coeffs[n] = QuadRat::from_rat(rat_int(240) * Rat::from_integer(sigma3[n].into()));
    }
    QSeries { coeffs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn product_and_inverse() {
        let one_plus_q = QSeries::from_ints(&[1, 1, 0, 0, 0]);
        let one_minus_q = QSeries::from_ints(&[1, -1, 0, 0, 0]);
        let prod = &one_plus_q * &one_minus_q;
        assert_eq!(prod, QSeries::from_ints(&[1, 0, -1, 0, 0]));

        let geom = one_minus_q.inv().unwrap();
        assert_eq!(geom, QSeries::from_ints(&[1, 1, 1, 1, 1]));

        let sq = QSeries::from_ints(&[1, 2, 0]).pow(2);
        assert_eq!(sq, QSeries::from_ints(&[1, 4, 4]));
    }

    #[test]
    fn inverse_requires_unit_constant() {
        let q = QSeries::from_ints(&[0, 1, 0]);
        assert_eq!(q.inv(), Err(Error::NonInvertibleLeading));
    }

    #[test]
    fn mul_precision_rule() {
        // f known to 3 with order 1, g known to 5 with order 0:
        // product known to min(3 + 0, 5 + 1) = 3.
        let f = QSeries::from_ints(&[0, 1, 1]);
        let g = QSeries::from_ints(&[1, 1, 1, 1, 1]);
        assert_eq!((&f * &g).prec(), 3);
        // two order-1 factors of precision 3 are known to 4
        let h = &f * &f;
        assert_eq!(h.prec(), 4);
        assert_eq!(h, QSeries::from_ints(&[0, 0, 1, 2]));
    }

    #[test]
    fn u_and_v_operators() {
        let f = QSeries::from_ints(&[0, 1, 3, 5, 7]);
        assert_eq!(u2(&f), QSeries::from_ints(&[0, 3, 7]));

        let g = QSeries::from_ints(&[1, 1, 1]);
        assert_eq!(v2op(&g), QSeries::from_ints(&[1, 0, 1, 0, 1]));
        assert_eq!(v2op(&QSeries::from_ints(&[0, 1])), QSeries::from_ints(&[0, 0, 1]));

        // U(V(f)) = f
        assert_eq!(u2(&v2op(&g)), g);
    }

    #[test]
    fn u_of_product_with_v_twist() {
        // U(f * V(g)) = U(f) * g on deterministic pseudo-random series.
        let mut seed = 0xdeadbeefcafef00d_u64;
        let mut rnd = || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            (seed % 11) as i64 - 5
        };
        for _ in 0..50 {
            let f = QSeries::from_coeffs((0..20).map(|_| QuadRat::from_int(rnd())).collect());
            let g = QSeries::from_coeffs((0..20).map(|_| QuadRat::from_int(rnd())).collect());
            let lhs = u2(&(&f * &v2op(&g)));
            let rhs = &u2(&f) * &g;
            let depth = min(lhs.prec(), rhs.prec());
            assert_eq!(lhs.first_mismatch(&rhs, depth), None);
        }
    }

    #[test]
    fn ring_axioms_on_random_triples() {
        let mut seed = 0x0123456789abcdef_u64;
        let mut rnd = || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            rat((seed % 13) as i64 - 6, (seed % 5) as i64 + 1)
        };
        for _ in 0..30 {
            let mk = |r: &mut dyn FnMut() -> Rat| {
                QSeries::from_coeffs((0..20).map(|_| QuadRat::from_rat(r())).collect())
            };
            let f = mk(&mut rnd);
            let g = mk(&mut rnd);
            let h = mk(&mut rnd);
            let assoc_l = &(&f * &g) * &h;
            let assoc_r = &f * &(&g * &h);
            assert_eq!(assoc_l.first_mismatch(&assoc_r, 20), None);
            let dist_l = &f * &(&g + &h);
            let dist_r = &(&f * &g) + &(&f * &h);
            assert_eq!(dist_l.first_mismatch(&dist_r, 20), None);
        }
    }

    #[test]
    fn delta_expansion() {
        let d = delta(3);
        assert_eq!(d, QSeries::from_ints(&[0, 1, -24]));
        // against the naive product route (independent of the pentagonal one)
        let mut naive = QSeries::one(8);
        for n in 1..8 {
            for _ in 0..24 {
                naive.mul_binomial(n, &QuadRat::from_int(-1));
            }
        }
        let naive_delta = naive.shift_up(1).truncate(8);
        assert_eq!(delta(8), naive_delta);
        // tau(3) = 252, tau(5) = 4830
        assert_eq!(delta(8).coeff(3), &QuadRat::from_int(252));
        assert_eq!(delta(8).coeff(5), &QuadRat::from_int(4830));
    }

    #[test]
    fn e4_expansion() {
        let e = e4(4);
        assert_eq!(e.coeff(0), &QuadRat::from_int(1));
        assert_eq!(e.coeff(1), &QuadRat::from_int(240));
        assert_eq!(e.coeff(2), &QuadRat::from_int(2160)); // 240 * sigma_3(2)
        assert_eq!(e.coeff(3), &QuadRat::from_int(6720));
    }
}
