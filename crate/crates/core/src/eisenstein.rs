//! Dirichlet characters mod 4 and 8, twisted Bernoulli numbers, and the
//! 2-stabilized Eisenstein series `E*_{k,theta}`.
//!
//! The characters are stored as explicit value tables:
//!
//! - `tau`: the odd primitive character of conductor 4, `tau(3) = -1`;
//! - `chi`: the even primitive character of conductor 8,
//!   `chi(3) = chi(5) = -1`, `chi(7) = +1`;
//! - `chi*tau`: their product, the odd primitive character of conductor 8,
//!   with `(chi*tau)(3) = +1`, `(chi*tau)(5) = (chi*tau)(7) = -1`.
//!
//! Twisted Bernoulli numbers follow Washington, *Introduction to Cyclotomic
//! Fields*, ch. 4: they are defined by the generating function
//! `sum_a theta(a) t e^{at} / (e^{Nt} - 1)` and computed here through the
//! equivalent finite form
//!
//! ```text
//! B_{k,theta} = N^(k-1) * sum_{a=1..N} theta(a) * B_k(a/N)
//! ```
//!
//! with `B_k(x)` the Bernoulli polynomial, which needs only rational
//! arithmetic. The Eisenstein series normalized to be a `U_2`-eigenvector is
//!
//! ```text
//! E*_{k,theta} = -B_{k,theta}/(2k) + sum_{n>=1} ( sum_{0<d|n, d odd} theta(d) d^(k-1) ) q^n .
//! ```

use crate::exact::{rat_int, QuadRat, Rat};
use crate::qseries::{v2op, QSeries};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// A Dirichlet character mod 4 or 8 with values in {0, +1, -1}, stored as an
/// explicit table on the odd residues.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DirichletChar {
    modulus: u32,
    /// Values at residues 1, 3 (mod 4) or 1, 3, 5, 7 (mod 8).
    table: [i8; 4],
    label: &'static str,
}

impl DirichletChar {
    /// The odd primitive character of conductor 4.
    pub fn tau() -> Self {
        DirichletChar { modulus: 4, table: [1, -1, 0, 0], label: "tau" }
    }

    /// The even primitive character of conductor 8.
    pub fn chi() -> Self {
        DirichletChar { modulus: 8, table: [1, -1, -1, 1], label: "chi" }
    }

    /// The odd primitive character of conductor 8 (pointwise product of the
    /// other two).
    pub fn chi_tau() -> Self {
        DirichletChar { modulus: 8, table: [1, 1, -1, -1], label: "chi*tau" }
    }

    /// The trivial character mod `modulus` (4 or 8). Included for
    /// completeness; the slope pipeline never uses it.
    pub fn trivial(modulus: u32) -> Self {
        assert!(modulus == 4 || modulus == 8);
        DirichletChar { modulus, table: [1, 1, 1, 1], label: "trivial" }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn label(&self) -> &'static str {
        self.label
    }

    /// Evaluate at `n`; zero off the units.
    pub fn eval(&self, n: u64) -> i8 {
        let r = (n % self.modulus as u64) as u32;
        if r % 2 == 0 {
            return 0;
        }
        self.table[(r / 2) as usize]
    }

    /// `theta(-1)`, which is `theta(modulus - 1)`.
    pub fn parity(&self) -> i8 {
        self.eval(self.modulus as u64 - 1)
    }

    pub fn is_odd(&self) -> bool {
        self.parity() == -1
    }
}

/// A weight-character pair `(k, theta)` with the parity compatibility
/// `theta(-1) = (-1)^k`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct WeightChar {
    pub weight: u32,
    pub character: DirichletChar,
}

impl WeightChar {
    pub fn new(weight: u32, character: DirichletChar) -> Result<Self> {
        let want = if weight % 2 == 0 { 1 } else { -1 };
        if character.parity() != want {
            return Err(Error::InvalidInput(format!(
                "character {} has the wrong parity for weight {}",
                character.label(),
                weight
            )));
        }
        Ok(WeightChar { weight, character })
    }
}

/// Bernoulli numbers `B_0 .. B_n` (convention `B_1 = -1/2`), by the standard
/// recurrence.
pub fn bernoulli_numbers(n: usize) -> Vec<Rat> {
    let mut b: Vec<Rat> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        if m == 0 {
            b.push(Rat::one());
            continue;
        }
        // B_m = -1/(m+1) * sum_{j<m} C(m+1, j) B_j
        let mut acc = Rat::zero();
        let mut binom = BigInt::one(); // C(m+1, 0)
        for (j, bj) in b.iter().enumerate() {
            if j > 0 {
                // C(m+1, j) from C(m+1, j-1)
                binom = &binom * BigInt::from((m + 2 - j) as u64) / BigInt::from(j as u64);
            }
            acc += Rat::from_integer(binom.clone()) * bj;
        }
        b.push(-acc / rat_int((m + 1) as i64));
    }
    b
}

/// Bernoulli polynomial `B_k(x) = sum_j C(k, j) B_j x^(k-j)` evaluated at a
/// rational point.
pub fn bernoulli_poly_at(k: usize, x: &Rat) -> Rat {
    let b = bernoulli_numbers(k);
    let mut acc = Rat::zero();
    let mut binom = BigInt::one(); // C(k, 0)
    for j in 0..=k {
        if j > 0 {
            binom = &binom * BigInt::from((k + 1 - j) as u64) / BigInt::from(j as u64);
        }
        let mut term = Rat::from_integer(binom.clone()) * &b[j];
        for _ in 0..(k - j) {
            term *= x;
        }
        acc += term;
    }
    acc
}

/// The twisted Bernoulli number `B_{k,theta}` for `k >= 1`.
pub fn bernoulli_twisted(k: u32, theta: &DirichletChar) -> Rat {
    let n = theta.modulus() as u64;
    let mut sum = Rat::zero();
    for a in 1..=n {
        let t = theta.eval(a);
        if t == 0 {
            continue;
        }
        let x = Rat::new(BigInt::from(a), BigInt::from(n));
        let val = bernoulli_poly_at(k as usize, &x);
        sum += rat_int(t as i64) * val;
    }
    let mut scale = Rat::one();
    for _ in 1..k {
        scale *= rat_int(n as i64);
    }
    scale * sum
}

/// The Eisenstein series `E*_{k,theta}` to the given q-precision.
///
/// Constant term `-B_{k,theta}/(2k)`, kept as an exact rational (no
/// renormalization); coefficient of `q^n` is the odd-divisor sum
/// `sum theta(d) d^(k-1)`. Because both characters here vanish on even
/// arguments, the oddness restriction is automatic, and
/// `a_{2n} = a_n`: the series is a `U_2`-eigenvector with eigenvalue 1.
pub fn eisenstein_star(kappa: &WeightChar, prec: usize) -> QSeries {
    assert!(kappa.weight >= 1);
    assert!(prec >= 1);
    let k = kappa.weight;
    let theta = &kappa.character;
    let mut coeffs = vec![QuadRat::zero(); prec];
    let b = bernoulli_twisted(k, theta);
    coeffs[0] = QuadRat::from_rat(-b / rat_int(2 * k as i64));
    // Sieve over odd divisors d, adding theta(d) d^(k-1) to every multiple.
    for d in (1..prec).step_by(2) {
        let t = theta.eval(d as u64);
        if t == 0 {
            continue;
        }
        let dpow = BigInt::from(d).pow(k - 1);
        let contrib = QuadRat::from_rat(rat_int(t as i64) * Rat::from_integer(dpow));
        let mut m = d;
        while m < prec {
            coeffs[m] += &contrib;
            m += d;
        }
    }
    QSeries::from_coeffs(coeffs)
}

/// The ratio `E*_kappa / V(E*_kappa)` as a q-series of the requested
/// precision; this is the weight-character multiplier in its rawest form.
/// Its constant term is 1.
pub fn eisenstein_ratio(kappa: &WeightChar, prec: usize) -> QSeries {
    let e = eisenstein_star(kappa, prec);
    let v = v2op(&e).truncate(prec);
    let v_inv = v.inv().expect("Eisenstein constant term -B/2k is nonzero");
    (&e * &v_inv).truncate(prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::qseries::u2;

    #[test]
    fn character_tables() {
        let tau = DirichletChar::tau();
        assert_eq!(tau.eval(1), 1);
        assert_eq!(tau.eval(3), -1);
        assert_eq!(tau.eval(2), 0);
        assert_eq!(tau.eval(7), -1);
        assert!(tau.is_odd());

        let chi = DirichletChar::chi();
        assert_eq!(
            [chi.eval(1), chi.eval(3), chi.eval(5), chi.eval(7)],
            [1, -1, -1, 1]
        );
        assert!(!chi.is_odd());

        let ct = DirichletChar::chi_tau();
        assert_eq!([ct.eval(1), ct.eval(3), ct.eval(5), ct.eval(7)], [1, 1, -1, -1]);
        assert!(ct.is_odd());
        // consistency with the pointwise product
        for n in (1..16).step_by(2) {
            assert_eq!(ct.eval(n), chi.eval(n) * tau.eval(n));
        }
    }

    #[test]
    fn weight_char_parity() {
        assert!(WeightChar::new(1, DirichletChar::tau()).is_ok());
        assert!(WeightChar::new(2, DirichletChar::tau()).is_err());
        assert!(WeightChar::new(4, DirichletChar::chi()).is_ok());
        assert!(WeightChar::new(3, DirichletChar::chi()).is_err());
        assert!(WeightChar::new(5, DirichletChar::chi_tau()).is_ok());
    }

    #[test]
    fn bernoulli_number_table() {
        let b = bernoulli_numbers(6);
        assert_eq!(b[0], rat(1, 1));
        assert_eq!(b[1], rat(-1, 2));
        assert_eq!(b[2], rat(1, 6));
        assert_eq!(b[3], rat(0, 1));
        assert_eq!(b[4], rat(-1, 30));
        assert_eq!(b[6], rat(1, 42));
    }

    /// Independent oracle: expand the defining generating function
    /// `sum_a theta(a) t e^{at} / (e^{Nt} - 1)` as a formal power series in t
    /// with exact rational coefficients and read off `k! * [t^k]`.
    fn bernoulli_twisted_egf(k: u32, theta: &DirichletChar) -> Rat {
        let n = theta.modulus() as usize;
        let len = k as usize + 2;
        let fact = |m: usize| -> Rat {
            let mut f = BigInt::one();
            for i in 1..=m {
                f *= BigInt::from(i);
            }
            Rat::from_integer(f)
        };
        // numerator: sum_a theta(a) e^{at}, as t-series
        let mut num = vec![Rat::zero(); len];
        for a in 1..=n {
            let t = theta.eval(a as u64);
            if t == 0 {
                continue;
            }
            for (m, slot) in num.iter_mut().enumerate() {
                let apow = Rat::from_integer(BigInt::from(a).pow(m as u32));
                *slot += rat_int(t as i64) * apow / fact(m);
            }
        }
        // denominator: (e^{Nt} - 1)/t, an invertible t-series
        let mut den = vec![Rat::zero(); len];
        for (m, slot) in den.iter_mut().enumerate() {
            *slot = Rat::from_integer(BigInt::from(n).pow(m as u32 + 1)) / fact(m + 1);
        }
        // quotient series num/den
        let mut quot = vec![Rat::zero(); len];
        for m in 0..len {
            let mut acc = num[m].clone();
            for j in 0..m {
                acc -= quot[j].clone() * &den[m - j];
            }
            quot[m] = acc / &den[0];
        }
        quot[k as usize].clone() * fact(k as usize)
    }

    #[test]
    fn twisted_bernoulli_values() {
        let tau = DirichletChar::tau();
        let chi = DirichletChar::chi();
        let ct = DirichletChar::chi_tau();
        assert_eq!(bernoulli_twisted(1, &tau), rat(-1, 2));
        assert_eq!(bernoulli_twisted(1, &ct), rat(-1, 1));
        assert_eq!(bernoulli_twisted(2, &chi), rat(2, 1));
        assert_eq!(bernoulli_twisted(4, &chi), rat(-44, 1));
    }

    #[test]
    fn twisted_bernoulli_matches_generating_function() {
        for (k, theta) in [
            (1, DirichletChar::tau()),
            (3, DirichletChar::tau()),
            (1, DirichletChar::chi_tau()),
            (5, DirichletChar::chi_tau()),
            (2, DirichletChar::chi()),
            (4, DirichletChar::chi()),
            (8, DirichletChar::chi()),
        ] {
            assert_eq!(
                bernoulli_twisted(k, &theta),
                bernoulli_twisted_egf(k, &theta),
                "B_({},{})",
                k,
                theta.label()
            );
        }
    }

    #[test]
    fn eisenstein_weight_one_tau() {
        let kappa = WeightChar::new(1, DirichletChar::tau()).unwrap();
        let e = eisenstein_star(&kappa, 8);
        assert_eq!(e.coeff(0), &QuadRat::from_frac(1, 4));
        assert_eq!(e.coeff(1), &QuadRat::from_int(1));
        assert_eq!(e.coeff(3), &QuadRat::from_int(0));
        assert_eq!(e.coeff(5), &QuadRat::from_int(2));
    }

    #[test]
    fn coefficient_of_q2_is_one_for_all_weights() {
        for kappa in [
            WeightChar::new(1, DirichletChar::tau()).unwrap(),
            WeightChar::new(1, DirichletChar::chi_tau()).unwrap(),
            WeightChar::new(2, DirichletChar::chi()).unwrap(),
            WeightChar::new(4, DirichletChar::chi()).unwrap(),
        ] {
            let e = eisenstein_star(&kappa, 4);
            assert_eq!(e.coeff(2), &QuadRat::from_int(1));
        }
    }

    #[test]
    fn u2_eigenvector_with_eigenvalue_one() {
        for kappa in [
            WeightChar::new(1, DirichletChar::tau()).unwrap(),
            WeightChar::new(1, DirichletChar::chi_tau()).unwrap(),
            WeightChar::new(4, DirichletChar::chi()).unwrap(),
        ] {
            let e = eisenstein_star(&kappa, 60);
            let ue = u2(&e);
            assert_eq!(ue.first_mismatch(&e, ue.prec()), None);
        }
    }

    #[test]
    fn all_coefficients_rational() {
        for kappa in [
            WeightChar::new(1, DirichletChar::tau()).unwrap(),
            WeightChar::new(1, DirichletChar::chi_tau()).unwrap(),
            WeightChar::new(8, DirichletChar::chi()).unwrap(),
        ] {
            let e = eisenstein_star(&kappa, 40);
            assert!(e.coeffs().iter().all(|c| c.is_rational()));
        }
    }

    #[test]
    fn jacobi_two_squares_cross_check() {
        // 4 * E*_{1,tau} equals the theta series of x^2 + y^2 coefficientwise:
        // classical Jacobi identity, verified against a lattice-point count.
        let kappa = WeightChar::new(1, DirichletChar::tau()).unwrap();
        let e = eisenstein_star(&kappa, 50).scale(&QuadRat::from_int(4));
        let mut theta = vec![0i64; 50];
        let bound = 8i64;
        for m in -bound..=bound {
            for n in -bound..=bound {
                let v = m * m + n * n;
                if v < 50 {
                    theta[v as usize] += 1;
                }
            }
        }
        for (n, count) in theta.iter().enumerate() {
            assert_eq!(
                e.coeff(n),
                &QuadRat::from_int(*count),
                "two-squares count at q^{}",
                n
            );
        }
    }
}
