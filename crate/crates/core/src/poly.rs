//! Dense integer polynomials, just enough to build the minimal polynomial of
//! `2cos(pi/q)` by factoring the Chebyshev-type recurrence polynomial.
//!
//! Coefficients are stored lowest degree first and the zero polynomial is the
//! empty vector.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Integer polynomial, coefficients lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly { coeffs: vec![BigInt::one()] }
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        IntPoly { coeffs: vec![BigInt::zero(), BigInt::one()] }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        IntPoly::new(out)
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, s: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    /// Exact division by a monic polynomial. Returns `(quotient, remainder)`.
    pub fn div_rem_monic(&self, divisor: &IntPoly) -> (IntPoly, IntPoly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        assert!(divisor.leading().is_some_and(One::is_one), "divisor must be monic");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (IntPoly::zero(), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (IntPoly::new(quot), IntPoly::new(rem))
    }

    /// Sign of `p(m / 2^k)`, computed exactly in integers.
    pub fn sign_at_dyadic(&self, m: &BigInt, k: u64) -> i32 {
        let Some(n) = self.degree() else { return 0 };
        let mut acc = self.coeffs[n].clone();
        for j in (0..n).rev() {
            acc = acc * m + (&self.coeffs[j] << (k * (n - j) as u64));
        }
        sign_of(&acc)
    }

    /// Value at an `f64` point (diagnostics and root bracketing only).
    pub fn eval_f64(&self, x: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }
}

pub(crate) fn sign_of(v: &BigInt) -> i32 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

/// `p_q` from the recurrence `p_{i+1} = x p_i - p_{i-1}`, `p_0 = 0`, `p_1 = 1`.
/// Its roots are `2cos(k pi / q)` for `k = 1..q-1`.
pub fn recurrence_poly(q: usize) -> IntPoly {
    let mut prev = IntPoly::zero();
    let mut cur = IntPoly::one();
    for _ in 1..q {
        let next = IntPoly::x().mul(&cur).sub(&prev);
        prev = cur;
        cur = next;
    }
    if q == 0 {
        prev
    } else {
        cur
    }
}

/// The `n`-th cyclotomic polynomial.
pub fn cyclotomic(n: usize) -> IntPoly {
    assert!(n >= 1);
    // x^n - 1 divided by every Phi_d with d | n, d < n.
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[0] = BigInt::from(-1);
    coeffs[n] = BigInt::one();
    let mut p = IntPoly::new(coeffs);
    for d in 1..n {
        if n.is_multiple_of(d) {
            let (quot, rem) = p.div_rem_monic(&cyclotomic(d));
            debug_assert!(rem.is_zero());
            p = quot;
        }
    }
    p
}

/// Minimal polynomial of `2cos(2 pi / n)` for `n >= 3`, obtained from the
/// palindromic `Phi_n(z) = z^m Psi_n(z + 1/z)`.
pub fn real_cyclotomic(n: usize) -> IntPoly {
    assert!(n >= 3);
    let phi = cyclotomic(n);
    let m = phi.degree().expect("nonzero") / 2;
    // z^k + z^-k as a polynomial in x = z + 1/z: D_0 = 2, D_1 = x,
    // D_{k+1} = x D_k - D_{k-1}.
    let mut d_prev = IntPoly::from_i64(&[2]);
    let mut d_cur = IntPoly::x();
    let mut out = IntPoly::new(vec![phi.coeffs()[m].clone()]);
    for k in 1..=m {
        if k > 1 {
            let next = IntPoly::x().mul(&d_cur).sub(&d_prev);
            d_prev = d_cur;
            d_cur = next;
        }
        out = out.add(&d_cur.scale(&phi.coeffs()[m + k]));
    }
    out
}

/// Factorisation of the recurrence polynomial `p_q` over the integers.
///
/// The roots `2cos(k pi/q) = 2cos(2 pi k / 2q)` split by the reduced
/// denominator of `k / 2q`, so `p_q` is the product of the real cyclotomic
/// polynomials `Psi_n` over the divisors `n >= 3` of `2q`. The product is
/// checked against `p_q` before it is returned.
pub fn factor_recurrence_poly(q: usize) -> Vec<IntPoly> {
    let factors: Vec<IntPoly> = (3..=2 * q)
        .filter(|n| (2 * q).is_multiple_of(*n))
        .map(real_cyclotomic)
        .collect();
    let product = factors.iter().fold(IntPoly::one(), |acc, f| acc.mul(f));
    assert_eq!(product, recurrence_poly(q), "factorisation of p_{q} does not multiply back");
    factors
}

/// Greatest common divisor of a slice of integers together with `extra`.
pub(crate) fn content_with(coeffs: &[BigInt], extra: &BigInt) -> BigInt {
    let mut g = extra.abs();
    for c in coeffs {
        if g.is_one() {
            break;
        }
        g = g.gcd(c);
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recurrence_small_cases() {
        assert_eq!(recurrence_poly(3), IntPoly::from_i64(&[-1, 0, 1]));
        // p_5 = x^4 - 3x^2 + 1 = (x^2 - x - 1)(x^2 + x - 1)
        assert_eq!(recurrence_poly(5), IntPoly::from_i64(&[1, 0, -3, 0, 1]));
    }

    #[test]
    fn cyclotomic_values() {
        assert_eq!(cyclotomic(1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(6), IntPoly::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic(10), IntPoly::from_i64(&[1, -1, 1, -1, 1]));
    }

    #[test]
    fn real_cyclotomic_values() {
        // 2cos(pi/3) = 1, 2cos(pi/4) = sqrt 2, 2cos(pi/5) = golden ratio
        assert_eq!(real_cyclotomic(6), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(real_cyclotomic(8), IntPoly::from_i64(&[-2, 0, 1]));
        assert_eq!(real_cyclotomic(10), IntPoly::from_i64(&[-1, -1, 1]));
        assert_eq!(real_cyclotomic(12), IntPoly::from_i64(&[-3, 0, 1]));
    }

    #[test]
    fn factorisation_multiplies_back() {
        for q in 3..=20 {
            let f = factor_recurrence_poly(q);
            let total: usize = f.iter().map(|p| p.degree().unwrap()).sum();
            assert_eq!(total, q - 1);
        }
    }

    #[test]
    fn dyadic_sign() {
        let p = IntPoly::from_i64(&[-2, 0, 1]);
        // 1.5^2 - 2 > 0, 1.25^2 - 2 < 0
        assert_eq!(p.sign_at_dyadic(&BigInt::from(3), 1), 1);
        assert_eq!(p.sign_at_dyadic(&BigInt::from(5), 2), -1);
        let lin = IntPoly::from_i64(&[-1, 1]);
        assert_eq!(lin.sign_at_dyadic(&BigInt::from(4), 2), 0);
    }
}
