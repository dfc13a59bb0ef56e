//! Exact arithmetic in `Q(lambda)` for a real algebraic `lambda` given by its
//! monic minimal polynomial.
//!
//! Elements are stored as integer coordinates in the power basis
//! `1, lambda, ..., lambda^(d-1)` over a common positive denominator, always
//! reduced. Signs are decided with dyadic interval enclosures of the powers of
//! `lambda` at increasing precision. Because the basis is linearly independent
//! over `Q`, an element is zero exactly when all its coordinates are zero, so
//! the refinement loop only ever runs on nonzero values and terminates.

use std::borrow::Cow;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{content_with, sign_of, IntPoly};

/// Element of `Q(lambda)`: `(sum num[i] lambda^i) / den`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgNum {
    num: Vec<BigInt>,
    den: BigInt,
}

impl AlgNum {
    pub fn zero(degree: usize) -> Self {
        AlgNum { num: vec![BigInt::zero(); degree], den: BigInt::one() }
    }

    pub fn from_int(degree: usize, n: impl Into<BigInt>) -> Self {
        let mut out = Self::zero(degree);
        out.num[0] = n.into();
        out
    }

    /// `n / d` with `d != 0`.
    pub fn from_ratio(degree: usize, n: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self> {
        let d = d.into();
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut num = vec![BigInt::zero(); degree];
        num[0] = n.into();
        Ok(Self::canonical(num, d))
    }

    pub fn from_rational(degree: usize, r: &BigRational) -> Self {
        let mut num = vec![BigInt::zero(); degree];
        num[0] = r.numer().clone();
        Self::canonical(num, r.denom().clone())
    }

    /// Builds an element from raw coordinates; the caller guarantees
    /// `num.len()` equals the field degree.
    pub(crate) fn canonical(mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        debug_assert!(!den.is_zero());
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -&*c;
            }
        }
        if num.iter().all(Zero::is_zero) {
            return AlgNum { num, den: BigInt::one() };
        }
        if !den.is_one() {
            let g = content_with(&num, &den);
            if !g.is_one() {
                for c in num.iter_mut() {
                    *c /= &g;
                }
                den /= &g;
            }
        }
        AlgNum { num, den }
    }

    pub fn degree(&self) -> usize {
        self.num.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// The value as a rational, when it has no irrational part.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    pub fn scale_int(&self, k: &BigInt) -> AlgNum {
        Self::canonical(self.num.iter().map(|c| c * k).collect(), self.den.clone())
    }

    pub fn scale_rational(&self, r: &BigRational) -> AlgNum {
        Self::canonical(
            self.num.iter().map(|c| c * r.numer()).collect(),
            &self.den * r.denom(),
        )
    }

    /// Parses the serialisation format `c0,c1,...,c_{d-1}/den` (the `/den`
    /// part is optional, missing trailing coordinates are zero). Plain
    /// decimals such as `0.75` and fractions `3/4` are accepted as rationals.
    pub fn parse(degree: usize, s: &str) -> Result<AlgNum> {
        let err = || Error::Parse { what: "exact number", input: s.to_string() };
        let s = s.trim();
        let (body, den) = match s.rsplit_once('/') {
            Some((body, den)) => (body, den.trim().parse::<BigInt>().map_err(|_| err())?),
            None => (s, BigInt::one()),
        };
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let parts: Vec<&str> = body.split(',').map(str::trim).collect();
        if parts.len() > degree || parts.is_empty() {
            return Err(err());
        }
        if parts.len() == 1 && parts[0].contains(['.', 'e', 'E']) {
            let r = parse_decimal(parts[0]).ok_or_else(err)?;
            let r = r / BigRational::from_integer(den);
            return Ok(Self::from_rational(degree, &r));
        }
        let mut num = vec![BigInt::zero(); degree];
        for (slot, p) in num.iter_mut().zip(&parts) {
            *slot = p.parse::<BigInt>().map_err(|_| err())?;
        }
        Ok(Self::canonical(num, den))
    }
}

/// Exact value of a decimal literal such as `-0.125` or `1.5e-3`.
pub fn parse_decimal(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int_part}{frac_part}0").parse::<BigInt>().ok()? / 10;
    let scale = exp - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        BigRational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        r = -r;
    }
    Some(r)
}

/// Parses `p/q`, an integer, or a decimal literal as an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let err = || Error::Parse { what: "rational", input: s.to_string() };
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        return Ok(BigRational::new(n, d));
    }
    parse_decimal(s).ok_or_else(err)
}

impl fmt::Display for AlgNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.num.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "/{}", self.den)
    }
}

impl fmt::Debug for AlgNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgNum({self})")
    }
}

impl Add for &AlgNum {
    type Output = AlgNum;
    fn add(self, rhs: &AlgNum) -> AlgNum {
        assert_eq!(self.num.len(), rhs.num.len(), "mixed field degrees");
        if self.den == rhs.den {
            let num = self.num.iter().zip(&rhs.num).map(|(a, b)| a + b).collect();
            return AlgNum::canonical(num, self.den.clone());
        }
        let num = self
            .num
            .iter()
            .zip(&rhs.num)
            .map(|(a, b)| a * &rhs.den + b * &self.den)
            .collect();
        AlgNum::canonical(num, &self.den * &rhs.den)
    }
}

impl Sub for &AlgNum {
    type Output = AlgNum;
    fn sub(self, rhs: &AlgNum) -> AlgNum {
        assert_eq!(self.num.len(), rhs.num.len(), "mixed field degrees");
        if self.den == rhs.den {
            let num = self.num.iter().zip(&rhs.num).map(|(a, b)| a - b).collect();
            return AlgNum::canonical(num, self.den.clone());
        }
        let num = self
            .num
            .iter()
            .zip(&rhs.num)
            .map(|(a, b)| a * &rhs.den - b * &self.den)
            .collect();
        AlgNum::canonical(num, &self.den * &rhs.den)
    }
}

impl Neg for &AlgNum {
    type Output = AlgNum;
    fn neg(self) -> AlgNum {
        AlgNum { num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }
}

impl Add for AlgNum {
    type Output = AlgNum;
    fn add(self, rhs: AlgNum) -> AlgNum {
        &self + &rhs
    }
}

impl Sub for AlgNum {
    type Output = AlgNum;
    fn sub(self, rhs: AlgNum) -> AlgNum {
        &self - &rhs
    }
}

impl Neg for AlgNum {
    type Output = AlgNum;
    fn neg(self) -> AlgNum {
        -&self
    }
}

/// Closed rational interval certified to contain a value.
#[derive(Clone, Debug, PartialEq)]
pub struct RatInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RatInterval {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, r: &BigRational) -> bool {
        &self.lo <= r && r <= &self.hi
    }

    pub fn midpoint_f64(&self) -> f64 {
        ((&self.lo + &self.hi) / BigRational::from_integer(2.into()))
            .to_f64()
            .unwrap_or(f64::NAN)
    }
}

/// Enclosures `lambda^i in [lo[i], hi[i]] / 2^bits`.
#[derive(Clone, Debug)]
struct PowerTable {
    bits: u64,
    lo: Vec<BigInt>,
    hi: Vec<BigInt>,
}

const FIRST_LEVEL_BITS: u64 = 64;
const CACHED_LEVELS: usize = 7; // 64 .. 4096 bits
const MIN_PRECISION_BITS: u32 = 16;

/// The field `Q(lambda)` with everything needed for exact comparisons.
#[derive(Clone, Debug)]
pub struct NumberField {
    minpoly: IntPoly,
    degree: usize,
    levels: Vec<PowerTable>,
    // Enclosure of lambda at the finest cached scale, used to refine further.
    top: (BigInt, BigInt, u64),
    lambda_f64: f64,
}

impl NumberField {
    /// `minpoly` must be monic and irreducible; `approx_root` selects the
    /// real root (it must be within `1e-9` of it and farther from the others).
    pub fn new(minpoly: IntPoly, approx_root: f64) -> Result<Self> {
        let degree = minpoly
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::InvalidArgument("minimal polynomial must have degree >= 1".into()))?;
        if !minpoly.leading().is_some_and(One::is_one) {
            return Err(Error::InvalidArgument("minimal polynomial must be monic".into()));
        }
        // the power enclosures assume a positive generator
        if approx_root.is_nan() || approx_root <= 1e-6 {
            return Err(Error::InvalidArgument("generator must be positive".into()));
        }
        let start_bits = 40u64;
        let scale = (1u64 << start_bits) as f64;
        let lo = BigInt::from_f64(((approx_root - 1e-9) * scale).floor())
            .ok_or_else(|| Error::InvalidArgument("root approximation is not finite".into()))?;
        let hi = BigInt::from_f64(((approx_root + 1e-9) * scale).ceil())
            .ok_or_else(|| Error::InvalidArgument("root approximation is not finite".into()))?;
        let s_lo = minpoly.sign_at_dyadic(&lo, start_bits);
        let s_hi = minpoly.sign_at_dyadic(&hi, start_bits);
        let (lo, hi) = if s_lo == 0 {
            (lo.clone(), lo)
        } else if s_hi == 0 {
            (hi.clone(), hi)
        } else if s_lo != s_hi {
            (lo, hi)
        } else {
            return Err(Error::InvalidArgument(format!(
                "no root of the minimal polynomial brackets {approx_root}"
            )));
        };
        let top_bits = FIRST_LEVEL_BITS << (CACHED_LEVELS - 1);
        let (lo, hi) = refine_root(&minpoly, lo, hi, start_bits, top_bits);
        let levels = (0..CACHED_LEVELS)
            .map(|i| {
                let bits = FIRST_LEVEL_BITS << i;
                let shift = top_bits - bits;
                let l = &lo >> shift;
                let h = ceil_shift(&hi, shift);
                power_table(degree, &l, &h, bits)
            })
            .collect();
        let mut field = NumberField { minpoly, degree, levels, top: (lo, hi, top_bits), lambda_f64: approx_root };
        field.lambda_f64 = field.to_f64(&field.generator());
        Ok(field)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn minpoly(&self) -> &IntPoly {
        &self.minpoly
    }

    pub fn generator_f64(&self) -> f64 {
        self.lambda_f64
    }

    /// The generator `lambda` itself.
    pub fn generator(&self) -> AlgNum {
        if self.degree == 1 {
            // lambda = -c0 for the monic linear polynomial x + c0
            return AlgNum::from_int(1, -self.minpoly.coeffs()[0].clone());
        }
        let mut num = vec![BigInt::zero(); self.degree];
        num[1] = BigInt::one();
        AlgNum::canonical(num, BigInt::one())
    }

    pub fn zero(&self) -> AlgNum {
        AlgNum::zero(self.degree)
    }

    pub fn one(&self) -> AlgNum {
        AlgNum::from_int(self.degree, 1)
    }

    pub fn int(&self, n: i64) -> AlgNum {
        AlgNum::from_int(self.degree, n)
    }

    pub fn ratio(&self, n: i64, d: i64) -> AlgNum {
        AlgNum::from_ratio(self.degree, n, d).expect("nonzero denominator")
    }

    pub fn rational(&self, r: &BigRational) -> AlgNum {
        AlgNum::from_rational(self.degree, r)
    }

    /// Reduces an arbitrary-length coefficient vector modulo the minimal
    /// polynomial.
    pub fn from_poly_coeffs(&self, coeffs: &[BigInt], den: BigInt) -> Result<AlgNum> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut t = coeffs.to_vec();
        self.reduce_in_place(&mut t);
        t.resize(self.degree, BigInt::zero());
        Ok(AlgNum::canonical(t, den))
    }

    fn reduce_in_place(&self, t: &mut Vec<BigInt>) {
        let d = self.degree;
        let m = self.minpoly.coeffs();
        while t.len() > d {
            let c = t.pop().expect("nonempty");
            if c.is_zero() {
                continue;
            }
            let base = t.len() - d;
            for (j, mj) in m[..d].iter().enumerate() {
                t[base + j] -= &c * mj;
            }
        }
    }

    pub fn mul(&self, a: &AlgNum, b: &AlgNum) -> AlgNum {
        let d = self.degree;
        debug_assert_eq!(a.degree(), d);
        debug_assert_eq!(b.degree(), d);
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        if d == 1 {
            return AlgNum::canonical(vec![&a.num[0] * &b.num[0]], &a.den * &b.den);
        }
        let mut t = vec![BigInt::zero(); 2 * d - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    t[i + j] += x * y;
                }
            }
        }
        self.reduce_in_place(&mut t);
        AlgNum::canonical(t, &a.den * &b.den)
    }

    pub fn square(&self, a: &AlgNum) -> AlgNum {
        self.mul(a, a)
    }

    pub fn inv(&self, a: &AlgNum) -> Result<AlgNum> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = self.degree;
        match d {
            1 => Ok(AlgNum::canonical(vec![a.den.clone()], a.num[0].clone())),
            2 => {
                // x^2 + m1 x + m0: conjugate of c0 + c1 l is (c0 - c1 m1) - c1 l.
                let m = self.minpoly.coeffs();
                let (c0, c1) = (&a.num[0], &a.num[1]);
                let norm = c0 * c0 - c0 * c1 * &m[1] + c1 * c1 * &m[0];
                let conj = vec![(c0 - c1 * &m[1]) * &a.den, -(c1 * &a.den)];
                Ok(AlgNum::canonical(conj, norm))
            }
            _ => self.inv_general(a),
        }
    }

    fn inv_general(&self, a: &AlgNum) -> Result<AlgNum> {
        let d = self.degree;
        // Column j holds the coordinates of num(a) * lambda^j.
        let mut cols: Vec<Vec<BigInt>> = Vec::with_capacity(d);
        let mut cur = a.num.clone();
        for _ in 0..d {
            cols.push(cur.clone());
            cur.insert(0, BigInt::zero());
            self.reduce_in_place(&mut cur);
        }
        let mut m: Vec<Vec<BigRational>> = (0..d)
            .map(|r| {
                let mut row: Vec<BigRational> =
                    (0..d).map(|c| BigRational::from_integer(cols[c][r].clone())).collect();
                row.push(if r == 0 { BigRational::one() } else { BigRational::zero() });
                row
            })
            .collect();
        for col in 0..d {
            let pivot = (col..d)
                .find(|&r| !m[r][col].is_zero())
                .ok_or_else(|| Error::Internal("singular multiplication matrix".into()))?;
            m.swap(col, pivot);
            let p = m[col][col].clone();
            for v in m[col].iter_mut() {
                *v = &*v / &p;
            }
            for r in 0..d {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in col..=d {
                        let delta = &f * &m[col][c];
                        m[r][c] = &m[r][c] - delta;
                    }
                }
            }
        }
        let den = m.iter().fold(BigInt::one(), |acc, row| acc.lcm(row[d].denom()));
        let num = m
            .iter()
            .map(|row| row[d].numer() * (&den / row[d].denom()) * &a.den)
            .collect();
        Ok(AlgNum::canonical(num, den))
    }

    pub fn div(&self, a: &AlgNum, b: &AlgNum) -> Result<AlgNum> {
        if let Some(r) = b.to_rational() {
            if r.is_zero() {
                return Err(Error::DivisionByZero);
            }
            return Ok(a.scale_rational(&r.recip()));
        }
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn table(&self, level: usize) -> Cow<'_, PowerTable> {
        if let Some(t) = self.levels.get(level) {
            return Cow::Borrowed(t);
        }
        let bits = FIRST_LEVEL_BITS << level.min(40);
        let (lo, hi, top_bits) = &self.top;
        let (lo, hi) = refine_root(&self.minpoly, lo.clone(), hi.clone(), *top_bits, bits);
        Cow::Owned(power_table(self.degree, &lo, &hi, bits))
    }

    /// Interval for the numerator sum at `level`; the value lies in
    /// `[lo, hi] / (2^bits * den)`.
    fn numerator_enclosure(&self, a: &AlgNum, level: usize) -> (BigInt, BigInt, u64) {
        let t = self.table(level);
        let mut lo = BigInt::zero();
        let mut hi = BigInt::zero();
        for (i, c) in a.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if c.is_positive() {
                lo += c * &t.lo[i];
                hi += c * &t.hi[i];
            } else {
                lo += c * &t.hi[i];
                hi += c * &t.lo[i];
            }
        }
        (lo, hi, t.bits)
    }

    /// Exact sign.
    pub fn sign(&self, a: &AlgNum) -> i32 {
        if a.is_zero() {
            return 0;
        }
        if a.num[1..].iter().all(Zero::is_zero) {
            return sign_of(&a.num[0]);
        }
        for level in 0.. {
            let (lo, hi, _) = self.numerator_enclosure(a, level);
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
        }
        unreachable!("refinement of a nonzero element always separates it from zero")
    }

    pub fn cmp(&self, a: &AlgNum, b: &AlgNum) -> Ordering {
        self.sign(&(a - b)).cmp(&0)
    }

    pub fn is_positive(&self, a: &AlgNum) -> bool {
        self.sign(a) > 0
    }

    /// Certified rational enclosure of relative width at most
    /// `2^-precision_bits * max(1, |a|)`.
    pub fn approx(&self, a: &AlgNum, precision_bits: u32) -> RatInterval {
        let bits = precision_bits.max(MIN_PRECISION_BITS) as u64;
        if let Some(r) = a.to_rational() {
            return RatInterval { lo: r.clone(), hi: r };
        }
        for level in 0.. {
            let (lo, hi, k) = self.numerator_enclosure(a, level);
            let scale = &a.den << k;
            let mag = lo.abs().min(hi.abs());
            let bound = if mag > scale { mag } else { scale.clone() };
            if ((&hi - &lo) << bits) <= bound {
                return RatInterval {
                    lo: BigRational::new(lo, scale.clone()),
                    hi: BigRational::new(hi, scale),
                };
            }
        }
        unreachable!()
    }

    /// Nearest-ish `f64` (relative error around 2^-52).
    pub fn to_f64(&self, a: &AlgNum) -> f64 {
        if a.num[1..].iter().all(Zero::is_zero) {
            return ratio_to_f64(&a.num[0], &a.den);
        }
        for level in 0.. {
            let (lo, hi, k) = self.numerator_enclosure(a, level);
            let width = &hi - &lo;
            let mag = lo.abs().min(hi.abs());
            if (width << 56u32) <= mag || level >= CACHED_LEVELS + 4 {
                return ratio_to_f64(&(lo + hi), &(&a.den << (k + 1)));
            }
        }
        unreachable!()
    }

    /// `floor(num / den)` for `den > 0`.
    pub fn floor_ratio(&self, num: &AlgNum, den: &AlgNum) -> Result<BigInt> {
        if self.sign(den) <= 0 {
            return Err(Error::InvalidArgument("floor_ratio needs a positive denominator".into()));
        }
        if let (Some(n), Some(d)) = (num.to_rational(), den.to_rational()) {
            return Ok((n / d).floor().to_integer());
        }
        let approx = self.to_f64(num) / self.to_f64(den);
        let mut candidate = if approx.is_finite() && approx.abs() < 4.0e15 {
            BigInt::from_f64(approx.floor()).expect("finite")
        } else {
            let bits = 64 + approx.abs().log2().clamp(0.0, 1.0e6) as u32;
            let n = self.approx(num, bits);
            let d = self.approx(den, bits);
            ((&n.lo + &n.hi) / (&d.lo + &d.hi)).floor().to_integer()
        };
        // num - c*den < 0 means the candidate is too large, and so on.
        while self.sign(&(num - &den.scale_int(&candidate))) < 0 {
            candidate -= 1;
        }
        loop {
            let next = &candidate + 1;
            if self.sign(&(num - &den.scale_int(&next))) >= 0 {
                candidate = next;
            } else {
                break;
            }
        }
        Ok(candidate)
    }

    pub fn pow(&self, a: &AlgNum, e: u32) -> AlgNum {
        let mut out = self.one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = self.mul(&out, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        out
    }
}

fn ceil_shift(v: &BigInt, shift: u64) -> BigInt {
    let floor = v >> shift;
    if (&floor << shift) == *v {
        floor
    } else {
        floor + 1
    }
}

fn refine_root(p: &IntPoly, mut lo: BigInt, mut hi: BigInt, mut k: u64, target: u64) -> (BigInt, BigInt) {
    let s_lo = p.sign_at_dyadic(&lo, k);
    while k < target {
        if lo == hi {
            lo <<= target - k;
            hi <<= target - k;
            break;
        }
        let mid = &lo + &hi;
        k += 1;
        let s_mid = p.sign_at_dyadic(&mid, k);
        if s_mid == 0 {
            lo = mid.clone();
            hi = mid;
        } else if s_mid == s_lo {
            lo = mid;
            hi <<= 1;
        } else {
            lo <<= 1;
            hi = mid;
        }
    }
    (lo, hi)
}

fn power_table(degree: usize, lo: &BigInt, hi: &BigInt, bits: u64) -> PowerTable {
    debug_assert!(lo.is_positive());
    let mut tlo = Vec::with_capacity(degree);
    let mut thi = Vec::with_capacity(degree);
    let one = BigInt::one() << bits;
    let mut plo = one.clone();
    let mut phi = one;
    for i in 0..degree {
        if i > 0 {
            plo = (&plo * lo) >> bits;
            phi = ceil_shift(&(&phi * hi), bits);
        }
        tlo.push(plo.clone());
        thi.push(phi.clone());
    }
    PowerTable { bits, lo: tlo, hi: thi }
}

/// `n / d` as `f64`, `d > 0`.
pub(crate) fn ratio_to_f64(n: &BigInt, d: &BigInt) -> f64 {
    if n.is_zero() {
        return 0.0;
    }
    let ns = (n.bits() as i64 - 62).max(0);
    let ds = (d.bits() as i64 - 62).max(0);
    let nf = (n >> ns as u64).to_f64().unwrap_or(f64::NAN);
    let df = (d >> ds as u64).to_f64().unwrap_or(f64::NAN);
    let e = ns - ds;
    let mut out = nf / df;
    // Apply the binary exponent in pieces so large shifts do not overflow
    // the intermediate power of two.
    let mut e = e.clamp(-4000, 4000) as i32;
    while e != 0 {
        let step = e.clamp(-1000, 1000);
        out *= 2f64.powi(step);
        e -= step;
    }
    out
}
