//! Per-`q` constants of the Hecke triangle group `G_q`: the field
//! `Q(lambda_q)` with `lambda_q = 2cos(pi/q)`, the generators `S`, `T_q`,
//! `U_q = T_q S`, and the fan of vectors `w_i = U_q^i (1, 0)`.

use std::fmt;
use std::ops::Deref;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::{AlgNum, NumberField};
use crate::poly::{factor_recurrence_poly, recurrence_poly, IntPoly};

/// A plane vector with exact coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PlaneVec {
    pub x: AlgNum,
    pub y: AlgNum,
}

impl PlaneVec {
    pub fn new(x: AlgNum, y: AlgNum) -> Self {
        PlaneVec { x, y }
    }

    pub fn add(&self, other: &PlaneVec) -> PlaneVec {
        PlaneVec::new(&self.x + &other.x, &self.y + &other.y)
    }

    pub fn sub(&self, other: &PlaneVec) -> PlaneVec {
        PlaneVec::new(&self.x - &other.x, &self.y - &other.y)
    }

    pub fn neg(&self) -> PlaneVec {
        PlaneVec::new(-&self.x, -&self.y)
    }

    /// Mirror image in the x-axis.
    pub fn reflect_x(&self) -> PlaneVec {
        PlaneVec::new(self.x.clone(), -&self.y)
    }

    /// Mirror image in the line `y = x`.
    pub fn swap(&self) -> PlaneVec {
        PlaneVec::new(self.y.clone(), self.x.clone())
    }
}

impl fmt::Display for PlaneVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {})", self.x, self.y)
    }
}

impl fmt::Debug for PlaneVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PlaneVec{self}")
    }
}

/// Row-major 2x2 matrix `[[a, b], [c, d]]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat2 {
    pub a: AlgNum,
    pub b: AlgNum,
    pub c: AlgNum,
    pub d: AlgNum,
}

/// Everything that depends only on `q`. Immutable once built and safe to
/// share across threads.
#[derive(Clone, Debug)]
pub struct HeckeContext {
    q: usize,
    field: NumberField,
    recurrence: IntPoly,
    lambda: AlgNum,
    fan: Vec<PlaneVec>,
    fan_f64: Vec<(f64, f64)>,
}

impl Deref for HeckeContext {
    type Target = NumberField;
    fn deref(&self) -> &NumberField {
        &self.field
    }
}

impl HeckeContext {
    /// Builds the context for `G_q`, `q >= 3`.
    ///
    /// The minimal polynomial of `lambda_q` is the factor of the recurrence
    /// polynomial `p_q` that changes sign on a small interval around
    /// `2cos(pi/q)`.
    pub fn new(q: usize) -> Result<Self> {
        if q < 3 {
            return Err(Error::InvalidQ(q));
        }
        let approx = 2.0 * (std::f64::consts::PI / q as f64).cos();
        let recurrence = recurrence_poly(q);
        let minpoly = factor_recurrence_poly(q)
            .into_iter()
            .find(|f| {
                let eps = 1e-9;
                f.eval_f64(approx - eps).signum() != f.eval_f64(approx + eps).signum()
                    || f.eval_f64(approx) == 0.0
            })
            .ok_or_else(|| Error::Internal(format!("no factor of p_{q} vanishes at 2cos(pi/q)")))?;
        let field = NumberField::new(minpoly, approx)?;
        let d = field.degree();
        let lambda = field.generator();

        // w_i = (p_{i+1}(lambda), p_i(lambda)) for i = 0..q, then w_{i+q} = -w_i.
        let mut p = vec![AlgNum::zero(d), AlgNum::from_int(d, 1)];
        for i in 1..=q {
            let next = &field.mul(&lambda, &p[i]) - &p[i - 1];
            p.push(next);
        }
        let mut fan: Vec<PlaneVec> =
            (0..q).map(|i| PlaneVec::new(p[i + 1].clone(), p[i].clone())).collect();
        for i in 0..q {
            let v = fan[i].neg();
            fan.push(v);
        }
        let fan_f64 = fan.iter().map(|v| (field.to_f64(&v.x), field.to_f64(&v.y))).collect();
        let ctx = HeckeContext { q, field, recurrence, lambda, fan, fan_f64 };
        ctx.check_fan()?;
        Ok(ctx)
    }

    fn check_fan(&self) -> Result<()> {
        let q = self.q;
        let one = self.one();
        let w = &self.fan[q - 1];
        let u_w = PlaneVec::new(&self.mul(&self.lambda, &w.x) - &w.y, w.x.clone());
        if u_w != self.fan[0].neg() {
            return Err(Error::Internal("recurrence does not close up to -w_0".into()));
        }
        for i in 0..2 * q {
            if self.qform(&self.fan[i]) != one {
                return Err(Error::Internal(format!("w_{i} is off the ellipse")));
            }
        }
        Ok(())
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn lambda(&self) -> &AlgNum {
        &self.lambda
    }

    pub fn lambda_f64(&self) -> f64 {
        self.field.generator_f64()
    }

    /// The recurrence polynomial `p_q` whose factor is the minimal polynomial.
    pub fn recurrence_poly(&self) -> &IntPoly {
        &self.recurrence
    }

    /// `w_i` for any integer `i` (taken mod `2q`).
    pub fn fan(&self, i: i64) -> &PlaneVec {
        &self.fan[i.rem_euclid(2 * self.q as i64) as usize]
    }

    pub fn fan_all(&self) -> &[PlaneVec] {
        &self.fan
    }

    pub fn fan_f64(&self, i: i64) -> (f64, f64) {
        self.fan_f64[i.rem_euclid(2 * self.q as i64) as usize]
    }

    pub fn vec(&self, x: i64, y: i64) -> PlaneVec {
        PlaneVec::new(self.int(x), self.int(y))
    }

    pub fn dot(&self, u: &PlaneVec, v: &PlaneVec) -> AlgNum {
        &self.mul(&u.x, &v.x) + &self.mul(&u.y, &v.y)
    }

    pub fn wedge(&self, u: &PlaneVec, v: &PlaneVec) -> AlgNum {
        &self.mul(&u.x, &v.y) - &self.mul(&v.x, &u.y)
    }

    /// `Q_q(x, y) = x^2 - lambda x y + y^2`.
    pub fn qform(&self, v: &PlaneVec) -> AlgNum {
        let xy = self.mul(&v.x, &v.y);
        &(&self.square(&v.x) + &self.square(&v.y)) - &self.mul(&self.lambda, &xy)
    }

    pub fn scale(&self, s: &AlgNum, v: &PlaneVec) -> PlaneVec {
        PlaneVec::new(self.mul(s, &v.x), self.mul(s, &v.y))
    }

    /// `alpha u + beta v`.
    pub fn combine(&self, alpha: &AlgNum, u: &PlaneVec, beta: &AlgNum, v: &PlaneVec) -> PlaneVec {
        self.scale(alpha, u).add(&self.scale(beta, v))
    }

    pub fn vec_to_f64(&self, v: &PlaneVec) -> (f64, f64) {
        (self.to_f64(&v.x), self.to_f64(&v.y))
    }

    /// Exact slope `y / x`; `None` for vertical vectors.
    pub fn slope(&self, v: &PlaneVec) -> Option<AlgNum> {
        if v.x.is_zero() {
            None
        } else {
            Some(self.div(&v.y, &v.x).expect("nonzero x"))
        }
    }

    /// Compares slopes of two vectors with positive x-components.
    pub fn cmp_slope(&self, u: &PlaneVec, v: &PlaneVec) -> std::cmp::Ordering {
        // u.y / u.x < v.y / v.x  <=>  u.y v.x - v.y u.x < 0
        self.sign(&self.wedge(v, u)).cmp(&0)
    }

    // Group elements.

    pub fn mat(&self, a: AlgNum, b: AlgNum, c: AlgNum, d: AlgNum) -> Mat2 {
        Mat2 { a, b, c, d }
    }

    pub fn identity(&self) -> Mat2 {
        self.mat(self.one(), self.zero(), self.zero(), self.one())
    }

    /// Rotation by `pi/2`: `[[0, -1], [1, 0]]`.
    pub fn s_gen(&self) -> Mat2 {
        self.mat(self.zero(), self.int(-1), self.one(), self.zero())
    }

    /// Shear `[[1, lambda], [0, 1]]`.
    pub fn t_gen(&self) -> Mat2 {
        self.mat(self.one(), self.lambda.clone(), self.zero(), self.one())
    }

    /// `U_q = T_q S = [[lambda, -1], [1, 0]]`.
    pub fn u_gen(&self) -> Mat2 {
        self.mat_mul(&self.t_gen(), &self.s_gen())
    }

    /// Horocycle element `h_s = [[1, 0], [-s, 1]]`.
    pub fn horocycle(&self, s: &AlgNum) -> Mat2 {
        self.mat(self.one(), self.zero(), -s, self.one())
    }

    /// Diagonal `s_tau = diag(tau, 1/tau)`.
    pub fn diagonal(&self, tau: &AlgNum) -> Result<Mat2> {
        let inv = self.inv(tau)?;
        Ok(self.mat(tau.clone(), self.zero(), self.zero(), inv))
    }

    /// `g_{a,b} = [[a, b], [0, 1/a]]`.
    pub fn g_ab(&self, a: &AlgNum, b: &AlgNum) -> Result<Mat2> {
        let inv = self.inv(a)?;
        Ok(self.mat(a.clone(), b.clone(), self.zero(), inv))
    }

    pub fn mat_mul(&self, m: &Mat2, n: &Mat2) -> Mat2 {
        self.mat(
            &self.mul(&m.a, &n.a) + &self.mul(&m.b, &n.c),
            &self.mul(&m.a, &n.b) + &self.mul(&m.b, &n.d),
            &self.mul(&m.c, &n.a) + &self.mul(&m.d, &n.c),
            &self.mul(&m.c, &n.b) + &self.mul(&m.d, &n.d),
        )
    }

    pub fn mat_pow(&self, m: &Mat2, e: u32) -> Mat2 {
        (0..e).fold(self.identity(), |acc, _| self.mat_mul(&acc, m))
    }

    pub fn apply(&self, m: &Mat2, v: &PlaneVec) -> PlaneVec {
        PlaneVec::new(
            &self.mul(&m.a, &v.x) + &self.mul(&m.b, &v.y),
            &self.mul(&m.c, &v.x) + &self.mul(&m.d, &v.y),
        )
    }

    pub fn det(&self, m: &Mat2) -> AlgNum {
        &self.mul(&m.a, &m.d) - &self.mul(&m.b, &m.c)
    }

    /// Integer `k` as a field element.
    pub fn big(&self, k: &BigInt) -> AlgNum {
        AlgNum::from_int(self.degree(), k.clone())
    }
}
