//! Reference implementations used by the integration tests. Nothing here
//! goes through the library's field arithmetic.
#![allow(dead_code)]

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use hecke_farey::{AlgNum, HeckeContext, PlaneVec};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn floor_rat(r: &BigRational) -> BigInt {
    r.floor().to_integer()
}

/// `r + s sqrt(5)` with rational `r`, `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root5 {
    pub r: BigRational,
    pub s: BigRational,
}

impl Root5 {
    pub fn new(r: BigRational, s: BigRational) -> Self {
        Root5 { r, s }
    }

    pub fn int(n: i64) -> Self {
        Root5::new(rat(n, 1), BigRational::zero())
    }

    pub fn rational(r: BigRational) -> Self {
        Root5::new(r, BigRational::zero())
    }

    /// The golden ratio `(1 + sqrt 5) / 2`.
    pub fn phi() -> Self {
        Root5::new(rat(1, 2), rat(1, 2))
    }

    pub fn sign(&self) -> i32 {
        let sr = sgn(&self.r);
        let ss = sgn(&self.s);
        if ss == 0 || sr == ss {
            return if sr == 0 { ss } else { sr };
        }
        if sr == 0 {
            return ss;
        }
        let r2 = &self.r * &self.r;
        let s2 = &self.s * &self.s * BigRational::from_integer(5.into());
        match r2.cmp(&s2) {
            Ordering::Greater => sr,
            Ordering::Less => ss,
            Ordering::Equal => 0,
        }
    }

    pub fn cmp(&self, other: &Root5) -> Ordering {
        (self.clone() - other.clone()).sign().cmp(&0)
    }

    pub fn to_f64(&self) -> f64 {
        self.r.to_f64().unwrap() + self.s.to_f64().unwrap() * 5f64.sqrt()
    }

    pub fn inv(&self) -> Root5 {
        // 1 / (r + s sqrt5) = (r - s sqrt5) / (r^2 - 5 s^2)
        let n = &self.r * &self.r - &self.s * &self.s * BigRational::from_integer(5.into());
        assert!(!n.is_zero(), "division by zero");
        Root5::new(&self.r / &n, -&self.s / &n)
    }

    pub fn div(&self, other: &Root5) -> Root5 {
        self.clone() * other.inv()
    }

    pub fn floor(&self) -> BigInt {
        let mut n = BigInt::from(self.to_f64().floor() as i64);
        while (self.clone() - Root5::rational(BigRational::from_integer(n.clone()))).sign() < 0 {
            n -= 1;
        }
        while (self.clone() - Root5::rational(BigRational::from_integer(&n + 1))).sign() >= 0 {
            n += 1;
        }
        n
    }

    /// The same number in the library's basis `1, phi`:
    /// `r + s sqrt5 = (r - s) + 2 s phi`.
    pub fn to_alg(&self, ctx: &HeckeContext) -> AlgNum {
        assert_eq!(ctx.q(), 5);
        let c0 = ctx.rational(&(&self.r - &self.s));
        let c1 = ctx.rational(&(&self.s * rat(2, 1)));
        c0 + ctx.mul(&c1, ctx.lambda())
    }

    pub fn from_alg(a: &AlgNum) -> Root5 {
        let c = a.coeffs();
        let d = a.denom();
        let c0 = BigRational::new(c[0].clone(), d.clone());
        let c1 = BigRational::new(c[1].clone(), d.clone());
        // c0 + c1 phi = (c0 + c1/2) + (c1/2) sqrt5
        let half = &c1 * rat(1, 2);
        Root5::new(c0 + &half, half)
    }
}

fn sgn(r: &BigRational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

impl Add for Root5 {
    type Output = Root5;
    fn add(self, o: Root5) -> Root5 {
        Root5::new(self.r + o.r, self.s + o.s)
    }
}

impl Sub for Root5 {
    type Output = Root5;
    fn sub(self, o: Root5) -> Root5 {
        Root5::new(self.r - o.r, self.s - o.s)
    }
}

impl Neg for Root5 {
    type Output = Root5;
    fn neg(self) -> Root5 {
        Root5::new(-self.r, -self.s)
    }
}

impl Mul for Root5 {
    type Output = Root5;
    fn mul(self, o: Root5) -> Root5 {
        let five = BigRational::from_integer(5.into());
        Root5::new(&self.r * &o.r + &self.s * &o.s * five, &self.r * &o.s + &self.s * &o.r)
    }
}

/// The classical map `(a, b) -> (b, -a + floor((1 + a) / b) b)`.
pub fn classical_map(a: &BigRational, b: &BigRational) -> (BigRational, BigRational, BigInt) {
    let k = floor_rat(&((BigRational::one() + a) / b));
    let next_b = -a + BigRational::from_integer(k.clone()) * b;
    (b.clone(), next_b, k)
}

/// A random rational point with `0 < a <= 1`, `1 - a < b <= 1`.
pub fn random_classical_point(rng: &mut impl Rng) -> (BigRational, BigRational) {
    let da: i64 = rng.gen_range(1..=1_000_000);
    let na = rng.gen_range(1..=da);
    let db: i64 = rng.gen_range(1..=1_000_000);
    // smallest numerator with nb / db > (da - na) / da
    let lo = (db as i128 * (da - na) as i128).div_euclid(da as i128) as i64 + 1;
    let nb = rng.gen_range(lo..=db);
    (rat(na, da), rat(nb, db))
}

/// Fan of `G_5` in the `r + s sqrt5` representation.
pub fn golden_fan() -> Vec<(Root5, Root5)> {
    let phi = Root5::phi();
    vec![
        (Root5::int(1), Root5::int(0)),
        (phi.clone(), Root5::int(1)),
        (phi.clone(), phi.clone()),
        (Root5::int(1), phi),
        (Root5::int(0), Root5::int(1)),
        (Root5::int(-1), Root5::int(0)),
    ]
}

fn dot5(a: &Root5, b: &Root5, w: &(Root5, Root5)) -> Root5 {
    a.clone() * w.0.clone() + b.clone() * w.1.clone()
}

pub fn golden_in_triangle(a: &Root5, b: &Root5) -> bool {
    let one = Root5::int(1);
    a.sign() > 0
        && a.cmp(&one).is_le()
        && b.cmp(&one).is_le()
        && (b.clone() + Root5::phi() * a.clone() - one).sign() > 0
}

/// Region of a point of the `G_5` triangle, from the fan directly.
pub fn golden_region(a: &Root5, b: &Root5) -> usize {
    let fan = golden_fan();
    let one = Root5::int(1);
    (2..=4)
        .find(|&i| dot5(a, b, &fan[i - 1]).cmp(&one).is_gt() && dot5(a, b, &fan[i]).cmp(&one).is_le())
        .expect("point in no region")
}

/// The three closed-form indices for `q = 5`.
pub fn golden_index(region: usize, a: &Root5, b: &Root5) -> BigInt {
    let phi = Root5::phi();
    let one = Root5::int(1);
    let (num, den) = match region {
        2 => (one - (a.clone() + phi.clone() * b.clone()), phi.clone() * phi * (a.clone() + b.clone())),
        3 => (one - b.clone(), phi.clone() * (a.clone() + phi * b.clone())),
        4 => (one + a.clone(), phi * b.clone()),
        _ => unreachable!(),
    };
    num.div(&den).floor()
}

/// A random point of the `G_5` triangle with irrational coordinates.
pub fn random_golden_point(rng: &mut impl Rng) -> (Root5, Root5) {
    const D: i64 = 1 << 20;
    let phi = 0.5 * (1.0 + 5f64.sqrt());
    loop {
        let a = Root5::new(rat(rng.gen_range(1..=D), D), rat(rng.gen_range(-D / 8..=D / 8), 8 * D));
        let af = a.to_f64();
        if af <= 0.0 || af > 1.0 {
            continue;
        }
        let s = rat(rng.gen_range(-D / 8..=D / 8), 8 * D);
        let target = 1.0 - phi * af * rng.gen::<f64>();
        let t = target - s.to_f64().unwrap() * 5f64.sqrt();
        let r = rat((t * D as f64).round() as i64, D);
        let b = Root5::new(r, s);
        if golden_in_triangle(&a, &b) {
            return (a, b);
        }
    }
}

pub fn totient(n: u64) -> u64 {
    let mut m = n;
    let mut out = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if m > 1 {
        out -= out / m;
    }
    out
}

/// `|F(Q)| = 1 + sum_{k <= Q} phi(k)`.
pub fn farey_len(q: u64) -> u64 {
    1 + (1..=q).map(totient).sum::<u64>()
}

/// `pi^2 / 3` as `2 sum 1/n^2`, with the tail bounded by `2/N`.
pub fn classical_mean_roof() -> f64 {
    let n = 2_000_000u64;
    let head: f64 = (1..=n).rev().map(|k| 1.0 / (k as f64 * k as f64)).sum();
    // tail sum_{k > n} 1/k^2 = 1/n - 1/(2n^2) + O(n^-3)
    2.0 * (head + 1.0 / n as f64 - 0.5 / (n as f64 * n as f64))
}

/// Normalised measure of `{1/(ab) >= t}` in the classical triangle.
pub fn classical_roof_tail(t: f64) -> f64 {
    let n = 2_000_000;
    let h = 1.0 / n as f64;
    let mut s = 0.0;
    for i in 0..n {
        let a = (i as f64 + 0.5) * h;
        let top = (1.0 / (t * a)).min(1.0);
        s += (top - (1.0 - a)).max(0.0);
    }
    2.0 * s * h
}

/// Every tree vector reached breadth first from `((1,0),(0,1))` whose
/// sector can still hold x-coordinates `<= tau` and slopes `<= 1`, with
/// `(1, 0)` and `(0, 1)`.
pub fn tree_vectors_bfs(ctx: &HeckeContext, tau: f64) -> Vec<PlaneVec> {
    let q = ctx.q() as i64;
    let mut out = vec![ctx.vec(1, 0), ctx.vec(0, 1)];
    let mut level = vec![(ctx.vec(1, 0), ctx.vec(0, 1))];
    while !level.is_empty() {
        let mut next = Vec::new();
        for (u0, u1) in &level {
            let mut ext = vec![u0.clone()];
            for i in 1..q - 1 {
                let w = ctx.fan(i);
                ext.push(PlaneVec::new(
                    ctx.mul(&w.x, &u0.x) + ctx.mul(&w.y, &u1.x),
                    ctx.mul(&w.x, &u0.y) + ctx.mul(&w.y, &u1.y),
                ));
            }
            ext.push(u1.clone());
            out.extend(ext[1..ext.len() - 1].iter().cloned());
            for pair in ext.windows(2) {
                let (x0, y0) = ctx.vec_to_f64(&pair[0]);
                let sum = x0 + ctx.to_f64(&pair[1].x);
                if sum <= tau + 1e-9 && y0 <= x0 + 1e-9 {
                    next.push((pair[0].clone(), pair[1].clone()));
                }
            }
        }
        level = next;
    }
    out
}

/// Exact check of `|alpha - y/x| <= 1/(2 x^2)` for rationals.
pub fn dirichlet_ok(alpha: &BigRational, x: &BigRational, y: &BigRational) -> bool {
    let err = (alpha - y / x).abs();
    err * x * x * rat(2, 1) <= BigRational::one()
}
