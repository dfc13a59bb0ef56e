//! The Farey triangle `{0 < a <= 1, 1 - lambda a < b <= 1}`, its partition
//! into regions `2..q-1`, the roof function, the index `k` and the BCZ map.

use std::fmt;

use num_bigint::BigInt;

use crate::context::{HeckeContext, PlaneVec};
use crate::error::{Error, Result};
use crate::field::AlgNum;
use crate::sternbrocot;

/// A point of the Farey triangle. Construction checks membership exactly.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TrianglePoint {
    a: AlgNum,
    b: AlgNum,
}

impl TrianglePoint {
    pub fn new(ctx: &HeckeContext, a: AlgNum, b: AlgNum) -> Result<Self> {
        if !contains(ctx, &a, &b) {
            return Err(Error::OutsideTriangle { a: a.to_string(), b: b.to_string() });
        }
        Ok(TrianglePoint { a, b })
    }

    /// Caller guarantees membership.
    pub(crate) fn new_unchecked(a: AlgNum, b: AlgNum) -> Self {
        TrianglePoint { a, b }
    }

    pub fn a(&self) -> &AlgNum {
        &self.a
    }

    pub fn b(&self) -> &AlgNum {
        &self.b
    }

    pub fn as_vec(&self) -> PlaneVec {
        PlaneVec::new(self.a.clone(), self.b.clone())
    }

    pub fn to_f64(&self, ctx: &HeckeContext) -> (f64, f64) {
        (ctx.to_f64(&self.a), ctx.to_f64(&self.b))
    }
}

impl fmt::Display for TrianglePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {})", self.a, self.b)
    }
}

impl fmt::Debug for TrianglePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TrianglePoint{self}")
    }
}

/// Exact membership test.
pub fn contains(ctx: &HeckeContext, a: &AlgNum, b: &AlgNum) -> bool {
    let one = ctx.one();
    ctx.sign(a) > 0
        && ctx.cmp(a, &one).is_le()
        && ctx.cmp(b, &one).is_le()
        && ctx.sign(&(&(b + &ctx.mul(ctx.lambda(), a)) - &one)) > 0
}

/// One application of the map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BczStep {
    pub region: usize,
    pub roof: AlgNum,
    pub k: BigInt,
    pub next: TrianglePoint,
}

fn dot_fan(ctx: &HeckeContext, p: &TrianglePoint, i: usize) -> AlgNum {
    let w = ctx.fan(i as i64);
    &ctx.mul(&p.a, &w.x) + &ctx.mul(&p.b, &w.y)
}

fn in_region(ctx: &HeckeContext, p: &TrianglePoint, i: usize, one: &AlgNum) -> bool {
    ctx.cmp(&dot_fan(ctx, p, i - 1), one).is_gt() && ctx.cmp(&dot_fan(ctx, p, i), one).is_le()
}

/// The unique `i` in `2..=q-1` with `p.w_{i-1} > 1 >= p.w_i`.
pub fn region_index(ctx: &HeckeContext, p: &TrianglePoint) -> Result<usize> {
    let q = ctx.q();
    if q == 3 {
        return Ok(2);
    }
    let one = ctx.one();
    let (af, bf) = p.to_f64(ctx);
    let guess = region_index_f64(ctx, af, bf);
    if in_region(ctx, p, guess, &one) {
        return Ok(guess);
    }
    // p.w_1 > 1 on the triangle, so the first i with p.w_i <= 1 is the region
    for i in 2..q {
        if ctx.cmp(&dot_fan(ctx, p, i), &one).is_le() {
            if in_region(ctx, p, i, &one) {
                return Ok(i);
            }
            break;
        }
    }
    Err(Error::Internal(format!("no region contains {p}")))
}

/// `R(a, b) = y_i / (a (p . w_i))`.
pub fn roof(ctx: &HeckeContext, p: &TrianglePoint) -> Result<AlgNum> {
    let i = region_index(ctx, p)?;
    roof_in(ctx, p, i, &dot_fan(ctx, p, i))
}

fn roof_in(ctx: &HeckeContext, p: &TrianglePoint, i: usize, dot_i: &AlgNum) -> Result<AlgNum> {
    let y = &ctx.fan(i as i64).y;
    ctx.div(y, &ctx.mul(&p.a, dot_i))
}

/// `k = floor((1 - p.w_{i+1}) / (lambda (p.w_i)))`.
pub fn bcz_index(ctx: &HeckeContext, p: &TrianglePoint, i: usize) -> Result<BigInt> {
    let dot_i = dot_fan(ctx, p, i);
    let dot_next = dot_fan(ctx, p, i + 1);
    index_from_dots(ctx, &dot_i, &dot_next)
}

fn index_from_dots(ctx: &HeckeContext, dot_i: &AlgNum, dot_next: &AlgNum) -> Result<BigInt> {
    ctx.floor_ratio(&(ctx.one() - dot_next.clone()), &ctx.mul(ctx.lambda(), dot_i))
}

pub fn bcz_step(ctx: &HeckeContext, p: &TrianglePoint) -> Result<BczStep> {
    let region = region_index(ctx, p)?;
    let dot_i = dot_fan(ctx, p, region);
    let dot_next = dot_fan(ctx, p, region + 1);
    let k = index_from_dots(ctx, &dot_i, &dot_next)?;
    let roof = roof_in(ctx, p, region, &dot_i)?;
    let shift = ctx.mul(ctx.lambda(), &dot_i).scale_int(&k);
    let next_b = &dot_next + &shift;
    debug_assert!(contains(ctx, &dot_i, &next_b), "map left the triangle at {p}");
    Ok(BczStep { region, roof, k, next: TrianglePoint::new_unchecked(dot_i, next_b) })
}

/// The first `n` steps of the forward orbit of `p`.
pub fn orbit(ctx: &HeckeContext, p: &TrianglePoint, n: usize) -> Result<Vec<BczStep>> {
    let mut out = Vec::with_capacity(n);
    let mut cur = p.clone();
    for _ in 0..n {
        let step = bcz_step(ctx, &cur)?;
        cur = step.next.clone();
        out.push(step);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Periodicity {
    Periodic(usize),
    NotDetected,
}

/// Iterates at most `max_steps` times and reports the first return to `p`.
pub fn is_periodic(ctx: &HeckeContext, p: &TrianglePoint, max_steps: usize) -> Result<Periodicity> {
    let mut cur = p.clone();
    for t in 1..=max_steps {
        cur = bcz_step(ctx, &cur)?.next;
        if cur == *p {
            return Ok(Periodicity::Periodic(t));
        }
    }
    Ok(Periodicity::NotDetected)
}

/// Looks for a vector of the orbit with `x / y = b / a` and coordinates
/// bounded by `bound`. Such a vector exists exactly for periodic points.
pub fn periodic_certificate(ctx: &HeckeContext, p: &TrianglePoint, bound: &AlgNum) -> Result<Option<PlaneVec>> {
    if p.b.is_zero() {
        return Ok(Some(ctx.vec(0, 1)));
    }
    let flip = ctx.sign(&p.b) < 0;
    let b = if flip { -&p.b } else { p.b.clone() };
    let target = PlaneVec::new(b, p.a.clone());
    let found = sternbrocot::find_direction(ctx, &target, bound)?;
    Ok(found.map(|v| if flip { v.reflect_x() } else { v }))
}

// Floating-point shadow, used only for sampling statistics.

pub fn region_index_f64(ctx: &HeckeContext, a: f64, b: f64) -> usize {
    let q = ctx.q();
    for i in 2..q - 1 {
        let (x, y) = ctx.fan_f64(i as i64);
        if a * x + b * y <= 1.0 {
            return i;
        }
    }
    q - 1
}

/// `(region, roof, next_a)` in floating point.
pub fn roof_f64(ctx: &HeckeContext, a: f64, b: f64) -> (usize, f64, f64) {
    let i = region_index_f64(ctx, a, b);
    let (x, y) = ctx.fan_f64(i as i64);
    let d = a * x + b * y;
    (i, y / (a * d), d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(ctx: &HeckeContext, a: (i64, i64), b: (i64, i64)) -> TrianglePoint {
        TrianglePoint::new(ctx, ctx.ratio(a.0, a.1), ctx.ratio(b.0, b.1)).unwrap()
    }

    #[test]
    fn membership() {
        let ctx = HeckeContext::new(5).unwrap();
        assert!(TrianglePoint::new(&ctx, ctx.int(2), ctx.zero()).is_err());
        assert!(TrianglePoint::new(&ctx, ctx.zero(), ctx.one()).is_err());
        assert!(TrianglePoint::new(&ctx, ctx.one(), ctx.one()).is_ok());
        // b = 1 - phi a is excluded
        let a = ctx.ratio(1, 2);
        let b = ctx.one() - ctx.mul(ctx.lambda(), &a);
        assert!(TrianglePoint::new(&ctx, a, b).is_err());
    }

    #[test]
    fn q5_regions() {
        let ctx = HeckeContext::new(5).unwrap();
        assert_eq!(region_index(&ctx, &pt(&ctx, (1, 1), (1, 1))).unwrap(), 4);
        assert_eq!(region_index(&ctx, &pt(&ctx, (9, 10), (-2, 5))).unwrap(), 2);
        assert!(roof(&ctx, &pt(&ctx, (1, 1), (1, 1))).unwrap().is_one());
    }

    #[test]
    fn q4_roof_at_corner() {
        let ctx = HeckeContext::new(4).unwrap();
        assert!(roof(&ctx, &pt(&ctx, (1, 1), (1, 1))).unwrap().is_one());
    }

    #[test]
    fn one_one_step() {
        let ctx = HeckeContext::new(3).unwrap();
        let p = pt(&ctx, (1, 1), (1, 1));
        assert_eq!(bcz_step(&ctx, &p).unwrap().next, p);
        assert_eq!(is_periodic(&ctx, &p, 10).unwrap(), Periodicity::Periodic(1));
        for q in 4..10 {
            let ctx = HeckeContext::new(q).unwrap();
            let step = bcz_step(&ctx, &pt(&ctx, (1, 1), (1, 1))).unwrap();
            assert_eq!(step.region, q - 1);
            assert_eq!(step.k, BigInt::from(1));
            assert_eq!(step.next.b(), &(ctx.lambda() - &ctx.one()));
        }
    }

    #[test]
    fn classical_map_sample() {
        let ctx = HeckeContext::new(3).unwrap();
        let p = pt(&ctx, (2, 7), (5, 6));
        let s = bcz_step(&ctx, &p).unwrap();
        // k = floor((1 + 2/7) / (5/6)) = floor(54/35) = 1
        assert_eq!(s.k, BigInt::from(1));
        assert_eq!(s.next, pt(&ctx, (5, 6), (-2 * 6 + 5 * 7, 42)));
        assert_eq!(s.roof, ctx.ratio(21, 5));
    }

    #[test]
    fn orbit_lengths() {
        let ctx = HeckeContext::new(5).unwrap();
        let p = pt(&ctx, (1, 1), (1, 1));
        assert!(orbit(&ctx, &p, 0).unwrap().is_empty());
        let o = orbit(&ctx, &p, 2).unwrap();
        assert_eq!(o[0].region, 4);
        assert_eq!(bcz_step(&ctx, &o[0].next).unwrap(), o[1]);
        assert!(matches!(is_periodic(&ctx, &p, 1000).unwrap(), Periodicity::Periodic(_)));
    }

    #[test]
    fn certificate_for_diagonal() {
        let ctx = HeckeContext::new(5).unwrap();
        let p = pt(&ctx, (1, 1), (1, 1));
        let v = periodic_certificate(&ctx, &p, &ctx.int(10)).unwrap().unwrap();
        assert_eq!(v, ctx.fan(2).clone());
    }
}
