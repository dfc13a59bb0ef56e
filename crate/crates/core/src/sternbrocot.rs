//! Stern-Brocot style generation of the orbit `Lambda_q = G_q (1, 0)`.
//!
//! Every unimodular pair `(u0, u1)` has `q - 2` children
//! `x_i u0 + y_i u1`, `i = 1..q-2`, read off the fan. Starting from
//! `((1, 0), (0, 1))` this reaches each vector of the orbit in the closed
//! first quadrant exactly once.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::context::{HeckeContext, PlaneVec};
use crate::error::{Error, Result};
use crate::field::AlgNum;

/// Two orbit vectors with `u0 ^ u1 = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnimodularPair {
    pub u0: PlaneVec,
    pub u1: PlaneVec,
}

impl UnimodularPair {
    pub fn new(ctx: &HeckeContext, u0: PlaneVec, u1: PlaneVec) -> Result<Self> {
        if !ctx.wedge(&u0, &u1).is_one() {
            return Err(Error::InvalidArgument(format!("{u0} ^ {u1} is not 1")));
        }
        Ok(UnimodularPair { u0, u1 })
    }

    pub fn root(ctx: &HeckeContext) -> Self {
        UnimodularPair { u0: ctx.vec(1, 0), u1: ctx.vec(0, 1) }
    }
}

/// The `q - 2` children of a pair, in increasing slope.
pub fn children(ctx: &HeckeContext, pair: &UnimodularPair) -> Vec<PlaneVec> {
    children_of(ctx, &pair.u0, &pair.u1)
}

fn children_of(ctx: &HeckeContext, u0: &PlaneVec, u1: &PlaneVec) -> Vec<PlaneVec> {
    (1..ctx.q() as i64 - 1)
        .map(|i| {
            let w = ctx.fan(i);
            ctx.combine(&w.x, u0, &w.y, u1)
        })
        .collect()
}

/// `u0, children..., u1`.
fn extended(ctx: &HeckeContext, u0: &PlaneVec, u1: &PlaneVec) -> Vec<PlaneVec> {
    let mut out = Vec::with_capacity(ctx.q());
    out.push(u0.clone());
    out.extend(children_of(ctx, u0, u1));
    out.push(u1.clone());
    out
}

/// A slope on the extended real line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtSlope {
    NegInfinity,
    Finite(AlgNum),
    Infinity,
}

impl ExtSlope {
    pub fn finite(v: AlgNum) -> Self {
        ExtSlope::Finite(v)
    }

    fn neg(&self) -> ExtSlope {
        match self {
            ExtSlope::NegInfinity => ExtSlope::Infinity,
            ExtSlope::Finite(v) => ExtSlope::Finite(-v),
            ExtSlope::Infinity => ExtSlope::NegInfinity,
        }
    }

    pub fn cmp(&self, ctx: &HeckeContext, other: &ExtSlope) -> Ordering {
        use ExtSlope::*;
        match (self, other) {
            (Finite(a), Finite(b)) => ctx.cmp(a, b),
            (NegInfinity, NegInfinity) | (Infinity, Infinity) => Ordering::Equal,
            (NegInfinity, _) | (_, Infinity) => Ordering::Less,
            (Infinity, _) | (_, NegInfinity) => Ordering::Greater,
        }
    }

    pub fn to_f64(&self, ctx: &HeckeContext) -> f64 {
        match self {
            ExtSlope::NegInfinity => f64::NEG_INFINITY,
            ExtSlope::Finite(v) => ctx.to_f64(v),
            ExtSlope::Infinity => f64::INFINITY,
        }
    }
}

/// Slope of `v` (with `x >= 0`, `v != 0`) compared to `s`.
pub fn cmp_vec_slope(ctx: &HeckeContext, v: &PlaneVec, s: &ExtSlope) -> Ordering {
    match s {
        ExtSlope::NegInfinity => Ordering::Greater,
        ExtSlope::Infinity => {
            if v.x.is_zero() && ctx.sign(&v.y) > 0 {
                Ordering::Equal
            } else {
                Ordering::Less
            }
        }
        ExtSlope::Finite(m) => {
            if v.x.is_zero() {
                return if ctx.sign(&v.y) > 0 { Ordering::Greater } else { Ordering::Less };
            }
            // y / x vs m with x > 0
            ctx.sign(&(v.y.clone() - ctx.mul(m, &v.x))).cmp(&0)
        }
    }
}

/// Vectors with `0 < x <= tau` and slope in the closed range `[lo, hi]`.
#[derive(Clone, Debug)]
pub struct StripSpec {
    pub tau: AlgNum,
    pub lo: ExtSlope,
    pub hi: ExtSlope,
}

impl StripSpec {
    pub fn new(ctx: &HeckeContext, tau: AlgNum, lo: ExtSlope, hi: ExtSlope) -> Result<Self> {
        if ctx.sign(&tau) <= 0 {
            return Err(Error::InvalidArgument("tau must be positive".into()));
        }
        if lo.cmp(ctx, &hi) != Ordering::Less {
            return Err(Error::InvalidArgument("slope range must have lo < hi".into()));
        }
        Ok(StripSpec { tau, lo, hi })
    }
}

/// All vectors of the strip, sorted by slope.
///
/// Nonzero x-coordinates of orbit vectors are at least 1 in absolute value,
/// so strips with `tau < 1` are empty, while a strip with `tau >= 1` and an
/// infinite slope end contains every `(1, n lambda)` and is rejected.
pub fn enumerate_strip(ctx: &HeckeContext, spec: &StripSpec) -> Result<Vec<PlaneVec>> {
    if ctx.sign(&spec.tau) <= 0 {
        return Err(Error::InvalidArgument("tau must be positive".into()));
    }
    if ctx.cmp(&spec.tau, &ctx.one()).is_lt() {
        return Ok(Vec::new());
    }
    if matches!(spec.hi, ExtSlope::Infinity) || matches!(spec.lo, ExtSlope::NegInfinity) {
        return Err(Error::UnboundedStrip(format!(
            "tau = {} admits infinitely many vectors of unbounded slope",
            spec.tau
        )));
    }
    let zero = ExtSlope::Finite(ctx.zero());
    let mut out = Vec::new();
    if spec.lo.cmp(ctx, &zero).is_lt() {
        // negative slopes by reflection in the x-axis; slope 0 belongs to the upper half
        let hi = if spec.hi.cmp(ctx, &zero).is_lt() { spec.hi.neg() } else { zero.clone() };
        let mut lower = enumerate_upper(ctx, &spec.tau, &hi, &spec.lo.neg());
        lower.retain(|v| !v.y.is_zero());
        out.extend(lower.into_iter().rev().map(|v| v.reflect_x()));
    }
    if spec.hi.cmp(ctx, &zero).is_ge() {
        let lo = if spec.lo.cmp(ctx, &zero).is_lt() { zero } else { spec.lo.clone() };
        out.extend(enumerate_upper(ctx, &spec.tau, &lo, &spec.hi));
    }
    Ok(out)
}

fn enumerate_upper(ctx: &HeckeContext, tau: &AlgNum, lo: &ExtSlope, hi: &ExtSlope) -> Vec<PlaneVec> {
    let filter = StripFilter { tau, lo, hi };
    let root = UnimodularPair::root(ctx);
    let mut out = Vec::new();
    if ctx.sign(&root.u0.x) > 0 && filter.emit(ctx, &root.u0) {
        out.push(root.u0.clone());
    }
    out.extend(walk_sector(ctx, &root.u0, &root.u1, &filter, 0));
    out
}

/// Pruning rule for an in-order walk. Every proper descendant of the open
/// sector `(u0, u1)` is `s u0 + t u1` with `s, t >= 1`.
trait Prune: Sync {
    /// Whether the open sector between `u0` and `u1` may contain output.
    fn keep(&self, ctx: &HeckeContext, u0: &PlaneVec, u1: &PlaneVec) -> bool;
    fn emit(&self, ctx: &HeckeContext, v: &PlaneVec) -> bool;
}

struct StripFilter<'a> {
    tau: &'a AlgNum,
    lo: &'a ExtSlope,
    hi: &'a ExtSlope,
}

impl Prune for StripFilter<'_> {
    fn keep(&self, ctx: &HeckeContext, u0: &PlaneVec, u1: &PlaneVec) -> bool {
        ctx.cmp(&(&u0.x + &u1.x), self.tau).is_le()
            && cmp_vec_slope(ctx, u1, self.lo).is_gt()
            && cmp_vec_slope(ctx, u0, self.hi).is_lt()
    }

    fn emit(&self, ctx: &HeckeContext, v: &PlaneVec) -> bool {
        ctx.cmp(&v.x, self.tau).is_le()
            && cmp_vec_slope(ctx, v, self.lo).is_ge()
            && cmp_vec_slope(ctx, v, self.hi).is_le()
    }
}

struct BoxFilter<'a> {
    xmax: &'a AlgNum,
    ymax: &'a AlgNum,
}

impl Prune for BoxFilter<'_> {
    fn keep(&self, ctx: &HeckeContext, u0: &PlaneVec, u1: &PlaneVec) -> bool {
        ctx.cmp(&(&u0.x + &u1.x), self.xmax).is_le() && ctx.cmp(&(&u0.y + &u1.y), self.ymax).is_le()
    }

    fn emit(&self, ctx: &HeckeContext, v: &PlaneVec) -> bool {
        ctx.cmp(&v.x, self.xmax).is_le() && ctx.cmp(&v.y, self.ymax).is_le()
    }
}

enum Item {
    Sector(PlaneVec, PlaneVec),
    /// A vector and its right neighbour at creation.
    Emit(PlaneVec, PlaneVec),
}

/// Lazy in-order traversal of an open sector.
struct InOrder<'a, P: Prune> {
    ctx: &'a HeckeContext,
    filter: &'a P,
    stack: Vec<Item>,
}

impl<'a, P: Prune> InOrder<'a, P> {
    fn new(ctx: &'a HeckeContext, filter: &'a P, u0: &PlaneVec, u1: &PlaneVec) -> Self {
        InOrder { ctx, filter, stack: vec![Item::Sector(u0.clone(), u1.clone())] }
    }
}

impl<P: Prune> Iterator for InOrder<'_, P> {
    type Item = (PlaneVec, PlaneVec);

    fn next(&mut self) -> Option<Self::Item> {
        let ctx = self.ctx;
        while let Some(item) = self.stack.pop() {
            match item {
                Item::Emit(v, w) => return Some((v, w)),
                Item::Sector(a, b) => {
                    if !self.filter.keep(ctx, &a, &b) {
                        continue;
                    }
                    let ext = extended(ctx, &a, &b);
                    let n = ext.len();
                    // reversed, so the leftmost sector comes off the stack first
                    self.stack.push(Item::Sector(ext[n - 2].clone(), ext[n - 1].clone()));
                    for j in (1..n - 1).rev() {
                        if self.filter.emit(ctx, &ext[j]) {
                            self.stack.push(Item::Emit(ext[j].clone(), ext[j + 1].clone()));
                        }
                        self.stack.push(Item::Sector(ext[j - 1].clone(), ext[j].clone()));
                    }
                }
            }
        }
        None
    }
}

// Sectors above this depth are expanded in parallel.
const PAR_DEPTH: usize = 3;

fn walk_sector<P: Prune>(ctx: &HeckeContext, u0: &PlaneVec, u1: &PlaneVec, f: &P, depth: usize) -> Vec<PlaneVec> {
    if depth >= PAR_DEPTH {
        return InOrder::new(ctx, f, u0, u1).map(|(v, _)| v).collect();
    }
    if !f.keep(ctx, u0, u1) {
        return Vec::new();
    }
    let ext = extended(ctx, u0, u1);
    let parts: Vec<Vec<PlaneVec>> = (0..ext.len() - 1)
        .into_par_iter()
        .map(|j| {
            let mut part = walk_sector(ctx, &ext[j], &ext[j + 1], f, depth + 1);
            if j + 1 < ext.len() - 1 && f.emit(ctx, &ext[j + 1]) {
                part.push(ext[j + 1].clone());
            }
            part
        })
        .collect();
    parts.into_iter().flatten().collect()
}

/// Orbit vectors in the closed first quadrant with `x <= xmax` and
/// `y <= ymax`, in slope order.
pub fn enumerate_quadrant_box(ctx: &HeckeContext, xmax: &AlgNum, ymax: &AlgNum) -> Vec<PlaneVec> {
    let filter = BoxFilter { xmax, ymax };
    let root = UnimodularPair::root(ctx);
    let mut out = Vec::new();
    if filter.emit(ctx, &root.u0) {
        out.push(root.u0.clone());
    }
    out.extend(walk_sector(ctx, &root.u0, &root.u1, &filter, 0));
    if filter.emit(ctx, &root.u1) {
        out.push(root.u1.clone());
    }
    out
}

/// Searches the tree for an orbit vector parallel to `target` (first
/// quadrant, nonzero) with both coordinates at most `bound`. Returns the
/// vector together with its right neighbour at creation, which satisfies
/// `v ^ w = 1`.
pub fn find_direction_with_partner(
    ctx: &HeckeContext,
    target: &PlaneVec,
    bound: &AlgNum,
) -> Result<Option<(PlaneVec, PlaneVec)>> {
    if ctx.sign(&target.x) < 0 || ctx.sign(&target.y) < 0 || (target.x.is_zero() && target.y.is_zero()) {
        return Err(Error::InvalidArgument("direction must lie in the closed first quadrant".into()));
    }
    let root = UnimodularPair::root(ctx);
    if target.y.is_zero() {
        return Ok(Some((root.u0, root.u1)));
    }
    if target.x.is_zero() {
        return Ok(Some((root.u1, ctx.vec(-1, 0))));
    }
    let (mut u0, mut u1) = (root.u0, root.u1);
    loop {
        if ctx.cmp(&(&u0.x + &u1.x), bound).is_gt() || ctx.cmp(&(&u0.y + &u1.y), bound).is_gt() {
            return Ok(None);
        }
        let ext = extended(ctx, &u0, &u1);
        let mut next = None;
        for j in 1..ext.len() {
            // target lies strictly after ext[j-1]; compare with ext[j]
            let s = ctx.sign(&ctx.wedge(&ext[j], target));
            if s == 0 {
                return Ok(Some((ext[j].clone(), ext[j + 1].clone())));
            }
            if s < 0 {
                next = Some((ext[j - 1].clone(), ext[j].clone()));
                break;
            }
        }
        let (a, b) = next.ok_or_else(|| Error::Internal("direction escaped its sector".into()))?;
        u0 = a;
        u1 = b;
    }
}

pub fn find_direction(ctx: &HeckeContext, target: &PlaneVec, bound: &AlgNum) -> Result<Option<PlaneVec>> {
    Ok(find_direction_with_partner(ctx, target, bound)?.map(|(v, _)| v))
}

/// The vector of least slope `>= lo` among `0 < x <= tau`, `lo >= 0`,
/// together with its right neighbour `w` at creation (`v ^ w = 1`).
pub fn first_at_or_above(ctx: &HeckeContext, tau: &AlgNum, lo: &AlgNum) -> Result<Option<(PlaneVec, PlaneVec)>> {
    if ctx.sign(lo) < 0 {
        return Err(Error::InvalidArgument("slope must be nonnegative".into()));
    }
    if ctx.cmp(tau, &ctx.one()).is_lt() {
        return Ok(None);
    }
    let lo = ExtSlope::Finite(lo.clone());
    let hi = ExtSlope::Infinity;
    let filter = StripFilter { tau, lo: &lo, hi: &hi };
    let root = UnimodularPair::root(ctx);
    if cmp_vec_slope(ctx, &root.u0, &lo).is_ge() {
        return Ok(Some((root.u0, root.u1)));
    }
    Ok(InOrder::new(ctx, &filter, &root.u0, &root.u1).next())
}

/// Output of [`dirichlet_descent`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Descent {
    /// Vectors `(x, y)` with `|alpha - y/x| <= 1 / (2 x^2)`, increasing `x`.
    pub approximants: Vec<PlaneVec>,
    /// Set when `alpha` is the exact slope of an orbit vector.
    pub exact: Option<PlaneVec>,
}

/// Descends through the sectors containing `(1, alpha)`, `alpha >= 0`,
/// collecting good approximations until `count` are found or `alpha` turns
/// out to be an exact slope.
pub fn dirichlet_descent(ctx: &HeckeContext, alpha: &AlgNum, count: usize) -> Result<Descent> {
    if count == 0 {
        return Err(Error::InvalidArgument("count must be at least 1".into()));
    }
    if ctx.sign(alpha) < 0 {
        let mut d = dirichlet_descent(ctx, &-alpha, count)?;
        d.approximants = d.approximants.iter().map(PlaneVec::reflect_x).collect();
        d.exact = d.exact.map(|v| v.reflect_x());
        return Ok(d);
    }
    let target = PlaneVec::new(ctx.one(), alpha.clone());
    let mut out = Descent { approximants: Vec::new(), exact: None };
    let root = UnimodularPair::root(ctx);
    if alpha.is_zero() {
        out.exact = Some(root.u0);
        return Ok(out);
    }
    let (mut u0, mut u1) = (root.u0, root.u1);
    let mut last_x: Option<AlgNum> = None;
    loop {
        let ext = extended(ctx, &u0, &u1);
        let kids = &ext[1..ext.len() - 1];
        let mut by_x: Vec<&PlaneVec> = kids.iter().collect();
        by_x.sort_by(|a, b| ctx.cmp(&a.x, &b.x));
        for v in by_x {
            if last_x.as_ref().is_some_and(|lx| ctx.cmp(&v.x, lx).is_le()) {
                continue;
            }
            if ctx.wedge(v, &target).is_zero() {
                out.exact = Some(v.clone());
                return Ok(out);
            }
            if is_good_approximation(ctx, alpha, v) {
                last_x = Some(v.x.clone());
                out.approximants.push(v.clone());
                if out.approximants.len() >= count {
                    return Ok(out);
                }
            }
        }
        let mut next = None;
        for j in 1..ext.len() {
            let s = ctx.sign(&ctx.wedge(&ext[j], &target));
            if s == 0 {
                out.exact = Some(ext[j].clone());
                return Ok(out);
            }
            if s < 0 {
                next = Some((ext[j - 1].clone(), ext[j].clone()));
                break;
            }
        }
        let (a, b) = next.ok_or_else(|| Error::Internal("target escaped its sector".into()))?;
        u0 = a;
        u1 = b;
    }
}

/// `|alpha - y/x| <= 1 / (2 x^2)`, i.e. `2 x |alpha x - y| <= 1`.
pub fn is_good_approximation(ctx: &HeckeContext, alpha: &AlgNum, v: &PlaneVec) -> bool {
    let diff = ctx.mul(alpha, &v.x) - v.y.clone();
    let lhs = ctx.mul(&v.x, &diff).scale_int(&2.into());
    let lhs = if ctx.sign(&lhs) < 0 { -lhs } else { lhs };
    ctx.cmp(&lhs, &ctx.one()).is_le()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strip(ctx: &HeckeContext, tau: i64, lo: (i64, i64), hi: (i64, i64)) -> Vec<PlaneVec> {
        let spec = StripSpec::new(
            ctx,
            ctx.int(tau),
            ExtSlope::Finite(ctx.ratio(lo.0, lo.1)),
            ExtSlope::Finite(ctx.ratio(hi.0, hi.1)),
        )
        .unwrap();
        enumerate_strip(ctx, &spec).unwrap()
    }

    #[test]
    fn root_children() {
        let ctx = HeckeContext::new(3).unwrap();
        assert_eq!(children(&ctx, &UnimodularPair::root(&ctx)), vec![ctx.vec(1, 1)]);
        let ctx = HeckeContext::new(5).unwrap();
        let kids = children(&ctx, &UnimodularPair::root(&ctx));
        assert_eq!(kids, vec![ctx.fan(1).clone(), ctx.fan(2).clone(), ctx.fan(3).clone()]);
        let mut ext = vec![ctx.vec(1, 0)];
        ext.extend(kids);
        ext.push(ctx.vec(0, 1));
        for w in ext.windows(2) {
            assert!(UnimodularPair::new(&ctx, w[0].clone(), w[1].clone()).is_ok());
        }
    }

    #[test]
    fn classical_strip() {
        let ctx = HeckeContext::new(3).unwrap();
        let got = strip(&ctx, 3, (0, 1), (1, 1));
        let expect: Vec<PlaneVec> = [(1, 0), (3, 1), (2, 1), (3, 2), (1, 1)].iter().map(|&(x, y)| ctx.vec(x, y)).collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn golden_strip() {
        let ctx = HeckeContext::new(5).unwrap();
        let got = strip(&ctx, 1, (0, 1), (2, 1));
        assert_eq!(got, vec![ctx.vec(1, 0), ctx.fan(3).clone()]);
        for q in 3..8 {
            let ctx = HeckeContext::new(q).unwrap();
            let spec = StripSpec::new(&ctx, ctx.ratio(1, 2), ExtSlope::Finite(ctx.zero()), ExtSlope::Finite(ctx.one())).unwrap();
            assert!(enumerate_strip(&ctx, &spec).unwrap().is_empty());
        }
    }

    #[test]
    fn unbounded_strip_rejected() {
        let ctx = HeckeContext::new(5).unwrap();
        let spec = StripSpec::new(&ctx, ctx.one(), ExtSlope::Finite(ctx.zero()), ExtSlope::Infinity).unwrap();
        assert!(matches!(enumerate_strip(&ctx, &spec), Err(Error::UnboundedStrip(_))));
    }

    #[test]
    fn negative_slopes_mirror() {
        let ctx = HeckeContext::new(4).unwrap();
        let both = strip(&ctx, 6, (-1, 1), (1, 1));
        let upper = strip(&ctx, 6, (0, 1), (1, 1));
        assert_eq!(both.len(), 2 * upper.len() - 1);
        for w in both.windows(2) {
            assert_eq!(ctx.cmp_slope(&w[0], &w[1]), Ordering::Less);
        }
    }

    #[test]
    fn quadrant_box_matches_strip() {
        let ctx = HeckeContext::new(5).unwrap();
        let m = ctx.int(8);
        let boxed = enumerate_quadrant_box(&ctx, &m, &m);
        let lower: Vec<PlaneVec> = boxed.iter().filter(|v| ctx.cmp(&v.y, &v.x).is_le()).cloned().collect();
        assert_eq!(lower, strip(&ctx, 8, (0, 1), (1, 1)));
    }

    #[test]
    fn directions_and_partners() {
        let ctx = HeckeContext::new(5).unwrap();
        let (v, w) = find_direction_with_partner(&ctx, &ctx.vec(1, 1), &ctx.int(5)).unwrap().unwrap();
        assert_eq!(v, ctx.fan(2).clone());
        assert!(ctx.wedge(&v, &w).is_one());
        if let Some(v) = find_direction(&ctx, &ctx.vec(2, 1), &ctx.int(50)).unwrap() {
            assert!(ctx.wedge(&v, &ctx.vec(2, 1)).is_zero());
        }
        assert_eq!(find_direction(&ctx, &ctx.vec(2, 1), &ctx.one()).unwrap(), None);
        let (first, partner) = first_at_or_above(&ctx, &ctx.int(5), &ctx.ratio(1, 3)).unwrap().unwrap();
        assert!(ctx.wedge(&first, &partner).is_one());
        let all = strip(&ctx, 5, (1, 3), (1, 1));
        assert_eq!(all[0], first);
    }

    #[test]
    fn dirichlet_examples() {
        let ctx = HeckeContext::new(3).unwrap();
        let d = dirichlet_descent(&ctx, &ctx.ratio(1, 2), 5).unwrap();
        assert_eq!(d.exact, Some(ctx.vec(2, 1)));
        let alpha = ctx.ratio(7050459, 9901099);
        let d = dirichlet_descent(&ctx, &alpha, 5).unwrap();
        assert_eq!(d.approximants.len(), 5);
        for v in &d.approximants {
            assert!(is_good_approximation(&ctx, &alpha, v));
        }
        let ctx = HeckeContext::new(5).unwrap();
        assert_eq!(dirichlet_descent(&ctx, &ctx.one(), 3).unwrap().exact, Some(ctx.fan(2).clone()));
    }
}
