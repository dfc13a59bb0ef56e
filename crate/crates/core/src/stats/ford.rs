//! Ford circles: the vector `(r, s)` carries the circle of radius
//! `1/(2 r^2)` tangent to the x-axis at `s/r`. Two circles are tangent when
//! the wedge of their vectors is `+-1` and disjoint when it is larger.

use serde::Serialize;

use crate::context::{HeckeContext, PlaneVec};
use crate::error::{Error, Result};
use crate::field::AlgNum;
use crate::nextterm::NextTermState;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FordCircle {
    pub center: (f64, f64),
    pub radius: f64,
    #[serde(skip)]
    pub source: PlaneVec,
}

impl FordCircle {
    pub fn new(ctx: &HeckeContext, v: &PlaneVec) -> Result<Self> {
        if v.x.is_zero() {
            return Err(Error::InvalidArgument("vertical vectors give the line y = s^2, not a circle".into()));
        }
        let r = ctx.to_f64(&v.x);
        let slope = ctx.to_f64(&ctx.div(&v.y, &v.x)?);
        let radius = 1.0 / (2.0 * r * r);
        Ok(FordCircle { center: (slope, radius), radius, source: v.clone() })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Contact {
    Tangent,
    External,
    Overlapping,
}

pub fn contact(ctx: &HeckeContext, u: &PlaneVec, v: &PlaneVec) -> Contact {
    let w = ctx.wedge(u, v);
    let w = if ctx.sign(&w) < 0 { -w } else { w };
    match ctx.cmp(&w, &ctx.one()) {
        std::cmp::Ordering::Equal => Contact::Tangent,
        std::cmp::Ordering::Greater => Contact::External,
        std::cmp::Ordering::Less => Contact::Overlapping,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FordSweep {
    pub circles: Vec<FordCircle>,
    /// Contact between circle `k` and circle `k + 1`.
    pub consecutive: Vec<Contact>,
}

/// Circles of the sweep over slopes `[lo, hi]`, in slope order.
pub fn ford_circles(ctx: &HeckeContext, tau: &AlgNum, lo: &AlgNum, hi: &AlgNum) -> Result<FordSweep> {
    if ctx.cmp(tau, &ctx.one()).is_lt() {
        return Err(Error::InvalidArgument("tau must be at least 1".into()));
    }
    let mut state = NextTermState::seed_at_slope(ctx, tau, lo)?;
    let mut vecs = Vec::new();
    if ctx.cmp(state.slope(), hi).is_le() {
        vecs.push(state.current().clone());
        vecs.extend(state.take_until_slope(ctx, hi)?);
    }
    let circles = vecs.iter().map(|v| FordCircle::new(ctx, v)).collect::<Result<Vec<_>>>()?;
    let consecutive = vecs.windows(2).map(|w| contact(ctx, &w[0], &w[1])).collect();
    Ok(FordSweep { circles, consecutive })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairAudit {
    pub pairs: u64,
    pub tangent: u64,
    pub overlapping: u64,
    pub min_abs_wedge: f64,
}

/// Classifies every pair of distinct vectors. A floating-point wedge decides
/// pairs that are clearly apart; the rest are compared exactly.
pub fn audit_pairs(ctx: &HeckeContext, vecs: &[PlaneVec]) -> PairAudit {
    let f: Vec<(f64, f64)> = vecs.iter().map(|v| ctx.vec_to_f64(v)).collect();
    let mut audit = PairAudit { pairs: 0, tangent: 0, overlapping: 0, min_abs_wedge: f64::INFINITY };
    for i in 0..vecs.len() {
        for j in i + 1..vecs.len() {
            audit.pairs += 1;
            let w = (f[i].0 * f[j].1 - f[j].0 * f[i].1).abs();
            audit.min_abs_wedge = audit.min_abs_wedge.min(w);
            if w > 1.0 + 1e-6 {
                continue;
            }
            match contact(ctx, &vecs[i], &vecs[j]) {
                Contact::Tangent => audit.tangent += 1,
                Contact::Overlapping => audit.overlapping += 1,
                Contact::External => {}
            }
        }
    }
    audit
}
