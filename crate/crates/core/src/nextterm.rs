//! Slope-ordered sweep of `{v in Lambda_q : 0 < v.x <= tau}` driven by the
//! BCZ map. The state carries the Farey triangle representative `(a, b)`
//! with `a = x / tau`; each step adds `roof / tau^2` to the slope.

use crate::bcz::{bcz_step, BczStep, TrianglePoint};
use crate::context::{HeckeContext, PlaneVec};
use crate::error::{Error, Result};
use crate::field::AlgNum;
use crate::sternbrocot;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NextTermState {
    tau: AlgNum,
    tau_sq: AlgNum,
    ftr: TrianglePoint,
    current: PlaneVec,
    slope: AlgNum,
    n: u64,
}

impl NextTermState {
    /// Starts at `(1, 0)` with representative `(1/tau, floor(tau/lambda) lambda / tau)`.
    pub fn seed_identity(ctx: &HeckeContext, tau: &AlgNum) -> Result<Self> {
        if ctx.cmp(tau, &ctx.one()).is_lt() {
            return Err(Error::InvalidArgument(format!("tau = {tau} is below 1, so (1, 0) is outside the strip")));
        }
        Self::seed_with_partner(ctx, tau, ctx.vec(1, 0), &ctx.vec(0, 1))
    }

    /// Starts at the first vector of slope `>= lo` (with `lo >= 0`).
    pub fn seed_at_slope(ctx: &HeckeContext, tau: &AlgNum, lo: &AlgNum) -> Result<Self> {
        if ctx.cmp(tau, &ctx.one()).is_lt() {
            return Err(Error::EmptySweep(format!("no orbit vector has 0 < x <= {tau}")));
        }
        let (v, w) = sternbrocot::first_at_or_above(ctx, tau, lo)?
            .ok_or_else(|| Error::EmptySweep(format!("no vector with x <= {tau} and slope >= {lo}")))?;
        Self::seed_with_partner(ctx, tau, v, &w)
    }

    /// Representative of `v` from any `w` with `v ^ w = 1`: the partners of
    /// `v` are `w + n lambda v`, and `b` is the largest partner x-coordinate
    /// not exceeding `tau`, divided by `tau`.
    pub fn seed_with_partner(ctx: &HeckeContext, tau: &AlgNum, v: PlaneVec, w: &PlaneVec) -> Result<Self> {
        if !ctx.wedge(&v, w).is_one() {
            return Err(Error::InconsistentSeed(format!("{v} ^ {w} is not 1")));
        }
        if ctx.sign(&v.x) <= 0 || ctx.cmp(&v.x, tau).is_gt() {
            return Err(Error::InconsistentSeed(format!("{v} is outside the strip of width {tau}")));
        }
        let step = ctx.mul(ctx.lambda(), &v.x);
        let n = ctx.floor_ratio(&(tau.clone() - w.x.clone()), &step)?;
        let top = &w.x + &step.scale_int(&n);
        let a = ctx.div(&v.x, tau)?;
        let b = ctx.div(&top, tau)?;
        let ftr = TrianglePoint::new(ctx, a, b)?;
        Self::seed_custom(ctx, tau, ftr, v)
    }

    /// Starts from a caller-supplied representative; `current.x` must equal
    /// `tau * ftr.a`.
    pub fn seed_custom(ctx: &HeckeContext, tau: &AlgNum, ftr: TrianglePoint, current: PlaneVec) -> Result<Self> {
        if ctx.sign(tau) <= 0 {
            return Err(Error::InvalidArgument("tau must be positive".into()));
        }
        if ctx.mul(tau, ftr.a()) != current.x {
            return Err(Error::InconsistentSeed(format!(
                "x = {} differs from tau * a = {}",
                current.x,
                ctx.mul(tau, ftr.a())
            )));
        }
        let slope = ctx.div(&current.y, &current.x)?;
        Ok(NextTermState { tau: tau.clone(), tau_sq: ctx.square(tau), ftr, current, slope, n: 0 })
    }

    pub fn tau(&self) -> &AlgNum {
        &self.tau
    }

    pub fn ftr(&self) -> &TrianglePoint {
        &self.ftr
    }

    pub fn current(&self) -> &PlaneVec {
        &self.current
    }

    pub fn slope(&self) -> &AlgNum {
        &self.slope
    }

    pub fn steps(&self) -> u64 {
        self.n
    }

    /// Moves to the vector of least slope above the current one and returns
    /// it with the map step that produced it.
    pub fn advance(&mut self, ctx: &HeckeContext) -> Result<(PlaneVec, BczStep)> {
        let step = bcz_step(ctx, &self.ftr)?;
        let x = ctx.mul(&self.tau, step.next.a());
        let slope = &self.slope + &ctx.div(&step.roof, &self.tau_sq)?;
        let y = ctx.mul(&x, &slope);
        let next = PlaneVec::new(x, y);
        self.n += 1;
        if self.n.is_power_of_two() {
            let w = ctx.wedge(&self.current, &next);
            if w != ctx.fan(step.region as i64).y {
                return Err(Error::Internal(format!(
                    "step {}: {} ^ {} = {} but region {} predicts {}",
                    self.n,
                    self.current,
                    next,
                    w,
                    step.region,
                    ctx.fan(step.region as i64).y
                )));
            }
        }
        self.ftr = step.next.clone();
        self.current = next.clone();
        self.slope = slope;
        Ok((next, step))
    }

    /// All following vectors with slope `<= slope_max`. The state stops on
    /// the last of them.
    pub fn take_until_slope(&mut self, ctx: &HeckeContext, slope_max: &AlgNum) -> Result<Vec<PlaneVec>> {
        let mut out = Vec::new();
        loop {
            let mut trial = self.clone();
            let (v, _) = trial.advance(ctx)?;
            if ctx.cmp(trial.slope(), slope_max).is_gt() {
                return Ok(out);
            }
            *self = trial;
            out.push(v);
        }
    }
}

/// Floating-point summary of one vector of a sweep and the step leaving it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRecord {
    pub x: f64,
    pub y: f64,
    pub slope: f64,
    /// Region of the representative at this vector.
    pub region: usize,
    /// `tau^2` times the gap to the next slope.
    pub roof: f64,
    /// Representative's `a` here and at the next vector.
    pub l0: f64,
    pub l1: f64,
}

impl SweepRecord {
    /// `tau^2` times the distance between consecutive Ford circle centres.
    pub fn cent_dist(&self) -> f64 {
        let d = 1.0 / (self.l1 * self.l1) - 1.0 / (self.l0 * self.l0);
        (self.roof * self.roof + 0.25 * d * d).sqrt()
    }
}

/// Records every vector with slope in `[lo, hi]` (`0 <= lo < hi`). The last
/// record's gap reaches to the first vector above `hi`.
pub fn sweep_records(ctx: &HeckeContext, tau: &AlgNum, lo: &AlgNum, hi: &AlgNum) -> Result<Vec<SweepRecord>> {
    let mut records = Vec::new();
    for_each_in_sweep(ctx, tau, lo, hi, |state, step| {
        let v = state.current();
        records.push(SweepRecord {
            x: ctx.to_f64(&v.x),
            y: ctx.to_f64(&v.y),
            slope: ctx.to_f64(state.slope()),
            region: step.region,
            roof: ctx.to_f64(&step.roof),
            l0: ctx.to_f64(state.ftr().a()),
            l1: ctx.to_f64(step.next.a()),
        });
    })?;
    Ok(records)
}

/// Calls `f` with the state at each vector of slope in `[lo, hi]` and the
/// step that leaves it.
pub fn for_each_in_sweep(
    ctx: &HeckeContext,
    tau: &AlgNum,
    lo: &AlgNum,
    hi: &AlgNum,
    mut f: impl FnMut(&NextTermState, &BczStep),
) -> Result<()> {
    if ctx.cmp(lo, hi).is_ge() {
        return Err(Error::InvalidArgument("slope range must have lo < hi".into()));
    }
    let mut state = NextTermState::seed_at_slope(ctx, tau, lo)?;
    if ctx.cmp(state.slope(), hi).is_gt() {
        return Err(Error::EmptySweep(format!("no vector with x <= {tau} and slope in [{lo}, {hi}]")));
    }
    loop {
        let before = state.clone();
        let (_, step) = state.advance(ctx)?;
        f(&before, &step);
        if ctx.cmp(state.slope(), hi).is_gt() {
            return Ok(());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_seeds() {
        let ctx = HeckeContext::new(3).unwrap();
        let s = NextTermState::seed_identity(&ctx, &ctx.int(5)).unwrap();
        assert_eq!(s.ftr().a(), &ctx.ratio(1, 5));
        assert!(s.ftr().b().is_one());

        let ctx = HeckeContext::new(5).unwrap();
        let s = NextTermState::seed_identity(&ctx, &ctx.one()).unwrap();
        assert!(s.ftr().a().is_one());
        assert!(s.ftr().b().is_zero());

        let ctx = HeckeContext::new(4).unwrap();
        let s = NextTermState::seed_identity(&ctx, &ctx.int(10)).unwrap();
        let expect = ctx.mul(ctx.lambda(), &ctx.ratio(7, 10));
        assert_eq!(s.ftr().b(), &expect);

        assert!(NextTermState::seed_identity(&ctx, &ctx.ratio(1, 2)).is_err());
    }

    #[test]
    fn custom_seed_checks_consistency() {
        let ctx = HeckeContext::new(3).unwrap();
        let ftr = TrianglePoint::new(&ctx, ctx.ratio(1, 2), ctx.one()).unwrap();
        assert!(matches!(
            NextTermState::seed_custom(&ctx, &ctx.int(2), ftr, ctx.vec(2, 0)),
            Err(Error::InconsistentSeed(_))
        ));
        let ident = NextTermState::seed_identity(&ctx, &ctx.int(7)).unwrap();
        let again = NextTermState::seed_custom(&ctx, &ctx.int(7), ident.ftr().clone(), ident.current().clone()).unwrap();
        assert_eq!(ident, again);
    }

    #[test]
    fn classical_farey_five() {
        let ctx = HeckeContext::new(3).unwrap();
        let mut s = NextTermState::seed_identity(&ctx, &ctx.int(5)).unwrap();
        let got = s.take_until_slope(&ctx, &ctx.one()).unwrap();
        let expect = [(5, 1), (4, 1), (3, 1), (5, 2), (2, 1), (5, 3), (3, 2), (4, 3), (5, 4), (1, 1)];
        let expect: Vec<PlaneVec> = expect.iter().map(|&(x, y)| ctx.vec(x, y)).collect();
        assert_eq!(got, expect);
        assert!(s.take_until_slope(&ctx, &ctx.one()).unwrap().is_empty());
    }

    #[test]
    fn seed_in_the_middle() {
        let ctx = HeckeContext::new(3).unwrap();
        let mut s = NextTermState::seed_at_slope(&ctx, &ctx.int(5), &ctx.ratio(3, 10)).unwrap();
        assert_eq!(s.current(), &ctx.vec(3, 1));
        let got = s.take_until_slope(&ctx, &ctx.ratio(1, 2)).unwrap();
        assert_eq!(got, vec![ctx.vec(5, 2), ctx.vec(2, 1)]);
    }

    #[test]
    fn gaps_are_roofs() {
        let ctx = HeckeContext::new(5).unwrap();
        let tau = ctx.int(10);
        let mut s = NextTermState::seed_identity(&ctx, &tau).unwrap();
        for _ in 0..50 {
            let before = s.slope().clone();
            let (_, step) = s.advance(&ctx).unwrap();
            let gap = s.slope().clone() - before;
            assert_eq!(ctx.mul(&gap, &ctx.int(100)), step.roof);
            assert_eq!(s.current().x, ctx.mul(&tau, s.ftr().a()));
        }
    }
}
