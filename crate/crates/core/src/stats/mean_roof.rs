//! The mean roof `m_q = (2/lambda) int_T R da db`, which fixes the density
//! `1/m_q` of orbit vectors per unit slope per `tau^2`.

use serde::Serialize;

use crate::context::HeckeContext;
use crate::error::{Error, Result};
use crate::stats::mc::{run_chunks, lambda};
use crate::stats::quad::integrate;
use rand::Rng;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Quadrature,
    MonteCarlo,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeanRoof {
    pub method: Method,
    pub value: f64,
    pub error_bound: f64,
    /// Analytic contribution of the two cusps (Monte Carlo only).
    pub tail: f64,
    /// Subintervals used, or samples drawn.
    pub work: u64,
}

/// `int_0^{b_hi} R(a, b) db` summed over regions, for fixed `a`, using
/// `int y / (a (x a + y b)) db = ln(x a + y b) / a`.
fn inner(fan: &[(f64, f64)], lam: f64, a: f64) -> f64 {
    let q = fan.len() / 2;
    let floor = 1.0 - lam * a;
    let beta = |j: usize| {
        let (x, y) = fan[j];
        (1.0 - x * a) / y
    };
    let mut total = 0.0;
    for i in 2..q {
        let lo = beta(i - 1).max(floor);
        let hi = beta(i).min(1.0);
        if hi > lo {
            let (x, y) = fan[i];
            total += ((x * a + y * hi).ln() - (x * a + y * lo).ln()) / a;
        }
    }
    total
}

fn breakpoints(fan: &[(f64, f64)], lam: f64) -> Vec<f64> {
    let q = fan.len() / 2;
    let mut out = Vec::new();
    for &(x, y) in &fan[1..q] {
        let d = lam * y - x;
        if d.abs() > 1e-12 {
            out.push((y - 1.0) / d);
        }
        if x.abs() > 1e-12 {
            out.push((1.0 - y) / x);
        }
    }
    out.retain(|a| *a > 0.0 && *a < 1.0);
    out
}

/// Adaptive quadrature with analytic inner integrals.
pub fn mean_roof_quadrature(ctx: &HeckeContext, tol: f64) -> Result<MeanRoof> {
    let lam = lambda(ctx);
    let fan: Vec<(f64, f64)> = (0..2 * ctx.q() as i64).map(|i| ctx.fan_f64(i)).collect();
    let scale = 2.0 / lam;
    let breaks = breakpoints(&fan, lam);
    let q = integrate(|a| inner(&fan, lam, a), 0.0, 1.0, &breaks, tol / scale, 20_000)?;
    Ok(MeanRoof {
        method: Method::Quadrature,
        value: scale * q.value,
        error_bound: scale * q.error,
        tail: 0.0,
        work: q.intervals as u64,
    })
}

/// `Li_2(x) = sum x^k / k^2` for `0 <= x <= 1/2`.
pub fn dilog(x: f64) -> f64 {
    let mut term = x;
    let mut sum = 0.0f64;
    let mut k = 1.0;
    while term.abs() > 1e-18 * sum.abs().max(1e-300) {
        sum += term / (k * k);
        term *= x;
        k += 1.0;
        if k > 2000.0 {
            break;
        }
    }
    sum
}

// Width of the two cusp pieces handled analytically.
const CUSP: f64 = 0.05;

/// Monte Carlo with the cusps removed. Near `a = 0` and near `(1, 0)` the
/// roof is `1/(ab)` on `{a <= c, b > 1 - lambda a}` and
/// `{b <= c, a > 1 - lambda b}`; each piece integrates to `Li_2(lambda c)`.
/// The rest is sampled uniformly from `[c, 1] x [1 - lambda, 1]`, where the
/// roof is bounded. The reported bound is three standard errors.
pub fn mean_roof_montecarlo(ctx: &HeckeContext, n: u64, seed: u64) -> Result<MeanRoof> {
    if n < 10_000 {
        return Err(Error::InvalidArgument(format!("need at least 10000 samples, got {n}")));
    }
    let lam = lambda(ctx);
    let box_area = (1.0 - CUSP) * lam;
    let parts = run_chunks(n, seed, |rng, count| {
        let (mut s, mut s2) = (0.0f64, 0.0f64);
        for _ in 0..count {
            let a = CUSP + (1.0 - CUSP) * rng.gen::<f64>();
            let b = 1.0 - lam * rng.gen::<f64>();
            let inside = b > 1.0 - lam * a && !(b <= CUSP && a > 1.0 - lam * b);
            if inside {
                let (_, r, _) = crate::bcz::roof_f64(ctx, a, b);
                s += r;
                s2 += r * r;
            }
        }
        (s, s2)
    });
    let (s, s2) = parts.iter().fold((0.0, 0.0), |acc, p| (acc.0 + p.0, acc.1 + p.1));
    let nf = n as f64;
    let mean = s / nf;
    let var = (s2 / nf - mean * mean).max(0.0);
    let se = (var / nf).sqrt() * box_area;
    let scale = 2.0 / lam;
    let tail = scale * 2.0 * dilog(lam * CUSP);
    Ok(MeanRoof {
        method: Method::MonteCarlo,
        value: scale * box_area * mean + tail,
        error_bound: 3.0 * scale * se,
        tail,
        work: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dilog_small() {
        // Li2(1/2) = pi^2/12 - ln(2)^2/2
        let expect = std::f64::consts::PI.powi(2) / 12.0 - std::f64::consts::LN_2.powi(2) / 2.0;
        assert!((dilog(0.5) - expect).abs() < 1e-14);
    }

    #[test]
    fn classical_value() {
        let ctx = HeckeContext::new(3).unwrap();
        let m = mean_roof_quadrature(&ctx, 1e-9).unwrap();
        assert!((m.value - std::f64::consts::PI.powi(2) / 3.0).abs() < 1e-8, "{m:?}");
    }

    #[test]
    fn methods_agree_q5() {
        let ctx = HeckeContext::new(5).unwrap();
        let qd = mean_roof_quadrature(&ctx, 1e-9).unwrap();
        let mc = mean_roof_montecarlo(&ctx, 400_000, 7).unwrap();
        assert!((qd.value - mc.value).abs() <= qd.error_bound + mc.error_bound, "{qd:?} {mc:?}");
    }
}
