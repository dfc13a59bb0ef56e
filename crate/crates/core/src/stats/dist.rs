//! Tail distributions `t -> P(stat >= t)` of the slope gap and of the
//! distance between consecutive Ford circle centres, both scaled by
//! `tau^2`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bcz::roof_f64;
use crate::context::HeckeContext;
use crate::error::{Error, Result};
use crate::field::AlgNum;
use crate::nextterm::{sweep_records, SweepRecord};
use crate::stats::mc::{lambda, run_chunks, sample_triangle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Empirical,
    Limiting,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Statistic {
    SlopeGap,
    CentDist,
}

impl Statistic {
    pub fn name(self) -> &'static str {
        match self {
            Statistic::SlopeGap => "slope_gap",
            Statistic::CentDist => "cent_dist",
        }
    }

    /// Value from a representative `(a, b)` (floating point).
    pub fn from_point(self, ctx: &HeckeContext, a: f64, b: f64) -> f64 {
        let (_, r, l1) = roof_f64(ctx, a, b);
        match self {
            Statistic::SlopeGap => r,
            Statistic::CentDist => cent_dist(r, a, l1),
        }
    }

    pub fn from_record(self, rec: &SweepRecord) -> f64 {
        match self {
            Statistic::SlopeGap => rec.roof,
            Statistic::CentDist => rec.cent_dist(),
        }
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Statistic {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "slope_gap" => Ok(Statistic::SlopeGap),
            "cent_dist" => Ok(Statistic::CentDist),
            _ => Err(Error::Parse { what: "statistic", input: s.into() }),
        }
    }
}

/// `sqrt(R^2 + (1/L1^2 - 1/L0^2)^2 / 4)`.
pub fn cent_dist(roof: f64, l0: f64, l1: f64) -> f64 {
    let d = 1.0 / (l1 * l1) - 1.0 / (l0 * l0);
    (roof * roof + 0.25 * d * d).sqrt()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistPoint {
    pub t: f64,
    pub value: f64,
    pub stderr: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistTable {
    pub kind: Kind,
    pub statistic: Statistic,
    pub points: Vec<DistPoint>,
    pub meta: BTreeMap<String, String>,
}

impl DistTable {
    pub fn is_monotone(&self) -> bool {
        self.points.windows(2).all(|w| w[1].value <= w[0].value)
    }

    pub fn value_at(&self, t: f64) -> Option<f64> {
        self.points.iter().find(|p| p.t == t).map(|p| p.value)
    }
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() || grid.iter().any(|t| !t.is_finite() || *t < 0.0) {
        return Err(Error::InvalidArgument("t grid must be nonempty, finite and nonnegative".into()));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument("t grid must be strictly increasing".into()));
    }
    Ok(())
}

/// `counts[j] = #{v : v >= grid[j]}` from a histogram of positions.
fn tail_counts(grid: &[f64], hist: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; grid.len()];
    let mut acc = 0;
    for j in (0..grid.len()).rev() {
        acc += hist[j];
        out[j] = acc;
    }
    out
}

/// Adds `v` to the bucket of the largest grid point `<= v`.
fn bucket(grid: &[f64], hist: &mut [u64], v: f64) {
    let k = grid.partition_point(|t| *t <= v);
    if k > 0 {
        hist[k - 1] += 1;
    }
}

fn table(kind: Kind, statistic: Statistic, grid: &[f64], tails: &[u64], n: u64, meta: BTreeMap<String, String>) -> DistTable {
    let nf = n as f64;
    let points = grid
        .iter()
        .zip(tails)
        .map(|(&t, &c)| {
            let p = c as f64 / nf;
            DistPoint { t, value: p, stderr: (p * (1.0 - p) / nf).sqrt() }
        })
        .collect();
    DistTable { kind, statistic, points, meta }
}

/// Monte Carlo estimate of the limiting tail `m_q(1_{stat >= t})`.
pub fn limiting_dist(
    ctx: &HeckeContext,
    statistic: Statistic,
    grid: &[f64],
    n_samples: u64,
    seed: u64,
) -> Result<DistTable> {
    check_grid(grid)?;
    if n_samples < 10_000 {
        return Err(Error::InvalidArgument(format!("need at least 10000 samples, got {n_samples}")));
    }
    let lam = lambda(ctx);
    let hists = run_chunks(n_samples, seed, |rng, count| {
        let mut hist = vec![0u64; grid.len()];
        for _ in 0..count {
            let (a, b) = sample_triangle(rng, lam);
            bucket(grid, &mut hist, statistic.from_point(ctx, a, b));
        }
        hist
    });
    let mut hist = vec![0u64; grid.len()];
    for h in &hists {
        for (acc, c) in hist.iter_mut().zip(h) {
            *acc += c;
        }
    }
    let mut meta = BTreeMap::new();
    meta.insert("q".into(), ctx.q().to_string());
    meta.insert("samples".into(), n_samples.to_string());
    meta.insert("seed".into(), seed.to_string());
    meta.insert("max_stderr".into(), format!("{:.3e}", 0.5 / (n_samples as f64).sqrt()));
    Ok(table(Kind::Limiting, statistic, grid, &tail_counts(grid, &hist), n_samples, meta))
}

/// Tail table of the scaled statistic along a sweep.
pub fn empirical_from_records(
    ctx: &HeckeContext,
    statistic: Statistic,
    records: &[SweepRecord],
    grid: &[f64],
    tau: &str,
) -> Result<DistTable> {
    check_grid(grid)?;
    if records.is_empty() {
        return Err(Error::EmptySweep("no vectors in the sweep".into()));
    }
    let mut hist = vec![0u64; grid.len()];
    for r in records {
        bucket(grid, &mut hist, statistic.from_record(r));
    }
    let mut meta = BTreeMap::new();
    meta.insert("q".into(), ctx.q().to_string());
    meta.insert("tau".into(), tau.to_string());
    meta.insert("vectors".into(), records.len().to_string());
    Ok(table(Kind::Empirical, statistic, grid, &tail_counts(grid, &hist), records.len() as u64, meta))
}

pub fn empirical_dist(
    ctx: &HeckeContext,
    statistic: Statistic,
    tau: &AlgNum,
    lo: &AlgNum,
    hi: &AlgNum,
    grid: &[f64],
) -> Result<DistTable> {
    if ctx.cmp(tau, &ctx.one()).is_lt() {
        return Err(Error::InvalidArgument("tau must be at least 1".into()));
    }
    let records = sweep_records(ctx, tau, lo, hi)?;
    let mut t = empirical_from_records(ctx, statistic, &records, grid, &tau.to_string())?;
    t.meta.insert("interval".into(), format!("[{lo}, {hi}]"));
    Ok(t)
}

/// Largest difference between two tables on a shared grid.
pub fn sup_distance(a: &DistTable, b: &DistTable) -> Result<f64> {
    if a.points.len() != b.points.len() || a.points.iter().zip(&b.points).any(|(p, q)| p.t != q.t) {
        return Err(Error::InvalidArgument("tables use different grids".into()));
    }
    Ok(a.points.iter().zip(&b.points).map(|(p, q)| (p.value - q.value).abs()).fold(0.0, f64::max))
}

/// Parses `start:step:stop` (inclusive) or a comma list.
pub fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let bad = || Error::Parse { what: "t grid", input: s.into() };
    let parts: Vec<&str> = s.split(':').collect();
    let grid: Vec<f64> = if parts.len() == 3 {
        let v: Vec<f64> = parts.iter().map(|p| p.trim().parse::<f64>().map_err(|_| bad())).collect::<Result<_>>()?;
        let (start, step, stop) = (v[0], v[1], v[2]);
        if !(step > 0.0) || stop < start {
            return Err(bad());
        }
        let n = ((stop - start) / step + 1e-9).floor() as usize;
        (0..=n).map(|k| start + k as f64 * step).collect()
    } else {
        s.split(',').map(|p| p.trim().parse::<f64>().map_err(|_| bad())).collect::<Result<_>>()?
    };
    check_grid(&grid)?;
    Ok(grid)
}
