//! Counting orbit vectors in dilated triangles and in the square
//! `[-tau, tau]^2`, and the uniformity of slopes.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::context::{HeckeContext, PlaneVec};
use crate::error::{Error, Result};
use crate::field::AlgNum;
use crate::sternbrocot::{enumerate_quadrant_box, enumerate_strip, ExtSlope, StripSpec};

/// Triangle with vertices `0`, `e1`, `e2`. `include[k]` says whether side
/// `k` belongs to it: side 0 is `[0, e1]`, side 1 is `[0, e2]`, side 2 is
/// `[e1, e2]`. The origin is never counted.
#[derive(Clone, Debug)]
pub struct TriangleRegion {
    e1: PlaneVec,
    e2: PlaneVec,
    include: [bool; 3],
}

impl TriangleRegion {
    pub fn new(ctx: &HeckeContext, e1: PlaneVec, e2: PlaneVec, include: [bool; 3]) -> Result<Self> {
        match ctx.sign(&ctx.wedge(&e1, &e2)) {
            0 => Err(Error::InvalidArgument("triangle edges are parallel".into())),
            s if s > 0 => Ok(TriangleRegion { e1, e2, include }),
            _ => Ok(TriangleRegion { e1: e2, e2: e1, include: [include[1], include[0], include[2]] }),
        }
    }

    pub fn area(&self, ctx: &HeckeContext) -> f64 {
        0.5 * ctx.to_f64(&ctx.wedge(&self.e1, &self.e2))
    }

    /// Exact membership of `p` in `tau` times the triangle.
    pub fn contains(&self, ctx: &HeckeContext, tau: &AlgNum, p: &PlaneVec) -> bool {
        let t1 = ctx.scale(tau, &self.e1);
        let t2 = ctx.scale(tau, &self.e2);
        let signs = [
            ctx.sign(&ctx.wedge(&t1, p)),
            ctx.sign(&ctx.wedge(p, &t2)),
            ctx.sign(&ctx.wedge(&t2.sub(&t1), &p.sub(&t1))),
        ];
        signs.iter().zip(self.include).all(|(&s, inc)| s > 0 || (s == 0 && inc))
    }

    fn extent(&self, ctx: &HeckeContext, tau: &AlgNum) -> AlgNum {
        let mut m = ctx.zero();
        for c in [&self.e1.x, &self.e1.y, &self.e2.x, &self.e2.y] {
            let c = ctx.mul(tau, c);
            let c = if ctx.sign(&c) < 0 { -c } else { c };
            if ctx.cmp(&c, &m).is_gt() {
                m = c;
            }
        }
        m
    }
}

/// The four quarter-turns of `v`.
fn rotations(v: &PlaneVec) -> [PlaneVec; 4] {
    let r1 = PlaneVec::new(-&v.y, v.x.clone());
    let r2 = v.neg();
    let r3 = PlaneVec::new(v.y.clone(), -&v.x);
    [v.clone(), r1, r2, r3]
}

/// Every orbit vector in `[-m, m]^2`, from the half-open quadrant
/// `{x > 0, y >= 0}` and its quarter-turns.
pub fn orbit_in_square(ctx: &HeckeContext, m: &AlgNum) -> Vec<PlaneVec> {
    let quadrant: Vec<PlaneVec> = enumerate_quadrant_box(ctx, m, m).into_iter().filter(|v| !v.x.is_zero()).collect();
    quadrant.iter().flat_map(rotations).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TriangleCount {
    pub count: u64,
    pub predicted: f64,
    pub area: f64,
}

/// Exact count of orbit vectors in `tau` times the triangle, against the
/// prediction `(2 / m_q) area tau^2`.
pub fn count_in_triangle(ctx: &HeckeContext, region: &TriangleRegion, tau: &AlgNum, mean_roof: f64) -> Result<TriangleCount> {
    if ctx.sign(tau) <= 0 {
        return Err(Error::InvalidArgument("tau must be positive".into()));
    }
    let m = region.extent(ctx, tau);
    let count = orbit_in_square(ctx, &m).iter().filter(|p| region.contains(ctx, tau, p)).count() as u64;
    let t = ctx.to_f64(tau);
    let area = region.area(ctx);
    Ok(TriangleCount { count, predicted: 2.0 / mean_roof * area * t * t, area })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SquareGrid {
    pub grid_n: usize,
    /// `counts[row][col]`, row 0 at the bottom.
    pub counts: Vec<Vec<u64>>,
    pub total: u64,
    pub chi2: f64,
    pub max_rel_dev: f64,
    /// Points on the centre lines of an even grid, left out of every cell.
    pub excluded_axis_points: u64,
}

impl SquareGrid {
    /// Invariance under the eight symmetries of the square.
    pub fn is_dihedral(&self) -> bool {
        let n = self.grid_n;
        let c = &self.counts;
        (0..n).all(|i| {
            (0..n).all(|j| {
                let v = c[i][j];
                v == c[j][i] && v == c[n - 1 - i][j] && v == c[i][n - 1 - j] && v == c[n - 1 - j][n - 1 - i]
            })
        })
    }
}

/// The dihedral images of `v`, without repeats.
fn dihedral_images(v: &PlaneVec) -> Vec<PlaneVec> {
    let mut set = BTreeSet::new();
    let mut out = Vec::with_capacity(8);
    for r in rotations(v).iter().chain(rotations(&v.swap()).iter()) {
        if set.insert(format!("{r}")) {
            out.push(r.clone());
        }
    }
    out
}

/// Cell of coordinate `c` on an `n`-cell grid of `[-tau, tau]`. Points on a
/// cell boundary go to the cell nearer the centre; `None` on the centre line
/// of an even grid.
fn cell(ctx: &HeckeContext, c: &AlgNum, tau: &AlgNum, two_tau: &AlgNum, n: usize) -> Result<Option<usize>> {
    let num = (c + tau).scale_int(&(n as i64).into());
    let cf = ctx.to_f64(&num) / ctx.to_f64(two_tau);
    let near = cf.round();
    let (k, on_edge) = if (cf - near).abs() > 1e-9 {
        (cf.floor() as i64, false)
    } else {
        let k = ctx.floor_ratio(&num, two_tau)?;
        let k: i64 = i64::try_from(k).map_err(|_| Error::Internal("cell index overflow".into()))?;
        let exact = (num - two_tau.scale_int(&k.into())).is_zero();
        (k, exact)
    };
    let n = n as i64;
    let idx = if !on_edge {
        k
    } else if 2 * k == n {
        return Ok(None);
    } else if 2 * k < n {
        k
    } else {
        k - 1
    };
    Ok(Some(idx.clamp(0, n - 1) as usize))
}

/// Bins `Lambda_q / tau` inside `[-1, 1]^2` on an `n x n` grid. The orbit
/// is generated from slopes in `[0, 1]` and the symmetries of the square.
pub fn square_equidistribution(ctx: &HeckeContext, tau: &AlgNum, grid_n: usize) -> Result<SquareGrid> {
    if ctx.cmp(tau, &ctx.one()).is_lt() {
        return Err(Error::InvalidArgument("tau must be at least 1".into()));
    }
    if grid_n < 2 {
        return Err(Error::InvalidArgument("grid must have at least 2 cells per side".into()));
    }
    let spec = StripSpec::new(ctx, tau.clone(), ExtSlope::Finite(ctx.zero()), ExtSlope::Finite(ctx.one()))?;
    let octant = enumerate_strip(ctx, &spec)?;
    let two_tau = tau + tau;
    let mut counts = vec![vec![0u64; grid_n]; grid_n];
    let mut excluded = 0;
    let mut total = 0;
    for v in &octant {
        for p in dihedral_images(v) {
            let cx = cell(ctx, &p.x, tau, &two_tau, grid_n)?;
            let cy = cell(ctx, &p.y, tau, &two_tau, grid_n)?;
            match (cx, cy) {
                (Some(i), Some(j)) => {
                    counts[j][i] += 1;
                    total += 1;
                }
                _ => excluded += 1,
            }
        }
    }
    let expect = total as f64 / (grid_n * grid_n) as f64;
    let mut chi2 = 0.0;
    let mut max_rel_dev: f64 = 0.0;
    for row in &counts {
        for &c in row {
            let d = c as f64 - expect;
            chi2 += d * d / expect;
            max_rel_dev = max_rel_dev.max(d.abs() / expect);
        }
    }
    Ok(SquareGrid { grid_n, counts, total, chi2, max_rel_dev, excluded_axis_points: excluded })
}

/// Kolmogorov-Smirnov distance between the empirical law of `values`
/// (rescaled from `[lo, hi]`) and the uniform law.
pub fn ks_uniform(values: &[f64], lo: f64, hi: f64) -> f64 {
    let mut v: Vec<f64> = values.iter().map(|x| (x - lo) / (hi - lo)).collect();
    v.sort_by(f64::total_cmp);
    let n = v.len() as f64;
    v.iter()
        .enumerate()
        .map(|(i, &x)| ((i as f64 + 1.0) / n - x).max(x - i as f64 / n))
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_triangle() {
        let ctx = HeckeContext::new(3).unwrap();
        let region = TriangleRegion::new(&ctx, ctx.vec(1, 0), ctx.vec(1, 1), [true; 3]).unwrap();
        let c = count_in_triangle(&ctx, &region, &ctx.int(10), std::f64::consts::PI.powi(2) / 3.0).unwrap();
        // Farey fractions of order 10
        assert_eq!(c.count, 33);
        let open = TriangleRegion::new(&ctx, ctx.vec(1, 0), ctx.vec(1, 1), [false, false, true]).unwrap();
        assert_eq!(count_in_triangle(&ctx, &open, &ctx.int(10), 1.0).unwrap().count, 31);
        assert!(TriangleRegion::new(&ctx, ctx.vec(1, 1), ctx.vec(2, 2), [true; 3]).is_err());
    }

    #[test]
    fn swapped_edges() {
        let ctx = HeckeContext::new(3).unwrap();
        let a = TriangleRegion::new(&ctx, ctx.vec(1, 1), ctx.vec(1, 0), [true, false, true]).unwrap();
        let b = TriangleRegion::new(&ctx, ctx.vec(1, 0), ctx.vec(1, 1), [false, true, true]).unwrap();
        let t = ctx.int(12);
        assert_eq!(count_in_triangle(&ctx, &a, &t, 1.0).unwrap(), count_in_triangle(&ctx, &b, &t, 1.0).unwrap());
    }

    #[test]
    fn small_square() {
        let ctx = HeckeContext::new(5).unwrap();
        let even = square_equidistribution(&ctx, &ctx.int(6), 4).unwrap();
        assert!(even.is_dihedral());
        assert_eq!(even.excluded_axis_points, 4);
        let odd = square_equidistribution(&ctx, &ctx.int(6), 3).unwrap();
        assert!(odd.is_dihedral());
        assert_eq!(odd.excluded_axis_points, 0);
        assert_eq!(odd.total, even.total + 4);
        assert_eq!(odd.total as usize, orbit_in_square(&ctx, &ctx.int(6)).len());
    }

    #[test]
    fn ks_of_grid() {
        let v: Vec<f64> = (0..100).map(|i| (i as f64 + 0.5) / 100.0).collect();
        assert!((ks_uniform(&v, 0.0, 1.0) - 0.005).abs() < 1e-12);
    }
}
