//! Globally adaptive Gauss-Kronrod (7/15) quadrature.

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
// Gauss weights for the odd Kronrod nodes 1, 3, 5 and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Clone, Copy, Debug)]
struct Piece {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

fn gk15(f: &impl Fn(f64) -> f64, lo: f64, hi: f64) -> Piece {
    let c = 0.5 * (lo + hi);
    let h = 0.5 * (hi - lo);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        kron += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    Piece { lo, hi, value: kron * h, error: ((kron - gauss) * h).abs() }
}

/// Result of [`integrate`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
}

/// Integrates `f` over `[lo, hi]`, splitting first at `breaks`, then
/// bisecting the worst piece until the summed error estimate is below
/// `tol` (absolute) or `max_intervals` is reached.
pub fn integrate(
    f: impl Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    breaks: &[f64],
    tol: f64,
    max_intervals: usize,
) -> Result<Quadrature> {
    if !(tol > 0.0) || !(hi > lo) {
        return Err(Error::InvalidArgument(format!("bad quadrature range [{lo}, {hi}] or tolerance {tol}")));
    }
    let mut cuts: Vec<f64> = breaks.iter().copied().filter(|&b| b > lo && b < hi).collect();
    cuts.push(lo);
    cuts.push(hi);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut pieces: Vec<Piece> = cuts.windows(2).map(|w| gk15(&f, w[0], w[1])).collect();
    loop {
        let value: f64 = pieces.iter().map(|p| p.value).sum();
        let error: f64 = pieces.iter().map(|p| p.error).sum();
        if !value.is_finite() {
            return Err(Error::NoConvergence { value, error, intervals: pieces.len() });
        }
        if error <= tol {
            return Ok(Quadrature { value, error, intervals: pieces.len() });
        }
        if pieces.len() >= max_intervals {
            return Err(Error::NoConvergence { value, error, intervals: pieces.len() });
        }
        let (worst, _) = pieces
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.error.total_cmp(&b.1.error))
            .expect("nonempty");
        let p = pieces.swap_remove(worst);
        let mid = 0.5 * (p.lo + p.hi);
        if !(mid > p.lo && mid < p.hi) {
            return Err(Error::NoConvergence { value, error, intervals: pieces.len() + 1 });
        }
        pieces.push(gk15(&f, p.lo, mid));
        pieces.push(gk15(&f, mid, p.hi));
    }
}
