//! Globally adaptive Gauss-Legendre quadrature on a piecewise interval.

use crate::error::{Error, Result};

// 8-point rule on [-1, 1], positive half.
const NODES: [f64; 4] = [
    0.183_434_642_495_649_8,
    0.525_532_409_916_329,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_3,
];
const WEIGHTS: [f64; 4] = [
    0.362_683_783_378_362,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_5,
    0.101_228_536_290_376_3,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    /// Absolute floor, relative to the magnitude of the first coarse estimate.
    pub abs_floor: f64,
    /// Absolute error that is always acceptable.
    pub abs_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-4,
            abs_floor: 1e-12,
            abs_tol: 0.0,
            max_intervals: 4000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
}

/// Fixed 8-point rule on `[a, b]`.
pub fn gauss8<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut s = 0.0;
    for (x, w) in NODES.iter().zip(WEIGHTS.iter()) {
        s += w * (f(c - h * x) + f(c + h * x));
    }
    s * h
}

/// Composite rule with `panels` equal panels per segment between breakpoints.
pub fn integrate_fixed<F: Fn(f64) -> f64>(f: &F, breakpoints: &[f64], panels: usize) -> f64 {
    let mut total = 0.0;
    for seg in breakpoints.windows(2) {
        let h = (seg[1] - seg[0]) / panels as f64;
        for i in 0..panels {
            let a = seg[0] + h * i as f64;
            total += gauss8(f, a, a + h);
        }
    }
    total
}

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn piece<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Piece {
    let m = 0.5 * (a + b);
    let whole = gauss8(f, a, b);
    let halves = gauss8(f, a, m) + gauss8(f, m, b);
    Piece {
        a,
        b,
        value: halves,
        error: (whole - halves).abs(),
    }
}

/// Integrates `f` over `[breakpoints[0], breakpoints[last]]`.
///
/// Breakpoints must be non-decreasing; repeated points are skipped. Intervals
/// with the largest error estimate are bisected until the summed estimate
/// falls below `rel_tol · |value|` (or one of the absolute floors).
pub fn integrate<F: Fn(f64) -> f64>(f: &F, breakpoints: &[f64], spec: &QuadratureSpec) -> Result<QuadResult> {
    if breakpoints.len() < 2 {
        return Err(Error::InvalidInput("quadrature needs at least two breakpoints".into()));
    }
    if breakpoints.windows(2).any(|w| !(w[1] >= w[0])) {
        return Err(Error::InvalidInput("quadrature breakpoints must be sorted".into()));
    }
    let mut pieces: Vec<Piece> = breakpoints
        .windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| piece(f, w[0], w[1]))
        .collect();
    if pieces.is_empty() {
        return Ok(QuadResult { value: 0.0, error: 0.0, intervals: 0 });
    }
    let scale = pieces.iter().map(|p| p.value.abs()).sum::<f64>();
    let floor = (spec.abs_floor * scale).max(spec.abs_tol);
    loop {
        let value: f64 = pieces.iter().map(|p| p.value).sum();
        let error: f64 = pieces.iter().map(|p| p.error).sum();
        if !value.is_finite() || !error.is_finite() {
            return Err(Error::QuadratureNotConverged {
                achieved: f64::INFINITY,
                requested: spec.rel_tol,
            });
        }
        let target = (spec.rel_tol * value.abs()).max(floor);
        if error <= target || error == 0.0 {
            return Ok(QuadResult { value, error, intervals: pieces.len() });
        }
        if pieces.len() >= spec.max_intervals {
            let achieved = if value != 0.0 { error / value.abs() } else { f64::INFINITY };
            return Err(Error::QuadratureNotConverged {
                achieved,
                requested: spec.rel_tol,
            });
        }
        let (worst, _) = pieces
            .iter()
            .enumerate()
            .fold((0, -1.0), |(bi, be), (i, p)| if p.error > be { (i, p.error) } else { (bi, be) });
        let Piece { a, b, .. } = pieces.swap_remove(worst);
        let m = 0.5 * (a + b);
        if !(m > a && m < b) {
            let achieved = error / value.abs().max(f64::MIN_POSITIVE);
            return Err(Error::QuadratureNotConverged { achieved, requested: spec.rel_tol });
        }
        pieces.push(piece(f, a, m));
        pieces.push(piece(f, m, b));
    }
}
