//! Bogoliubov spectrum, retarded Green's function and photoluminescence of the
//! homogeneous open condensate.
//!
//! All energies are rates (rad/s); `ω` is measured from the chemical potential.

use ndarray::Array2;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::constants::thermal_rate;
use crate::error::{Error, Result};
use crate::params::PhysicalParams;

/// Intensities on a rectangular `(ω, k)` grid. `values[[i, j]]` belongs to
/// `omega_axis[i]`, `k_axis[j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumGrid {
    /// In-plane wavenumber (1/m).
    pub k_axis: Vec<f64>,
    /// Angular frequency relative to μ (rad/s).
    pub omega_axis: Vec<f64>,
    pub values: Array2<f64>,
}

fn strictly_increasing(name: &str, axis: &[f64]) -> Result<()> {
    if axis.is_empty() {
        return Err(Error::InvalidGrid(format!("{name} axis is empty")));
    }
    if axis.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidGrid(format!("{name} axis has non-finite entries")));
    }
    if axis.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidGrid(format!("{name} axis must be strictly increasing")));
    }
    Ok(())
}

impl SpectrumGrid {
    pub fn new(k_axis: Vec<f64>, omega_axis: Vec<f64>, values: Array2<f64>) -> Result<Self> {
        strictly_increasing("k", &k_axis)?;
        strictly_increasing("omega", &omega_axis)?;
        if values.dim() != (omega_axis.len(), k_axis.len()) {
            return Err(Error::InvalidGrid(format!(
                "values are {:?}, axes need ({}, {})",
                values.dim(),
                omega_axis.len(),
                k_axis.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidGrid("values must be finite".into()));
        }
        Ok(Self { k_axis, omega_axis, values: values.as_standard_layout().into_owned() })
    }

    pub fn zeros(k_axis: Vec<f64>, omega_axis: Vec<f64>) -> Result<Self> {
        let dim = (omega_axis.len(), k_axis.len());
        Self::new(k_axis, omega_axis, Array2::zeros(dim))
    }

    pub fn nk(&self) -> usize {
        self.k_axis.len()
    }

    pub fn nomega(&self) -> usize {
        self.omega_axis.len()
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    /// Sum of `value · Δk · Δω` with midpoint cell widths.
    pub fn integral(&self) -> f64 {
        let wk = cell_widths(&self.k_axis);
        let ww = cell_widths(&self.omega_axis);
        self.values
            .indexed_iter()
            .map(|((i, j), v)| v * ww[i] * wk[j])
            .sum()
    }

    /// Copy scaled to a peak of 1 (unchanged if the grid is all zero).
    pub fn normalized(&self) -> Self {
        let m = self.max();
        let mut out = self.clone();
        if m > 0.0 {
            out.values.mapv_inplace(|v| v / m);
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.values.column(j).to_vec()
    }
}

/// Width of the cell centred on each sample: half-way to each neighbour, and
/// symmetric about the end samples.
pub fn cell_widths(axis: &[f64]) -> Vec<f64> {
    let n = axis.len();
    if n < 2 {
        return vec![1.0; n];
    }
    (0..n)
        .map(|i| match i {
            0 => axis[1] - axis[0],
            _ if i + 1 == n => axis[n - 1] - axis[n - 2],
            _ => 0.5 * (axis[i + 1] - axis[i - 1]),
        })
        .collect()
}

/// `n` evenly spaced points from `a` to `b` inclusive.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    let h = (b - a) / (n - 1) as f64;
    (0..n).map(|i| if i + 1 == n { b } else { a + h * i as f64 }).collect()
}

/// `n` points on `[−max, max]` with `axis[n−1−i] == −axis[i]` bit for bit.
pub fn symmetric_axis(max: f64, n: usize) -> Vec<f64> {
    let d = (n - 1) as f64;
    (0..n)
        .map(|i| {
            let c = 2.0 * i as f64 - d;
            if c < 0.0 {
                -(max * -c / d)
            } else {
                max * c / d
            }
        })
        .collect()
}

/// Default `(k, ω)` axes: `nk` points over `±k_max` where `ε(k_max) = 10μ`,
/// and `nomega` points over `±5 ξ(k_max)`. Without interactions the thermal
/// rate (capped at 20 γ) sets the scale instead of μ.
pub fn default_axes(p: &PhysicalParams, mu: f64, gamma: f64, nk: usize, nomega: usize) -> (Vec<f64>, Vec<f64>) {
    let scale = if mu > 0.0 { mu } else { thermal_rate(p.temperature).min(20.0 * gamma.max(1.0)) };
    let eps_max = 10.0 * scale;
    let k_max = (eps_max / p.hbar_over_2m()).sqrt();
    let xi_max = (eps_max * (eps_max + 2.0 * mu.max(0.0))).sqrt();
    (symmetric_axis(k_max, nk), symmetric_axis(5.0 * xi_max, nomega))
}

/// Bogoliubov quantities at one wavenumber.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BogoliubovPoint {
    pub eps_k: f64,
    pub xi_k: f64,
    pub u2: f64,
    pub v2: f64,
}

/// `ξ = √(ε(ε+2μ))`, `u² = 1 + v²`, `v² = μ² / (2ξ(ε+μ+ξ))` (the cancellation
/// free form of `(ε+μ−ξ)/2ξ`). At `ξ = 0` the weights are infinite.
pub fn bogoliubov(eps_k: f64, mu: f64) -> BogoliubovPoint {
    let xi_k = (eps_k * (eps_k + 2.0 * mu)).max(0.0).sqrt();
    let v2 = if mu == 0.0 {
        0.0
    } else if xi_k == 0.0 {
        f64::INFINITY
    } else {
        mu * mu / (2.0 * xi_k * (eps_k + mu + xi_k))
    };
    BogoliubovPoint { eps_k, xi_k, u2: 1.0 + v2, v2 }
}

/// 2×2 retarded Green's function with a flag for exact real poles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreenMatrix {
    pub m: [[Complex64; 2]; 2],
    pub pole_hit: bool,
}

/// The un-inverted Bogoliubov operator `B` with `G = B⁻¹`.
pub fn bogoliubov_operator(eps: f64, omega: f64, mu: f64, gamma: f64) -> [[Complex64; 2]; 2] {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    [
        [c(omega - eps - mu, gamma), c(-mu, gamma)],
        [c(-mu, -gamma), c(-omega - eps - mu, -gamma)],
    ]
}

/// Retarded Green's function at `(ε_k, ω)`:
/// `G = [[μ+ε+ω+iγ, −μ+iγ], [−μ−iγ, μ+ε−ω−iγ]] / (ω(ω+2iγ) − ε(ε+2μ))`.
///
/// With `γ = 0` and `ω = ±ξ` the denominator vanishes; components come back as
/// signed infinities and `pole_hit` is set.
pub fn green_from_eps(eps: f64, omega: f64, mu: f64, gamma: f64) -> GreenMatrix {
    let num = [
        [Complex64::new(mu + eps + omega, gamma), Complex64::new(-mu, gamma)],
        [Complex64::new(-mu, -gamma), Complex64::new(mu + eps - omega, -gamma)],
    ];
    let det = Complex64::new(omega * omega - eps * (eps + 2.0 * mu), 2.0 * gamma * omega);
    if det.re == 0.0 && det.im == 0.0 {
        let inf = |z: Complex64| {
            let part = |x: f64| if x == 0.0 { 0.0 } else { x.signum() * f64::INFINITY };
            Complex64::new(part(z.re), part(z.im))
        };
        return GreenMatrix {
            m: [[inf(num[0][0]), inf(num[0][1])], [inf(num[1][0]), inf(num[1][1])]],
            pole_hit: true,
        };
    }
    let inv = det.inv();
    GreenMatrix {
        m: [[num[0][0] * inv, num[0][1] * inv], [num[1][0] * inv, num[1][1] * inv]],
        pole_hit: false,
    }
}

pub fn green_retarded(k: f64, omega: f64, mu: f64, gamma_net: f64, p: &PhysicalParams) -> GreenMatrix {
    green_from_eps(p.kinetic_rate(k), omega, mu, gamma_net)
}

/// `W = −2 Im G¹¹ = 2γ(ω+ε)(ω+ε+2μ) / |ω(ω+2iγ) − ε(ε+2μ)|²` (s).
/// Positive on the particle branch, negative on the ghost branch.
pub fn weight_from_eps(eps: f64, omega: f64, mu: f64, gamma: f64) -> f64 {
    let a = omega * omega - eps * (eps + 2.0 * mu);
    let b = 2.0 * gamma * omega;
    let den = a * a + b * b;
    if den == 0.0 {
        return 0.0;
    }
    2.0 * gamma * (omega + eps) * (omega + eps + 2.0 * mu) / den
}

pub fn spectral_weight_open(k: f64, omega: f64, mu: f64, gamma_net: f64, p: &PhysicalParams) -> Result<f64> {
    let g = green_retarded(k, omega, mu, gamma_net, p);
    if g.pole_hit {
        return Err(Error::InvalidInput(format!("real pole of the Green's function at k={k:e}, omega={omega:e}")));
    }
    Ok(-2.0 * g.m[0][0].im)
}

/// `1/(e^{ω/θ} − 1)` with `θ = k_B T/ħ`.
pub fn bose(omega: f64, theta: f64) -> f64 {
    1.0 / (omega / theta).exp_m1()
}

/// Unclamped open-model photoluminescence
/// `4 n_B γ(ε+ω)(ε+2μ+ω) / [4γ²ω² + (ε²+2εμ−ω²)²]`; negative for
/// `−ε < ω < 0`, where the frequency independent rates break down.
pub fn pl_open_point(eps: f64, omega: f64, mu: f64, gamma: f64, theta: f64) -> f64 {
    2.0 * bose(omega, theta) * weight_from_eps(eps, omega, mu, gamma)
}

fn omega_zero_spacing(axis: &[f64], i: usize) -> f64 {
    let left = if i > 0 { axis[i] - axis[i - 1] } else { f64::INFINITY };
    let right = if i + 1 < axis.len() { axis[i + 1] - axis[i] } else { f64::INFINITY };
    let d = left.min(right);
    if d.is_finite() {
        d
    } else {
        1.0
    }
}

/// Open-model photoluminescence on a grid.
///
/// A sample at exactly `ω = 0` is replaced by the mean of the values at
/// `±Δω/2`; the coherent condensate line itself is not part of the output.
/// Cells where the formula goes negative are set to zero.
pub fn pl_open(
    k_axis: &[f64],
    omega_axis: &[f64],
    p: &PhysicalParams,
    mu: f64,
    gamma_net: f64,
    temperature: f64,
) -> Result<SpectrumGrid> {
    if !(temperature > 0.0) {
        return Err(Error::param("temperature", "must be > 0"));
    }
    if !(gamma_net > 0.0) {
        return Err(Error::param("gamma_net", "open-model spectrum needs gamma_net > 0"));
    }
    strictly_increasing("k", k_axis)?;
    strictly_increasing("omega", omega_axis)?;
    let theta = thermal_rate(temperature);
    let eps: Vec<f64> = k_axis.iter().map(|&k| p.kinetic_rate(k)).collect();
    let nk = k_axis.len();
    let mut values = vec![0.0; omega_axis.len() * nk];
    values.par_chunks_mut(nk).enumerate().for_each(|(i, row)| {
        let w = omega_axis[i];
        for (cell, &e) in row.iter_mut().zip(&eps) {
            let v = if w == 0.0 {
                let h = 0.5 * omega_zero_spacing(omega_axis, i);
                0.5 * (pl_open_point(e, -h, mu, gamma_net, theta) + pl_open_point(e, h, mu, gamma_net, theta))
            } else {
                pl_open_point(e, w, mu, gamma_net, theta)
            };
            *cell = v.max(0.0);
        }
    });
    SpectrumGrid::new(
        k_axis.to_vec(),
        omega_axis.to_vec(),
        Array2::from_shape_vec((omega_axis.len(), nk), values).expect("shape"),
    )
}

/// Peak frequency per `k` column; `None` where no interior maximum exists.
#[derive(Debug, Clone, PartialEq)]
pub struct DispersionCurve {
    pub k: Vec<f64>,
    pub omega_peak: Vec<Option<f64>>,
}

impl DispersionCurve {
    pub fn flagged(&self) -> usize {
        self.omega_peak.iter().filter(|v| v.is_none()).count()
    }
}

/// Vertex of the parabola through three points.
pub fn parabolic_vertex(x: [f64; 3], y: [f64; 3]) -> f64 {
    let d1 = (y[1] - y[0]) / (x[1] - x[0]);
    let d2 = (y[2] - y[1]) / (x[2] - x[1]);
    let curv = (d2 - d1) / (x[2] - x[0]);
    if curv >= 0.0 {
        return x[1];
    }
    // y = y1 + s(x−x1) + curv(x−x1)(x−x0) with s = d1
    let v = 0.5 * (x[0] + x[1]) - d1 / (2.0 * curv);
    v.clamp(x[0], x[2])
}

/// Ridge extraction: in every column, the strongest local maximum at `ω > 0`
/// refined by 3-point parabolic interpolation.
///
/// The first positive-frequency sample and the last sample are not eligible,
/// so the Bose divergence at `ω → 0⁺` is not mistaken for a peak. Resolving
/// a line needs several samples across its width.
pub fn dispersion_extract(grid: &SpectrumGrid) -> DispersionCurve {
    let w = &grid.omega_axis;
    let first_pos = w.iter().position(|&x| x > 0.0);
    let omega_peak = (0..grid.nk())
        .map(|j| {
            let start = first_pos? + 1;
            let col = grid.values.column(j);
            let mut best: Option<usize> = None;
            for i in start.max(1)..w.len().saturating_sub(1) {
                let y = col[i];
                if y > 0.0 && y > col[i - 1] && y >= col[i + 1] && best.map_or(true, |b| y > col[b]) {
                    best = Some(i);
                }
            }
            best.map(|i| parabolic_vertex([w[i - 1], w[i], w[i + 1]], [col[i - 1], col[i], col[i + 1]]))
        })
        .collect();
    DispersionCurve { k: grid.k_axis.clone(), omega_peak }
}
