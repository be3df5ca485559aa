//! Forward model of the angle-resolved spectrometer: resolution budget,
//! Gaussian instrument function and camera pixelation/quantization.
//!
//! The optical train is objective (`f_obj`) → slit (`d_slit`) → cylindrical
//! telescope (`M_y`) → grating (period `d_grating`) → imaging lens (`f_im`) →
//! camera. Momentum is imaged along x, energy is dispersed along y.

use std::f64::consts::PI;

use log::warn;
use ndarray::Array2;
use rayon::prelude::*;

use crate::constants::{two_pi, C};
use crate::error::{Error, Result};
use crate::open_spectrum::{cell_widths, SpectrumGrid};
use crate::params::PhysicalParams;

/// Reference figures for the default optics, reported next to the
/// computed budget.
pub mod reference {
    /// Momentum resolution (1/m).
    pub const DELTA_K: f64 = 1.3e4;
    /// Momentum-axis camera pixel (m).
    pub const PX_MOMENTUM: f64 = 180e-6;
    /// Wavelength resolution (m).
    pub const DELTA_LAMBDA: f64 = 0.04e-9;
    /// Energy resolution as a frequency (Hz).
    pub const DELTA_NU: f64 = 30e9;
    /// Energy-axis camera pixel (m).
    pub const PX_ENERGY: f64 = 4e-6;
    pub const GMIN_MOMENTUM: f64 = 2e-10;
    pub const GMIN_ENERGY: f64 = 2e-5;
    /// With a 1 GHz Fabry-Perot spectrometer.
    pub const GMIN_FABRY_PEROT: f64 = 1e-6;
}

#[derive(Debug, Clone, PartialEq)]
pub struct InstrumentConfig {
    /// Objective focal length (m).
    pub f_obj: f64,
    /// Objective-to-camera propagation distance (m).
    pub l_prop: f64,
    /// Slit width (m).
    pub d_slit: f64,
    /// Cylindrical telescope magnification.
    pub m_y: f64,
    /// Grating period (m).
    pub d_grating: f64,
    /// Imaging lens focal length (m).
    pub f_im: f64,
    /// Camera pixel along k (m).
    pub px_momentum: f64,
    /// Camera pixel along energy (m).
    pub px_energy: f64,
    pub bit_depth: u32,
    /// Saturation level as a fraction of the grid peak: input at
    /// `full_well_fraction × peak` reads full scale, anything above clips.
    pub full_well_fraction: f64,
    /// Replaces the grating energy resolution (rad/s), e.g. a Fabry-Perot linewidth.
    pub delta_eps_override: Option<f64>,
}

impl Default for InstrumentConfig {
    fn default() -> Self {
        Self {
            f_obj: 0.2,
            l_prop: 0.3,
            d_slit: 240e-6,
            m_y: 75.0,
            d_grating: 1.0 / 900e3,
            f_im: 0.05,
            px_momentum: 180e-6,
            px_energy: 4e-6,
            bit_depth: 12,
            full_well_fraction: 1.0,
            delta_eps_override: None,
        }
    }
}

impl InstrumentConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("f_obj", self.f_obj),
            ("l_prop", self.l_prop),
            ("d_slit", self.d_slit),
            ("d_grating", self.d_grating),
            ("f_im", self.f_im),
            ("px_momentum", self.px_momentum),
            ("px_energy", self.px_energy),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::param(name, "must be a positive length"));
            }
        }
        if !(self.m_y >= 1.0 && self.m_y.is_finite()) {
            return Err(Error::param("m_y", "must be >= 1"));
        }
        if ![8, 12, 16].contains(&self.bit_depth) {
            return Err(Error::param("bit_depth", "must be 8, 12 or 16"));
        }
        if !(self.full_well_fraction > 0.0 && self.full_well_fraction <= 1.0) {
            return Err(Error::param("full_well_fraction", "must lie in (0, 1]"));
        }
        if let Some(d) = self.delta_eps_override {
            if !(d > 0.0 && d.is_finite()) {
                return Err(Error::param("delta_eps_override", "must be > 0"));
            }
        }
        Ok(())
    }

    /// Beam size on the grating, `D = d_slit · M_y` (m).
    pub fn aperture(&self) -> f64 {
        self.d_slit * self.m_y
    }

    /// Largest camera count.
    pub fn full_scale(&self) -> f64 {
        ((1u64 << self.bit_depth) - 1) as f64
    }
}

/// Camera-plane displacement `x = n_L f_obj k / k₀` (m).
pub fn k_to_screen(k: f64, cfg: &InstrumentConfig, p: &PhysicalParams) -> f64 {
    let s = p.n_l * k / p.k0();
    if s.abs() >= 1.0 {
        warn!("k = {k:e} 1/m is beyond the collection cone of the objective");
    } else if s != 0.0 {
        let exact = s / (1.0 - s * s).sqrt();
        if (exact / s - 1.0).abs() > 0.01 {
            warn!("small-angle mapping off by {:.1}% at k = {k:e} 1/m", 100.0 * (exact / s - 1.0));
        }
    }
    cfg.f_obj * s
}

/// Diffraction-limited momentum resolution `δ_k = (2/f_obj)√(π L_prop/λ)`
/// and the matching camera pixel `√(L_prop λ/π)`.
///
/// Both sides of the balance are external angles, which do not depend on the
/// refractive index of the cavity medium, so `n_L` does not appear.
pub fn momentum_resolution(cfg: &InstrumentConfig, p: &PhysicalParams) -> (f64, f64) {
    let lambda = p.lambda_vac;
    let delta_k = 2.0 / cfg.f_obj * (PI * cfg.l_prop / lambda).sqrt();
    let px_opt = (cfg.l_prop * lambda / PI).sqrt();
    (delta_k, px_opt)
}

/// `δλ = λ d_grating / D` (m) and `δε = 2πc δλ/λ²` (rad/s).
pub fn energy_resolution(cfg: &InstrumentConfig, p: &PhysicalParams) -> Result<(f64, f64)> {
    let d = cfg.aperture();
    if d <= cfg.d_grating {
        return Err(Error::param("d_slit", "beam on the grating must cover more than one grating line"));
    }
    let lambda = p.lambda_vac;
    let delta_lambda = lambda * cfg.d_grating / d;
    Ok((delta_lambda, 2.0 * PI * C * delta_lambda / (lambda * lambda)))
}

/// First-order diffraction angle `arcsin(λ/d_grating)`.
pub fn diffraction_angle(cfg: &InstrumentConfig, p: &PhysicalParams) -> Result<f64> {
    let s = p.lambda_vac / cfg.d_grating;
    if s >= 1.0 {
        return Err(Error::param("d_grating", "no first diffraction order (lambda >= d_grating)"));
    }
    Ok(s.asin())
}

/// Camera pixel that just samples `δλ` along the energy axis (m).
pub fn required_energy_pixel(cfg: &InstrumentConfig, p: &PhysicalParams) -> Result<f64> {
    let (dl, _) = energy_resolution(cfg, p)?;
    let theta = diffraction_angle(cfg, p)?;
    Ok(cfg.f_im * dl / (cfg.d_grating * theta.cos()))
}

/// Width of one camera pixel along k (1/m).
pub fn momentum_pixel_width(cfg: &InstrumentConfig, p: &PhysicalParams) -> f64 {
    cfg.px_momentum * p.k0() / (p.n_l * cfg.f_obj)
}

/// Width of one camera pixel along energy (rad/s).
pub fn energy_pixel_width(cfg: &InstrumentConfig, p: &PhysicalParams) -> Result<f64> {
    let theta = diffraction_angle(cfg, p)?;
    let dl = cfg.px_energy * cfg.d_grating * theta.cos() / cfg.f_im;
    Ok(2.0 * PI * C * dl / (p.lambda_vac * p.lambda_vac))
}

/// `g̃ ≈ (ħδ_k²/4m)² π / (N Ω₀²)`, all in rates.
pub fn gmin_momentum(delta_k: f64, p: &PhysicalParams) -> f64 {
    let e = p.hbar_over_2m() * delta_k * delta_k / 2.0;
    e * e * PI / (p.n_bec * p.omega0 * p.omega0)
}

/// `g̃ ≈ δ_ε² π / (N (2Ω₀)²)`, `δ_ε` in rad/s.
pub fn gmin_energy(delta_eps: f64, p: &PhysicalParams) -> f64 {
    delta_eps * delta_eps * PI / (p.n_bec * 4.0 * p.omega0 * p.omega0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Limit {
    Momentum,
    Energy,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResolutionBudget {
    pub delta_k: f64,
    pub px_opt: f64,
    pub delta_lambda: f64,
    /// Energy resolution in use (rad/s); the override if one is set.
    pub delta_eps: f64,
    /// Grating energy resolution (rad/s).
    pub delta_eps_grating: f64,
    pub gmin_momentum: f64,
    pub gmin_energy: f64,
    pub required_energy_pixel: f64,
    pub k_pixel: f64,
    pub omega_pixel: f64,
}

impl ResolutionBudget {
    /// The limit giving the larger `g̃_min`.
    pub fn dominant(&self) -> Limit {
        if self.gmin_energy >= self.gmin_momentum {
            Limit::Energy
        } else {
            Limit::Momentum
        }
    }

    pub fn gmin(&self) -> f64 {
        self.gmin_energy.max(self.gmin_momentum)
    }

    /// `key = value` text report, SI units, reference figures alongside.
    pub fn report(&self) -> String {
        let mut s = String::new();
        let mut line = |k: &str, v: String| {
            s.push_str(k);
            s.push_str(" = ");
            s.push_str(&v);
            s.push('\n');
        };
        line("delta_k_per_m", format!("{:e}", self.delta_k));
        line("delta_k_reference_per_m", format!("{:e}", reference::DELTA_K));
        line("px_opt_m", format!("{:e}", self.px_opt));
        line("px_opt_reference_m", format!("{:e}", reference::PX_MOMENTUM));
        line("delta_lambda_m", format!("{:e}", self.delta_lambda));
        line("delta_lambda_reference_m", format!("{:e}", reference::DELTA_LAMBDA));
        line("delta_eps_grating_rad_per_s", format!("{:e}", self.delta_eps_grating));
        line("delta_eps_grating_hz", format!("{:e}", self.delta_eps_grating / (2.0 * PI)));
        line("delta_eps_reference_hz", format!("{:e}", reference::DELTA_NU));
        line("delta_eps_rad_per_s", format!("{:e}", self.delta_eps));
        line("required_energy_pixel_m", format!("{:e}", self.required_energy_pixel));
        line("required_energy_pixel_reference_m", format!("{:e}", reference::PX_ENERGY));
        line("k_pixel_per_m", format!("{:e}", self.k_pixel));
        line("omega_pixel_rad_per_s", format!("{:e}", self.omega_pixel));
        line("gmin_momentum", format!("{:e}", self.gmin_momentum));
        line("gmin_momentum_reference", format!("{:e}", reference::GMIN_MOMENTUM));
        line("gmin_energy", format!("{:e}", self.gmin_energy));
        line("gmin_energy_reference", format!("{:e}", reference::GMIN_ENERGY));
        line(
            "gmin_energy_note",
            format!(
                "direct evaluation differs from the reference by a factor {:.2}",
                reference::GMIN_ENERGY / self.gmin_energy
            ),
        );
        let dom = match self.dominant() {
            Limit::Momentum => "momentum",
            Limit::Energy => "energy",
        };
        line("dominant_limit", dom.to_string());
        s
    }
}

pub fn resolution_budget(cfg: &InstrumentConfig, p: &PhysicalParams) -> Result<ResolutionBudget> {
    cfg.validate()?;
    let (delta_k, px_opt) = momentum_resolution(cfg, p);
    let (delta_lambda, delta_eps_grating) = energy_resolution(cfg, p)?;
    let delta_eps = cfg.delta_eps_override.unwrap_or(delta_eps_grating);
    if p.n_bec <= 0.0 || p.omega0 <= 0.0 {
        return Err(Error::param("n_bec", "g_tilde limits need n_bec > 0 and omega0 > 0"));
    }
    Ok(ResolutionBudget {
        delta_k,
        px_opt,
        delta_lambda,
        delta_eps,
        delta_eps_grating,
        gmin_momentum: gmin_momentum(delta_k, p),
        gmin_energy: gmin_energy(delta_eps, p),
        required_energy_pixel: required_energy_pixel(cfg, p)?,
        k_pixel: momentum_pixel_width(cfg, p),
        omega_pixel: energy_pixel_width(cfg, p)?,
    })
}

/// Spacing of a uniform axis, or an error naming the axis.
fn uniform_spacing(axis: &[f64], name: &'static str) -> Result<f64> {
    if axis.len() < 2 {
        return Err(Error::InvalidGrid(format!("{name} axis needs at least two samples to convolve")));
    }
    let h = (axis[axis.len() - 1] - axis[0]) / (axis.len() - 1) as f64;
    if axis.windows(2).any(|w| ((w[1] - w[0]) / h - 1.0).abs() > 1e-6) {
        return Err(Error::InvalidGrid(format!("{name} axis must be uniformly spaced to convolve")));
    }
    Ok(h)
}

/// Normalized sampled Gaussian, truncated at 5σ.
pub fn gaussian_kernel(sigma: f64, h: f64) -> Vec<f64> {
    let m = (5.0 * sigma / h).ceil() as i64;
    let raw: Vec<f64> = (-m..=m).map(|i| (-0.5 * (i as f64 * h / sigma).powi(2)).exp()).collect();
    let s: f64 = raw.iter().sum();
    raw.into_iter().map(|w| w / s).collect()
}

fn reflect(mut t: i64, n: i64) -> usize {
    loop {
        if t < 0 {
            t = -1 - t;
        } else if t >= n {
            t = 2 * n - 1 - t;
        } else {
            return t as usize;
        }
    }
}

/// Scatter-form 1D convolution: every sample spreads over its neighbours,
/// and weight falling off an edge is mirrored back inside, so the sum is kept.
pub fn convolve_line(input: &[f64], kernel: &[f64], out: &mut [f64]) {
    let n = input.len() as i64;
    let m = (kernel.len() / 2) as i64;
    out.iter_mut().for_each(|v| *v = 0.0);
    for (i, &x) in input.iter().enumerate() {
        if x == 0.0 {
            continue;
        }
        for (j, &w) in kernel.iter().enumerate() {
            let t = reflect(i as i64 + j as i64 - m, n);
            out[t] += x * w;
        }
    }
}

fn convolve_rows(values: &Array2<f64>, kernel: &[f64]) -> Array2<f64> {
    let (rows, cols) = values.dim();
    let mut out = Array2::zeros((rows, cols));
    out.as_slice_mut()
        .expect("standard layout")
        .par_chunks_mut(cols)
        .zip(values.as_slice().expect("standard layout").par_chunks(cols))
        .for_each(|(o, i)| convolve_line(i, kernel, o));
    out
}

/// Separable Gaussian instrument function with standard deviations
/// `δ_k/2` and `δ_ε/2`.
pub fn convolve_instrument(grid: &SpectrumGrid, cfg: &InstrumentConfig, p: &PhysicalParams) -> Result<SpectrumGrid> {
    let budget = resolution_budget(cfg, p)?;
    convolve_with_widths(grid, budget.delta_k, budget.delta_eps)
}

/// As [`convolve_instrument`] with explicit resolutions (1/m, rad/s).
pub fn convolve_with_widths(grid: &SpectrumGrid, delta_k: f64, delta_eps: f64) -> Result<SpectrumGrid> {
    let hk = uniform_spacing(&grid.k_axis, "k")?;
    let hw = uniform_spacing(&grid.omega_axis, "omega")?;
    if hk > delta_k / 3.0 {
        return Err(Error::UnderResolved { axis: "k", spacing: hk, resolution: delta_k });
    }
    if hw > delta_eps / 3.0 {
        return Err(Error::UnderResolved { axis: "omega", spacing: hw, resolution: delta_eps });
    }
    let along_k = convolve_rows(&grid.values, &gaussian_kernel(delta_k / 2.0, hk));
    let t = along_k.t().as_standard_layout().into_owned();
    let both = convolve_rows(&t, &gaussian_kernel(delta_eps / 2.0, hw));
    SpectrumGrid::new(grid.k_axis.clone(), grid.omega_axis.clone(), both.t().as_standard_layout().into_owned())
}

/// Pixel centres `j·pitch` whose pixels lie inside `[lo, hi]`.
fn pixel_centres(lo: f64, hi: f64, pitch: f64) -> Vec<f64> {
    let slack = 1e-9 * pitch;
    let first = ((lo + 0.5 * pitch - slack) / pitch).ceil() as i64;
    let last = ((hi - 0.5 * pitch + slack) / pitch).floor() as i64;
    (first..=last).map(|j| j as f64 * pitch).collect()
}

fn axis_edges(axis: &[f64]) -> (f64, f64) {
    let w = cell_widths(axis);
    (axis[0] - 0.5 * w[0], axis[axis.len() - 1] + 0.5 * w[axis.len() - 1])
}

/// `overlap[a][c]`: length shared by pixel `a` and cell `c`, divided by the pitch.
fn overlap_matrix(centres: &[f64], pitch: f64, axis: &[f64]) -> Array2<f64> {
    let w = cell_widths(axis);
    let mut m = Array2::zeros((centres.len(), axis.len()));
    for (a, &c) in centres.iter().enumerate() {
        let (p0, p1) = (c - 0.5 * pitch, c + 0.5 * pitch);
        for (j, (&x, &wj)) in axis.iter().zip(&w).enumerate() {
            let (c0, c1) = (x - 0.5 * wj, x + 0.5 * wj);
            let o = p1.min(c1) - p0.max(c0);
            if o > 0.0 {
                m[[a, j]] = o / pitch;
            }
        }
    }
    m
}

fn on_pixel_grid(axis: &[f64], pitch: f64) -> bool {
    axis.len() >= 2
        && axis.iter().all(|&x| {
            let j = (x / pitch).round();
            (x - j * pitch).abs() <= 1e-9 * pitch
        })
        && axis.windows(2).all(|w| ((w[1] - w[0]) / pitch - 1.0).abs() <= 1e-9)
}

/// Area-weighted average onto camera pixels of the given pitches, centred on
/// `k = 0` and `ω = 0`. Axes already on the pixel grid are kept as they are.
pub fn rebin(grid: &SpectrumGrid, k_pitch: f64, omega_pitch: f64) -> Result<SpectrumGrid> {
    let (kc, ok) = if on_pixel_grid(&grid.k_axis, k_pitch) {
        (grid.k_axis.clone(), None)
    } else {
        let (lo, hi) = axis_edges(&grid.k_axis);
        let c = pixel_centres(lo, hi, k_pitch);
        let m = overlap_matrix(&c, k_pitch, &grid.k_axis);
        (c, Some(m))
    };
    let (wc, ow) = if on_pixel_grid(&grid.omega_axis, omega_pitch) {
        (grid.omega_axis.clone(), None)
    } else {
        let (lo, hi) = axis_edges(&grid.omega_axis);
        let c = pixel_centres(lo, hi, omega_pitch);
        let m = overlap_matrix(&c, omega_pitch, &grid.omega_axis);
        (c, Some(m))
    };
    if kc.is_empty() || wc.is_empty() {
        return Err(Error::InvalidGrid("grid is smaller than one camera pixel".into()));
    }
    let mut v = grid.values.clone();
    if let Some(ow) = ow {
        v = ow.dot(&v);
    }
    if let Some(ok) = ok {
        v = v.dot(&ok.t());
    }
    SpectrumGrid::new(kc, wc, v)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CameraScale {
    /// `full_well_fraction × peak` maps to full scale.
    Peak,
    /// Fixed counts per unit input.
    CountsPerUnit(f64),
}

/// Scales to counts, clips at full scale and truncates like an ADC
/// (sub-LSB signal reads zero).
pub fn quantize(grid: &SpectrumGrid, cfg: &InstrumentConfig, scale: CameraScale) -> Result<SpectrumGrid> {
    cfg.validate()?;
    let full = cfg.full_scale();
    let well = cfg.full_well_fraction * grid.max();
    let mut out = grid.clone();
    out.values.mapv_inplace(|v| {
        let counts = match scale {
            CameraScale::Peak if well > 0.0 => v.max(0.0) / well * full,
            CameraScale::Peak => 0.0,
            CameraScale::CountsPerUnit(c) => v.max(0.0) * c,
        };
        // guard against 4094.9999… from the division
        (counts + 1e-6).floor().min(full)
    });
    Ok(out)
}

/// Rebin to the physical pixel pitch, then quantize with the full well at
/// `full_well_fraction` of the rebinned peak.
pub fn camera_stage(grid: &SpectrumGrid, cfg: &InstrumentConfig, p: &PhysicalParams) -> Result<SpectrumGrid> {
    camera_stage_with(grid, cfg, p, CameraScale::Peak)
}

pub fn camera_stage_with(
    grid: &SpectrumGrid,
    cfg: &InstrumentConfig,
    p: &PhysicalParams,
    scale: CameraScale,
) -> Result<SpectrumGrid> {
    cfg.validate()?;
    let binned = rebin(grid, momentum_pixel_width(cfg, p), energy_pixel_width(cfg, p)?)?;
    quantize(&binned, cfg, scale)
}

/// Ridge deviation from the free parabola `ω = ε_k`, in energy pixels.
#[derive(Debug, Clone, PartialEq)]
pub struct Resolvability {
    pub k: Vec<f64>,
    /// `(ω_peak − ε_k)/pixel`; `None` where no ridge was found.
    pub deviation_pixels: Vec<Option<f64>>,
    /// Longest run of adjacent columns deviating by more than one pixel.
    pub longest_run: usize,
    pub max_deviation_pixels: f64,
}

pub fn resolvability(image: &SpectrumGrid, omega_pixel: f64, p: &PhysicalParams) -> Resolvability {
    let curve = crate::open_spectrum::dispersion_extract(image);
    let deviation_pixels: Vec<Option<f64>> = curve
        .k
        .iter()
        .zip(&curve.omega_peak)
        .map(|(&k, w)| w.map(|w| (w - p.kinetic_rate(k)) / omega_pixel))
        .collect();
    let mut run = 0;
    let mut longest_run = 0;
    let mut max_dev = 0.0f64;
    for d in &deviation_pixels {
        match d {
            Some(d) if d.abs() > 1.0 => {
                run += 1;
                longest_run = longest_run.max(run);
            }
            _ => run = 0,
        }
        if let Some(d) = d {
            max_dev = max_dev.max(d.abs());
        }
    }
    Resolvability { k: curve.k, deviation_pixels, longest_run, max_deviation_pixels: max_dev }
}

/// 2π × 1 GHz, a typical Fabry-Perot limited energy resolution.
pub fn fabry_perot_resolution() -> f64 {
    two_pi(1e9)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_is_normalized_and_symmetric() {
        let k = gaussian_kernel(2.0, 0.5);
        assert_eq!(k.len(), 41);
        assert!((k.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        for i in 0..k.len() {
            assert_eq!(k[i], k[k.len() - 1 - i]);
        }
    }

    #[test]
    fn reflection_keeps_mass() {
        let input = [1.0, 0.0, 0.0, 0.0, 3.0];
        let k = gaussian_kernel(1.5, 1.0);
        let mut out = [0.0; 5];
        convolve_line(&input, &k, &mut out);
        assert!((out.iter().sum::<f64>() - 4.0).abs() < 1e-14);
        assert!(out.iter().all(|v| *v > 0.0));
    }

    #[test]
    fn pixel_centres_inside() {
        let c = pixel_centres(-2.2, 3.1, 1.0);
        assert_eq!(c, vec![-1.0, 0.0, 1.0, 2.0]);
        assert_eq!(pixel_centres(-0.5, 0.5, 1.0), vec![0.0]);
    }

    #[test]
    fn rejects_bad_config() {
        let mut c = InstrumentConfig::default();
        assert!(c.validate().is_ok());
        c.bit_depth = 10;
        assert!(c.validate().is_err());
        let c = InstrumentConfig { m_y: 0.5, ..Default::default() };
        assert!(c.validate().is_err());
        let c = InstrumentConfig { full_well_fraction: 0.0, ..Default::default() };
        assert!(c.validate().is_err());
    }

    #[test]
    fn narrow_aperture_rejected() {
        let p = PhysicalParams::default();
        let c = InstrumentConfig { d_slit: 1e-6, m_y: 1.0, ..Default::default() };
        assert!(matches!(energy_resolution(&c, &p), Err(Error::InvalidParameter { .. })));
    }
}
