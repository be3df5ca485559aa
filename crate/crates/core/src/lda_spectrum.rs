//! Closed-system photoluminescence of a trapped condensate in the local density
//! approximation: local Bogoliubov weight, Lorentzian broadening by hand, local
//! Bose factor and the radial integral over the trap.

use std::f64::consts::PI;

use ndarray::Array2;
use rayon::prelude::*;

use crate::constants::{thermal_rate, HBAR};
use crate::error::{Error, Result};
use crate::open_spectrum::SpectrumGrid;
use crate::params::{mu_thomas_fermi_rate, PhysicalParams};
use crate::quadrature::{integrate, integrate_fixed, QuadratureSpec};

/// Local condensate at radius `r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalEnvironment {
    pub r: f64,
    /// `μ′ = μ − V(r)` (rad/s).
    pub mu_local: f64,
    /// `V(r)/ħ` (rad/s).
    pub v_r: f64,
}

impl LocalEnvironment {
    pub fn homogeneous(mu: f64) -> Self {
        Self { r: 0.0, mu_local: mu, v_r: 0.0 }
    }

    /// Harmonic trap `V = ½mΩ₀²r²`.
    pub fn harmonic(r: f64, mu: f64, p: &PhysicalParams) -> Self {
        let v_r = 0.5 * p.mass() * p.omega0 * p.omega0 * r * r / HBAR;
        Self { r, mu_local: mu - v_r, v_r }
    }
}

/// `ξ = √(ε(ε + 2 max(μ′, 0)))`.
pub fn local_dispersion(eps_k: f64, env: &LocalEnvironment) -> f64 {
    (eps_k * (eps_k + 2.0 * env.mu_local.max(0.0))).sqrt()
}

/// Unit-area Lorentzian of half-width `kappa`.
pub fn lorentzian(x: f64, kappa: f64) -> f64 {
    kappa / PI / (x * x + kappa * kappa)
}

/// Broadened local weight
/// `u² L(ω−ξ) − v² L(ω+ξ)` with `u², v² = (ε+μ′±ξ)/2ξ`,
/// written as `½[L(ω−ξ) + L(ω+ξ)] + (ε+μ′)(κ/π)·2ω / (((ω−ξ)²+κ²)((ω+ξ)²+κ²))`
/// so that `ξ → 0` needs no special case.
pub fn weight_closed_eps(eps: f64, omega: f64, mu_local: f64, kappa: f64) -> f64 {
    let mu = mu_local.max(0.0);
    let xi = (eps * (eps + 2.0 * mu)).sqrt();
    let dm = omega - xi;
    let dp = omega + xi;
    let k2 = kappa * kappa;
    let even = 0.5 * (lorentzian(dm, kappa) + lorentzian(dp, kappa));
    let odd = (eps + mu) * kappa / PI * 2.0 * omega / ((dm * dm + k2) * (dp * dp + k2));
    even + odd
}

pub fn spectral_weight_closed(k: f64, omega: f64, env: &LocalEnvironment, kappa: f64, p: &PhysicalParams) -> f64 {
    weight_closed_eps(p.kinetic_rate(k), omega, env.mu_local, kappa)
}

/// `(u², v²)` of the local weight; `u² − v² = 1`.
pub fn closed_coefficients(eps: f64, mu_local: f64) -> (f64, f64) {
    let mu = mu_local.max(0.0);
    let xi = (eps * (eps + 2.0 * mu)).sqrt();
    ((eps + mu + xi) / (2.0 * xi), (eps + mu - xi) / (2.0 * xi))
}

/// Local Bose factor `1/(e^{(ω − V)/θ} − 1)`, `θ = k_BT/ħ`, with `|ω − V|`
/// floored at `κ/10` (sign kept, zero counts as positive). Below `V` the
/// occupation is negative.
pub fn bose_local(omega: f64, env: &LocalEnvironment, temperature: f64, kappa: f64) -> f64 {
    bose_floored(omega - env.v_r, thermal_rate(temperature), kappa)
}

fn bose_floored(x: f64, theta: f64, kappa: f64) -> f64 {
    let floor = 0.1 * kappa;
    let x = if x.abs() < floor {
        if x < 0.0 {
            -floor
        } else {
            floor
        }
    } else {
        x
    };
    1.0 / (x / theta).exp_m1()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoseConvention {
    /// `n_B(ω; r)` shifted by the local potential.
    Local,
    /// `n_B(ω)` everywhere.
    Global,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedModel {
    /// Radial integral over the harmonic trap.
    HarmonicLda,
    /// Single environment with `μ′ = μ`, `V = 0`.
    Homogeneous,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RadialRule {
    Adaptive(QuadratureSpec),
    /// Fixed Gauss-Legendre panels per segment between breakpoints.
    Fixed(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedOptions {
    /// Lorentzian half-width (rad/s).
    pub kappa: f64,
    pub bose: BoseConvention,
    pub model: ClosedModel,
    /// Radial cutoff in Thomas-Fermi radii.
    pub r_cut_factor: f64,
    pub rule: RadialRule,
}

impl ClosedOptions {
    pub fn new(p: &PhysicalParams) -> Self {
        Self {
            kappa: p.kappa_broad,
            bose: BoseConvention::Local,
            model: ClosedModel::HarmonicLda,
            r_cut_factor: 2.0,
            rule: RadialRule::Adaptive(QuadratureSpec::default()),
        }
    }
}

/// Per-cell evaluator of the closed-model photoluminescence.
///
/// For the harmonic trap the radial integral is taken over `V = ½mΩ₀²r²`:
/// with `A = 2πμ/mΩ₀²`,
/// `(2π/A)∫r dr n_B W = (1/μ) ∫₀^{V_cut} dV n_B(ω; V) W(ε, ω; μ−V)`,
/// and `V_cut = r_cut_factor² μ`. At fixed `μ` this is independent of `Ω₀`.
#[derive(Debug, Clone, Copy)]
pub struct ClosedModelEval {
    pub mu: f64,
    pub theta: f64,
    pub opts: ClosedOptions,
}

impl ClosedModelEval {
    pub fn new(p: &PhysicalParams, opts: ClosedOptions) -> Result<Self> {
        if !(opts.kappa > 0.0) {
            return Err(Error::param("kappa_broad", "closed-model broadening must be > 0"));
        }
        if !(opts.r_cut_factor > 0.0) {
            return Err(Error::param("r_cut_factor", "must be > 0"));
        }
        if !(p.temperature > 0.0) {
            return Err(Error::param("temperature", "must be > 0"));
        }
        Ok(Self { mu: mu_thomas_fermi_rate(p)?, theta: thermal_rate(p.temperature), opts })
    }

    fn bose(&self, omega: f64, v: f64) -> f64 {
        let shift = match self.opts.bose {
            BoseConvention::Local => v,
            BoseConvention::Global => 0.0,
        };
        bose_floored(omega - shift, self.theta, self.opts.kappa)
    }

    /// `n_B(ω; V) · W(ε, ω; μ − V)`.
    pub fn integrand(&self, eps: f64, omega: f64, v: f64) -> f64 {
        self.bose(omega, v) * weight_closed_eps(eps, omega, self.mu - v, self.opts.kappa)
    }

    fn v_cut(&self) -> f64 {
        self.opts.r_cut_factor * self.opts.r_cut_factor * self.mu
    }

    /// Breakpoints in `V`: ends, the condensate edge, the Bose pole and its
    /// floor, and the `V` where the local ξ meets `|ω|`. Geometric ladders
    /// around the last two keep fixed panels accurate on the `1/x` and
    /// Lorentzian tails.
    pub fn breakpoints(&self, eps: f64, omega: f64) -> Vec<f64> {
        let top = self.v_cut();
        let kappa = self.opts.kappa;
        let mut b = vec![0.0, top, self.mu];
        if self.opts.bose == BoseConvention::Local {
            b.push(omega);
            ladder(&mut b, omega, 0.1 * kappa, top);
        }
        if eps > 0.0 {
            let v_res = self.mu - (omega * omega - eps * eps) / (2.0 * eps);
            let width = kappa * omega.abs().max(kappa) / eps;
            b.push(v_res);
            ladder(&mut b, v_res, width, top);
        }
        b.retain(|x| x.is_finite() && *x >= 0.0 && *x <= top);
        b.sort_by(f64::total_cmp);
        b.dedup();
        b
    }

    /// Photoluminescence at one `(ε, ω)` cell, before clamping.
    pub fn point(&self, eps: f64, omega: f64, abs_tol: f64) -> Result<f64> {
        match self.opts.model {
            ClosedModel::Homogeneous => Ok(self.integrand(eps, omega, 0.0)),
            ClosedModel::HarmonicLda if self.mu == 0.0 => {
                // zero-size condensate: the integrand is constant over the cut disc
                Ok(self.opts.r_cut_factor.powi(2) * self.integrand(eps, omega, 0.0))
            }
            ClosedModel::HarmonicLda => {
                let f = |v: f64| self.integrand(eps, omega, v);
                let b = self.breakpoints(eps, omega);
                let total = match self.opts.rule {
                    RadialRule::Adaptive(spec) => {
                        let spec = QuadratureSpec { abs_tol: spec.abs_tol.max(abs_tol * self.mu), ..spec };
                        integrate(&f, &b, &spec)?.value
                    }
                    RadialRule::Fixed(panels) => integrate_fixed(&f, &b, panels),
                };
                Ok(total / self.mu)
            }
        }
    }
}

fn ladder(b: &mut Vec<f64>, centre: f64, step: f64, span: f64) {
    let mut d = step;
    while d < span {
        b.push(centre - d);
        b.push(centre + d);
        d *= 3.0;
    }
}

/// `(2π/A) ∫₀^{r_cut} r dr n_B(ω; V(r)) W(ε, ω; μ − V(r))` for an arbitrary
/// radial potential `V(r)` (rad/s), integrated directly in `r`.
pub fn lda_integral(
    eval: &ClosedModelEval,
    eps: f64,
    omega: f64,
    potential: &dyn Fn(f64) -> f64,
    r_cut: f64,
    area: f64,
    breakpoints: &[f64],
    spec: &QuadratureSpec,
) -> Result<f64> {
    let f = |r: f64| 2.0 * PI * r * eval.integrand(eps, omega, potential(r));
    let mut b = vec![0.0, r_cut];
    b.extend(breakpoints.iter().copied().filter(|x| *x > 0.0 && *x < r_cut));
    b.sort_by(f64::total_cmp);
    Ok(integrate(&f, &b, spec)?.value / area)
}

/// Closed-model photoluminescence on a grid, negative cells set to zero.
pub fn pl_closed(k_axis: &[f64], omega_axis: &[f64], p: &PhysicalParams, opts: ClosedOptions) -> Result<SpectrumGrid> {
    let eval = ClosedModelEval::new(p, opts)?;
    let eps: Vec<f64> = k_axis.iter().map(|&k| p.kinetic_rate(k)).collect();
    // absolute tolerance per cell: a small fraction of the homogeneous peak
    let scale = omega_axis
        .iter()
        .flat_map(|&w| eps.iter().map(move |&e| (w, e)))
        .map(|(w, e)| (bose_floored(w, eval.theta, opts.kappa) * weight_closed_eps(e, w, eval.mu, opts.kappa)).abs())
        .fold(0.0, f64::max);
    let rel = match opts.rule {
        RadialRule::Adaptive(s) => s.rel_tol,
        RadialRule::Fixed(_) => 0.0,
    };
    let abs_tol = 1e-6 * rel * scale;
    let nk = k_axis.len();
    let rows: Vec<Result<Vec<f64>>> = omega_axis
        .par_iter()
        .map(|&w| eps.iter().map(|&e| eval.point(e, w, abs_tol).map(|v| v.max(0.0))).collect())
        .collect();
    let mut values = Vec::with_capacity(nk * omega_axis.len());
    for row in rows {
        values.extend(row?);
    }
    SpectrumGrid::new(
        k_axis.to_vec(),
        omega_axis.to_vec(),
        Array2::from_shape_vec((omega_axis.len(), nk), values).expect("shape"),
    )
}

/// Inhomogeneous width `ξ(μ′=μ) − ξ(μ′=0) = √(ε(ε+2μ)) − ε` (rad/s).
pub fn lda_line_broadening(k: f64, p: &PhysicalParams) -> Result<f64> {
    let mu = mu_thomas_fermi_rate(p)?;
    let eps = p.kinetic_rate(k);
    Ok((eps * (eps + 2.0 * mu)).sqrt() - eps)
}
