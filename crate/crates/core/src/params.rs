//! Physical inputs and the quantities derived from them.
//!
//! Internally every energy is an angular frequency: `μ`, `ε_k`, `γ`, `κ` are
//! all `E/ħ` in rad/s. Joule values are only produced on request.

use std::f64::consts::PI;

use crate::constants::{two_pi, C, EPS0, HBAR};
use crate::error::{Error, Result};

/// Cavity, dye and condensate constants.
///
/// Exactly one of `g_tilde` and `chi3` is the interaction source; the other
/// one is derived (see [`PhysicalParams::interaction`]).
#[derive(Debug, Clone, PartialEq)]
pub struct PhysicalParams {
    /// Vacuum wavelength (m).
    pub lambda_vac: f64,
    /// Low-intensity refractive index.
    pub n_l: f64,
    /// Cavity length (m).
    pub l0: f64,
    /// Longitudinal mode number.
    pub q: u32,
    /// Cavity detuning (rad/s).
    pub delta_omega: f64,
    /// Temperature (K).
    pub temperature: f64,
    /// Condensed photon number.
    pub n_bec: f64,
    /// Dimensionless 2D interaction parameter.
    pub g_tilde: Option<f64>,
    /// Kerr susceptibility ((m/V)²).
    pub chi3: Option<f64>,
    /// Trap angular frequency (rad/s).
    pub omega0: f64,
    /// Net gain rate (rad/s).
    pub gamma_net: f64,
    /// Hand-inserted spectral broadening of the closed model (rad/s).
    pub kappa_broad: f64,
    /// Dye scattering cross-section (m²).
    pub sigma_dye: f64,
    /// Dye number density (m⁻³).
    pub n_dye: f64,
    /// Cavity loss rate (rad/s).
    pub kappa_cav: f64,
}

impl Default for PhysicalParams {
    fn default() -> Self {
        Self {
            lambda_vac: 580e-9,
            n_l: 1.33,
            l0: 2e-6,
            q: 7,
            delta_omega: 0.0,
            temperature: 300.0,
            n_bec: 1e5,
            g_tilde: Some(1e-3),
            chi3: None,
            omega0: two_pi(40e9),
            gamma_net: two_pi(1e9),
            kappa_broad: two_pi(1e9),
            sigma_dye: 2e-22,
            n_dye: 1e24,
            kappa_cav: two_pi(1e9),
        }
    }
}

/// Resolved interaction strength.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interaction {
    /// 2D contact constant (J·m²).
    pub g: f64,
    /// Dimensionless `g̃ = m g / ħ²`.
    pub g_tilde: f64,
}

impl PhysicalParams {
    pub fn validate(&self) -> Result<()> {
        fn finite(name: &'static str, v: f64) -> Result<()> {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::param(name, "must be finite"))
            }
        }
        for (name, v) in [
            ("lambda_vac", self.lambda_vac),
            ("n_l", self.n_l),
            ("l0", self.l0),
            ("delta_omega", self.delta_omega),
            ("temperature", self.temperature),
            ("n_bec", self.n_bec),
            ("omega0", self.omega0),
            ("gamma_net", self.gamma_net),
            ("kappa_broad", self.kappa_broad),
            ("sigma_dye", self.sigma_dye),
            ("n_dye", self.n_dye),
            ("kappa_cav", self.kappa_cav),
        ] {
            finite(name, v)?;
        }
        if self.lambda_vac <= 0.0 {
            return Err(Error::param("lambda_vac", "must be > 0"));
        }
        if self.n_l < 1.0 {
            return Err(Error::param("n_l", "must be >= 1"));
        }
        if self.l0 <= 0.0 {
            return Err(Error::param("l0", "must be > 0"));
        }
        if self.q < 1 {
            return Err(Error::param("q", "must be >= 1"));
        }
        if self.temperature <= 0.0 {
            return Err(Error::param("temperature", "must be > 0"));
        }
        if self.n_bec < 0.0 {
            return Err(Error::param("n_bec", "must be >= 0"));
        }
        if self.kappa_broad < 0.0 {
            return Err(Error::param("kappa_broad", "must be >= 0"));
        }
        if self.kappa_cav < 0.0 {
            return Err(Error::param("kappa_cav", "must be >= 0"));
        }
        if self.sigma_dye < 0.0 || self.n_dye < 0.0 {
            return Err(Error::param("n_dye", "dye density and cross-section must be >= 0"));
        }
        match (self.g_tilde, self.chi3) {
            (Some(_), Some(_)) => return Err(Error::AmbiguousInteraction),
            (None, None) => return Err(Error::MissingInteraction("set g_tilde or chi3")),
            (Some(g), None) if !g.is_finite() => return Err(Error::param("g_tilde", "must be finite")),
            (None, Some(x)) if !x.is_finite() => return Err(Error::param("chi3", "must be finite")),
            _ => {}
        }
        Ok(())
    }

    /// Optical angular frequency `ω = 2πc/λ` (rad/s).
    pub fn omega(&self) -> f64 {
        2.0 * PI * C / self.lambda_vac
    }

    /// Wavenumber in the medium, `k_L = ω n_L / c` (1/m).
    pub fn k_l(&self) -> f64 {
        self.omega() * self.n_l / C
    }

    /// Typical longitudinal wavenumber `q π n_L / L₀` (1/m).
    pub fn k0(&self) -> f64 {
        self.q as f64 * PI * self.n_l / self.l0
    }

    /// Effective photon mass (kg).
    pub fn mass(&self) -> f64 {
        effective_mass(self)
    }

    /// `ħ/2m` (m²/s); the free kinetic rate is `ε_k = (ħ/2m) k²`.
    pub fn hbar_over_2m(&self) -> f64 {
        HBAR / (2.0 * self.mass())
    }

    /// Free-particle kinetic energy `ħk²/2m` as a rate (rad/s).
    pub fn kinetic_rate(&self, k: f64) -> f64 {
        self.hbar_over_2m() * k * k
    }

    /// Resolves `g` and `g̃` from whichever source is set.
    pub fn interaction(&self) -> Result<Interaction> {
        match (self.g_tilde, self.chi3) {
            (Some(_), Some(_)) => Err(Error::AmbiguousInteraction),
            (Some(g_tilde), None) => Ok(Interaction {
                g: HBAR * HBAR / self.mass() * g_tilde,
                g_tilde,
            }),
            (None, Some(_)) => {
                let (g, g_tilde) = g_from_chi3(self)?;
                Ok(Interaction { g, g_tilde })
            }
            (None, None) => Err(Error::MissingInteraction("set g_tilde or chi3")),
        }
    }

    /// Copy with `g_tilde` as the interaction source.
    pub fn with_g_tilde(&self, g_tilde: f64) -> Self {
        Self {
            g_tilde: Some(g_tilde),
            chi3: None,
            ..self.clone()
        }
    }
}

/// Effective photon mass from `ħω = m c² / n_L²` (kg).
pub fn effective_mass(p: &PhysicalParams) -> f64 {
    HBAR * p.omega() * p.n_l * p.n_l / (C * C)
}

/// Kerr contact interaction: `g = 3ħ²ω²χ⁽³⁾ / (n_L⁴ ε₀ L₀)` and `g̃ = m g / ħ²`.
pub fn g_from_chi3(p: &PhysicalParams) -> Result<(f64, f64)> {
    if p.g_tilde.is_some() && p.chi3.is_some() {
        return Err(Error::AmbiguousInteraction);
    }
    let chi3 = p
        .chi3
        .ok_or(Error::MissingInteraction("g_from_chi3 needs chi3"))?;
    if p.l0 <= 0.0 {
        return Err(Error::param("l0", "must be > 0"));
    }
    let w = p.omega();
    let g = 3.0 * HBAR * HBAR * w * w * chi3 / (p.n_l.powi(4) * EPS0 * p.l0);
    Ok((g, effective_mass(p) * g / (HBAR * HBAR)))
}

/// Inverse of [`g_from_chi3`]: the susceptibility that produces `g̃`.
pub fn chi3_from_g_tilde(p: &PhysicalParams, g_tilde: f64) -> f64 {
    let w = p.omega();
    let g = HBAR * HBAR / effective_mass(p) * g_tilde;
    g * p.n_l.powi(4) * EPS0 * p.l0 / (3.0 * HBAR * HBAR * w * w)
}

/// Thomas-Fermi chemical potential of a 2D harmonic trap,
/// `μ = ħΩ₀ √(g̃ N / π)`, in joules.
pub fn mu_thomas_fermi(p: &PhysicalParams) -> Result<f64> {
    Ok(HBAR * mu_thomas_fermi_rate(p)?)
}

/// Same as [`mu_thomas_fermi`], as a rate `μ/ħ` (rad/s).
pub fn mu_thomas_fermi_rate(p: &PhysicalParams) -> Result<f64> {
    if p.omega0 <= 0.0 {
        return Err(Error::param("omega0", "must be > 0"));
    }
    let g_tilde = p.interaction()?.g_tilde;
    if g_tilde < 0.0 {
        return Err(Error::param("g_tilde", "Thomas-Fermi profile needs g_tilde >= 0"));
    }
    Ok(p.omega0 * (g_tilde * p.n_bec / PI).sqrt())
}

/// Gain/loss balance from dye scattering.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainEstimate {
    /// Scattering rate into the condensate, `n_dye σ_dye c / n_L` (rad/s).
    pub gamma_r: f64,
    /// `γ_R − κ_cav` (rad/s).
    pub gamma_net: f64,
}

impl GainEstimate {
    pub fn has_net_gain(&self) -> bool {
        self.gamma_net > 0.0
    }
}

/// `γ_net = γ_R − κ_cav` with `γ_R = n_dye σ_dye c / n_L`, the inverse mean
/// free time between dye scattering events. Logs a warning when there is no
/// net gain; that is not an error.
pub fn gamma_net_estimate(p: &PhysicalParams) -> GainEstimate {
    let gamma_r = p.n_dye * p.sigma_dye * C / p.n_l;
    let est = GainEstimate {
        gamma_r,
        gamma_net: gamma_r - p.kappa_cav,
    };
    if !est.has_net_gain() {
        log::warn!(
            "no net gain: gamma_R = {:.3e} rad/s does not exceed kappa_cav = {:.3e} rad/s",
            gamma_r,
            p.kappa_cav
        );
    }
    est
}

/// Pump saturation coefficient `Γ = γ_net / |ψ(0,0)|²` (rad·m²/s), chosen
/// so that gain vanishes at the steady-state peak density.
pub fn saturation_coefficient(gamma_net: f64, peak_density: f64) -> Result<f64> {
    if !(peak_density > 0.0) || !peak_density.is_finite() {
        return Err(Error::param("peak_density", "must be finite and > 0"));
    }
    Ok(gamma_net / peak_density)
}

/// Everything downstream code needs from [`PhysicalParams`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedQuantities {
    pub omega: f64,
    pub k_l: f64,
    pub k0: f64,
    pub mass: f64,
    /// Thomas-Fermi chemical potential (rad/s).
    pub mu: f64,
    /// Contact constant (J·m²).
    pub g: f64,
    pub g_tilde: f64,
    /// `√(μ/m)` (m/s).
    pub sound_speed: f64,
}

impl DerivedQuantities {
    pub fn new(p: &PhysicalParams) -> Result<Self> {
        p.validate()?;
        let mass = effective_mass(p);
        let Interaction { g, g_tilde } = p.interaction()?;
        let mu = mu_thomas_fermi_rate(p)?;
        Ok(Self {
            omega: p.omega(),
            k_l: p.k_l(),
            k0: p.k0(),
            mass,
            mu,
            g,
            g_tilde,
            sound_speed: (HBAR * mu / mass).sqrt(),
        })
    }

    pub fn mu_joules(&self) -> f64 {
        self.mu * HBAR
    }

    /// Contact constant as a rate per density, `g/ħ` (rad·m²/s).
    pub fn g_rate(&self) -> f64 {
        self.g / HBAR
    }

    /// Thomas-Fermi central density `μ/g` (1/m²).
    pub fn tf_peak_density(&self) -> f64 {
        self.mu / self.g_rate()
    }

    /// Thomas-Fermi radius where `½mΩ₀²R² = μ` (m).
    pub fn tf_radius(&self, omega0: f64) -> f64 {
        (2.0 * self.mu_joules() / (self.mass * omega0 * omega0)).sqrt()
    }
}
