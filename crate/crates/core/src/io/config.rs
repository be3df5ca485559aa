//! `key = value` run configuration.
//!
//! One assignment per line, `#` starts a comment, values in SI units (angular
//! rates in rad/s). A value may be written `2pi*X` or `2*pi*X` to give a rate
//! from a frequency in Hz. Keys not present keep their defaults; unknown keys
//! are errors. `auto` selects the computed default for optional numbers.

use std::collections::HashMap;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::instrument::InstrumentConfig;
use crate::lda_spectrum::{BoseConvention, ClosedModel};
use crate::params::PhysicalParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumModel {
    Open,
    Closed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    UnitMax,
    Raw,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverSettings {
    pub n: usize,
    /// Box side (m); `None` for four Thomas-Fermi radii.
    pub extent: Option<f64>,
    /// Imaginary time step (s).
    pub dt: Option<f64>,
    pub max_steps: usize,
    pub tol: f64,
}

impl Default for SolverSettings {
    fn default() -> Self {
        Self { n: 256, extent: None, dt: None, max_steps: 200_000, tol: 1e-10 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSettings {
    pub nk: usize,
    pub nomega: usize,
    /// Axis runs over `±k_max` (1/m).
    pub k_max: Option<f64>,
    pub omega_min: Option<f64>,
    pub omega_max: Option<f64>,
    pub model: SpectrumModel,
    pub closed_trap: ClosedModel,
    pub bose: BoseConvention,
    pub r_cut_factor: f64,
    pub quad_rel_tol: f64,
    pub normalization: Normalization,
}

impl Default for SpectrumSettings {
    fn default() -> Self {
        Self {
            nk: 512,
            nomega: 1024,
            k_max: None,
            omega_min: None,
            omega_max: None,
            model: SpectrumModel::Closed,
            closed_trap: ClosedModel::HarmonicLda,
            bose: BoseConvention::Local,
            r_cut_factor: 2.0,
            quad_rel_tol: 1e-4,
            normalization: Normalization::UnitMax,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub physical: PhysicalParams,
    pub instrument: InstrumentConfig,
    pub solver: SolverSettings,
    pub spectrum: SpectrumSettings,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            physical: PhysicalParams::default(),
            instrument: InstrumentConfig::default(),
            solver: SolverSettings::default(),
            spectrum: SpectrumSettings::default(),
        }
    }
}

/// Every key with its unit and a short description, in emission order.
pub const KEYS: &[(&str, &str, &str)] = &[
    ("lambda_vac", "m", "vacuum wavelength"),
    ("n_l", "1", "refractive index"),
    ("l0", "m", "cavity length"),
    ("q", "1", "longitudinal mode number"),
    ("delta_omega", "rad/s", "cavity detuning"),
    ("temperature", "K", "temperature"),
    ("n_bec", "1", "condensed photon number"),
    ("g_tilde", "1", "dimensionless interaction (exclusive with chi3)"),
    ("chi3", "m^2/V^2", "Kerr susceptibility (exclusive with g_tilde)"),
    ("omega0", "rad/s", "trap frequency"),
    ("gamma_net", "rad/s", "net gain rate"),
    ("kappa_broad", "rad/s", "closed-model Lorentzian half-width"),
    ("sigma_dye", "m^2", "dye cross-section"),
    ("n_dye", "1/m^3", "dye number density"),
    ("kappa_cav", "rad/s", "cavity loss rate"),
    ("f_obj", "m", "objective focal length"),
    ("l_prop", "m", "objective to camera distance"),
    ("d_slit", "m", "slit width"),
    ("m_y", "1", "telescope magnification"),
    ("d_grating", "m", "grating period"),
    ("f_im", "m", "imaging lens focal length"),
    ("px_momentum", "m", "camera pixel along k"),
    ("px_energy", "m", "camera pixel along energy"),
    ("bit_depth", "bits", "camera dynamic range: 8, 12 or 16"),
    ("full_well_fraction", "1", "saturation level relative to the grid peak"),
    ("delta_eps_override", "rad/s", "energy resolution override or auto"),
    ("solver_n", "1", "grid points per side"),
    ("solver_extent", "m", "box side or auto"),
    ("solver_dt", "s", "imaginary time step or auto"),
    ("solver_max_steps", "1", "relaxation step limit"),
    ("solver_tol", "1", "relative energy change per step at convergence"),
    ("spectrum_nk", "1", "k samples"),
    ("spectrum_nomega", "1", "omega samples"),
    ("k_max", "1/m", "k axis half-range or auto"),
    ("omega_min", "rad/s", "lowest omega or auto"),
    ("omega_max", "rad/s", "highest omega or auto"),
    ("model", "-", "open or closed"),
    ("closed_trap", "-", "harmonic or homogeneous"),
    ("bose", "-", "local or global"),
    ("r_cut_factor", "1", "radial cutoff in Thomas-Fermi radii"),
    ("quad_rel_tol", "1", "radial quadrature tolerance"),
    ("normalization", "-", "unit-max or raw"),
];

fn unit_of(key: &str) -> &'static str {
    KEYS.iter().find(|k| k.0 == key).map_or("", |k| k.1)
}

fn parse_f64(key: &str, s: &str) -> std::result::Result<f64, String> {
    let lower = s.to_ascii_lowercase();
    let (factor, rest) = if let Some(r) = lower.strip_prefix("2*pi*") {
        (2.0 * PI, r)
    } else if let Some(r) = lower.strip_prefix("2pi*") {
        (2.0 * PI, r)
    } else {
        (1.0, lower.as_str())
    };
    match rest.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(factor * v),
        _ => Err(format!("`{key}` expects a number in {}, got `{s}`", unit_of(key))),
    }
}

fn parse_opt(key: &str, s: &str) -> std::result::Result<Option<f64>, String> {
    if s.eq_ignore_ascii_case("auto") || s.eq_ignore_ascii_case("none") {
        Ok(None)
    } else {
        parse_f64(key, s).map(Some)
    }
}

fn parse_int<T: std::str::FromStr>(key: &str, s: &str) -> std::result::Result<T, String> {
    s.parse::<T>().map_err(|_| format!("`{key}` expects a non-negative integer, got `{s}`"))
}

fn choice<T: Copy>(key: &str, s: &str, options: &[(&str, T)]) -> std::result::Result<T, String> {
    options
        .iter()
        .find(|o| o.0.eq_ignore_ascii_case(s))
        .map(|o| o.1)
        .ok_or_else(|| {
            let names: Vec<&str> = options.iter().map(|o| o.0).collect();
            format!("`{key}` must be one of {}, got `{s}`", names.join(", "))
        })
}

const MODELS: &[(&str, SpectrumModel)] = &[("open", SpectrumModel::Open), ("closed", SpectrumModel::Closed)];
const TRAPS: &[(&str, ClosedModel)] = &[("harmonic", ClosedModel::HarmonicLda), ("homogeneous", ClosedModel::Homogeneous)];
const BOSE: &[(&str, BoseConvention)] = &[("local", BoseConvention::Local), ("global", BoseConvention::Global)];
const NORMS: &[(&str, Normalization)] = &[("unit-max", Normalization::UnitMax), ("raw", Normalization::Raw)];

fn name_of<T: PartialEq>(options: &[(&'static str, T)], v: &T) -> &'static str {
    options.iter().find(|o| &o.1 == v).map(|o| o.0).expect("listed option")
}

impl RunConfig {
    fn set(&mut self, key: &str, s: &str) -> std::result::Result<(), String> {
        let p = &mut self.physical;
        let i = &mut self.instrument;
        let so = &mut self.solver;
        let sp = &mut self.spectrum;
        let f = |s: &str| parse_f64(key, s);
        match key {
            "lambda_vac" => p.lambda_vac = f(s)?,
            "n_l" => p.n_l = f(s)?,
            "l0" => p.l0 = f(s)?,
            "q" => p.q = parse_int(key, s)?,
            "delta_omega" => p.delta_omega = f(s)?,
            "temperature" => p.temperature = f(s)?,
            "n_bec" => p.n_bec = f(s)?,
            "g_tilde" => p.g_tilde = parse_opt(key, s)?,
            "chi3" => p.chi3 = parse_opt(key, s)?,
            "omega0" => p.omega0 = f(s)?,
            "gamma_net" => p.gamma_net = f(s)?,
            "kappa_broad" => p.kappa_broad = f(s)?,
            "sigma_dye" => p.sigma_dye = f(s)?,
            "n_dye" => p.n_dye = f(s)?,
            "kappa_cav" => p.kappa_cav = f(s)?,
            "f_obj" => i.f_obj = f(s)?,
            "l_prop" => i.l_prop = f(s)?,
            "d_slit" => i.d_slit = f(s)?,
            "m_y" => i.m_y = f(s)?,
            "d_grating" => i.d_grating = f(s)?,
            "f_im" => i.f_im = f(s)?,
            "px_momentum" => i.px_momentum = f(s)?,
            "px_energy" => i.px_energy = f(s)?,
            "bit_depth" => i.bit_depth = parse_int(key, s)?,
            "full_well_fraction" => i.full_well_fraction = f(s)?,
            "delta_eps_override" => i.delta_eps_override = parse_opt(key, s)?,
            "solver_n" => so.n = parse_int(key, s)?,
            "solver_extent" => so.extent = parse_opt(key, s)?,
            "solver_dt" => so.dt = parse_opt(key, s)?,
            "solver_max_steps" => so.max_steps = parse_int(key, s)?,
            "solver_tol" => so.tol = f(s)?,
            "spectrum_nk" => sp.nk = parse_int(key, s)?,
            "spectrum_nomega" => sp.nomega = parse_int(key, s)?,
            "k_max" => sp.k_max = parse_opt(key, s)?,
            "omega_min" => sp.omega_min = parse_opt(key, s)?,
            "omega_max" => sp.omega_max = parse_opt(key, s)?,
            "model" => sp.model = choice(key, s, MODELS)?,
            "closed_trap" => sp.closed_trap = choice(key, s, TRAPS)?,
            "bose" => sp.bose = choice(key, s, BOSE)?,
            "r_cut_factor" => sp.r_cut_factor = f(s)?,
            "quad_rel_tol" => sp.quad_rel_tol = f(s)?,
            "normalization" => sp.normalization = choice(key, s, NORMS)?,
            _ => return Err(format!("unknown key `{key}`")),
        }
        Ok(())
    }

    /// `(key, value)` for every key, in [`KEYS`] order.
    pub fn entries(&self) -> Vec<(&'static str, String)> {
        let e = |v: f64| format!("{v:e}");
        let o = |v: Option<f64>| v.map_or("auto".to_string(), |v| format!("{v:e}"));
        let p = &self.physical;
        let i = &self.instrument;
        let so = &self.solver;
        let sp = &self.spectrum;
        let values = vec![
            e(p.lambda_vac),
            e(p.n_l),
            e(p.l0),
            p.q.to_string(),
            e(p.delta_omega),
            e(p.temperature),
            e(p.n_bec),
            o(p.g_tilde),
            o(p.chi3),
            e(p.omega0),
            e(p.gamma_net),
            e(p.kappa_broad),
            e(p.sigma_dye),
            e(p.n_dye),
            e(p.kappa_cav),
            e(i.f_obj),
            e(i.l_prop),
            e(i.d_slit),
            e(i.m_y),
            e(i.d_grating),
            e(i.f_im),
            e(i.px_momentum),
            e(i.px_energy),
            i.bit_depth.to_string(),
            e(i.full_well_fraction),
            o(i.delta_eps_override),
            so.n.to_string(),
            o(so.extent),
            o(so.dt),
            so.max_steps.to_string(),
            e(so.tol),
            sp.nk.to_string(),
            sp.nomega.to_string(),
            o(sp.k_max),
            o(sp.omega_min),
            o(sp.omega_max),
            name_of(MODELS, &sp.model).to_string(),
            name_of(TRAPS, &sp.closed_trap).to_string(),
            name_of(BOSE, &sp.bose).to_string(),
            e(sp.r_cut_factor),
            e(sp.quad_rel_tol),
            name_of(NORMS, &sp.normalization).to_string(),
        ];
        KEYS.iter().map(|k| k.0).zip(values).collect()
    }

    /// Canonical text: every key, shortest round-trip numbers.
    pub fn emit(&self) -> String {
        self.entries().into_iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
    }

    /// SHA-256 of [`RunConfig::emit`].
    pub fn sha256(&self) -> String {
        super::sha256_hex(self.emit().as_bytes())
    }

    fn validate(&self) -> Result<()> {
        self.physical.validate()?;
        self.instrument.validate()?;
        let so = &self.solver;
        if so.n < 8 || so.n % 2 != 0 {
            return Err(Error::param("solver_n", "must be even and >= 8"));
        }
        for (name, v) in [("solver_extent", so.extent), ("solver_dt", so.dt)] {
            if let Some(v) = v {
                if !(v > 0.0) {
                    return Err(Error::param(name, "must be > 0"));
                }
            }
        }
        if !(so.tol > 0.0) {
            return Err(Error::param("solver_tol", "must be > 0"));
        }
        let sp = &self.spectrum;
        if sp.nk < 2 {
            return Err(Error::param("spectrum_nk", "must be >= 2"));
        }
        if sp.nomega < 3 {
            return Err(Error::param("spectrum_nomega", "must be >= 3"));
        }
        if let Some(k) = sp.k_max {
            if !(k > 0.0) {
                return Err(Error::param("k_max", "must be > 0"));
            }
        }
        if let (Some(a), Some(b)) = (sp.omega_min, sp.omega_max) {
            if !(b > a) {
                return Err(Error::param("omega_max", "must exceed omega_min"));
            }
        }
        if !(sp.r_cut_factor > 0.0) {
            return Err(Error::param("r_cut_factor", "must be > 0"));
        }
        if !(sp.quad_rel_tol > 0.0 && sp.quad_rel_tol < 1.0) {
            return Err(Error::param("quad_rel_tol", "must lie in (0, 1)"));
        }
        Ok(())
    }
}

/// Parses and validates a config. Diagnostics carry the 1-based line number
/// (0 when a constraint is not tied to one line).
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let mut cfg = RunConfig::default();
    let mut seen: HashMap<String, usize> = HashMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (key, value) = body
            .split_once('=')
            .ok_or_else(|| Error::Config { line, message: format!("expected `key = value`, got `{body}`") })?;
        let (key, value) = (key.trim(), value.trim());
        if let Some(prev) = seen.get(key) {
            return Err(Error::Config { line, message: format!("`{key}` already set on line {prev}") });
        }
        cfg.set(key, value).map_err(|message| Error::Config { line, message })?;
        seen.insert(key.to_string(), line);
    }
    if cfg.physical.g_tilde.is_some() && cfg.physical.chi3.is_some() {
        match seen.get("g_tilde") {
            Some(&g_line) => {
                let line = g_line.max(seen["chi3"]);
                return Err(Error::Config { line, message: Error::AmbiguousInteraction.to_string() });
            }
            // a chi3 source replaces the default g_tilde
            None => cfg.physical.g_tilde = None,
        }
    }
    cfg.validate().map_err(|e| {
        let line = match &e {
            Error::InvalidParameter { name, .. } => seen.get(*name).copied().unwrap_or(0),
            Error::AmbiguousInteraction => seen.get("chi3").copied().unwrap_or(0),
            _ => 0,
        };
        Error::Config { line, message: e.to_string() }
    })?;
    Ok(cfg)
}
