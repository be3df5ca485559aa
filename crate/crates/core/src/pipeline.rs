//! Orchestration behind the `pbec` subcommands.

use std::fmt;
use std::path::{Path, PathBuf};

use crate::cgpe::{auto_extent, relax_with, PotentialMap, RelaxSpec, Relaxed};
use crate::error::{Error, Result};
use crate::instrument::{camera_stage, convolve_instrument, resolution_budget, ResolutionBudget};
use crate::io::config::{Normalization, SpectrumModel};
use crate::io::{self, atomic_write, parse_config, Provenance, RunConfig};
use crate::lda_spectrum::{pl_closed, ClosedOptions, RadialRule};
use crate::open_spectrum::{default_axes, dispersion_extract, linspace, pl_open, symmetric_axis, DispersionCurve, SpectrumGrid};
use crate::params::mu_thomas_fermi_rate;
use crate::quadrature::QuadratureSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Solve,
    Spectrum,
    Instrument,
    Resolve,
    Dispersion,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Solve => "solve",
            Command::Spectrum => "spectrum",
            Command::Instrument => "instrument",
            Command::Resolve => "resolve",
            Command::Dispersion => "dispersion",
        }
    }

    fn default_out(self) -> &'static str {
        match self {
            Command::Solve => "pbec_solve.csv",
            Command::Spectrum => "pbec_spectrum.csv",
            Command::Instrument => "pbec_instrument.csv",
            Command::Resolve => "pbec_resolve.txt",
            Command::Dispersion => "pbec_dispersion.csv",
        }
    }
}

/// A module error tagged with the subcommand that raised it.
#[derive(Debug)]
pub struct CommandError {
    pub command: Command,
    pub source: Error,
}

impl fmt::Display for CommandError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.command.name(), self.source)
    }
}

impl std::error::Error for CommandError {}

pub fn load_config(path: &Path) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path)?;
    parse_config(&text)
}

/// Config with the model replaced when an override is given.
pub fn with_model(cfg: &RunConfig, model: Option<SpectrumModel>) -> RunConfig {
    let mut c = cfg.clone();
    if let Some(m) = model {
        c.spectrum.model = m;
    }
    c
}

/// k axis over `±k_max` and a linear ω axis, each filled in from
/// [`default_axes`] where the config says `auto`.
pub fn spectrum_axes(cfg: &RunConfig) -> Result<(Vec<f64>, Vec<f64>)> {
    let p = &cfg.physical;
    let sp = &cfg.spectrum;
    let mu = mu_thomas_fermi_rate(p)?;
    let (k_def, w_def) = default_axes(p, mu, p.gamma_net, sp.nk, sp.nomega);
    let k = match sp.k_max {
        Some(k_max) => symmetric_axis(k_max, sp.nk),
        None => k_def,
    };
    let lo = sp.omega_min.unwrap_or(w_def[0]);
    let hi = sp.omega_max.unwrap_or(w_def[w_def.len() - 1]);
    if !(hi > lo) {
        return Err(Error::param("omega_max", "must exceed omega_min"));
    }
    let w = if sp.omega_min.is_none() && sp.omega_max.is_none() { w_def } else { linspace(lo, hi, sp.nomega) };
    Ok((k, w))
}

pub fn closed_options(cfg: &RunConfig) -> ClosedOptions {
    let sp = &cfg.spectrum;
    ClosedOptions {
        kappa: cfg.physical.kappa_broad,
        bose: sp.bose,
        model: sp.closed_trap,
        r_cut_factor: sp.r_cut_factor,
        rule: RadialRule::Adaptive(QuadratureSpec { rel_tol: sp.quad_rel_tol, ..Default::default() }),
    }
}

/// Ideal photoluminescence grid, before normalization.
pub fn raw_spectrum(cfg: &RunConfig) -> Result<SpectrumGrid> {
    let p = &cfg.physical;
    p.validate()?;
    let (k, w) = spectrum_axes(cfg)?;
    match cfg.spectrum.model {
        SpectrumModel::Open => {
            let mu = mu_thomas_fermi_rate(p)?;
            pl_open(&k, &w, p, mu, p.gamma_net, p.temperature)
        }
        SpectrumModel::Closed => pl_closed(&k, &w, p, closed_options(cfg)),
    }
}

pub fn spectrum(cfg: &RunConfig) -> Result<SpectrumGrid> {
    let g = raw_spectrum(cfg)?;
    Ok(match cfg.spectrum.normalization {
        Normalization::UnitMax => g.normalized(),
        Normalization::Raw => g,
    })
}

pub fn dispersion(cfg: &RunConfig) -> Result<DispersionCurve> {
    Ok(dispersion_extract(&raw_spectrum(cfg)?))
}

/// Convolved grid and camera image.
pub fn instrument(cfg: &RunConfig, grid: &SpectrumGrid) -> Result<(SpectrumGrid, SpectrumGrid)> {
    let conv = convolve_instrument(grid, &cfg.instrument, &cfg.physical)?;
    let image = camera_stage(&conv, &cfg.instrument, &cfg.physical)?;
    Ok((conv, image))
}

pub fn budget(cfg: &RunConfig) -> Result<ResolutionBudget> {
    resolution_budget(&cfg.instrument, &cfg.physical)
}

/// Trapped ground state by imaginary-time relaxation.
pub fn solve(cfg: &RunConfig) -> Result<Relaxed> {
    let p = &cfg.physical;
    p.validate()?;
    let extent = match cfg.solver.extent {
        Some(e) => e,
        None => auto_extent(p)?,
    };
    let v = PotentialMap::harmonic(cfg.solver.n, extent, p)?;
    let spec = RelaxSpec { dt: cfg.solver.dt, max_steps: cfg.solver.max_steps, tol: cfg.solver.tol, check_every: 10 };
    relax_with(&v, p, p.n_bec, &spec, None)
}

/// Where a subcommand writes.
#[derive(Debug, Clone, Default)]
pub struct Outputs {
    pub out: Option<PathBuf>,
    /// Camera image for `instrument`; defaults to the output path with `.pgm`.
    pub image: Option<PathBuf>,
    /// Precomputed spectrum for `instrument`.
    pub input: Option<PathBuf>,
}

fn units(cfg: &RunConfig) -> &'static str {
    match cfg.spectrum.normalization {
        Normalization::UnitMax => "k 1/m; omega rad/s relative to mu; intensity normalized to unit maximum",
        Normalization::Raw => "k 1/m; omega rad/s relative to mu; intensity arbitrary (area-normalized LDA convention)",
    }
}

/// Runs one subcommand and returns the files written.
pub fn run(cmd: Command, cfg: &RunConfig, outputs: &Outputs) -> std::result::Result<Vec<PathBuf>, CommandError> {
    run_inner(cmd, cfg, outputs).map_err(|source| CommandError { command: cmd, source })
}

fn run_inner(cmd: Command, cfg: &RunConfig, outputs: &Outputs) -> Result<Vec<PathBuf>> {
    let out = outputs.out.clone().unwrap_or_else(|| PathBuf::from(cmd.default_out()));
    let mut written = vec![out.clone()];
    let text = match cmd {
        Command::Solve => {
            let r = solve(cfg)?;
            log::info!("ground state after {} steps, mu = {:e} rad/s", r.steps, r.mu);
            let prov = Provenance::new(cfg, "x, y m; density 1/m^2; mu rad/s");
            io::write_density(&r.field, r.mu, &prov)
        }
        Command::Spectrum => io::write_grid(&spectrum(cfg)?, &Provenance::new(cfg, units(cfg))),
        Command::Dispersion => {
            let prov = Provenance::new(cfg, "k 1/m; omega_peak rad/s relative to mu; flag 1 = no ridge");
            io::write_curve(&dispersion(cfg)?, &prov)
        }
        Command::Resolve => {
            let prov = Provenance::new(cfg, "SI; rates rad/s");
            format!("# pbec-budget v1\n{}{}", prov.header_lines(), budget(cfg)?.report())
        }
        Command::Instrument => {
            let grid = match &outputs.input {
                Some(path) => io::read_grid(&std::fs::read_to_string(path)?)?.0,
                None => spectrum(cfg)?,
            };
            let (_, image) = instrument(cfg, &grid)?;
            let img_path = outputs.image.clone().unwrap_or_else(|| out.with_extension("pgm"));
            atomic_write(&img_path, &io::write_pgm(&image, cfg.instrument.bit_depth)?)?;
            written.push(img_path);
            let prov = Provenance::new(cfg, "k 1/m; omega rad/s relative to mu; camera counts");
            io::write_grid(&image, &prov)
        }
    };
    atomic_write(&out, text.as_bytes())?;
    Ok(written)
}
