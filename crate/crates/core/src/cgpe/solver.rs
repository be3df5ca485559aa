use num_complex::Complex64;
use rayon::prelude::*;

use super::fft::{wavenumbers, Fft2};
use super::field::{ComplexField2D, PotentialMap};
use crate::constants::HBAR;
use crate::error::{Error, Result};
use crate::params::PhysicalParams;

const DIVERGENCE_FACTOR: f64 = 1e3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    RealTime,
    ImaginaryTime,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gain {
    Conservative,
    /// `i(γ_net − Γ|ψ|²)` with `γ_net` in rad/s and `Γ` in rad·m²/s.
    Open { gamma_net: f64, saturation: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionSpec {
    pub dt: f64,
    pub steps: usize,
    pub mode: Mode,
    pub gain: Gain,
}

impl EvolutionSpec {
    pub fn conservative(dt: f64, steps: usize) -> Self {
        Self { dt, steps, mode: Mode::RealTime, gain: Gain::Conservative }
    }

    pub fn open(dt: f64, steps: usize, gamma_net: f64, saturation: f64) -> Self {
        Self { dt, steps, mode: Mode::RealTime, gain: Gain::Open { gamma_net, saturation } }
    }
}

/// Energy functional split into its parts, all as rates (rad/s) summed over
/// the particles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Energies {
    pub kinetic: f64,
    pub potential: f64,
    pub interaction: f64,
    pub particles: f64,
}

impl Energies {
    pub fn total(&self) -> f64 {
        self.kinetic + self.potential + self.interaction
    }

    /// `μ = (E_kin + E_pot + 2 E_int) / N`.
    pub fn chemical_potential(&self) -> f64 {
        (self.kinetic + self.potential + 2.0 * self.interaction) / self.particles
    }
}

/// Split-step propagator for one potential and parameter set.
pub struct Solver {
    fft: Fft2,
    potential: PotentialMap,
    /// `ħk²/2m` for every Fourier cell (symmetric, layout-free).
    kinetic: Vec<f64>,
    g_rate: f64,
    cached: Option<(f64, Mode, Vec<Complex64>)>,
    steps_taken: usize,
}

impl Solver {
    pub fn new(potential: &PotentialMap, p: &PhysicalParams) -> Result<Self> {
        let n = potential.n();
        if let Some(v) = potential.values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(format!("potential contains non-finite value {v}")));
        }
        let inter = p.interaction()?;
        let k = wavenumbers(n, potential.extent);
        let h = p.hbar_over_2m();
        let mut kinetic = Vec::with_capacity(n * n);
        for a in &k {
            for b in &k {
                kinetic.push(h * (a * a + b * b));
            }
        }
        Ok(Self {
            fft: Fft2::new(n),
            potential: potential.clone(),
            kinetic,
            g_rate: inter.g / HBAR,
            cached: None,
            steps_taken: 0,
        })
    }

    pub fn potential(&self) -> &PotentialMap {
        &self.potential
    }

    /// `g/ħ` (rad·m²/s).
    pub fn g_rate(&self) -> f64 {
        self.g_rate
    }

    pub fn eps_max(&self) -> f64 {
        self.kinetic.iter().copied().fold(0.0, f64::max)
    }

    pub fn steps_taken(&self) -> usize {
        self.steps_taken
    }

    fn check_field(&self, field: &ComplexField2D) -> Result<()> {
        if field.n() != self.potential.n() || field.extent != self.potential.extent {
            return Err(Error::InvalidGrid(format!(
                "field grid {}@{:e} does not match potential grid {}@{:e}",
                field.n(),
                field.extent,
                self.potential.n(),
                self.potential.extent
            )));
        }
        Ok(())
    }

    /// Real time: `dt·max(|V|, ε_max) < 0.5`. Imaginary time only bounds the
    /// position-space factor, `dt·max(V − V_min, g·n_peak) < 0.5`; the kinetic
    /// factor `e^{−ε dt}` is a contraction for any `dt`.
    pub fn check_stability(&self, spec: &EvolutionSpec, field: &ComplexField2D) -> Result<()> {
        if !(spec.dt > 0.0) || !spec.dt.is_finite() {
            return Err(Error::param("dt", "must be finite and > 0"));
        }
        let rate = match spec.mode {
            Mode::RealTime => {
                let v = self.potential.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
                v.max(self.eps_max())
            }
            Mode::ImaginaryTime => {
                let range = self.potential.max() - self.potential.min();
                range.max(self.g_rate * field.peak_density())
            }
        };
        let product = spec.dt * rate;
        if product >= 0.5 {
            return Err(Error::StabilityBound { dt: spec.dt, product });
        }
        Ok(())
    }

    fn kinetic_factor(&mut self, dt: f64, mode: Mode) -> &[Complex64] {
        let stale = !matches!(&self.cached, Some((d, m, _)) if *d == dt && *m == mode);
        if stale {
            let table = self
                .kinetic
                .iter()
                .map(|&e| match mode {
                    Mode::RealTime => Complex64::from_polar(1.0, -e * dt),
                    Mode::ImaginaryTime => Complex64::new((-e * dt).exp(), 0.0),
                })
                .collect();
            self.cached = Some((dt, mode, table));
        }
        &self.cached.as_ref().unwrap().2
    }

    fn kinetic_step(&mut self, field: &mut ComplexField2D, dt: f64, mode: Mode) {
        let data = field.values.as_slice_mut().expect("standard layout");
        self.fft.forward(data);
        let factor = self.kinetic_factor(dt, mode);
        data.par_iter_mut().zip(factor.par_iter()).for_each(|(z, f)| *z *= f);
        self.fft.inverse(field.values.as_slice_mut().unwrap());
    }

    fn position_half(&self, field: &mut ComplexField2D, tau: f64, mode: Mode, gain: Gain) {
        let g = self.g_rate;
        let v = self.potential.values.as_slice().unwrap();
        let data = field.values.as_slice_mut().expect("standard layout");
        match (mode, gain) {
            (Mode::ImaginaryTime, _) => {
                data.par_iter_mut().zip(v.par_iter()).for_each(|(z, &v)| {
                    *z *= (-(v + g * z.norm_sqr()) * tau).exp();
                });
            }
            (Mode::RealTime, Gain::Conservative) => {
                data.par_iter_mut().zip(v.par_iter()).for_each(|(z, &v)| {
                    *z *= Complex64::from_polar(1.0, -(v + g * z.norm_sqr()) * tau);
                });
            }
            (Mode::RealTime, Gain::Open { gamma_net, saturation }) => {
                // exact solution of ṅ = 2(γ − Γn)n with the phase following ∫n dt
                let grow = (2.0 * gamma_net * tau).exp_m1();
                let s = if gamma_net == 0.0 { 2.0 * tau } else { grow / gamma_net };
                data.par_iter_mut().zip(v.par_iter()).for_each(|(z, &v)| {
                    let n0 = z.norm_sqr();
                    if n0 == 0.0 {
                        return;
                    }
                    let denom = 1.0 + saturation * n0 * s;
                    let ratio = (1.0 + grow) / denom;
                    let integral = if saturation != 0.0 {
                        (saturation * n0 * s).ln_1p() / (2.0 * saturation)
                    } else if gamma_net != 0.0 {
                        n0 * grow / (2.0 * gamma_net)
                    } else {
                        n0 * tau
                    };
                    *z *= Complex64::from_polar(ratio.sqrt(), -(v * tau + g * integral));
                });
            }
        }
    }

    /// One Strang step: half position step, full kinetic step, half position step.
    pub fn step(&mut self, field: &mut ComplexField2D, spec: &EvolutionSpec) -> Result<()> {
        self.check_field(field)?;
        let before = field.peak_density();
        let tau = 0.5 * spec.dt;
        self.position_half(field, tau, spec.mode, spec.gain);
        self.kinetic_step(field, spec.dt, spec.mode);
        self.position_half(field, tau, spec.mode, spec.gain);
        self.steps_taken += 1;
        let after = field.peak_density();
        if !after.is_finite() || (before > 0.0 && after > DIVERGENCE_FACTOR * before) {
            return Err(Error::Diverged {
                step: self.steps_taken,
                growth: if before > 0.0 { after / before } else { f64::INFINITY },
            });
        }
        Ok(())
    }

    /// Runs `spec.steps` steps after checking the stability bound.
    pub fn evolve(&mut self, field: &mut ComplexField2D, spec: &EvolutionSpec) -> Result<()> {
        self.check_field(field)?;
        self.check_stability(spec, field)?;
        for _ in 0..spec.steps {
            self.step(field, spec)?;
        }
        Ok(())
    }

    pub fn energies(&self, field: &ComplexField2D) -> Energies {
        let n = field.n();
        let dx2 = field.dx() * field.dx();
        let mut spec = field.values.as_slice().unwrap().to_vec();
        self.fft.forward(&mut spec);
        let kinetic = spec
            .iter()
            .zip(&self.kinetic)
            .map(|(z, e)| z.norm_sqr() * e)
            .sum::<f64>()
            * dx2
            / (n * n) as f64;
        let mut potential = 0.0;
        let mut interaction = 0.0;
        let mut particles = 0.0;
        for (z, v) in field.values.iter().zip(self.potential.values.iter()) {
            let d = z.norm_sqr();
            potential += v * d;
            interaction += d * d;
            particles += d;
        }
        Energies {
            kinetic,
            potential: potential * dx2,
            interaction: 0.5 * self.g_rate * interaction * dx2,
            particles: particles * dx2,
        }
    }

    /// `0.1 / max(ε_max, |V|_max, μ)`, the default real-time step.
    pub fn auto_dt_real(&self, mu: f64) -> f64 {
        let v = self.potential.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        0.1 / self.eps_max().max(v).max(mu)
    }
}

/// One split step with a freshly built propagator.
pub fn step(field: &ComplexField2D, v: &PotentialMap, p: &PhysicalParams, spec: &EvolutionSpec) -> Result<ComplexField2D> {
    let mut solver = Solver::new(v, p)?;
    let mut out = field.clone();
    solver.check_stability(spec, &out)?;
    solver.step(&mut out, spec)?;
    Ok(out)
}

/// Real-time evolution with gain and saturation for `spec.steps` steps.
pub fn evolve_open(field: &ComplexField2D, v: &PotentialMap, p: &PhysicalParams, spec: &EvolutionSpec) -> Result<ComplexField2D> {
    match spec.gain {
        Gain::Open { saturation, .. } if saturation > 0.0 => {}
        Gain::Open { .. } => return Err(Error::param("saturation", "open evolution needs Gamma > 0")),
        Gain::Conservative => return Err(Error::param("gain", "open evolution needs gain parameters")),
    }
    if spec.mode != Mode::RealTime {
        return Err(Error::param("mode", "open evolution runs in real time"));
    }
    let mut solver = Solver::new(v, p)?;
    let mut out = field.clone();
    solver.evolve(&mut out, spec)?;
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelaxSpec {
    /// Imaginary time step (s); `None` picks `0.1 / max(V range, μ)`.
    pub dt: Option<f64>,
    pub max_steps: usize,
    /// Relative energy change per step below which the state is converged.
    pub tol: f64,
    pub check_every: usize,
}

impl Default for RelaxSpec {
    fn default() -> Self {
        Self { dt: None, max_steps: 200_000, tol: 1e-10, check_every: 10 }
    }
}

#[derive(Debug, Clone)]
pub struct Relaxed {
    pub field: ComplexField2D,
    pub steps: usize,
    pub energies: Energies,
    /// Chemical potential of the converged state (rad/s).
    pub mu: f64,
}

/// Chemical potential whose Thomas-Fermi profile on this grid holds `target_n`.
fn grid_tf_mu(v: &PotentialMap, g_rate: f64, target_n: f64) -> f64 {
    let dx2 = (v.extent / v.n() as f64).powi(2);
    let count = |mu: f64| v.values.iter().map(|&vv| (mu - vv).max(0.0)).sum::<f64>() * dx2 / g_rate;
    let vmin = v.min();
    let mut lo = vmin;
    let mut hi = vmin + (v.max() - vmin).max(1.0);
    while count(hi) < target_n {
        hi = vmin + 2.0 * (hi - vmin);
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if count(mid) < target_n {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Starting state: Thomas-Fermi profile when interacting, a broad Gaussian-like
/// profile otherwise, plus a small floor so nothing starts at exactly zero.
pub fn initial_guess(v: &PotentialMap, p: &PhysicalParams, target_n: f64) -> Result<ComplexField2D> {
    let g_rate = p.interaction()?.g / HBAR;
    let vmin = v.min();
    let vrange = v.max() - vmin;
    let density: Vec<f64> = if vrange == 0.0 {
        vec![1.0; v.n() * v.n()]
    } else if g_rate > 0.0 {
        let mu = grid_tf_mu(v, g_rate, target_n);
        let peak = (mu - vmin) / g_rate;
        v.values.iter().map(|&vv| (mu - vv).max(0.0) / g_rate + 1e-4 * peak).collect()
    } else {
        let scale = if p.omega0 > 0.0 { p.omega0 } else { vrange / 10.0 };
        v.values.iter().map(|&vv| (-(vv - vmin) / scale).exp() + 1e-8).collect()
    };
    let values = ndarray::Array2::from_shape_vec((v.n(), v.n()), density.into_iter().map(|d| Complex64::new(d.sqrt(), 0.0)).collect())
        .expect("square grid");
    let mut field = ComplexField2D::from_values(values, v.extent)?;
    field.scale_to(target_n);
    Ok(field)
}

/// Imaginary-time relaxation with renormalization to `target_n` after each step.
pub fn relax_to_steady_state(v: &PotentialMap, p: &PhysicalParams, target_n: f64) -> Result<ComplexField2D> {
    Ok(relax_with(v, p, target_n, &RelaxSpec::default(), None)?.field)
}

/// As [`relax_to_steady_state`], with explicit settings and an optional start.
pub fn relax_with(
    v: &PotentialMap,
    p: &PhysicalParams,
    target_n: f64,
    spec: &RelaxSpec,
    start: Option<ComplexField2D>,
) -> Result<Relaxed> {
    if !(target_n > 0.0) || !target_n.is_finite() {
        return Err(Error::param("target_n", "must be finite and > 0"));
    }
    let mut solver = Solver::new(v, p)?;
    let mut field = match start {
        Some(f) => f,
        None => initial_guess(v, p, target_n)?,
    };
    field.scale_to(target_n);
    let dt = match spec.dt {
        Some(dt) => dt,
        None => {
            let mu = solver.g_rate() * field.peak_density();
            let rate = (v.max() - v.min()).max(mu);
            if rate == 0.0 {
                // free particles on a flat grid: the uniform start is exact
                let energies = solver.energies(&field);
                return Ok(Relaxed { mu: energies.chemical_potential(), field, steps: 0, energies });
            }
            0.1 / rate
        }
    };
    let evo = EvolutionSpec { dt, steps: 1, mode: Mode::ImaginaryTime, gain: Gain::Conservative };
    solver.check_stability(&evo, &field)?;
    let every = spec.check_every.max(1);
    let mut last = solver.energies(&field).total();
    let mut change = f64::INFINITY;
    let mut steps = 0;
    while steps < spec.max_steps {
        for _ in 0..every {
            solver.step(&mut field, &evo)?;
            field.scale_to(target_n);
        }
        steps += every;
        let e = solver.energies(&field).total();
        change = (e - last).abs() / e.abs().max(f64::MIN_POSITIVE) / every as f64;
        last = e;
        if change < spec.tol {
            let energies = solver.energies(&field);
            log::debug!("relaxation converged after {steps} steps");
            return Ok(Relaxed { mu: energies.chemical_potential(), field, steps, energies });
        }
    }
    Err(Error::NotConverged { steps, last_change: change })
}

/// Grid extent for a harmonic trap: four Thomas-Fermi radii, and at least
/// sixteen oscillator lengths.
pub fn auto_extent(p: &PhysicalParams) -> Result<f64> {
    let m = p.mass();
    let a_ho = (HBAR / (m * p.omega0)).sqrt();
    let mu = crate::params::mu_thomas_fermi_rate(p)?;
    let r_tf = (2.0 * HBAR * mu / (m * p.omega0 * p.omega0)).sqrt();
    Ok((4.0 * r_tf).max(16.0 * a_ho))
}
