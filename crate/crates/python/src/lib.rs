//! Python module `pbec`: parameters, spectra, the spectrometer forward model
//! and the config-driven pipeline. Rates are rad/s, lengths m, k in 1/m.

use std::path::PathBuf;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use pbec_core::cgpe;
use pbec_core::instrument::{self, Limit};
use pbec_core::io::{self, config::SpectrumModel};
use pbec_core::lda_spectrum::{self, BoseConvention, ClosedModel, ClosedOptions, RadialRule};
use pbec_core::open_spectrum;
use pbec_core::params;
use pbec_core::pipeline::{self, Command, Outputs};
use pbec_core::quadrature::QuadratureSpec;
use pbec_core::Error;

fn err(e: Error) -> PyErr {
    match e {
        Error::InvalidParameter { .. }
        | Error::AmbiguousInteraction
        | Error::MissingInteraction(_)
        | Error::InvalidGrid(_)
        | Error::InvalidInput(_)
        | Error::Config { .. }
        | Error::UnderResolved { .. }
        | Error::StabilityBound { .. } => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

#[pyclass(name = "PhysicalParams", module = "pbec", from_py_object)]
#[derive(Clone)]
struct PyParams {
    inner: params::PhysicalParams,
}

#[pymethods]
impl PyParams {
    /// Keyword arguments override the defaults; passing `chi3` alone makes
    /// it the interaction source.
    #[new]
    #[pyo3(signature = (*, lambda_vac=None, n_l=None, l0=None, q=None, temperature=None, n_bec=None,
        g_tilde=None, chi3=None, omega0=None, gamma_net=None, kappa_broad=None))]
    #[allow(clippy::too_many_arguments)]
    fn new(
        lambda_vac: Option<f64>,
        n_l: Option<f64>,
        l0: Option<f64>,
        q: Option<u32>,
        temperature: Option<f64>,
        n_bec: Option<f64>,
        g_tilde: Option<f64>,
        chi3: Option<f64>,
        omega0: Option<f64>,
        gamma_net: Option<f64>,
        kappa_broad: Option<f64>,
    ) -> PyResult<Self> {
        let mut p = params::PhysicalParams::default();
        macro_rules! take {
            ($($f:ident),*) => { $( if let Some(v) = $f { p.$f = v; } )* };
        }
        take!(lambda_vac, n_l, l0, q, temperature, n_bec, omega0, gamma_net, kappa_broad);
        if chi3.is_some() {
            p.chi3 = chi3;
            p.g_tilde = g_tilde;
        } else if g_tilde.is_some() {
            p.g_tilde = g_tilde;
        }
        p.validate().map_err(err)?;
        Ok(Self { inner: p })
    }

    #[getter]
    fn lambda_vac(&self) -> f64 {
        self.inner.lambda_vac
    }
    #[getter]
    fn n_l(&self) -> f64 {
        self.inner.n_l
    }
    #[getter]
    fn l0(&self) -> f64 {
        self.inner.l0
    }
    #[getter]
    fn temperature(&self) -> f64 {
        self.inner.temperature
    }
    #[getter]
    fn n_bec(&self) -> f64 {
        self.inner.n_bec
    }
    #[getter]
    fn g_tilde(&self) -> Option<f64> {
        self.inner.g_tilde
    }
    #[getter]
    fn chi3(&self) -> Option<f64> {
        self.inner.chi3
    }
    #[getter]
    fn omega0(&self) -> f64 {
        self.inner.omega0
    }
    #[getter]
    fn gamma_net(&self) -> f64 {
        self.inner.gamma_net
    }
    #[getter]
    fn kappa_broad(&self) -> f64 {
        self.inner.kappa_broad
    }

    /// Effective photon mass (kg).
    fn mass(&self) -> f64 {
        self.inner.mass()
    }

    fn kinetic_rate(&self, k: f64) -> f64 {
        self.inner.kinetic_rate(k)
    }

    /// `(g, g_tilde)` of the configured interaction source.
    fn interaction(&self) -> PyResult<(f64, f64)> {
        let i = self.inner.interaction().map_err(err)?;
        Ok((i.g, i.g_tilde))
    }

    fn mu_thomas_fermi_rate(&self) -> PyResult<f64> {
        params::mu_thomas_fermi_rate(&self.inner).map_err(err)
    }

    fn with_g_tilde(&self, g_tilde: f64) -> Self {
        Self { inner: self.inner.with_g_tilde(g_tilde) }
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.inner)
    }
}

/// `(g, g_tilde)` from the Kerr susceptibility.
#[pyfunction]
fn g_from_chi3(p: &PyParams) -> PyResult<(f64, f64)> {
    params::g_from_chi3(&p.inner).map_err(err)
}

/// `(xi, u2, v2)` of the Bogoliubov mode.
#[pyfunction]
fn bogoliubov(eps_k: f64, mu: f64) -> (f64, f64, f64) {
    let b = open_spectrum::bogoliubov(eps_k, mu);
    (b.xi_k, b.u2, b.v2)
}

#[pyfunction]
fn spectral_weight_open(k: f64, omega: f64, mu: f64, gamma_net: f64, p: &PyParams) -> PyResult<f64> {
    open_spectrum::spectral_weight_open(k, omega, mu, gamma_net, &p.inner).map_err(err)
}

#[pyfunction]
fn weight_closed(eps: f64, omega: f64, mu_local: f64, kappa: f64) -> f64 {
    lda_spectrum::weight_closed_eps(eps, omega, mu_local, kappa)
}

#[pyclass(name = "SpectrumGrid", module = "pbec", from_py_object)]
#[derive(Clone)]
struct PyGrid {
    inner: open_spectrum::SpectrumGrid,
}

#[pymethods]
impl PyGrid {
    #[new]
    fn new(k_axis: Vec<f64>, omega_axis: Vec<f64>, values: Vec<Vec<f64>>) -> PyResult<Self> {
        let (nw, nk) = (omega_axis.len(), k_axis.len());
        if values.len() != nw || values.iter().any(|r| r.len() != nk) {
            return Err(PyValueError::new_err(format!("values must be {nw} rows of {nk}")));
        }
        let flat: Vec<f64> = values.into_iter().flatten().collect();
        let arr = ndarray::Array2::from_shape_vec((nw, nk), flat).expect("checked shape");
        Ok(Self { inner: open_spectrum::SpectrumGrid::new(k_axis, omega_axis, arr).map_err(err)? })
    }

    #[getter]
    fn k_axis(&self) -> Vec<f64> {
        self.inner.k_axis.clone()
    }

    #[getter]
    fn omega_axis(&self) -> Vec<f64> {
        self.inner.omega_axis.clone()
    }

    /// Rows along ω, columns along k.
    #[getter]
    fn values(&self) -> Vec<Vec<f64>> {
        self.inner.values.rows().into_iter().map(|r| r.to_vec()).collect()
    }

    #[getter]
    fn shape(&self) -> (usize, usize) {
        self.inner.values.dim()
    }

    fn max(&self) -> f64 {
        self.inner.max()
    }

    fn normalized(&self) -> Self {
        Self { inner: self.inner.normalized() }
    }

    /// Ridge position per k column, `None` where no peak was found.
    fn dispersion(&self) -> Vec<Option<f64>> {
        open_spectrum::dispersion_extract(&self.inner).omega_peak
    }

    fn __repr__(&self) -> String {
        let (nw, nk) = self.inner.values.dim();
        format!("SpectrumGrid(nk={nk}, nomega={nw})")
    }
}

#[pyfunction]
fn pl_open(
    py: Python<'_>,
    k_axis: Vec<f64>,
    omega_axis: Vec<f64>,
    p: &PyParams,
    mu: f64,
    gamma_net: f64,
    temperature: f64,
) -> PyResult<PyGrid> {
    let p = p.inner.clone();
    let g = py.detach(|| open_spectrum::pl_open(&k_axis, &omega_axis, &p, mu, gamma_net, temperature));
    Ok(PyGrid { inner: g.map_err(err)? })
}

/// Closed-model spectrum; `trap` is "harmonic" or "homogeneous", `bose` is
/// "local" or "global".
#[pyfunction]
#[pyo3(signature = (k_axis, omega_axis, p, trap="harmonic", bose="local", rel_tol=1e-4))]
fn pl_closed(
    py: Python<'_>,
    k_axis: Vec<f64>,
    omega_axis: Vec<f64>,
    p: &PyParams,
    trap: &str,
    bose: &str,
    rel_tol: f64,
) -> PyResult<PyGrid> {
    let model = match trap {
        "harmonic" => ClosedModel::HarmonicLda,
        "homogeneous" => ClosedModel::Homogeneous,
        other => return Err(PyValueError::new_err(format!("unknown trap `{other}`"))),
    };
    let bose = match bose {
        "local" => BoseConvention::Local,
        "global" => BoseConvention::Global,
        other => return Err(PyValueError::new_err(format!("unknown Bose convention `{other}`"))),
    };
    let p = p.inner.clone();
    let opts = ClosedOptions {
        model,
        bose,
        rule: RadialRule::Adaptive(QuadratureSpec { rel_tol, ..Default::default() }),
        ..ClosedOptions::new(&p)
    };
    let g = py.detach(|| lda_spectrum::pl_closed(&k_axis, &omega_axis, &p, opts));
    Ok(PyGrid { inner: g.map_err(err)? })
}

#[pyclass(name = "InstrumentConfig", module = "pbec", from_py_object)]
#[derive(Clone)]
struct PyInstrument {
    inner: instrument::InstrumentConfig,
}

#[pymethods]
impl PyInstrument {
    #[new]
    #[pyo3(signature = (*, f_obj=None, l_prop=None, d_slit=None, m_y=None, d_grating=None, f_im=None,
        px_momentum=None, px_energy=None, bit_depth=None, full_well_fraction=None, delta_eps_override=None))]
    #[allow(clippy::too_many_arguments)]
    fn new(
        f_obj: Option<f64>,
        l_prop: Option<f64>,
        d_slit: Option<f64>,
        m_y: Option<f64>,
        d_grating: Option<f64>,
        f_im: Option<f64>,
        px_momentum: Option<f64>,
        px_energy: Option<f64>,
        bit_depth: Option<u32>,
        full_well_fraction: Option<f64>,
        delta_eps_override: Option<f64>,
    ) -> PyResult<Self> {
        let mut c = instrument::InstrumentConfig::default();
        macro_rules! take {
            ($($f:ident),*) => { $( if let Some(v) = $f { c.$f = v; } )* };
        }
        take!(f_obj, l_prop, d_slit, m_y, d_grating, f_im, px_momentum, px_energy, bit_depth, full_well_fraction);
        c.delta_eps_override = delta_eps_override;
        c.validate().map_err(err)?;
        Ok(Self { inner: c })
    }

    #[getter]
    fn bit_depth(&self) -> u32 {
        self.inner.bit_depth
    }

    #[getter]
    fn full_well_fraction(&self) -> f64 {
        self.inner.full_well_fraction
    }

    fn aperture(&self) -> f64 {
        self.inner.aperture()
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.inner)
    }
}

#[pyclass(name = "ResolutionBudget", module = "pbec", frozen)]
struct PyBudget {
    inner: instrument::ResolutionBudget,
}

#[pymethods]
impl PyBudget {
    #[getter]
    fn delta_k(&self) -> f64 {
        self.inner.delta_k
    }
    #[getter]
    fn px_opt(&self) -> f64 {
        self.inner.px_opt
    }
    #[getter]
    fn delta_lambda(&self) -> f64 {
        self.inner.delta_lambda
    }
    #[getter]
    fn delta_eps(&self) -> f64 {
        self.inner.delta_eps
    }
    #[getter]
    fn gmin_momentum(&self) -> f64 {
        self.inner.gmin_momentum
    }
    #[getter]
    fn gmin_energy(&self) -> f64 {
        self.inner.gmin_energy
    }
    #[getter]
    fn k_pixel(&self) -> f64 {
        self.inner.k_pixel
    }
    #[getter]
    fn omega_pixel(&self) -> f64 {
        self.inner.omega_pixel
    }

    /// "momentum" or "energy".
    fn dominant(&self) -> &'static str {
        match self.inner.dominant() {
            Limit::Momentum => "momentum",
            Limit::Energy => "energy",
        }
    }

    fn report(&self) -> String {
        self.inner.report()
    }
}

#[pyfunction]
fn resolution_budget(cfg: &PyInstrument, p: &PyParams) -> PyResult<PyBudget> {
    Ok(PyBudget { inner: instrument::resolution_budget(&cfg.inner, &p.inner).map_err(err)? })
}

#[pyfunction]
fn convolve_instrument(grid: &PyGrid, cfg: &PyInstrument, p: &PyParams) -> PyResult<PyGrid> {
    Ok(PyGrid { inner: instrument::convolve_instrument(&grid.inner, &cfg.inner, &p.inner).map_err(err)? })
}

#[pyfunction]
fn camera_stage(grid: &PyGrid, cfg: &PyInstrument, p: &PyParams) -> PyResult<PyGrid> {
    Ok(PyGrid { inner: instrument::camera_stage(&grid.inner, &cfg.inner, &p.inner).map_err(err)? })
}

/// `(mu, steps, density rows)` of the imaginary-time ground state.
#[pyfunction]
#[pyo3(signature = (p, n=128, extent=None))]
fn ground_state(py: Python<'_>, p: &PyParams, n: usize, extent: Option<f64>) -> PyResult<(f64, usize, Vec<Vec<f64>>)> {
    let p = p.inner.clone();
    let r = py.detach(|| -> pbec_core::Result<cgpe::Relaxed> {
        let extent = match extent {
            Some(e) => e,
            None => cgpe::auto_extent(&p)?,
        };
        let v = cgpe::PotentialMap::harmonic(n, extent, &p)?;
        cgpe::relax_with(&v, &p, p.n_bec, &cgpe::RelaxSpec::default(), None)
    });
    let r = r.map_err(err)?;
    let rows = r.field.density().rows().into_iter().map(|row| row.to_vec()).collect();
    Ok((r.mu, r.steps, rows))
}

#[pyclass(name = "RunConfig", module = "pbec", from_py_object)]
#[derive(Clone)]
struct PyRunConfig {
    inner: io::RunConfig,
}

#[pymethods]
impl PyRunConfig {
    /// Parses `key = value` text; an empty string gives the defaults.
    #[new]
    #[pyo3(signature = (text=""))]
    fn new(text: &str) -> PyResult<Self> {
        Ok(Self { inner: io::parse_config(text).map_err(err)? })
    }

    #[staticmethod]
    fn load(path: PathBuf) -> PyResult<Self> {
        Ok(Self { inner: pipeline::load_config(&path).map_err(err)? })
    }

    #[getter]
    fn physical(&self) -> PyParams {
        PyParams { inner: self.inner.physical.clone() }
    }

    #[getter]
    fn instrument(&self) -> PyInstrument {
        PyInstrument { inner: self.inner.instrument.clone() }
    }

    /// Copy with the spectrum model set to "open" or "closed".
    fn with_model(&self, model: &str) -> PyResult<Self> {
        let m = match model {
            "open" => SpectrumModel::Open,
            "closed" => SpectrumModel::Closed,
            other => return Err(PyValueError::new_err(format!("unknown model `{other}`"))),
        };
        Ok(Self { inner: pipeline::with_model(&self.inner, Some(m)) })
    }

    fn emit(&self) -> String {
        self.inner.emit()
    }

    fn sha256(&self) -> String {
        self.inner.sha256()
    }

    fn spectrum(&self, py: Python<'_>) -> PyResult<PyGrid> {
        let cfg = self.inner.clone();
        Ok(PyGrid { inner: py.detach(|| pipeline::spectrum(&cfg)).map_err(err)? })
    }

    fn budget(&self) -> PyResult<PyBudget> {
        Ok(PyBudget { inner: pipeline::budget(&self.inner).map_err(err)? })
    }

    /// Runs a subcommand ("solve", "spectrum", "instrument", "resolve",
    /// "dispersion") and returns the paths written.
    #[pyo3(signature = (command, out=None, image=None, input=None))]
    fn run(
        &self,
        py: Python<'_>,
        command: &str,
        out: Option<PathBuf>,
        image: Option<PathBuf>,
        input: Option<PathBuf>,
    ) -> PyResult<Vec<PathBuf>> {
        let cmd = match command {
            "solve" => Command::Solve,
            "spectrum" => Command::Spectrum,
            "instrument" => Command::Instrument,
            "resolve" => Command::Resolve,
            "dispersion" => Command::Dispersion,
            other => return Err(PyValueError::new_err(format!("unknown command `{other}`"))),
        };
        let cfg = self.inner.clone();
        let outputs = Outputs { out, image, input };
        py.detach(|| pipeline::run(cmd, &cfg, &outputs)).map_err(|e| {
            let msg = e.to_string();
            match err(e.source) {
                v if v.is_instance_of::<PyValueError>(py) => PyValueError::new_err(msg),
                _ => PyRuntimeError::new_err(msg),
            }
        })
    }
}

#[pymodule]
fn pbec(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyParams>()?;
    m.add_class::<PyGrid>()?;
    m.add_class::<PyInstrument>()?;
    m.add_class::<PyBudget>()?;
    m.add_class::<PyRunConfig>()?;
    m.add_function(wrap_pyfunction!(g_from_chi3, m)?)?;
    m.add_function(wrap_pyfunction!(bogoliubov, m)?)?;
    m.add_function(wrap_pyfunction!(spectral_weight_open, m)?)?;
    m.add_function(wrap_pyfunction!(weight_closed, m)?)?;
    m.add_function(wrap_pyfunction!(pl_open, m)?)?;
    m.add_function(wrap_pyfunction!(pl_closed, m)?)?;
    m.add_function(wrap_pyfunction!(resolution_budget, m)?)?;
    m.add_function(wrap_pyfunction!(convolve_instrument, m)?)?;
    m.add_function(wrap_pyfunction!(camera_stage, m)?)?;
    m.add_function(wrap_pyfunction!(ground_state, m)?)?;
    Ok(())
}
