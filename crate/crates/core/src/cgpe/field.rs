use ndarray::Array2;
use num_complex::Complex64;

use crate::constants::{EPS0, HBAR};
use crate::error::{Error, Result};
use crate::params::PhysicalParams;

fn check_grid(n: usize, extent: f64) -> Result<()> {
    if n < 32 || !n.is_power_of_two() {
        return Err(Error::InvalidGrid(format!("size {n} must be a power of two >= 32")));
    }
    if !(extent > 0.0) || !extent.is_finite() {
        return Err(Error::InvalidGrid(format!("extent {extent:e} must be finite and > 0")));
    }
    Ok(())
}

/// Coordinate of grid index `i`: `(i − n/2)·dx`, so the origin sits on a node.
pub fn coordinates(n: usize, extent: f64) -> Vec<f64> {
    let dx = extent / n as f64;
    (0..n).map(|i| (i as f64 - (n / 2) as f64) * dx).collect()
}

/// Condensate wavefunction on a periodic square grid, indexed `[y, x]`.
/// `|ψ|²` is a photon number density (1/m²).
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexField2D {
    pub values: Array2<Complex64>,
    pub extent: f64,
}

impl ComplexField2D {
    pub fn zeros(n: usize, extent: f64) -> Result<Self> {
        check_grid(n, extent)?;
        Ok(Self {
            values: Array2::zeros((n, n)),
            extent,
        })
    }

    pub fn from_values(values: Array2<Complex64>, extent: f64) -> Result<Self> {
        let (ny, nx) = values.dim();
        if ny != nx {
            return Err(Error::InvalidGrid(format!("grid must be square, got {ny}x{nx}")));
        }
        check_grid(nx, extent)?;
        Ok(Self {
            values: values.as_standard_layout().into_owned(),
            extent,
        })
    }

    /// Samples `f(x, y)` on the grid.
    pub fn from_fn(n: usize, extent: f64, f: impl Fn(f64, f64) -> Complex64) -> Result<Self> {
        check_grid(n, extent)?;
        let xs = coordinates(n, extent);
        Ok(Self {
            values: Array2::from_shape_fn((n, n), |(iy, ix)| f(xs[ix], xs[iy])),
            extent,
        })
    }

    pub fn n(&self) -> usize {
        self.values.nrows()
    }

    pub fn dx(&self) -> f64 {
        self.extent / self.n() as f64
    }

    pub fn density(&self) -> Array2<f64> {
        self.values.mapv(|z| z.norm_sqr())
    }

    /// `∬|ψ|² dx dy`.
    pub fn particle_number(&self) -> f64 {
        let dx = self.dx();
        self.values.iter().map(|z| z.norm_sqr()).sum::<f64>() * dx * dx
    }

    pub fn peak_density(&self) -> f64 {
        self.values.iter().map(|z| z.norm_sqr()).fold(0.0, f64::max)
    }

    /// Density at the origin node.
    pub fn central_density(&self) -> f64 {
        let c = self.n() / 2;
        self.values[[c, c]].norm_sqr()
    }

    pub fn scale_to(&mut self, target_n: f64) {
        let now = self.particle_number();
        if now > 0.0 {
            let s = (target_n / now).sqrt();
            self.values.mapv_inplace(|z| z * s);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PotentialSource {
    AnalyticHarmonic,
    MirrorProfile,
    Uniform,
}

/// Potential `V/ħ` (rad/s) on the same grid layout as [`ComplexField2D`].
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialMap {
    pub values: Array2<f64>,
    pub extent: f64,
    pub source: PotentialSource,
}

impl PotentialMap {
    /// `V ≡ v0`.
    pub fn uniform(n: usize, extent: f64, v0: f64) -> Result<Self> {
        check_grid(n, extent)?;
        Ok(Self {
            values: Array2::from_elem((n, n), v0),
            extent,
            source: PotentialSource::Uniform,
        })
    }

    /// `V/ħ = ½ m Ω₀² r² / ħ`.
    pub fn harmonic(n: usize, extent: f64, p: &PhysicalParams) -> Result<Self> {
        check_grid(n, extent)?;
        let a = 0.5 * p.mass() * p.omega0 * p.omega0 / HBAR;
        let xs = coordinates(n, extent);
        Ok(Self {
            values: Array2::from_shape_fn((n, n), |(iy, ix)| a * (xs[ix] * xs[ix] + xs[iy] * xs[iy])),
            extent,
            source: PotentialSource::AnalyticHarmonic,
        })
    }

    pub fn n(&self) -> usize {
        self.values.nrows()
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn shifted(&self, v0: f64) -> Self {
        Self {
            values: self.values.mapv(|v| v + v0),
            ..self.clone()
        }
    }
}

/// Converts a mirror height profile `δL(x, y)` (m, positive = longer cavity)
/// into `V/ħ = −ω (δL/L₀ − δω/ω)`. Longer cavity means lower potential.
pub fn potential_from_mirror(delta_l: &Array2<f64>, extent: f64, p: &PhysicalParams) -> Result<PotentialMap> {
    let (ny, nx) = delta_l.dim();
    if ny != nx {
        return Err(Error::InvalidGrid(format!("mirror profile must be square, got {ny}x{nx}")));
    }
    check_grid(nx, extent)?;
    if let Some(bad) = delta_l.iter().find(|v| !v.is_finite()) {
        return Err(Error::InvalidInput(format!("mirror profile contains non-finite value {bad}")));
    }
    let worst = delta_l.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if worst > p.lambda_vac / 10.0 {
        log::warn!(
            "mirror deformation {:.3e} m exceeds lambda/10; the linear phase approximation degrades",
            worst
        );
    }
    let w = p.omega();
    Ok(PotentialMap {
        values: delta_l.mapv(|dl| -w * (dl / p.l0 - p.delta_omega / w)),
        extent,
        source: PotentialSource::MirrorProfile,
    })
}

/// Radius of curvature of a spherical mirror that produces trap frequency
/// `Ω₀`: `R = c² / (n_L² L₀ Ω₀²)`.
pub fn mirror_radius_for_trap(p: &PhysicalParams) -> f64 {
    let c = crate::constants::C;
    c * c / (p.n_l * p.n_l * p.l0 * p.omega0 * p.omega0)
}

/// `√(n_L² ε₀ L₀ / 2ħω)`: the factor with `ψ = E₀ · factor`.
fn field_factor(p: &PhysicalParams) -> f64 {
    (p.n_l * p.n_l * EPS0 * p.l0 / (2.0 * HBAR * p.omega())).sqrt()
}

/// Electric field envelope `E₀` (V/m) for a wavefunction grid.
pub fn psi_to_field(psi: &ComplexField2D, p: &PhysicalParams) -> Array2<Complex64> {
    let f = field_factor(p);
    psi.values.mapv(|z| z / f)
}

/// Inverse of [`psi_to_field`].
pub fn field_to_psi(e0: &Array2<Complex64>, extent: f64, p: &PhysicalParams) -> Result<ComplexField2D> {
    let f = field_factor(p);
    ComplexField2D::from_values(e0.mapv(|z| z * f), extent)
}

/// Energy stored in the standing wave, `½ n_L² L₀ ε₀ ∬|E₀|²` (J).
pub fn field_energy(e0: &Array2<Complex64>, extent: f64, p: &PhysicalParams) -> f64 {
    let n = e0.nrows() as f64;
    let dx = extent / n;
    0.5 * p.n_l * p.n_l * p.l0 * EPS0 * e0.iter().map(|z| z.norm_sqr()).sum::<f64>() * dx * dx
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_checks() {
        assert!(ComplexField2D::zeros(48, 1.0).is_err());
        assert!(ComplexField2D::zeros(16, 1.0).is_err());
        assert!(ComplexField2D::zeros(64, 0.0).is_err());
        let f = ComplexField2D::zeros(64, 2.0).unwrap();
        assert_eq!(f.dx(), 2.0 / 64.0);
    }

    #[test]
    fn origin_on_node() {
        let xs = coordinates(32, 32.0);
        assert_eq!(xs[16], 0.0);
        assert_eq!(xs[0], -16.0);
    }

    #[test]
    fn flat_mirror_flat_potential() {
        let p = PhysicalParams::default();
        let v = potential_from_mirror(&Array2::zeros((32, 32)), 1e-4, &p).unwrap();
        assert!(v.values.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn spherical_mirror_is_harmonic() {
        let p = PhysicalParams::default();
        let r_mirror = mirror_radius_for_trap(&p);
        let (n, extent) = (64, 1e-4);
        let xs = coordinates(n, extent);
        let dl = Array2::from_shape_fn((n, n), |(iy, ix)| -(xs[ix] * xs[ix] + xs[iy] * xs[iy]) / (2.0 * r_mirror));
        let from_mirror = potential_from_mirror(&dl, extent, &p).unwrap();
        let analytic = PotentialMap::harmonic(n, extent, &p).unwrap();
        for (a, b) in from_mirror.values.iter().zip(analytic.values.iter()) {
            assert!((a - b).abs() <= 1e-9 * b.abs().max(1e-300), "{a} {b}");
        }
    }

    #[test]
    fn rejects_nan_mirror() {
        let p = PhysicalParams::default();
        let mut dl = Array2::zeros((32, 32));
        dl[[3, 4]] = f64::NAN;
        assert!(potential_from_mirror(&dl, 1e-4, &p).is_err());
    }

    #[test]
    fn field_round_trip_and_energy() {
        let p = PhysicalParams::default();
        let zero = ComplexField2D::zeros(32, 1e-4).unwrap();
        assert!(psi_to_field(&zero, &p).iter().all(|z| z.norm() == 0.0));

        let psi = ComplexField2D::from_fn(32, 1e-4, |x, y| Complex64::new(1e6 + x * 1e9, y * 3e9)).unwrap();
        let back = field_to_psi(&psi_to_field(&psi, &p), psi.extent, &p).unwrap();
        for (a, b) in back.values.iter().zip(psi.values.iter()) {
            assert!((a - b).norm() <= 1e-14 * b.norm());
        }

        let n_total = 1e5;
        let mut uniform = ComplexField2D::from_fn(32, 1e-4, |_, _| Complex64::new(1.0, 0.0)).unwrap();
        uniform.scale_to(n_total);
        let e = field_energy(&psi_to_field(&uniform, &p), uniform.extent, &p);
        let expected = n_total * HBAR * p.omega();
        assert!(((e - expected) / expected).abs() < 1e-12);
    }
}
