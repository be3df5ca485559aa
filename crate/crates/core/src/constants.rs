//! CODATA 2018 constants, SI units.

use std::f64::consts::PI;

/// Speed of light in vacuum (m/s).
pub const C: f64 = 299_792_458.0;
/// Planck constant (J·s).
pub const H: f64 = 6.626_070_15e-34;
/// Reduced Planck constant (J·s).
pub const HBAR: f64 = H / (2.0 * PI);
/// Boltzmann constant (J/K).
pub const K_B: f64 = 1.380_649e-23;
/// Vacuum permittivity (F/m).
pub const EPS0: f64 = 8.854_187_812_8e-12;

/// `2π × f`, for writing frequencies in Hz as angular rates.
pub fn two_pi(f: f64) -> f64 {
    2.0 * PI * f
}

/// Thermal energy `k_B T` expressed as an angular frequency (rad/s).
pub fn thermal_rate(temperature: f64) -> f64 {
    K_B * temperature / HBAR
}
