//! Driven-dissipative Gross-Pitaevskii equation
//!
//! `i ∂ψ/∂t = [ −(ħ/2m)∇² + V/ħ + (g/ħ)|ψ|² + i(γ_net − Γ|ψ|²) ] ψ`
//!
//! on a periodic square grid, propagated with Strang-split Fourier steps.

mod fft;
mod field;
mod solver;

pub use fft::{wavenumbers, Fft2};
pub use field::{
    coordinates, field_energy, field_to_psi, mirror_radius_for_trap, potential_from_mirror, psi_to_field,
    ComplexField2D, PotentialMap, PotentialSource,
};
pub use solver::{
    auto_extent, evolve_open, initial_guess, relax_to_steady_state, relax_with, step, Energies, EvolutionSpec,
    Gain, Mode, RelaxSpec, Relaxed, Solver,
};
