//! Photon Bose-Einstein condensates in dye-filled optical microcavities.
//!
//! The crate covers the whole chain from the condensate equation of motion to
//! what an angle-resolved spectrometer would record:
//!
//! * [`params`]: physical inputs and derived constants (photon mass, `g̃`, `μ`).
//! * [`cgpe`]: split-step propagation of the driven-dissipative Gross-Pitaevskii
//!   equation on a periodic 2D grid, ground states by imaginary time.
//! * [`open_spectrum`]: retarded Green's function and incoherent
//!   photoluminescence of the homogeneous open (pumped, lossy) condensate.
//! * [`lda_spectrum`]: closed-system photoluminescence with trap inhomogeneity
//!   in the local density approximation.
//! * [`instrument`]: resolution budget, instrumental blur and camera model.
//! * [`io`] and [`pipeline`]: config files, grid/curve/image formats and the
//!   `pbec` command line driver.
//!
//! Every energy-like quantity is stored as an angular frequency (E/ħ, rad/s).

pub mod cgpe;
pub mod constants;
pub mod error;
pub mod instrument;
pub mod io;
pub mod lda_spectrum;
pub mod open_spectrum;
pub mod params;
pub mod pipeline;
pub mod quadrature;

pub use error::{Error, Result};
pub use open_spectrum::SpectrumGrid;
pub use params::{DerivedQuantities, PhysicalParams};
