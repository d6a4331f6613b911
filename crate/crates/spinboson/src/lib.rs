//! Reduced dynamics of a qubit coupled to bosonic environments.
//!
//! The crate evaluates two families of effective spectral density functions
//! (infinite- and finite-cutoff, models A through D), converts them into
//! complex influence-functional coefficients at finite temperature, and
//! propagates the qubit's 2x2 reduced density matrix with an iterative
//! tensor-multiplication path integral over a finite memory window.
//!
//! Layout:
//!
//! * [`specfun`] - the special functions (Shi, cosine-integral pieces, the
//!   complex `W`, `Theta`, `R`) that the finite-cutoff densities are built from.
//! * [`spectral`] - the eight densities `J_x^{I/F}`, reduction-limit checks,
//!   and calibration of the Ohmic prefactor from a target effective coupling.
//! * [`bath`] - discretisation of the bath autocorrelation into the complex
//!   coefficient tables consumed by the propagator.
//! * [`quapi`] - the finite-memory augmented-tensor propagator.
//! * [`oracle`] - slow, independent reference computations (principal-value
//!   quadrature, analytic pure dephasing, small-bath exact diagonalisation).
//! * [`presets`], [`config`], [`driver`] - the batch front end.

pub mod bath;
pub mod config;
pub mod constants;
pub mod csvio;
pub mod driver;
pub mod error;
pub mod oracle;
pub mod presets;
pub mod quad;
pub mod quapi;
pub mod spectral;
pub mod specfun;

pub use error::{Error, Result};

/// Complex scalar used throughout; both components must stay finite.
pub type Complex = num_complex::Complex64;
