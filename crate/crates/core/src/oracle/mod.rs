//! Independent brute-force verifiers for the closed-form results.
//!
//! - [`quad`]: composite-rule quadrature for one-dimensional densities.
//! - [`mc`]: Monte Carlo estimation of the Gaussian steering product by
//!   sampling the symmetrized quasi-distribution.
//! - [`lindblad`]: truncated Fock-space master-equation integration of the
//!   damped spin-oscillator state.
//!
//! Every oracle computes its answer without touching the closed-form code
//! paths it is meant to check.

pub mod lindblad;
pub mod mc;
pub mod quad;

pub use lindblad::{lindblad_cat_moments, lindblad_cat_run, FockConfig, LindbladRun};
pub use mc::{mc_gaussian_witness, McConfig, McEstimate};
pub use quad::{cat_support, quadrature_moments, quadrature_variance, QuadratureMoments};
