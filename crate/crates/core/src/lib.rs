//! Decoherence of quadrature steering correlations for open quantum systems.
//!
//! The library models two families of states and how their steering
//! witnesses decay once each subsystem is coupled to an independent thermal
//! reservoir:
//!
//! - [`gaussian`]: two-mode Gaussian states (covariance matrix + mean) in
//!   quadrature units `X = a + a†`, `P = (a - a†)/i`, where the vacuum
//!   variance is 1 and the Heisenberg product bound is `ΔX ΔP ≥ 1`.
//! - [`channel`]: the thermal damping channel acting on those states, both
//!   in closed form and by stepwise integration of the moment equations.
//! - [`witness`]: inference-variance steering products in both directions,
//!   optimal gains, the symmetric entanglement parameter, and witness
//!   sudden-death times.
//! - [`cat`]: an entangled spin-oscillator superposition of coherent states
//!   `|±α⟩`, its conditional distributions, and the decay of its
//!   conditional-variance steering signature.
//! - [`oracle`]: independent brute-force verifiers: Gaussian Monte Carlo
//!   sampling, numeric quadrature, and a truncated Fock-space master
//!   equation integrator.
//!
//! All state types are immutable values and every operation is a pure
//! function, so the whole API is safe to call from parallel sweeps.

pub mod cat;
pub mod channel;
pub mod error;
pub mod gaussian;
pub mod oracle;
pub mod witness;

pub use error::{Error, Result};
