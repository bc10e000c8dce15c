//! Error type shared by every module of the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A constructor or operation received an out-of-domain value.
    #[error("invalid parameter `{name}`: {value}")]
    InvalidParam { name: &'static str, value: f64 },

    /// The covariance matrix violates the uncertainty principle:
    /// `cov + iΩ` has an eigenvalue below the tolerance.
    #[error("unphysical state: min eigenvalue of cov + iOmega is {min_eig:.3e}")]
    Unphysical { min_eig: f64 },

    /// A steering-mode variance (or the covariance factorization) is
    /// degenerate, so inference gains are undefined.
    #[error("degenerate state: steering-mode second moments are singular")]
    Degenerate,

    /// Witness death time requested for a state that shows no steering at
    /// `t = 0`.
    #[error("witness is {witness:.6} >= 1 at t = 0; death time is undefined")]
    NoInitialSteering { witness: f64 },

    /// The root finder could not bracket a witness crossing even though the
    /// long-time limit indicates one exists.
    #[error("no witness crossing bracketed up to t = {t_max:.3e}")]
    BracketingFailed { t_max: f64 },

    /// Monte Carlo budget below the minimum for a meaningful estimate.
    #[error("Monte Carlo budget too small: {samples} samples (minimum {min})")]
    BudgetTooSmall { samples: u64, min: u64 },

    /// The Fock-space truncation leaks probability past the top level.
    #[error("Fock truncation too small: tail mass {tail:.3e} exceeds {limit:.1e}")]
    TruncationTooSmall { tail: f64, limit: f64 },

    /// The fixed-step integrator lost trace normalization.
    #[error("integrator step too large: trace drifted by {drift:.3e}")]
    StepTooLarge { drift: f64 },

    /// Quadrature support does not capture the full density mass.
    #[error("quadrature support too small: normalization is {norm} instead of 1")]
    SupportTooSmall { norm: f64 },
}
