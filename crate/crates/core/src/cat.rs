//! Entangled spin-oscillator superposition state and its steering signature.
//!
//! The oscillator A starts in a balanced superposition of the coherent
//! states `|-α⟩` and `|α⟩` entangled with a spin B (relative phase fixed to
//! `π/2`, α real). Measuring the spin along z collapses the oscillator onto
//! one coherent hill; measuring along x collapses it onto a superposition
//! whose momentum distribution carries interference fringes. The steering
//! signature is the product of the outcome-averaged conditional variances,
//!
//! ```text
//! EPR = Var(X_A|σ_z) · Var(P_A|σ_x),
//! ```
//!
//! which drops below 1 only for a coherent superposition and relaxes back
//! under thermal damping of the oscillator.
//!
//! Quadrature scaling is the same as in [`crate::gaussian`]: `X = a + a†`,
//! `P = (a - a†)/i`, vacuum variance 1 (scale constant `c = 2` in the
//! lower-case position/momentum variables, which makes `x = X`, `p = P`).

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};

/// Relative phase between the two branches; other values complicate the
/// normalization and are out of scope.
pub const THETA: f64 = FRAC_PI_2;

/// Both spin outcomes occur with probability 1/2 at `θ = π/2`.
pub const OUTCOME_PROBABILITY: f64 = 0.5;

/// Result of a projective spin measurement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpinOutcome {
    Plus,
    Minus,
}

impl SpinOutcome {
    pub const BOTH: [SpinOutcome; 2] = [SpinOutcome::Plus, SpinOutcome::Minus];

    pub fn sign(self) -> f64 {
        match self {
            SpinOutcome::Plus => 1.0,
            SpinOutcome::Minus => -1.0,
        }
    }

    fn idx(self) -> usize {
        match self {
            SpinOutcome::Plus => 0,
            SpinOutcome::Minus => 1,
        }
    }
}

/// Cat amplitude plus the reservoir seen by the oscillator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CatParams {
    alpha: f64,
    gamma: f64,
    n: f64,
}

impl CatParams {
    pub fn new(alpha: f64, gamma: f64, n: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(Error::InvalidParam {
                name: "alpha",
                value: alpha,
            });
        }
        for (name, value) in [("gamma", gamma), ("n", n)] {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::InvalidParam { name, value });
            }
        }
        Ok(CatParams { alpha, gamma, n })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn n(&self) -> f64 {
        self.n
    }

    pub fn theta(&self) -> f64 {
        THETA
    }
}

/// Conditional first moments per spin outcome and outcome-averaged
/// conditional variances of the oscillator quadratures at time `t`.
#[derive(Clone, Copy, Debug)]
pub struct ConditionalMoments {
    mean_x_given_z: [f64; 2],
    var_x_given_z: f64,
    mean_p_given_x: [f64; 2],
    var_p_given_x: f64,
    t: f64,
}

impl ConditionalMoments {
    pub fn from_parts(
        mean_x_given_z: [f64; 2],
        var_x_given_z: f64,
        mean_p_given_x: [f64; 2],
        var_p_given_x: f64,
        t: f64,
    ) -> Self {
        ConditionalMoments {
            mean_x_given_z,
            var_x_given_z,
            mean_p_given_x,
            var_p_given_x,
            t,
        }
    }

    /// `⟨X_A | outcome⟩` for a z measurement on the spin.
    pub fn mean_x_given_z(&self, outcome: SpinOutcome) -> f64 {
        self.mean_x_given_z[outcome.idx()]
    }

    /// `Var(X_A | σ_z)`, averaged over the two outcomes.
    pub fn var_x_given_z(&self) -> f64 {
        self.var_x_given_z
    }

    /// `⟨X_A² | outcome⟩`; the same for both outcomes since the two hills
    /// are mirror images.
    pub fn second_x_given_z(&self, outcome: SpinOutcome) -> f64 {
        self.var_x_given_z + self.mean_x_given_z(outcome).powi(2)
    }

    /// `⟨P_A | outcome⟩` for an x measurement on the spin.
    pub fn mean_p_given_x(&self, outcome: SpinOutcome) -> f64 {
        self.mean_p_given_x[outcome.idx()]
    }

    /// `Var(P_A | σ_x)`, averaged over the two outcomes.
    pub fn var_p_given_x(&self) -> f64 {
        self.var_p_given_x
    }

    pub fn second_p_given_x(&self, outcome: SpinOutcome) -> f64 {
        self.var_p_given_x + self.mean_p_given_x(outcome).powi(2)
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// Steering signature `Var(X_A|σ_z) · Var(P_A|σ_x)`.
    pub fn epr(&self) -> f64 {
        self.var_x_given_z * self.var_p_given_x
    }
}

/// Conditional position density `P(x | σ_z = outcome)` of the undamped
/// state: a unit-variance Gaussian hill centered at `-sign(outcome)·2α`.
pub fn cond_dist_x(alpha: f64, x: f64, outcome: SpinOutcome) -> f64 {
    let d = x + outcome.sign() * 2.0 * alpha;
    (-0.5 * d * d).exp() / (2.0 * PI).sqrt()
}

/// Conditional momentum density `P(p | σ_x = outcome)` of the undamped
/// state: the vacuum envelope times an interference fringe of period
/// `π/α`.
///
/// The outcome sign is fixed so that the fringe mean agrees with the
/// conditional moment `⟨P_A|±1⟩_x = ∓2α e^{-2α²}`; the `+1` outcome takes
/// the `1 - sin(2αp)` fringe.
pub fn cond_dist_p(alpha: f64, p: f64, outcome: SpinOutcome) -> f64 {
    let envelope = (-0.5 * p * p).exp() / (2.0 * PI).sqrt();
    envelope * (1.0 - outcome.sign() * (2.0 * alpha * p).sin())
}

/// Closed-form conditional moments of the damped cat at time `t`.
pub fn conditional_moments(params: &CatParams, t: f64) -> Result<ConditionalMoments> {
    if !t.is_finite() || t < 0.0 {
        return Err(Error::InvalidParam {
            name: "t",
            value: t,
        });
    }
    let decay = (-params.gamma * t).exp();
    let decay2 = decay * decay;
    let thermal = 1.0 + 2.0 * params.n * (1.0 - decay2);
    let alpha = params.alpha;

    // The fringe contribution to <P^2> is odd and integrates away, so the
    // averaged P variance keeps only the envelope broadening minus the
    // squared fringe mean.
    let mean_x = 2.0 * alpha * decay;
    let mean_p = 2.0 * alpha * decay * (-2.0 * alpha * alpha).exp();
    Ok(ConditionalMoments {
        mean_x_given_z: [-mean_x, mean_x],
        var_x_given_z: thermal,
        mean_p_given_x: [-mean_p, mean_p],
        var_p_given_x: thermal - mean_p * mean_p,
        t,
    })
}

/// Steering signature `Var(X_A|σ_z) · Var(P_A|σ_x)` at time `t`; a value
/// below 1 certifies steering of the oscillator by the spin.
pub fn cat_steering(params: &CatParams, t: f64) -> Result<f64> {
    Ok(conditional_moments(params, t)?.epr())
}

/// Momentum variance of the single-mode superposition `(|-α⟩ + i|α⟩)/√2`
/// under the same reservoir:
/// `Δ²P = 1 + 2n(1 - e^{-2γt}) - 4α² e^{-2γt} e^{-4α²}`.
///
/// With `n = 0` this coincides with the two-system steering signature.
pub fn single_mode_cat_var_p(alpha: f64, gamma: f64, n: f64, t: f64) -> f64 {
    let decay2 = (-2.0 * gamma * t).exp();
    1.0 + 2.0 * n * (1.0 - decay2) - 4.0 * alpha * alpha * decay2 * (-4.0 * alpha * alpha).exp()
}
