//! Thermal damping channel for two-mode Gaussian states.
//!
//! Each mode decays independently with rate `γ` toward a reservoir of mean
//! occupation `n`, following the damped-mode solution
//! `a(t) = e^{-γt} a(0) + noise`. On symmetrized quadrature moments this is
//! an affine Gaussian map: amplitudes contract by `e^{-γt}` per mode and the
//! covariance relaxes toward the thermal fixed point `(1 + 2n) I`, while
//! cross-mode blocks contract by `e^{-(γ_a+γ_b)t}`.
//!
//! [`evolve`] applies the closed-form map; [`integrate_channel`] integrates
//! the equivalent moment ODE with a fixed-step fourth-order scheme and
//! exists to verify the closed form independently.

use nalgebra::{Matrix4, Vector4};

use crate::error::{Error, Result};
use crate::gaussian::GaussianTwoModeState;

/// Decay rates and reservoir occupations for the two modes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReservoirParams {
    gamma_a: f64,
    gamma_b: f64,
    n_a: f64,
    n_b: f64,
}

impl ReservoirParams {
    pub fn new(gamma_a: f64, gamma_b: f64, n_a: f64, n_b: f64) -> Result<Self> {
        for (name, value) in [
            ("gamma_a", gamma_a),
            ("gamma_b", gamma_b),
            ("n_a", n_a),
            ("n_b", n_b),
        ] {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::InvalidParam { name, value });
            }
        }
        Ok(ReservoirParams {
            gamma_a,
            gamma_b,
            n_a,
            n_b,
        })
    }

    /// Equal coupling and occupation on both modes.
    pub fn symmetric(gamma: f64, n: f64) -> Result<Self> {
        Self::new(gamma, gamma, n, n)
    }

    /// Reservoir on mode B only (`γ_a = 0`).
    pub fn bath_on_b(gamma_b: f64, n_b: f64) -> Result<Self> {
        Self::new(0.0, gamma_b, 0.0, n_b)
    }

    /// Exchange the roles of the two modes.
    pub fn swapped(self) -> Self {
        ReservoirParams {
            gamma_a: self.gamma_b,
            gamma_b: self.gamma_a,
            n_a: self.n_b,
            n_b: self.n_a,
        }
    }

    pub fn gamma_a(&self) -> f64 {
        self.gamma_a
    }

    pub fn gamma_b(&self) -> f64 {
        self.gamma_b
    }

    pub fn n_a(&self) -> f64 {
        self.n_a
    }

    pub fn n_b(&self) -> f64 {
        self.n_b
    }

    /// Thermal fixed-point variance `1 + 2n` of mode A / mode B.
    pub fn fixed_point(&self) -> (f64, f64) {
        (1.0 + 2.0 * self.n_a, 1.0 + 2.0 * self.n_b)
    }
}

/// Evolve a state for time `t` under independent thermal reservoirs.
pub fn evolve(
    state: &GaussianTwoModeState,
    res: &ReservoirParams,
    t: f64,
) -> Result<GaussianTwoModeState> {
    if !t.is_finite() || t < 0.0 {
        return Err(Error::InvalidParam {
            name: "t",
            value: t,
        });
    }
    state.check_physical()?;
    Ok(apply(state, res, t))
}

/// Closed-form map without input validation; used by root finders that
/// re-evaluate along a time axis after validating once.
pub(crate) fn apply(
    state: &GaussianTwoModeState,
    res: &ReservoirParams,
    t: f64,
) -> GaussianTwoModeState {
    let da = (-res.gamma_a * t).exp();
    let db = (-res.gamma_b * t).exp();
    let d = Vector4::new(da, da, db, db);
    let mut cov = *state.cov();
    for i in 0..4 {
        for j in 0..4 {
            cov[(i, j)] *= d[i] * d[j];
        }
    }
    let (fix_a, fix_b) = res.fixed_point();
    cov[(0, 0)] += (1.0 - da * da) * fix_a;
    cov[(1, 1)] += (1.0 - da * da) * fix_a;
    cov[(2, 2)] += (1.0 - db * db) * fix_b;
    cov[(3, 3)] += (1.0 - db * db) * fix_b;
    let mean = state.mean().component_mul(&d);
    GaussianTwoModeState::from_parts_unchecked(cov, mean)
}

/// Integrate the moment equations `dV/dt = A V + V A + B`, `dμ/dt = A μ`
/// with a fixed-step classical Runge-Kutta scheme.
///
/// `A = diag(-γ_a, -γ_a, -γ_b, -γ_b)` and `B` injects `2γ(1 + 2n)` per
/// damped quadrature. Converges to [`evolve`] at fourth order in the step.
pub fn integrate_channel(
    state: &GaussianTwoModeState,
    res: &ReservoirParams,
    t: f64,
    steps: usize,
) -> Result<GaussianTwoModeState> {
    if steps == 0 {
        return Err(Error::InvalidParam {
            name: "steps",
            value: 0.0,
        });
    }
    if !t.is_finite() || t < 0.0 {
        return Err(Error::InvalidParam {
            name: "t",
            value: t,
        });
    }
    state.check_physical()?;

    let decay = Vector4::new(res.gamma_a, res.gamma_a, res.gamma_b, res.gamma_b);
    let (fix_a, fix_b) = res.fixed_point();
    let inject = Vector4::new(
        2.0 * res.gamma_a * fix_a,
        2.0 * res.gamma_a * fix_a,
        2.0 * res.gamma_b * fix_b,
        2.0 * res.gamma_b * fix_b,
    );

    let cov_rhs = |v: &Matrix4<f64>| -> Matrix4<f64> {
        let mut out = Matrix4::zeros();
        for i in 0..4 {
            for j in 0..4 {
                out[(i, j)] = -(decay[i] + decay[j]) * v[(i, j)];
            }
            out[(i, i)] += inject[i];
        }
        out
    };
    let mean_rhs = |m: &Vector4<f64>| -> Vector4<f64> { -m.component_mul(&decay) };

    let h = t / steps as f64;
    let mut cov = *state.cov();
    let mut mean = *state.mean();
    for _ in 0..steps {
        let k1 = cov_rhs(&cov);
        let k2 = cov_rhs(&(cov + k1 * (h / 2.0)));
        let k3 = cov_rhs(&(cov + k2 * (h / 2.0)));
        let k4 = cov_rhs(&(cov + k3 * h));
        cov += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);

        let m1 = mean_rhs(&mean);
        let m2 = mean_rhs(&(mean + m1 * (h / 2.0)));
        let m3 = mean_rhs(&(mean + m2 * (h / 2.0)));
        let m4 = mean_rhs(&(mean + m3 * h));
        mean += (m1 + m2 * 2.0 + m3 * 2.0 + m4) * (h / 6.0);
    }
    Ok(GaussianTwoModeState::from_parts_unchecked(cov, mean))
}
