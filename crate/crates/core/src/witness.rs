//! Steering and entanglement witnesses for two-mode Gaussian states.
//!
//! The steering product is the square root of the variance product of the
//! two inference errors,
//!
//! ```text
//! EPR_{A|B}(g_x, g_p) = Δ(X_A - g_x X_B) · Δ(P_A + g_p P_B)
//! ```
//!
//! with steering of A by B observed whenever the optimized product drops
//! below 1. The symmetric entanglement parameter divides the same product
//! (with a single gain g) by `1 + g²` and witnesses entanglement below 1.

use crate::channel::{self, ReservoirParams};
use crate::error::{Error, Result};
use crate::gaussian::{GaussianTwoModeState, Mode, Quadrature, SqueezeParam};

/// Linear inference gains for the X and P quadratures.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Gains {
    pub g_x: f64,
    pub g_p: f64,
}

/// Which system is steered (inferred) by measurements on the other.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Measurements on B infer A.
    AGivenB,
    /// Measurements on A infer B.
    BGivenA,
}

impl Direction {
    pub fn steered(self) -> Mode {
        match self {
            Direction::AGivenB => Mode::A,
            Direction::BGivenA => Mode::B,
        }
    }
}

/// Both steering directions, the entanglement parameter, and the gains that
/// realize them, at one instant of a decay curve.
///
/// A witness value below 1 certifies the corresponding correlation.
#[derive(Clone, Copy, Debug)]
pub struct SteeringReport {
    pub epr_a_given_b: f64,
    pub epr_b_given_a: f64,
    pub gains_ab: Gains,
    pub gains_ba: Gains,
    pub ent: f64,
    pub g_ent: f64,
    pub t: f64,
}

impl SteeringReport {
    pub fn is_steering_a_by_b(&self) -> bool {
        self.epr_a_given_b < 1.0
    }

    pub fn is_steering_b_by_a(&self) -> bool {
        self.epr_b_given_a < 1.0
    }

    pub fn is_entangled(&self) -> bool {
        self.ent < 1.0
    }
}

/// Second moments needed by one steering direction: steered-mode variance,
/// steering-mode variance and their covariance, separately for X and P.
struct InferenceMoments {
    var_sx: f64,
    var_mx: f64,
    cov_x: f64,
    var_sp: f64,
    var_mp: f64,
    cov_p: f64,
}

impl InferenceMoments {
    fn of(state: &GaussianTwoModeState, steered: Mode) -> Self {
        let measured = steered.other();
        InferenceMoments {
            var_sx: state.variance(Quadrature::x(steered)),
            var_mx: state.variance(Quadrature::x(measured)),
            cov_x: state.covariance(Quadrature::x(steered), Quadrature::x(measured)),
            var_sp: state.variance(Quadrature::p(steered)),
            var_mp: state.variance(Quadrature::p(measured)),
            cov_p: state.covariance(Quadrature::p(steered), Quadrature::p(measured)),
        }
    }
}

/// Gains that minimize the two inference variances:
/// `g_x = ⟨X_s X_m⟩ / ⟨X_m²⟩` and `g_p = -⟨P_s P_m⟩ / ⟨P_m²⟩`.
pub fn optimal_gains(state: &GaussianTwoModeState, steered: Mode) -> Result<Gains> {
    let m = InferenceMoments::of(state, steered);
    if m.var_mx <= 0.0 || m.var_mp <= 0.0 {
        return Err(Error::Degenerate);
    }
    Ok(Gains {
        g_x: m.cov_x / m.var_mx,
        g_p: -m.cov_p / m.var_mp,
    })
}

/// Steering product at explicitly chosen gains.
pub fn epr_product(state: &GaussianTwoModeState, steered: Mode, gains: Gains) -> f64 {
    let m = InferenceMoments::of(state, steered);
    let var_x = m.var_sx - 2.0 * gains.g_x * m.cov_x + gains.g_x * gains.g_x * m.var_mx;
    let var_p = m.var_sp + 2.0 * gains.g_p * m.cov_p + gains.g_p * gains.g_p * m.var_mp;
    (var_x.max(0.0) * var_p.max(0.0)).sqrt()
}

/// Steering product minimized over the gains, and the gains realizing it.
///
/// Uses the conditional-variance form `⟨X_s²⟩ - ⟨X_s X_m⟩²/⟨X_m²⟩` directly;
/// it coincides with [`epr_product`] at [`optimal_gains`].
pub fn epr_optimized(state: &GaussianTwoModeState, steered: Mode) -> Result<(f64, Gains)> {
    let gains = optimal_gains(state, steered)?;
    let m = InferenceMoments::of(state, steered);
    let var_x = m.var_sx - m.cov_x * m.cov_x / m.var_mx;
    let var_p = m.var_sp - m.cov_p * m.cov_p / m.var_mp;
    Ok(((var_x.max(0.0) * var_p.max(0.0)).sqrt(), gains))
}

/// Decay factors entering the reservoir-evolved second moments.
struct DecayFactors {
    /// `e^{-2 γ t}` for the steered mode.
    u_s: f64,
    /// `e^{-2 γ t}` for the steering (measured) mode.
    u_m: f64,
    /// Fixed-point variance `1 + 2n` of the steered mode.
    fix_s: f64,
    /// Fixed-point variance `1 + 2n` of the steering mode.
    fix_m: f64,
}

/// Optimized steering product of the reservoir-evolved two-mode squeezed
/// state, evaluated from the closed-form expression.
///
/// The printed closed form is for the A-steered direction, whose
/// denominator is the measured-mode variance `⟨X_B²⟩`; the opposite
/// direction follows by exchanging the `(γ, n)` labels of the two
/// reservoirs, which the covariance pipeline validates numerically.
pub fn epr_thermal_closed_form(
    r: SqueezeParam,
    res: &ReservoirParams,
    t: f64,
    direction: Direction,
) -> f64 {
    let (gamma_s, n_s, gamma_m, n_m) = match direction {
        Direction::AGivenB => (res.gamma_a(), res.n_a(), res.gamma_b(), res.n_b()),
        Direction::BGivenA => (res.gamma_b(), res.n_b(), res.gamma_a(), res.n_a()),
    };
    let f = DecayFactors {
        u_s: (-2.0 * gamma_s * t).exp(),
        u_m: (-2.0 * gamma_m * t).exp(),
        fix_s: 1.0 + 2.0 * n_s,
        fix_m: 1.0 + 2.0 * n_m,
    };
    epr_from_decay_factors(r, &f)
}

fn epr_from_decay_factors(r: SqueezeParam, f: &DecayFactors) -> f64 {
    let ch = (2.0 * r.r()).cosh();
    let num = ch * (f.u_s * (1.0 - f.u_m) * f.fix_m + f.u_m * (1.0 - f.u_s) * f.fix_s)
        + f.u_s * f.u_m
        + f.fix_s * f.fix_m * (1.0 - f.u_m) * (1.0 - f.u_s);
    let den = f.u_m * ch + (1.0 - f.u_m) * f.fix_m;
    num / den
}

/// Long-time limit of the closed form (`e^{-2γt} → 0` wherever `γ > 0`).
fn epr_thermal_limit(r: SqueezeParam, res: &ReservoirParams, direction: Direction) -> f64 {
    let (gamma_s, n_s, gamma_m, n_m) = match direction {
        Direction::AGivenB => (res.gamma_a(), res.n_a(), res.gamma_b(), res.n_b()),
        Direction::BGivenA => (res.gamma_b(), res.n_b(), res.gamma_a(), res.n_a()),
    };
    let f = DecayFactors {
        u_s: if gamma_s > 0.0 { 0.0 } else { 1.0 },
        u_m: if gamma_m > 0.0 { 0.0 } else { 1.0 },
        fix_s: 1.0 + 2.0 * n_s,
        fix_m: 1.0 + 2.0 * n_m,
    };
    epr_from_decay_factors(r, &f)
}

/// Number of scan intervals used to bracket a witness crossing.
const CROSSING_SCAN_INTERVALS: usize = 4096;
/// Relative bisection tolerance on the crossing time.
const CROSSING_REL_TOL: f64 = 1e-10;

/// Earliest `t` at which `f(t)` reaches 1 from below, or `None` when no
/// crossing exists on `[0, t_max]`.
fn first_unit_crossing(f: &dyn Fn(f64) -> f64, t_max: f64) -> Option<f64> {
    let n = CROSSING_SCAN_INTERVALS;
    let mut lo = 0.0f64;
    let mut hi = None;
    for i in 1..=n {
        let t = t_max * i as f64 / n as f64;
        if f(t) >= 1.0 {
            hi = Some(t);
            break;
        }
        lo = t;
    }
    let mut hi = hi?;
    while hi - lo > CROSSING_REL_TOL * hi.max(f64::MIN_POSITIVE) {
        let mid = 0.5 * (lo + hi);
        if f(mid) >= 1.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Horizon after which the slowest positive decay factor is below 1e-8.
fn crossing_horizon(res: &ReservoirParams) -> Option<f64> {
    let mut gamma_min = f64::INFINITY;
    for g in [res.gamma_a(), res.gamma_b()] {
        if g > 0.0 {
            gamma_min = gamma_min.min(g);
        }
    }
    if gamma_min.is_finite() {
        Some((1e8f64).ln() / (2.0 * gamma_min))
    } else {
        None
    }
}

/// Steering sudden-death time: the smallest `t` with `EPR(t) = 1`.
///
/// Returns `Ok(None)` when the witness stays below 1 for all times (decided
/// from the analytic long-time limit). Errors when the state shows no
/// steering at `t = 0`.
pub fn sudden_death_time(
    r: SqueezeParam,
    res: &ReservoirParams,
    direction: Direction,
) -> Result<Option<f64>> {
    let witness0 = epr_thermal_closed_form(r, res, 0.0, direction);
    if witness0 >= 1.0 {
        return Err(Error::NoInitialSteering { witness: witness0 });
    }
    let Some(horizon) = crossing_horizon(res) else {
        return Ok(None); // no coupling at all: the witness is static
    };
    let f = |t: f64| epr_thermal_closed_form(r, res, t, direction);
    let mut t_max = horizon;
    for _ in 0..4 {
        if let Some(t_cross) = first_unit_crossing(&f, t_max) {
            return Ok(Some(t_cross));
        }
        if epr_thermal_limit(r, res, direction) <= 1.0 + 1e-12 {
            return Ok(None);
        }
        t_max *= 4.0;
    }
    Err(Error::BracketingFailed { t_max })
}

/// Entanglement parameter at an explicitly chosen gain,
/// `Δ(X_A - gX_B) Δ(P_A + gP_B) / (1 + g²)`.
///
/// For `|g| > 1` the evaluation substitutes `u = 1/g`, which is the same
/// expression algebraically but stays finite as the optimal gain diverges
/// for weakly correlated asymmetric states.
pub fn ent_at_gain(state: &GaussianTwoModeState, g: f64) -> f64 {
    let m = InferenceMoments::of(state, Mode::A);
    let (rx, rp) = if g.abs() <= 1.0 {
        let denom = 1.0 + g * g;
        (
            (m.var_sx - 2.0 * g * m.cov_x + g * g * m.var_mx) / denom,
            (m.var_sp + 2.0 * g * m.cov_p + g * g * m.var_mp) / denom,
        )
    } else {
        let u = 1.0 / g;
        let denom = u * u + 1.0;
        (
            (u * u * m.var_sx - 2.0 * u * m.cov_x + m.var_mx) / denom,
            (u * u * m.var_sp + 2.0 * u * m.cov_p + m.var_mp) / denom,
        )
    };
    (rx.max(0.0) * rp.max(0.0)).sqrt()
}

/// Entanglement parameter minimized over the gain; returns `(ent, g)`.
///
/// The optimal gain is the stationary root
/// `g = [-(⟨X_B²⟩-⟨X_A²⟩) + sqrt((⟨X_B²⟩-⟨X_A²⟩)² + 4⟨X_A X_B⟩²)] / (2⟨X_A X_B⟩)`;
/// for equal variances it reduces to `|g| = 1` with the sign of
/// `⟨X_A X_B⟩`. A vanishing cross correlation means a product state, where
/// the parameter is reported at `g = 0` and cannot drop below 1.
pub fn ent_parameter(state: &GaussianTwoModeState) -> (f64, f64) {
    let var_a = state.variance(Quadrature::X_A);
    let var_b = state.variance(Quadrature::X_B);
    let cov = state.covariance(Quadrature::X_A, Quadrature::X_B);
    if cov == 0.0 {
        return (ent_at_gain(state, 0.0), 0.0);
    }
    let diff = var_b - var_a;
    let g = (-diff + (diff * diff + 4.0 * cov * cov).sqrt()) / (2.0 * cov);
    (ent_at_gain(state, g), g)
}

/// Long-time limit of the optimized entanglement parameter. With at least
/// one positive rate the cross correlation dies out, and the gain family
/// interpolates between the two marginal X variances, so the limit is their
/// minimum (each variance replaced by its fixed point where damped).
fn ent_limit(r: SqueezeParam, res: &ReservoirParams) -> f64 {
    let ch = (2.0 * r.r()).cosh();
    let a_inf = if res.gamma_a() > 0.0 {
        1.0 + 2.0 * res.n_a()
    } else {
        ch
    };
    let b_inf = if res.gamma_b() > 0.0 {
        1.0 + 2.0 * res.n_b()
    } else {
        ch
    };
    a_inf.min(b_inf)
}

/// Entanglement sudden-death time: smallest `t` with `Ent(t) = 1` for the
/// reservoir-evolved two-mode squeezed state, or `None` if entanglement
/// survives all finite times.
pub fn ent_death_time(r: SqueezeParam, res: &ReservoirParams) -> Result<Option<f64>> {
    let initial = GaussianTwoModeState::two_mode_squeezed(r);
    let ent_at = |t: f64| ent_parameter(&channel::apply(&initial, res, t)).0;
    let witness0 = ent_at(0.0);
    if witness0 >= 1.0 {
        return Err(Error::NoInitialSteering { witness: witness0 });
    }
    let Some(horizon) = crossing_horizon(res) else {
        return Ok(None);
    };
    let f = |t: f64| ent_at(t);
    let mut t_max = horizon;
    for _ in 0..4 {
        if let Some(t_cross) = first_unit_crossing(&f, t_max) {
            return Ok(Some(t_cross));
        }
        if ent_limit(r, res) <= 1.0 + 1e-12 {
            return Ok(None);
        }
        t_max *= 4.0;
    }
    Err(Error::BracketingFailed { t_max })
}

/// Evaluate every witness of one state at once.
pub fn steering_report(state: &GaussianTwoModeState, t: f64) -> Result<SteeringReport> {
    let (epr_a_given_b, gains_ab) = epr_optimized(state, Mode::A)?;
    let (epr_b_given_a, gains_ba) = epr_optimized(state, Mode::B)?;
    let (ent, g_ent) = ent_parameter(state);
    Ok(SteeringReport {
        epr_a_given_b,
        epr_b_given_a,
        gains_ab,
        gains_ba,
        ent,
        g_ent,
        t,
    })
}
