//! Truncated Fock-space master-equation oracle for the damped cat state.
//!
//! The joint spin-oscillator density matrix is stored as four oscillator
//! blocks indexed by the spin (`↑↑`, `↑↓`, `↓↑`, `↓↓`). Damping acts on the
//! oscillator alone with downward/upward jump rates proportional to `n + 1`
//! and `n`, so each spin block evolves independently under the same
//! dissipator,
//!
//! ```text
//! dρ/dτ = 2(n+1)(a ρ a† - ½{a†a, ρ}) + 2n (a† ρ a - ½{a a†, ρ}),   τ = γt.
//! ```
//!
//! Here γ is the amplitude decay rate of the damped-mode solution
//! (`⟨a⟩ ∝ e^{-γt}`, `⟨a†a⟩ → n` at rate `2γ`), which fixes the jump rates
//! to `2γ(n+1)` and `2γn`. Integration uses a fixed-step classical
//! Runge-Kutta scheme; conditional moments follow by projecting the spin
//! onto the z or x eigenbasis and reading oscillator traces off the
//! combined blocks.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::cat::{CatParams, ConditionalMoments};
use crate::error::{Error, Result};

/// Tolerated probability mass in the truncated Fock tail.
pub const TAIL_TOL: f64 = 1e-8;
/// Tolerated drift of the total trace over a run.
pub const TRACE_TOL: f64 = 1e-8;

/// Truncation dimension and step size for the integrator.
#[derive(Clone, Copy, Debug)]
pub struct FockConfig {
    dim: usize,
    dt: f64,
    t_max: f64,
}

impl FockConfig {
    pub fn new(dim: usize, dt: f64, t_max: f64) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidParam {
                name: "dim",
                value: dim as f64,
            });
        }
        if !dt.is_finite() || dt <= 0.0 {
            return Err(Error::InvalidParam {
                name: "dt",
                value: dt,
            });
        }
        if !t_max.is_finite() || t_max < 0.0 {
            return Err(Error::InvalidParam {
                name: "t_max",
                value: t_max,
            });
        }
        Ok(FockConfig { dim, dt, t_max })
    }

    /// Truncation that keeps the coherent-state tail below [`TAIL_TOL`].
    pub fn min_dim(alpha: f64) -> usize {
        (4.0 * alpha * alpha + 10.0 * alpha + 10.0).ceil() as usize
    }

    /// Default configuration for a given cat amplitude: at least 60 levels
    /// and a scaled step of 1e-3 out to `γt = 2`.
    pub fn for_amplitude(alpha: f64) -> Self {
        FockConfig {
            dim: Self::min_dim(alpha).max(60),
            dt: 1e-3,
            t_max: 2.0,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }
}

/// Conserved-quantity and truncation diagnostics of one run.
#[derive(Clone, Copy, Debug)]
pub struct LindbladDiagnostics {
    /// Largest deviation of the total trace from its initial value.
    pub trace_drift: f64,
    /// Largest elementwise violation of `ρ = ρ†` at the final time.
    pub hermiticity_defect: f64,
    /// Largest population of the top Fock level seen at any snapshot.
    pub tail_mass: f64,
    /// Spin expectations at the final snapshot; the reservoir never touches
    /// the spin, so all three are constants of motion.
    pub sigma_z: f64,
    pub sigma_x: f64,
    pub sigma_y: f64,
    /// Outcome probabilities at the final snapshot (1/2 each, exactly).
    pub prob_z_plus: f64,
    pub prob_x_plus: f64,
}

/// Conditional moments at each requested time plus run diagnostics.
#[derive(Clone, Debug)]
pub struct LindbladRun {
    pub moments: Vec<ConditionalMoments>,
    pub diagnostics: LindbladDiagnostics,
}

/// Coherent state amplitudes in the truncated Fock basis.
fn coherent(alpha: f64, dim: usize) -> DVector<Complex64> {
    let mut v = DVector::zeros(dim);
    let mut c = (-0.5 * alpha * alpha).exp();
    v[0] = Complex64::new(c, 0.0);
    for k in 1..dim {
        c *= alpha / (k as f64).sqrt();
        v[k] = Complex64::new(c, 0.0);
    }
    v
}

/// Spin-block order: `↑↑`, `↑↓`, `↓↑`, `↓↓`.
#[derive(Clone)]
struct Blocks([DMatrix<Complex64>; 4]);

impl Blocks {
    /// Joint state `(|-α⟩|↑⟩ + i|α⟩|↓⟩)/√2` as a density matrix.
    fn entangled_cat(alpha: f64, dim: usize) -> Blocks {
        let minus = coherent(-alpha, dim);
        let plus = coherent(alpha, dim);
        let half = Complex64::new(0.5, 0.0);
        let half_i = Complex64::new(0.0, 0.5);
        Blocks([
            (&minus * minus.adjoint()) * half,
            (&minus * plus.adjoint()) * (-half_i),
            (&plus * minus.adjoint()) * half_i,
            (&plus * plus.adjoint()) * half,
        ])
    }

    fn rhs(&self, nbar: f64) -> Blocks {
        Blocks(std::array::from_fn(|i| dissipator(&self.0[i], nbar)))
    }

    fn add_scaled(&self, other: &Blocks, factor: f64) -> Blocks {
        Blocks(std::array::from_fn(|i| {
            &self.0[i] + other.0[i].scale(factor)
        }))
    }

    fn rk4_step(&mut self, nbar: f64, h: f64) {
        let k1 = self.rhs(nbar);
        let k2 = self.add_scaled(&k1, 0.5 * h).rhs(nbar);
        let k3 = self.add_scaled(&k2, 0.5 * h).rhs(nbar);
        let k4 = self.add_scaled(&k3, h).rhs(nbar);
        for i in 0..4 {
            let incr = (&k1.0[i] + (&k2.0[i] + &k3.0[i]).scale(2.0) + &k4.0[i]).scale(h / 6.0);
            self.0[i] += incr;
        }
    }

    fn trace(&self) -> f64 {
        (self.0[0].trace() + self.0[3].trace()).re
    }

    /// Population of the top Fock level (truncation leak indicator).
    fn top_level_mass(&self) -> f64 {
        let d = self.0[0].nrows();
        (self.0[0][(d - 1, d - 1)] + self.0[3][(d - 1, d - 1)]).re
    }

    fn hermiticity_defect(&self) -> f64 {
        let d = self.0[0].nrows();
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                worst = worst.max((self.0[0][(i, j)] - self.0[0][(j, i)].conj()).norm());
                worst = worst.max((self.0[3][(i, j)] - self.0[3][(j, i)].conj()).norm());
                worst = worst.max((self.0[1][(i, j)] - self.0[2][(j, i)].conj()).norm());
            }
        }
        worst
    }

    fn sigma_z(&self) -> f64 {
        (self.0[0].trace() - self.0[3].trace()).re
    }

    fn sigma_x(&self) -> f64 {
        (self.0[1].trace() + self.0[2].trace()).re
    }

    fn sigma_y(&self) -> f64 {
        (Complex64::i() * (self.0[1].trace() - self.0[2].trace())).re
    }

    /// Oscillator operator conditioned on a z outcome (unnormalized).
    fn z_conditional(&self, plus: bool) -> DMatrix<Complex64> {
        if plus {
            self.0[0].clone()
        } else {
            self.0[3].clone()
        }
    }

    /// Oscillator operator conditioned on an x outcome (unnormalized).
    ///
    /// The `+1` outcome projects onto `(|↑⟩ - |↓⟩)/√2`, which is the
    /// labeling that reproduces the conditional mean
    /// `⟨P_A|+1⟩_x = -2α e^{-γt} e^{-2α²}`.
    fn x_conditional(&self, plus: bool) -> DMatrix<Complex64> {
        let sign = if plus { -1.0 } else { 1.0 };
        ((&self.0[0] + &self.0[3]) + (&self.0[1] + &self.0[2]).scale(sign)).scale(0.5)
    }
}

/// One dissipator application, written elementwise:
/// `(a ρ a†)_{ij} = √((i+1)(j+1)) ρ_{i+1,j+1}`,
/// `(a† ρ a)_{ij} = √(ij) ρ_{i-1,j-1}`, number operators act diagonally.
/// Jump rates in scaled time are `κ₋ = 2(n+1)` and `κ₊ = 2n`.
fn dissipator(b: &DMatrix<Complex64>, nbar: f64) -> DMatrix<Complex64> {
    let kappa_down = 2.0 * (nbar + 1.0);
    let kappa_up = 2.0 * nbar;
    let d = b.nrows();
    let mut out = DMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            let decay = 0.5 * kappa_down * (i + j) as f64 + 0.5 * kappa_up * (i + j + 2) as f64;
            let mut v = b[(i, j)] * (-decay);
            if i + 1 < d && j + 1 < d {
                v += b[(i + 1, j + 1)] * (kappa_down * (((i + 1) * (j + 1)) as f64).sqrt());
            }
            if i > 0 && j > 0 {
                v += b[(i - 1, j - 1)] * (kappa_up * ((i * j) as f64).sqrt());
            }
            out[(i, j)] = v;
        }
    }
    out
}

/// First and second quadrature moments of an unnormalized oscillator
/// operator.
struct OperatorMoments {
    prob: f64,
    mean_x: f64,
    second_x: f64,
    mean_p: f64,
    second_p: f64,
}

fn operator_moments(rho: &DMatrix<Complex64>) -> OperatorMoments {
    let d = rho.nrows();
    let mut tr = Complex64::default();
    let mut tr_a = Complex64::default();
    let mut tr_a2 = Complex64::default();
    let mut tr_n = Complex64::default();
    for k in 0..d {
        tr += rho[(k, k)];
        tr_n += rho[(k, k)] * k as f64;
        if k + 1 < d {
            tr_a += rho[(k + 1, k)] * ((k + 1) as f64).sqrt();
        }
        if k + 2 < d {
            tr_a2 += rho[(k + 2, k)] * (((k + 1) * (k + 2)) as f64).sqrt();
        }
    }
    let prob = tr.re;
    // X² = a² + a†² + 2a†a + 1 and P² = -(a² + a†²) + 2a†a + 1, with
    // ⟨a†²⟩ = ⟨a²⟩* under Hermitian ρ.
    OperatorMoments {
        prob,
        mean_x: 2.0 * tr_a.re / prob,
        second_x: (2.0 * tr_a2.re + 2.0 * tr_n.re + tr.re) / prob,
        mean_p: 2.0 * tr_a.im / prob,
        second_p: (-2.0 * tr_a2.re + 2.0 * tr_n.re + tr.re) / prob,
    }
}

fn conditional_snapshot(blocks: &Blocks, t: f64) -> ConditionalMoments {
    let z_plus = operator_moments(&blocks.z_conditional(true));
    let z_minus = operator_moments(&blocks.z_conditional(false));
    let x_plus = operator_moments(&blocks.x_conditional(true));
    let x_minus = operator_moments(&blocks.x_conditional(false));

    let avg = |a: &OperatorMoments, b: &OperatorMoments, va: f64, vb: f64| {
        (a.prob * va + b.prob * vb) / (a.prob + b.prob)
    };
    let var_x = avg(
        &z_plus,
        &z_minus,
        z_plus.second_x - z_plus.mean_x * z_plus.mean_x,
        z_minus.second_x - z_minus.mean_x * z_minus.mean_x,
    );
    let var_p = avg(
        &x_plus,
        &x_minus,
        x_plus.second_p - x_plus.mean_p * x_plus.mean_p,
        x_minus.second_p - x_minus.mean_p * x_minus.mean_p,
    );
    ConditionalMoments::from_parts(
        [z_plus.mean_x, z_minus.mean_x],
        var_x,
        [x_plus.mean_p, x_minus.mean_p],
        var_p,
        t,
    )
}

/// Integrate the damped entangled cat and report conditional moments at
/// each of the (ascending) requested times.
pub fn lindblad_cat_run(
    params: &CatParams,
    cfg: &FockConfig,
    times: &[f64],
) -> Result<LindbladRun> {
    for pair in times.windows(2) {
        if pair[1] < pair[0] {
            return Err(Error::InvalidParam {
                name: "times (must ascend)",
                value: pair[1],
            });
        }
    }
    if let Some(&last) = times.last() {
        if !last.is_finite() || last > cfg.t_max {
            return Err(Error::InvalidParam {
                name: "t",
                value: last,
            });
        }
    }
    if times.first().is_some_and(|&t0| t0 < 0.0) {
        return Err(Error::InvalidParam {
            name: "t",
            value: times[0],
        });
    }

    let alpha = params.alpha();
    let plus = coherent(alpha, cfg.dim);
    let tail = 1.0 - plus.iter().map(|c| c.norm_sqr()).sum::<f64>();
    if tail > TAIL_TOL {
        return Err(Error::TruncationTooSmall {
            tail,
            limit: TAIL_TOL,
        });
    }

    let mut blocks = Blocks::entangled_cat(alpha, cfg.dim);
    let trace0 = blocks.trace();
    let mut trace_drift = 0.0f64;
    let mut tail_mass = blocks.top_level_mass();

    let mut moments = Vec::with_capacity(times.len());
    let mut tau = 0.0f64; // scaled time γt
    for &t in times {
        let target = params.gamma() * t;
        let span = target - tau;
        if span > 0.0 {
            let steps = (span / cfg.dt).ceil() as usize;
            let h = span / steps as f64;
            for _ in 0..steps {
                blocks.rk4_step(params.n(), h);
            }
            tau = target;
        }
        trace_drift = trace_drift.max((blocks.trace() - trace0).abs());
        tail_mass = tail_mass.max(blocks.top_level_mass());
        moments.push(conditional_snapshot(&blocks, t));
    }

    // Inverted comparisons so a diverged (NaN) run cannot slip through.
    if !(trace_drift <= TRACE_TOL) {
        return Err(Error::StepTooLarge { drift: trace_drift });
    }
    if !(tail_mass <= TAIL_TOL) {
        return Err(Error::TruncationTooSmall {
            tail: tail_mass,
            limit: TAIL_TOL,
        });
    }

    let diagnostics = LindbladDiagnostics {
        trace_drift,
        hermiticity_defect: blocks.hermiticity_defect(),
        tail_mass,
        sigma_z: blocks.sigma_z(),
        sigma_x: blocks.sigma_x(),
        sigma_y: blocks.sigma_y(),
        prob_z_plus: operator_moments(&blocks.z_conditional(true)).prob,
        prob_x_plus: operator_moments(&blocks.x_conditional(true)).prob,
    };
    Ok(LindbladRun {
        moments,
        diagnostics,
    })
}

/// Conditional moments at a single time.
pub fn lindblad_cat_moments(
    params: &CatParams,
    cfg: &FockConfig,
    t: f64,
) -> Result<ConditionalMoments> {
    let run = lindblad_cat_run(params, cfg, &[t])?;
    Ok(run
        .moments
        .into_iter()
        .next()
        .expect("one snapshot requested"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::{cat_steering, conditional_moments, SpinOutcome};

    fn params(alpha: f64, n: f64) -> CatParams {
        CatParams::new(alpha, 1.0, n).unwrap()
    }

    #[test]
    fn config_validates() {
        assert!(FockConfig::new(1, 1e-3, 1.0).is_err());
        assert!(FockConfig::new(40, 0.0, 1.0).is_err());
        assert!(FockConfig::new(40, 1e-3, -1.0).is_err());
        assert!(FockConfig::for_amplitude(1.0).dim() >= 24);
        assert_eq!(FockConfig::min_dim(1.5), 34);
    }

    #[test]
    fn initial_moments_match_closed_forms() {
        let p = params(1.0, 0.0);
        let cfg = FockConfig::new(40, 1e-3, 1.0).unwrap();
        let run = lindblad_cat_run(&p, &cfg, &[0.0]).unwrap();
        let m = &run.moments[0];
        let exact = conditional_moments(&p, 0.0).unwrap();
        assert!((m.mean_x_given_z(SpinOutcome::Plus) + 2.0).abs() < 1e-8);
        assert!(
            (m.mean_p_given_x(SpinOutcome::Plus) - exact.mean_p_given_x(SpinOutcome::Plus)).abs()
                < 1e-8
        );
        assert!((m.var_p_given_x() - 0.9267374444450633).abs() < 1e-6);
        assert!((m.var_x_given_z() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn decayed_moments_match_closed_forms() {
        let p = params(1.0, 0.0);
        let cfg = FockConfig::new(40, 1e-3, 1.0).unwrap();
        let run = lindblad_cat_run(&p, &cfg, &[0.5]).unwrap();
        let m = &run.moments[0];
        let exact = conditional_moments(&p, 0.5).unwrap();
        assert!((m.var_p_given_x() - exact.var_p_given_x()).abs() < 1e-3);
        assert!((m.var_x_given_z() - exact.var_x_given_z()).abs() < 1e-3);
        assert!(
            (m.var_x_given_z() * m.var_p_given_x() - cat_steering(&p, 0.5).unwrap()).abs() < 1e-3
        );
    }

    #[test]
    fn thermal_moments_match_closed_forms() {
        let p = params(1.0, 1.0);
        let cfg = FockConfig::new(50, 5e-4, 1.0).unwrap();
        let run = lindblad_cat_run(&p, &cfg, &[0.1]).unwrap();
        let m = &run.moments[0];
        assert!((m.var_x_given_z() - 1.3625384938440364).abs() < 1e-3);
        let exact = conditional_moments(&p, 0.1).unwrap();
        assert!((m.var_p_given_x() - exact.var_p_given_x()).abs() < 1e-3);
    }

    #[test]
    fn conserved_quantities_hold() {
        let p = params(1.2, 0.5);
        let cfg = FockConfig::new(50, 1e-3, 1.0).unwrap();
        let run = lindblad_cat_run(&p, &cfg, &[0.0, 0.3, 0.9]).unwrap();
        let d = &run.diagnostics;
        assert!(d.trace_drift < TRACE_TOL);
        assert!(d.hermiticity_defect < 1e-10);
        assert!(d.tail_mass < TAIL_TOL);
        // The spin never sees the reservoir.
        assert!(d.sigma_z.abs() < 1e-10);
        assert!(d.sigma_x.abs() < 1e-10);
        let sigma_y_exact = (-2.0 * 1.2 * 1.2f64).exp();
        assert!((d.sigma_y - sigma_y_exact).abs() < 1e-10);
        assert!((d.prob_z_plus - 0.5).abs() < 1e-10);
        assert!((d.prob_x_plus - 0.5).abs() < 1e-10);
    }

    #[test]
    fn undersized_truncation_is_rejected() {
        let p = CatParams::new(3.0, 1.0, 0.0).unwrap();
        let cfg = FockConfig::new(20, 1e-3, 1.0).unwrap();
        assert!(matches!(
            lindblad_cat_run(&p, &cfg, &[0.1]),
            Err(Error::TruncationTooSmall { .. })
        ));
    }

    #[test]
    fn oversized_step_is_rejected() {
        // dt far beyond the stiffness limit makes the scheme diverge; the
        // trace guard must catch it rather than return garbage.
        let p = params(1.0, 1.0);
        let cfg = FockConfig::new(60, 0.05, 1.0).unwrap();
        assert!(matches!(
            lindblad_cat_run(&p, &cfg, &[1.0]),
            Err(Error::StepTooLarge { .. }) | Err(Error::TruncationTooSmall { .. })
        ));
    }

    #[test]
    fn times_must_ascend_and_stay_in_range() {
        let p = params(1.0, 0.0);
        let cfg = FockConfig::new(40, 1e-3, 1.0).unwrap();
        assert!(lindblad_cat_run(&p, &cfg, &[0.5, 0.1]).is_err());
        assert!(lindblad_cat_run(&p, &cfg, &[1.5]).is_err());
        assert!(lindblad_cat_run(&p, &cfg, &[-0.1, 0.5]).is_err());
    }

    #[test]
    fn gamma_zero_is_static() {
        let p = CatParams::new(1.0, 0.0, 0.0).unwrap();
        let cfg = FockConfig::new(40, 1e-3, 2.0).unwrap();
        let run = lindblad_cat_run(&p, &cfg, &[0.0, 1.0]).unwrap();
        let (a, b) = (&run.moments[0], &run.moments[1]);
        assert_eq!(a.var_p_given_x(), b.var_p_given_x());
        assert_eq!(
            a.mean_x_given_z(SpinOutcome::Plus),
            b.mean_x_given_z(SpinOutcome::Plus)
        );
    }

    #[test]
    fn step_halving_converges() {
        let p = params(1.0, 1.0);
        let coarse = FockConfig::new(40, 2e-3, 1.0).unwrap();
        let fine = FockConfig::new(40, 1e-3, 1.0).unwrap();
        let a = lindblad_cat_moments(&p, &coarse, 0.5).unwrap();
        let b = lindblad_cat_moments(&p, &fine, 0.5).unwrap();
        assert!((a.var_p_given_x() - b.var_p_given_x()).abs() < 1e-6);
        assert!((a.var_x_given_z() - b.var_x_given_z()).abs() < 1e-6);
    }

    #[test]
    fn truncation_doubling_converges() {
        let p = params(1.5, 0.0);
        let small = FockConfig::new(40, 1e-3, 1.0).unwrap();
        let large = FockConfig::new(80, 1e-3, 1.0).unwrap();
        let a = lindblad_cat_moments(&p, &small, 0.5).unwrap();
        let b = lindblad_cat_moments(&p, &large, 0.5).unwrap();
        assert!((a.var_p_given_x() - b.var_p_given_x()).abs() < 1e-6);
        assert!((a.var_x_given_z() - b.var_x_given_z()).abs() < 1e-6);
        assert!(
            (a.mean_x_given_z(SpinOutcome::Plus) - b.mean_x_given_z(SpinOutcome::Plus)).abs()
                < 1e-6
        );
    }
}
