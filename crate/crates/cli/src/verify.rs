//! Oracle verification runs: re-derive the closed-form claims with the
//! brute-force verifiers and report a pass/fail table.

use std::str::FromStr;

use steerlab_core::cat::{
    cat_steering, cond_dist_p, cond_dist_x, conditional_moments, CatParams, SpinOutcome,
};
use steerlab_core::channel::{evolve, ReservoirParams};
use steerlab_core::gaussian::{GaussianTwoModeState, Mode, SqueezeParam};
use steerlab_core::oracle::lindblad::{lindblad_cat_run, FockConfig};
use steerlab_core::oracle::mc::{mc_gaussian_witness, McConfig};
use steerlab_core::oracle::quad::{cat_support, quadrature_moments};
use steerlab_core::witness::{epr_optimized, epr_thermal_closed_form, Direction};

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    Gaussian,
    Cat,
    All,
}

impl FromStr for Scope {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "gaussian" => Ok(Scope::Gaussian),
            "cat" => Ok(Scope::Cat),
            "all" => Ok(Scope::All),
            other => Err(format!(
                "unknown scope `{other}` (expected gaussian|cat|all)"
            )),
        }
    }
}

/// Sampling and truncation budget of a verification run.
#[derive(Clone, Copy, Debug)]
pub struct VerifyBudget {
    pub samples: u64,
    pub seed: u64,
    pub fock_dim: usize,
}

impl Default for VerifyBudget {
    fn default() -> Self {
        VerifyBudget {
            samples: 1_000_000,
            seed: 42,
            fock_dim: 60,
        }
    }
}

/// Result of one named check: worst observed deviation vs its tolerance.
#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub deviation: f64,
    pub tolerance: f64,
    /// What the deviation is measured in ("abs" or "std err").
    pub unit: &'static str,
    pub pass: bool,
}

impl CheckOutcome {
    fn new(name: &'static str, deviation: f64, tolerance: f64, unit: &'static str) -> Self {
        CheckOutcome {
            name,
            deviation,
            tolerance,
            unit,
            pass: deviation <= tolerance,
        }
    }
}

/// Largest cat amplitude exercised by the cat-scope checks.
const LARGEST_CAT_ALPHA: f64 = 1.5;

fn gaussian_checks(budget: &VerifyBudget) -> CliResult<Vec<CheckOutcome>> {
    let mut out = Vec::new();

    // Monte Carlo vs the ideal vacuum product.
    let cfg = McConfig::new(budget.samples, budget.seed)?;
    let est = mc_gaussian_witness(&GaussianTwoModeState::vacuum(), Mode::A, &cfg)?;
    out.push(CheckOutcome::new(
        "mc witness: vacuum",
        (est.value - 1.0).abs() / est.std_err,
        3.0,
        "std err",
    ));

    // Monte Carlo vs the ideal squeezed-state product 1/cosh 2r.
    let r = SqueezeParam::new(1.0)?;
    let squeezed = GaussianTwoModeState::two_mode_squeezed(r);
    let cfg = McConfig::new(budget.samples, budget.seed.wrapping_add(1))?;
    let est = mc_gaussian_witness(&squeezed, Mode::A, &cfg)?;
    out.push(CheckOutcome::new(
        "mc witness: squeezed r=1",
        (est.value - 1.0 / 2.0f64.cosh()).abs() / est.std_err,
        3.0,
        "std err",
    ));

    // Monte Carlo vs the thermal closed form at mixed grid points.
    let mut worst_se = 0.0f64;
    for (i, (ratio, n_a, n_b, t)) in [
        (0.0, 0.0, 1.0, 0.2),
        (1.0, 1.0, 1.0, 0.1),
        (1.0, 5.0, 0.0, 0.15),
        (0.0, 0.0, 10.0, 0.05),
    ]
    .into_iter()
    .enumerate()
    {
        let res = ReservoirParams::new(ratio, 1.0, n_a, n_b)?;
        let state = evolve(&squeezed, &res, t)?;
        let exact = epr_thermal_closed_form(r, &res, t, Direction::AGivenB);
        let cfg = McConfig::new(budget.samples, budget.seed.wrapping_add(10 + i as u64))?;
        let est = mc_gaussian_witness(&state, Mode::A, &cfg)?;
        worst_se = worst_se.max((est.value - exact).abs() / est.std_err);
    }
    out.push(CheckOutcome::new(
        "mc witness: thermal grid",
        worst_se,
        3.0,
        "std err",
    ));

    // Closed form vs covariance pipeline, both directions.
    let mut worst = 0.0f64;
    for rv in [0.5, 1.0, 2.0] {
        let rr = SqueezeParam::new(rv)?;
        let initial = GaussianTwoModeState::two_mode_squeezed(rr);
        for (ratio, n_a, n_b) in [
            (0.0, 0.0, 0.0),
            (1.0, 1.0, 1.0),
            (0.0, 0.0, 5.0),
            (1.0, 10.0, 0.0),
        ] {
            let res = ReservoirParams::new(ratio, 1.0, n_a, n_b)?;
            for t in [0.05, 0.3, 1.0] {
                let state = evolve(&initial, &res, t)?;
                for (dir, steered) in [(Direction::AGivenB, Mode::A), (Direction::BGivenA, Mode::B)]
                {
                    let closed = epr_thermal_closed_form(rr, &res, t, dir);
                    let (pipeline, _) = epr_optimized(&state, steered)?;
                    worst = worst.max((closed - pipeline).abs());
                }
            }
        }
    }
    out.push(CheckOutcome::new(
        "closed form vs pipeline",
        worst,
        1e-12,
        "abs",
    ));

    Ok(out)
}

fn cat_checks(budget: &VerifyBudget) -> CliResult<Vec<CheckOutcome>> {
    let min_dim = FockConfig::min_dim(LARGEST_CAT_ALPHA);
    if budget.fock_dim < min_dim {
        return Err(CliError::usage(format!(
            "fock-dim {} is below the minimum {min_dim} for amplitude {LARGEST_CAT_ALPHA}",
            budget.fock_dim
        )));
    }
    let mut out = Vec::new();

    // Conditional densities integrate to 1.
    let mut worst_norm = 0.0f64;
    for alpha in [0.5, 1.0, 2.0, 3.0] {
        for outcome in SpinOutcome::BOTH {
            let mx = quadrature_moments(
                |x| cond_dist_x(alpha, x, outcome),
                cat_support(alpha),
                40_001,
            );
            let mp = quadrature_moments(
                |p| cond_dist_p(alpha, p, outcome),
                cat_support(alpha),
                40_001,
            );
            worst_norm = worst_norm
                .max((mx.norm - 1.0).abs())
                .max((mp.norm - 1.0).abs());
        }
    }
    out.push(CheckOutcome::new(
        "quadrature: density normalization",
        worst_norm,
        1e-9,
        "abs",
    ));

    // Quadrature momentum variance vs the closed form.
    let mut worst = 0.0f64;
    for alpha in [0.5, 1.0, 1.5, 2.0] {
        let m = quadrature_moments(
            |p| cond_dist_p(alpha, p, SpinOutcome::Plus),
            cat_support(alpha),
            40_001,
        );
        let exact = 1.0 - 4.0 * alpha * alpha * (-4.0 * alpha * alpha).exp();
        worst = worst.max((m.variance - exact).abs());
    }
    out.push(CheckOutcome::new(
        "quadrature: momentum variance",
        worst,
        1e-6,
        "abs",
    ));

    // Master equation vs the decohered conditional variances.
    let cfg = FockConfig::new(budget.fock_dim, 1e-3, 1.0)?;
    let times = [0.1, 0.5, 1.0];
    let mut worst = 0.0f64;
    let mut worst_conserved = 0.0f64;
    for alpha in [1.0, LARGEST_CAT_ALPHA] {
        for n in [0.0, 1.0] {
            let params = CatParams::new(alpha, 1.0, n)?;
            let run = lindblad_cat_run(&params, &cfg, &times)?;
            for m in &run.moments {
                let exact = conditional_moments(&params, m.t())?;
                worst = worst
                    .max((m.var_x_given_z() - exact.var_x_given_z()).abs())
                    .max((m.var_p_given_x() - exact.var_p_given_x()).abs())
                    .max((m.epr() - cat_steering(&params, m.t())?).abs());
            }
            let d = &run.diagnostics;
            let sigma_y0 = (-2.0 * alpha * alpha).exp();
            worst_conserved = worst_conserved
                .max(d.trace_drift)
                .max(d.sigma_z.abs())
                .max(d.sigma_x.abs())
                .max((d.sigma_y - sigma_y0).abs())
                .max((d.prob_z_plus - 0.5).abs())
                .max((d.prob_x_plus - 0.5).abs());
        }
    }
    out.push(CheckOutcome::new(
        "master equation: conditional variances",
        worst,
        1e-3,
        "abs",
    ));
    out.push(CheckOutcome::new(
        "master equation: conserved quantities",
        worst_conserved,
        1e-8,
        "abs",
    ));

    Ok(out)
}

/// Run the requested scope and return one outcome per check.
pub fn run_verify(scope: Scope, budget: &VerifyBudget) -> CliResult<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    if matches!(scope, Scope::Gaussian | Scope::All) {
        out.extend(gaussian_checks(budget)?);
    }
    if matches!(scope, Scope::Cat | Scope::All) {
        out.extend(cat_checks(budget)?);
    }
    Ok(out)
}

/// Render the report table and convert failures into an error.
pub fn render_report(outcomes: &[CheckOutcome]) -> (String, CliResult<()>) {
    let mut table = String::new();
    table.push_str(&format!(
        "{:<42} {:>12} {:>10} {:>8}  result\n",
        "check", "max dev", "tol", "unit"
    ));
    let mut failed = 0;
    for o in outcomes {
        if !o.pass {
            failed += 1;
        }
        table.push_str(&format!(
            "{:<42} {:>12.3e} {:>10.1e} {:>8}  {}\n",
            o.name,
            o.deviation,
            o.tolerance,
            o.unit,
            if o.pass { "PASS" } else { "FAIL" }
        ));
    }
    let verdict = if failed == 0 {
        Ok(())
    } else {
        Err(CliError::VerifyFailed {
            failed,
            total: outcomes.len(),
        })
    };
    (table, verdict)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scope_parsing() {
        assert_eq!("gaussian".parse::<Scope>().unwrap(), Scope::Gaussian);
        assert_eq!("all".parse::<Scope>().unwrap(), Scope::All);
        assert!("everything".parse::<Scope>().is_err());
    }

    #[test]
    fn small_budget_is_refused() {
        let budget = VerifyBudget {
            samples: 100,
            ..VerifyBudget::default()
        };
        let err = run_verify(Scope::Gaussian, &budget).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn undersized_fock_dim_is_refused() {
        let budget = VerifyBudget {
            fock_dim: 20,
            ..VerifyBudget::default()
        };
        let err = run_verify(Scope::Cat, &budget).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn cat_scope_passes_at_default_budget() {
        let outcomes = run_verify(Scope::Cat, &VerifyBudget::default()).unwrap();
        assert_eq!(outcomes.len(), 4);
        let (table, verdict) = render_report(&outcomes);
        assert!(verdict.is_ok(), "failures in:\n{table}");
    }

    #[test]
    fn gaussian_scope_passes_at_reduced_budget() {
        let budget = VerifyBudget {
            samples: 100_000,
            ..VerifyBudget::default()
        };
        let outcomes = run_verify(Scope::Gaussian, &budget).unwrap();
        assert_eq!(outcomes.len(), 4);
        let (table, verdict) = render_report(&outcomes);
        assert!(verdict.is_ok(), "failures in:\n{table}");
    }

    #[test]
    fn report_flags_failures() {
        let outcomes = vec![
            CheckOutcome::new("ok", 0.5, 1.0, "abs"),
            CheckOutcome::new("bad", 2.0, 1.0, "abs"),
        ];
        let (table, verdict) = render_report(&outcomes);
        assert!(table.contains("FAIL"));
        match verdict.unwrap_err() {
            CliError::VerifyFailed { failed, total } => {
                assert_eq!((failed, total), (1, 2));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }
}
