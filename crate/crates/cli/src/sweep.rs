//! Decay-curve sweeps over dimensionless time and their CSV serialization.
//!
//! Every sweep runs on the scaled time axis `t' = γ_b t` (two-mode) or
//! `t' = γ t` (cat); absolute rates never appear in the output. Two-mode
//! rows are computed through the covariance pipeline (channel evolution
//! plus witness optimization), cat rows through the conditional-moment
//! closed forms; the CLI adds no arithmetic of its own.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;

use steerlab_core::cat::{cat_steering, conditional_moments, CatParams};
use steerlab_core::channel::{evolve, ReservoirParams};
use steerlab_core::gaussian::{GaussianTwoModeState, SqueezeParam};
use steerlab_core::witness::steering_report;

use crate::error::{CliError, CliResult};

pub const TWO_MODE_HEADER: &str = "t_prime,r,gamma_ratio,n_a,n_b,epr_ab,epr_ba,ent,g_x,g_p,g_ent";
pub const CAT_HEADER: &str = "t_prime,alpha,n,var_x_cond,var_p_cond,epr";

const DEFAULT_T_PRIME_MAX: f64 = 2.0;
const DEFAULT_STEPS: usize = 400;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scenario {
    TwoMode,
    Cat,
}

impl FromStr for Scenario {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "two-mode" => Ok(Scenario::TwoMode),
            "cat" => Ok(Scenario::Cat),
            other => Err(format!(
                "unknown scenario `{other}` (expected two-mode|cat)"
            )),
        }
    }
}

/// Figure presets: fixed curve families over the default time axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    Fig2Left,
    Fig2Right,
    Fig3,
    Fig4Left,
    Fig4Right,
    Fig5Left,
    Fig5Right,
    Fig8,
}

impl Preset {
    pub const ALL: [Preset; 8] = [
        Preset::Fig2Left,
        Preset::Fig2Right,
        Preset::Fig3,
        Preset::Fig4Left,
        Preset::Fig4Right,
        Preset::Fig5Left,
        Preset::Fig5Right,
        Preset::Fig8,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig2Left => "fig2-left",
            Preset::Fig2Right => "fig2-right",
            Preset::Fig3 => "fig3",
            Preset::Fig4Left => "fig4-left",
            Preset::Fig4Right => "fig4-right",
            Preset::Fig5Left => "fig5-left",
            Preset::Fig5Right => "fig5-right",
            Preset::Fig8 => "fig8",
        }
    }
}

impl FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown preset `{s}`"))
    }
}

/// One decay curve of the two-mode scenario. `gamma_ratio` is `γ_a/γ_b`;
/// the sweep fixes `γ_b = 1` so the time axis is `t' = γ_b t`.
#[derive(Clone, Copy, Debug)]
pub struct TwoModeCurve {
    pub r: f64,
    pub gamma_ratio: f64,
    pub n_a: f64,
    pub n_b: f64,
}

/// One decay curve of the cat scenario (`γ = 1`, axis `t' = γt`).
#[derive(Clone, Copy, Debug)]
pub struct CatCurve {
    pub alpha: f64,
    pub n: f64,
}

#[derive(Clone, Debug)]
pub enum CurveSet {
    TwoMode(Vec<TwoModeCurve>),
    Cat(Vec<CatCurve>),
}

/// A fully resolved sweep: curve family plus time grid.
#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub curves: CurveSet,
    pub t_prime_max: f64,
    pub steps: usize,
}

impl SweepSpec {
    pub fn validate(&self) -> CliResult<()> {
        if self.steps < 2 {
            return Err(CliError::usage(format!(
                "steps must be >= 2, got {}",
                self.steps
            )));
        }
        if self.t_prime_max <= 0.0 || !self.t_prime_max.is_finite() {
            return Err(CliError::usage(format!(
                "t-prime-max must be > 0, got {}",
                self.t_prime_max
            )));
        }
        let empty = match &self.curves {
            CurveSet::TwoMode(c) => c.is_empty(),
            CurveSet::Cat(c) => c.is_empty(),
        };
        if empty {
            return Err(CliError::usage("sweep has no curves"));
        }
        Ok(())
    }

    /// Preset curve family on the default axis (`t' ∈ [0, 2]`, 400 steps).
    pub fn preset(preset: Preset) -> SweepSpec {
        let two_mode = |curves: Vec<TwoModeCurve>| SweepSpec {
            curves: CurveSet::TwoMode(curves),
            t_prime_max: DEFAULT_T_PRIME_MAX,
            steps: DEFAULT_STEPS,
        };
        let tm = |r: f64, gamma_ratio: f64, n_a: f64, n_b: f64| TwoModeCurve {
            r,
            gamma_ratio,
            n_a,
            n_b,
        };
        match preset {
            // Bath on the steering mode only, no thermal noise.
            Preset::Fig2Left => two_mode(vec![
                tm(0.5, 0.0, 0.0, 0.0),
                tm(1.0, 0.0, 0.0, 0.0),
                tm(2.0, 0.0, 0.0, 0.0),
            ]),
            // Symmetric damping, no thermal noise.
            Preset::Fig2Right => two_mode(vec![
                tm(0.5, 1.0, 0.0, 0.0),
                tm(1.0, 1.0, 0.0, 0.0),
                tm(2.0, 1.0, 0.0, 0.0),
            ]),
            // Thermal reservoir on B only, r = 1.
            Preset::Fig3 => two_mode(vec![
                tm(1.0, 0.0, 0.0, 1.0),
                tm(1.0, 0.0, 0.0, 5.0),
                tm(1.0, 0.0, 0.0, 10.0),
            ]),
            // Symmetric thermal reservoirs, r = 1 and r = 2.
            Preset::Fig4Left => two_mode(vec![
                tm(1.0, 1.0, 1.0, 1.0),
                tm(1.0, 1.0, 5.0, 5.0),
                tm(1.0, 1.0, 10.0, 10.0),
                tm(2.0, 1.0, 1.0, 1.0),
                tm(2.0, 1.0, 5.0, 5.0),
                tm(2.0, 1.0, 10.0, 10.0),
            ]),
            // Thermal reservoir on A, cold reservoir on B, equal rates.
            Preset::Fig4Right => two_mode(vec![
                tm(1.0, 1.0, 1.0, 0.0),
                tm(1.0, 1.0, 5.0, 0.0),
                tm(1.0, 1.0, 10.0, 0.0),
            ]),
            // Entanglement under pure loss: symmetric and B-only damping.
            Preset::Fig5Left => two_mode(vec![
                tm(0.5, 1.0, 0.0, 0.0),
                tm(1.0, 1.0, 0.0, 0.0),
                tm(2.0, 1.0, 0.0, 0.0),
                tm(0.5, 0.0, 0.0, 0.0),
                tm(1.0, 0.0, 0.0, 0.0),
                tm(2.0, 0.0, 0.0, 0.0),
            ]),
            // Entanglement under thermal noise: symmetric and B-only baths.
            Preset::Fig5Right => two_mode(vec![
                tm(1.0, 1.0, 1.0, 1.0),
                tm(1.0, 1.0, 5.0, 5.0),
                tm(1.0, 1.0, 10.0, 10.0),
                tm(1.0, 0.0, 0.0, 1.0),
                tm(1.0, 0.0, 0.0, 5.0),
                tm(1.0, 0.0, 0.0, 10.0),
            ]),
            // Cat signature for three sizes, cold and n = 1 reservoirs.
            Preset::Fig8 => SweepSpec {
                curves: CurveSet::Cat(vec![
                    CatCurve { alpha: 0.5, n: 0.0 },
                    CatCurve { alpha: 1.0, n: 0.0 },
                    CatCurve { alpha: 1.5, n: 0.0 },
                    CatCurve { alpha: 0.5, n: 1.0 },
                    CatCurve { alpha: 1.0, n: 1.0 },
                    CatCurve { alpha: 1.5, n: 1.0 },
                ]),
                t_prime_max: DEFAULT_T_PRIME_MAX,
                steps: DEFAULT_STEPS,
            },
        }
    }

    /// Cartesian manual sweep for the two-mode scenario.
    pub fn manual_two_mode(
        r_list: &[f64],
        gamma_ratio_list: &[f64],
        n_a_list: &[f64],
        n_b_list: &[f64],
        t_prime_max: f64,
        steps: usize,
    ) -> SweepSpec {
        let mut curves = Vec::new();
        for &r in r_list {
            for &gamma_ratio in gamma_ratio_list {
                for &n_a in n_a_list {
                    for &n_b in n_b_list {
                        curves.push(TwoModeCurve {
                            r,
                            gamma_ratio,
                            n_a,
                            n_b,
                        });
                    }
                }
            }
        }
        SweepSpec {
            curves: CurveSet::TwoMode(curves),
            t_prime_max,
            steps,
        }
    }

    /// Cartesian manual sweep for the cat scenario.
    pub fn manual_cat(
        alpha_list: &[f64],
        n_list: &[f64],
        t_prime_max: f64,
        steps: usize,
    ) -> SweepSpec {
        let mut curves = Vec::new();
        for &alpha in alpha_list {
            for &n in n_list {
                curves.push(CatCurve { alpha, n });
            }
        }
        SweepSpec {
            curves: CurveSet::Cat(curves),
            t_prime_max,
            steps,
        }
    }

    pub fn default_axis() -> (f64, usize) {
        (DEFAULT_T_PRIME_MAX, DEFAULT_STEPS)
    }
}

/// One CSV row of a two-mode sweep.
#[derive(Clone, Copy, Debug)]
pub struct TwoModeRow {
    pub t_prime: f64,
    pub r: f64,
    pub gamma_ratio: f64,
    pub n_a: f64,
    pub n_b: f64,
    pub epr_ab: f64,
    pub epr_ba: f64,
    pub ent: f64,
    pub g_x: f64,
    pub g_p: f64,
    pub g_ent: f64,
}

/// One CSV row of a cat sweep.
#[derive(Clone, Copy, Debug)]
pub struct CatRow {
    pub t_prime: f64,
    pub alpha: f64,
    pub n: f64,
    pub var_x_cond: f64,
    pub var_p_cond: f64,
    pub epr: f64,
}

#[derive(Clone, Debug)]
pub enum SweepRows {
    TwoMode(Vec<TwoModeRow>),
    Cat(Vec<CatRow>),
}

impl SweepRows {
    pub fn len(&self) -> usize {
        match self {
            SweepRows::TwoMode(rows) => rows.len(),
            SweepRows::Cat(rows) => rows.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn time_grid(t_prime_max: f64, steps: usize) -> Vec<f64> {
    (0..steps)
        .map(|i| t_prime_max * i as f64 / (steps - 1) as f64)
        .collect()
}

fn two_mode_curve_rows(curve: &TwoModeCurve, grid: &[f64]) -> CliResult<Vec<TwoModeRow>> {
    let r = SqueezeParam::new(curve.r)?;
    let res = ReservoirParams::new(curve.gamma_ratio, 1.0, curve.n_a, curve.n_b)?;
    let initial = GaussianTwoModeState::two_mode_squeezed(r);
    grid.iter()
        .map(|&t_prime| {
            let state = evolve(&initial, &res, t_prime)?;
            let report = steering_report(&state, t_prime)?;
            Ok(TwoModeRow {
                t_prime,
                r: curve.r,
                gamma_ratio: curve.gamma_ratio,
                n_a: curve.n_a,
                n_b: curve.n_b,
                epr_ab: report.epr_a_given_b,
                epr_ba: report.epr_b_given_a,
                ent: report.ent,
                g_x: report.gains_ab.g_x,
                g_p: report.gains_ab.g_p,
                g_ent: report.g_ent,
            })
        })
        .collect()
}

fn cat_curve_rows(curve: &CatCurve, grid: &[f64]) -> CliResult<Vec<CatRow>> {
    let params = CatParams::new(curve.alpha, 1.0, curve.n)?;
    grid.iter()
        .map(|&t_prime| {
            let moments = conditional_moments(&params, t_prime)?;
            Ok(CatRow {
                t_prime,
                alpha: curve.alpha,
                n: curve.n,
                var_x_cond: moments.var_x_given_z(),
                var_p_cond: moments.var_p_given_x(),
                epr: cat_steering(&params, t_prime)?,
            })
        })
        .collect()
}

/// Evaluate the whole sweep. Curves run in parallel; rows come back in
/// deterministic curve-then-time order.
pub fn run_sweep(spec: &SweepSpec) -> CliResult<SweepRows> {
    spec.validate()?;
    let grid = time_grid(spec.t_prime_max, spec.steps);
    match &spec.curves {
        CurveSet::TwoMode(curves) => {
            let per_curve: Vec<CliResult<Vec<TwoModeRow>>> = curves
                .par_iter()
                .map(|c| two_mode_curve_rows(c, &grid))
                .collect();
            let mut rows = Vec::with_capacity(curves.len() * grid.len());
            for result in per_curve {
                rows.extend(result?);
            }
            Ok(SweepRows::TwoMode(rows))
        }
        CurveSet::Cat(curves) => {
            let per_curve: Vec<CliResult<Vec<CatRow>>> = curves
                .par_iter()
                .map(|c| cat_curve_rows(c, &grid))
                .collect();
            let mut rows = Vec::with_capacity(curves.len() * grid.len());
            for result in per_curve {
                rows.extend(result?);
            }
            Ok(SweepRows::Cat(rows))
        }
    }
}

/// 17 significant digits: enough to reproduce every f64 bit-exactly, so the
/// files double as regression baselines.
fn fmt(value: f64) -> String {
    format!("{value:.16e}")
}

pub fn write_csv(rows: &SweepRows, mut sink: impl Write) -> std::io::Result<()> {
    let mut buffer = String::new();
    match rows {
        SweepRows::TwoMode(rows) => {
            buffer.push_str(TWO_MODE_HEADER);
            buffer.push('\n');
            for row in rows {
                let _ = writeln!(
                    buffer,
                    "{},{},{},{},{},{},{},{},{},{},{}",
                    fmt(row.t_prime),
                    fmt(row.r),
                    fmt(row.gamma_ratio),
                    fmt(row.n_a),
                    fmt(row.n_b),
                    fmt(row.epr_ab),
                    fmt(row.epr_ba),
                    fmt(row.ent),
                    fmt(row.g_x),
                    fmt(row.g_p),
                    fmt(row.g_ent),
                );
            }
        }
        SweepRows::Cat(rows) => {
            buffer.push_str(CAT_HEADER);
            buffer.push('\n');
            for row in rows {
                let _ = writeln!(
                    buffer,
                    "{},{},{},{},{},{}",
                    fmt(row.t_prime),
                    fmt(row.alpha),
                    fmt(row.n),
                    fmt(row.var_x_cond),
                    fmt(row.var_p_cond),
                    fmt(row.epr),
                );
            }
        }
    }
    sink.write_all(buffer.as_bytes())
}

pub fn write_csv_file(rows: &SweepRows, path: &Path) -> CliResult<()> {
    let file = std::fs::File::create(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    write_csv(rows, std::io::BufWriter::new(file)).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}
