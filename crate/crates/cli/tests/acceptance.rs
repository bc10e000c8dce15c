//! Acceptance gate: one test per release criterion, each printing a
//! PASS/FAIL line with the observed worst deviation. Run with
//! `cargo test -p steerlab-cli --test acceptance -- --nocapture` to see the
//! table.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use steerlab_cli::sweep::{run_sweep, write_csv_file, Preset, SweepSpec};
use steerlab_core::cat::{cond_dist_p, CatParams, SpinOutcome};
use steerlab_core::channel::{evolve, ReservoirParams};
use steerlab_core::gaussian::{GaussianTwoModeState, Mode, SqueezeParam};
use steerlab_core::oracle::lindblad::{lindblad_cat_run, FockConfig};
use steerlab_core::oracle::mc::{mc_gaussian_witness, McConfig};
use steerlab_core::oracle::quad::{cat_support, quadrature_moments};
use steerlab_core::witness::{
    ent_death_time, ent_parameter, epr_optimized, epr_thermal_closed_form, sudden_death_time,
    Direction,
};

const LN2_OVER_2: f64 = 0.34657359027997264;

fn report(criterion: u32, name: &str, pass: bool, detail: &str) {
    println!(
        "criterion {criterion} [{}] {name}: {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
}

fn squeezed(rv: f64) -> GaussianTwoModeState {
    GaussianTwoModeState::two_mode_squeezed(SqueezeParam::new(rv).unwrap())
}

#[test]
fn criterion_1_sudden_death_constant() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for rv in [0.5, 1.0, 2.0] {
        let r = SqueezeParam::new(rv).unwrap();
        for res in [
            ReservoirParams::bath_on_b(1.0, 0.0).unwrap(),
            ReservoirParams::symmetric(1.0, 0.0).unwrap(),
        ] {
            let death = sudden_death_time(r, &res, Direction::AGivenB)
                .unwrap()
                .expect("steering death expected");
            worst = worst.max((death - LN2_OVER_2).abs());
        }
    }
    let elapsed = start.elapsed();
    let pass = worst < 1e-9 && elapsed.as_secs_f64() < 1.0;
    report(
        1,
        "sudden-death time is ln(2)/2",
        pass,
        &format!("max |t* - ln2/2| = {worst:.3e}, runtime {elapsed:.2?}"),
    );
    assert!(pass, "worst deviation {worst}, runtime {elapsed:?}");
}

#[test]
fn criterion_2_ideal_steering_value() {
    // Identity check on a 50-point grid to r = 3. Beyond r ~ 3 the
    // conditional-variance subtraction cancels ~1e4-sized terms and f64
    // rounding alone exceeds 1e-12, so larger r is covered by the
    // monotone-decay clause instead.
    let mut worst = 0.0f64;
    for k in 1..=50 {
        let rv = 3.0 * k as f64 / 50.0;
        let (epr, _) = epr_optimized(&squeezed(rv), Mode::A).unwrap();
        worst = worst.max((epr - 1.0 / (2.0 * rv).cosh()).abs());
    }
    let mut monotone = true;
    let mut prev = f64::INFINITY;
    let mut last = f64::NAN;
    for k in 0..=50 {
        let rv = 5.0 * k as f64 / 50.0;
        let (epr, _) = epr_optimized(&squeezed(rv), Mode::A).unwrap();
        if epr >= prev {
            monotone = false;
        }
        prev = epr;
        last = epr;
    }
    let pass = worst < 1e-12 && monotone && last < 1e-4;
    report(
        2,
        "undamped witness equals 1/cosh(2r)",
        pass,
        &format!("max |EPR - 1/cosh 2r| = {worst:.3e}, monotone to r=5 (EPR(5) = {last:.2e})"),
    );
    assert!(pass);
}

#[test]
fn criterion_3_closed_form_pipeline_equivalence() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut points = 0usize;
    for rv in [0.3, 0.7, 1.0, 1.5, 2.0] {
        let r = SqueezeParam::new(rv).unwrap();
        let initial = squeezed(rv);
        for ratio in [0.0, 1.0] {
            for n_a in [0.0, 1.0, 5.0, 10.0] {
                for n_b in [0.0, 1.0, 5.0, 10.0] {
                    let res = ReservoirParams::new(ratio, 1.0, n_a, n_b).unwrap();
                    for t in [0.05, 0.2, 0.5, 1.0, 2.0] {
                        let state = evolve(&initial, &res, t).unwrap();
                        for (dir, steered) in
                            [(Direction::AGivenB, Mode::A), (Direction::BGivenA, Mode::B)]
                        {
                            let closed = epr_thermal_closed_form(r, &res, t, dir);
                            let (pipeline, _) = epr_optimized(&state, steered).unwrap();
                            worst = worst.max((closed - pipeline).abs());
                        }
                        points += 1;
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = worst < 1e-12 && points >= 200 && elapsed.as_secs_f64() < 5.0;
    report(
        3,
        "thermal closed form equals covariance pipeline",
        pass,
        &format!("{points} grid points, max |diff| = {worst:.3e}, runtime {elapsed:.2?}"),
    );
    assert!(pass, "worst {worst} over {points} points in {elapsed:?}");
}

#[test]
fn criterion_4_no_steered_mode_sudden_death() {
    // The witness tends to 1 from below; past t' ~ 17 the remaining gap
    // (~e^{-2t'} cosh-scaled) drops under one f64 ulp of 1, so strictness
    // is only checkable where the gap is representable.
    let mut pass = true;
    let mut detail = String::new();
    for rv in [0.5, 1.0, 2.0] {
        let r = SqueezeParam::new(rv).unwrap();
        let res = ReservoirParams::bath_on_b(1.0, 0.0).unwrap();
        assert_eq!(
            sudden_death_time(r, &res, Direction::BGivenA).unwrap(),
            None
        );
        let mut worst_gap = 0.0f64;
        for k in 0..=400 {
            let t = 20.0 * k as f64 / 400.0;
            let epr = epr_thermal_closed_form(r, &res, t, Direction::BGivenA);
            if epr > 1.0 + 1e-14 {
                pass = false;
            }
            if t <= 16.0 && epr >= 1.0 {
                pass = false;
            }
            worst_gap = worst_gap.max(epr - 1.0);
        }
        let limit = epr_thermal_closed_form(r, &res, 20.0, Direction::BGivenA);
        if (limit - 1.0).abs() > 1e-6 || limit > 1.0 + 1e-14 {
            pass = false;
        }
        detail = format!(
            "r={rv}: max(EPR-1) = {worst_gap:.1e}, |EPR(20)-1| = {:.1e}",
            (limit - 1.0).abs()
        );
    }
    report(
        4,
        "steered-mode damping never kills steering",
        pass,
        &detail,
    );
    assert!(pass);
}

#[test]
fn criterion_5_entanglement_loss_behavior() {
    // Pure damping: the parameter stays below 1 forever.
    let mut pass = true;
    for rv in [0.5, 1.0, 2.0] {
        let r = SqueezeParam::new(rv).unwrap();
        for ratio in [0.0, 1.0] {
            let res = ReservoirParams::new(ratio, 1.0, 0.0, 0.0).unwrap();
            if ent_death_time(r, &res).unwrap().is_some() {
                pass = false;
            }
            let initial = squeezed(rv);
            for k in 0..=100 {
                let state = evolve(&initial, &res, 0.05 * k as f64).unwrap();
                if ent_parameter(&state).0 >= 1.0 {
                    pass = false;
                }
            }
        }
    }
    // Thermal excitation: finite death times, hotter dies sooner.
    let r = SqueezeParam::new(1.0).unwrap();
    let mut deaths = Vec::new();
    for n_b in [1.0, 5.0, 10.0] {
        let res = ReservoirParams::symmetric(1.0, n_b).unwrap();
        deaths.push(
            ent_death_time(r, &res)
                .unwrap()
                .expect("thermal death expected"),
        );
    }
    let decreasing = deaths.windows(2).all(|w| w[1] < w[0]);
    pass = pass && decreasing;
    report(
        5,
        "entanglement survives loss, dies under thermal noise",
        pass,
        &format!("death times at n_b = 1, 5, 10: {deaths:.3?} (decreasing: {decreasing})"),
    );
    assert!(pass);
}

#[test]
fn criterion_6_monte_carlo_oracle_agreement() {
    let start = Instant::now();
    let mut meta = ChaCha12Rng::seed_from_u64(0x5745_4550);
    let mut worst_se = 0.0f64;
    for point in 0..20u64 {
        let rv = meta.gen_range(0.3..1.5);
        let ratio = if meta.gen_bool(0.5) { 0.0 } else { 1.0 };
        let n_a = meta.gen_range(0.0..3.0);
        let n_b = meta.gen_range(0.0..3.0);
        let t = meta.gen_range(0.02..1.0);
        let r = SqueezeParam::new(rv).unwrap();
        let res = ReservoirParams::new(ratio, 1.0, n_a, n_b).unwrap();
        let state = evolve(&squeezed(rv), &res, t).unwrap();
        let exact = epr_thermal_closed_form(r, &res, t, Direction::AGivenB);
        let cfg = McConfig::new(1_000_000, 1000 + point).unwrap();
        let est = mc_gaussian_witness(&state, Mode::A, &cfg).unwrap();
        worst_se = worst_se.max((est.value - exact).abs() / est.std_err);
    }
    let elapsed = start.elapsed();
    let pass = worst_se < 3.0 && elapsed.as_secs_f64() < 60.0;
    report(
        6,
        "1e6-sample Monte Carlo matches analytic witness",
        pass,
        &format!(
            "20 random grid points, worst deviation = {worst_se:.2} std err, runtime {elapsed:.2?}"
        ),
    );
    assert!(pass, "worst {worst_se} se, runtime {elapsed:?}");
}

#[test]
fn criterion_7_cat_signature_by_quadrature() {
    let mut worst = 0.0f64;
    for alpha in [0.5f64, 1.0, 1.5, 2.0] {
        let exact = 1.0 - 4.0 * alpha * alpha * (-4.0 * alpha * alpha).exp();
        for outcome in SpinOutcome::BOTH {
            let m = quadrature_moments(
                |p| cond_dist_p(alpha, p, outcome),
                cat_support(alpha),
                60_001,
            );
            worst = worst.max((m.variance - exact).abs());
        }
    }
    // Deepest dip of the closed form over a fine amplitude scan.
    let mut min = (f64::INFINITY, 0.0);
    for i in 1..=4000 {
        let alpha = 2.0 * i as f64 / 4000.0;
        let v = 1.0 - 4.0 * alpha * alpha * (-4.0 * alpha * alpha).exp();
        if v < min.0 {
            min = (v, alpha);
        }
    }
    let dip_quadrature = quadrature_moments(
        |p| cond_dist_p(0.5, p, SpinOutcome::Plus),
        cat_support(0.5),
        60_001,
    )
    .variance;
    let dip_exact = 1.0 - (-1.0f64).exp();
    let dip_err = (dip_quadrature - dip_exact).abs();
    let pass = worst < 1e-6 && dip_err < 1e-6 && (min.1 - 0.5).abs() < 1e-3;
    report(
        7,
        "momentum fringes reproduce the conditional variance",
        pass,
        &format!(
            "max |quadrature - closed form| = {worst:.3e}, dip {dip_quadrature:.6} at alpha = {:.3} (expected 1 - 1/e)",
            min.1
        ),
    );
    assert!(pass, "worst {worst}, dip error {dip_err}, argmin {}", min.1);
}

#[test]
fn criterion_8_master_equation_oracle_agreement() {
    let start = Instant::now();
    let cfg = FockConfig::new(60, 1e-3, 1.0).unwrap();
    let times = [0.1, 0.5, 1.0];
    let mut worst = 0.0f64;
    for alpha in [0.5, 1.0, 1.5] {
        for n in [0.0, 1.0] {
            let params = CatParams::new(alpha, 1.0, n).unwrap();
            let run = lindblad_cat_run(&params, &cfg, &times).unwrap();
            for m in &run.moments {
                let decay2 = (-2.0 * m.t()).exp();
                let var_x_exact = 1.0 + 2.0 * n * (1.0 - decay2);
                let var_p_exact =
                    var_x_exact - 4.0 * alpha * alpha * decay2 * (-4.0 * alpha * alpha).exp();
                worst = worst
                    .max((m.var_x_given_z() - var_x_exact).abs())
                    .max((m.var_p_given_x() - var_p_exact).abs());
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = worst < 1e-3 && elapsed.as_secs_f64() < 300.0;
    report(
        8,
        "Fock-space master equation matches decohered variances",
        pass,
        &format!("max |oracle - closed form| = {worst:.3e}, runtime {elapsed:.2?}"),
    );
    assert!(pass, "worst {worst}, runtime {elapsed:?}");
}

/// Parse a sweep CSV produced by `write_csv_file` into numeric rows.
fn read_csv(path: &std::path::Path, expected_header: &str) -> Vec<Vec<f64>> {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), expected_header);
    lines
        .map(|line| line.split(',').map(|f| f.parse().unwrap()).collect())
        .collect()
}

/// Rows of one curve, keyed by a column value.
fn curve(rows: &[Vec<f64>], column: usize, value: f64) -> Vec<&Vec<f64>> {
    rows.iter().filter(|row| row[column] == value).collect()
}

#[test]
fn criterion_9_figure_preset_regressions() {
    let dir = tempfile::tempdir().unwrap();
    let mut pass = true;
    let mut notes = Vec::new();

    // fig2-left: solid curves ordered r = 2, 1, 0.5 bottom-to-top at small
    // t'; steering-mode damping kills A|B at ln2/2; B|A never crosses 1.
    {
        let path = dir.path().join("fig2_left.csv");
        let rows_enum = run_sweep(&SweepSpec::preset(Preset::Fig2Left)).unwrap();
        write_csv_file(&rows_enum, &path).unwrap();
        let rows = read_csv(&path, steerlab_cli::sweep::TWO_MODE_HEADER);
        let grid_step = 2.0 / 399.0;
        let (mut ab_small, mut crossings) = (Vec::new(), Vec::new());
        for rv in [2.0, 1.0, 0.5] {
            let c = curve(&rows, 1, rv);
            ab_small.push(c[4][5]); // epr_ab at the 5th grid point
            let cross = c.iter().find(|row| row[5] >= 1.0).map(|row| row[0]);
            crossings.push(cross);
            if c.iter().any(|row| row[6] >= 1.0) {
                pass = false;
                notes.push(format!("fig2-left: epr_ba crossed 1 for r={rv}"));
            }
        }
        if !(ab_small[0] < ab_small[1] && ab_small[1] < ab_small[2]) {
            pass = false;
            notes.push(format!("fig2-left: bad small-t ordering {ab_small:?}"));
        }
        for cross in crossings {
            match cross {
                Some(t) if (t - LN2_OVER_2).abs() <= grid_step => {}
                other => {
                    pass = false;
                    notes.push(format!("fig2-left: crossing {other:?} not at ln2/2"));
                }
            }
        }
    }

    // fig3: hotter steered-system reservoirs die sooner, in both directions.
    {
        let path = dir.path().join("fig3.csv");
        write_csv_file(&run_sweep(&SweepSpec::preset(Preset::Fig3)).unwrap(), &path).unwrap();
        let rows = read_csv(&path, steerlab_cli::sweep::TWO_MODE_HEADER);
        for col in [5usize, 6] {
            let mut prev = f64::INFINITY;
            for n_b in [1.0, 5.0, 10.0] {
                let c = curve(&rows, 4, n_b);
                let cross = c.iter().find(|row| row[col] >= 1.0).map(|row| row[0]);
                match cross {
                    Some(t) if t < prev => prev = t,
                    other => {
                        pass = false;
                        notes.push(format!("fig3: col {col} n_b={n_b}: crossing {other:?}"));
                    }
                }
            }
        }
    }

    // fig5-left: no entanglement death at n = 0; deeper squeezing sits
    // lower at small t'.
    {
        let path = dir.path().join("fig5_left.csv");
        write_csv_file(
            &run_sweep(&SweepSpec::preset(Preset::Fig5Left)).unwrap(),
            &path,
        )
        .unwrap();
        let rows = read_csv(&path, steerlab_cli::sweep::TWO_MODE_HEADER);
        if rows.iter().any(|row| row[7] >= 1.0) {
            pass = false;
            notes.push("fig5-left: ent crossed 1 under pure loss".into());
        }
        for ratio in [0.0, 1.0] {
            let family: Vec<&Vec<f64>> = rows.iter().filter(|row| row[2] == ratio).collect();
            let ent_at = |rv: f64| {
                family
                    .iter()
                    .find(|row| row[1] == rv && row[0] > 0.009 && row[0] < 0.011)
                    .map(|row| row[7])
                    .unwrap()
            };
            let (e2, e1, e05) = (ent_at(2.0), ent_at(1.0), ent_at(0.5));
            if !(e2 < e1 && e1 < e05) {
                pass = false;
                notes.push(format!("fig5-left ratio {ratio}: ordering {e2} {e1} {e05}"));
            }
        }
    }

    // fig8: the initial signature weakens with cat size; thermal occupation
    // only raises it; every curve decays monotonically toward threshold.
    {
        let path = dir.path().join("fig8.csv");
        write_csv_file(&run_sweep(&SweepSpec::preset(Preset::Fig8)).unwrap(), &path).unwrap();
        let rows = read_csv(&path, steerlab_cli::sweep::CAT_HEADER);
        let at_zero = |alpha: f64, n: f64| {
            rows.iter()
                .find(|row| row[1] == alpha && row[2] == n && row[0] == 0.0)
                .map(|row| row[5])
                .unwrap()
        };
        if !(at_zero(0.5, 0.0) < at_zero(1.0, 0.0) && at_zero(1.0, 0.0) < at_zero(1.5, 0.0)) {
            pass = false;
            notes.push("fig8: EPR(0) not increasing in alpha".into());
        }
        for alpha in [0.5, 1.0, 1.5] {
            let cold = curve(&rows, 1, alpha)
                .into_iter()
                .filter(|row| row[2] == 0.0)
                .collect::<Vec<_>>();
            let hot = curve(&rows, 1, alpha)
                .into_iter()
                .filter(|row| row[2] == 1.0)
                .collect::<Vec<_>>();
            for (c, h) in cold.iter().zip(hot.iter()).skip(1) {
                if h[5] < c[5] {
                    pass = false;
                    notes.push(format!("fig8: thermal curve below cold at alpha={alpha}"));
                    break;
                }
            }
            let monotone = cold.windows(2).all(|w| w[1][5] >= w[0][5] - 1e-12);
            if !monotone {
                pass = false;
                notes.push(format!("fig8: cold curve not monotone at alpha={alpha}"));
            }
        }
    }

    report(
        9,
        "figure presets reproduce caption orderings",
        pass,
        &if notes.is_empty() {
            "fig2-left, fig3, fig5-left, fig8 checks hold".to_string()
        } else {
            notes.join("; ")
        },
    );
    assert!(pass, "{notes:?}");
}
