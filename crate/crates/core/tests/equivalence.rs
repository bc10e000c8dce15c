//! Cross-validation of the closed-form thermal steering expression against
//! the covariance pipeline (channel evolution plus gain optimization), and
//! grid-level witness properties that are too heavy for unit tests.

use steerlab_core::channel::{evolve, integrate_channel, ReservoirParams};
use steerlab_core::gaussian::{GaussianTwoModeState, Mode, SqueezeParam, PHYSICALITY_TOL};
use steerlab_core::witness::{
    ent_at_gain, ent_death_time, ent_parameter, epr_optimized, epr_product,
    epr_thermal_closed_form, Direction, Gains,
};

const R_GRID: [f64; 5] = [0.3, 0.7, 1.0, 1.5, 2.0];
const RATIO_GRID: [f64; 2] = [0.0, 1.0];
const N_GRID: [f64; 4] = [0.0, 1.0, 5.0, 10.0];
const T_GRID: [f64; 5] = [0.05, 0.2, 0.5, 1.0, 2.0];

fn squeezed(rv: f64) -> GaussianTwoModeState {
    GaussianTwoModeState::two_mode_squeezed(SqueezeParam::new(rv).unwrap())
}

#[test]
fn closed_form_equals_pipeline_on_parameter_grid() {
    let mut points = 0usize;
    let mut worst = 0.0f64;
    for rv in R_GRID {
        let r = SqueezeParam::new(rv).unwrap();
        let initial = squeezed(rv);
        for ratio in RATIO_GRID {
            for n_a in N_GRID {
                for n_b in N_GRID {
                    let res = ReservoirParams::new(ratio, 1.0, n_a, n_b).unwrap();
                    for t in T_GRID {
                        let state = evolve(&initial, &res, t).unwrap();
                        for (dir, steered) in
                            [(Direction::AGivenB, Mode::A), (Direction::BGivenA, Mode::B)]
                        {
                            let closed = epr_thermal_closed_form(r, &res, t, dir);
                            let (pipeline, _) = epr_optimized(&state, steered).unwrap();
                            let diff = (closed - pipeline).abs();
                            worst = worst.max(diff);
                            assert!(
                                diff < 1e-12,
                                "r={rv} ratio={ratio} n=({n_a},{n_b}) t={t} {dir:?}: \
                                 closed {closed} vs pipeline {pipeline}"
                            );
                        }
                        points += 1;
                    }
                }
            }
        }
    }
    assert!(points >= 200, "grid too small: {points}");
    println!("equivalence over {points} points, worst |closed - pipeline| = {worst:.3e}");
}

#[test]
fn every_evolved_state_is_physical() {
    for rv in R_GRID {
        let initial = squeezed(rv);
        for ratio in RATIO_GRID {
            for n_b in N_GRID {
                let res = ReservoirParams::new(ratio, 1.0, n_b / 2.0, n_b).unwrap();
                for t in T_GRID {
                    let state = evolve(&initial, &res, t).unwrap();
                    let defect = state.physicality_defect();
                    assert!(
                        defect >= -PHYSICALITY_TOL,
                        "r={rv} ratio={ratio} n_b={n_b} t={t}: defect {defect}"
                    );
                }
            }
        }
    }
}

#[test]
fn integrator_agrees_with_closed_form_on_grid() {
    for rv in [0.5, 1.5] {
        let initial = squeezed(rv);
        for (ga, gb, na, nb) in [
            (0.0, 1.0, 0.0, 2.0),
            (1.0, 1.0, 5.0, 5.0),
            (0.3, 0.9, 1.0, 0.0),
        ] {
            let res = ReservoirParams::new(ga, gb, na, nb).unwrap();
            for t in [0.2, 1.0] {
                let exact = evolve(&initial, &res, t).unwrap();
                let numeric = integrate_channel(&initial, &res, t, 10_000).unwrap();
                let diff = (exact.cov() - numeric.cov()).abs().max();
                assert!(
                    diff < 1e-10,
                    "r={rv} γ=({ga},{gb}) n=({na},{nb}) t={t}: {diff}"
                );
            }
        }
    }
}

#[test]
fn steering_mode_loss_is_the_damaging_direction() {
    // Bath on B with no thermal noise: steering of A dies, steering of B
    // merely degrades; the A-direction witness dominates at every t > 0.
    let res = ReservoirParams::bath_on_b(1.0, 0.0).unwrap();
    for rv in [0.5, 1.0, 2.0] {
        let r = SqueezeParam::new(rv).unwrap();
        for k in 1..=40 {
            let t = 0.05 * k as f64;
            let ab = epr_thermal_closed_form(r, &res, t, Direction::AGivenB);
            let ba = epr_thermal_closed_form(r, &res, t, Direction::BGivenA);
            assert!(ab > ba, "r={rv} t={t}: EPR_A|B={ab} <= EPR_B|A={ba}");
        }
    }
}

#[test]
fn optimal_gains_are_first_order_stationary_on_grid() {
    for rv in [0.5, 1.0, 1.8] {
        let initial = squeezed(rv);
        for (ratio, n_a, n_b) in [(0.0, 0.0, 0.0), (1.0, 1.0, 1.0), (0.0, 0.0, 5.0)] {
            let res = ReservoirParams::new(ratio, 1.0, n_a, n_b).unwrap();
            for t in [0.05, 0.3, 1.0] {
                let state = evolve(&initial, &res, t).unwrap();
                for steered in [Mode::A, Mode::B] {
                    let (opt, gains) = epr_optimized(&state, steered).unwrap();
                    for dg in [-1e-3, 1e-3] {
                        let bx = Gains {
                            g_x: gains.g_x + dg,
                            ..gains
                        };
                        let bp = Gains {
                            g_p: gains.g_p + dg,
                            ..gains
                        };
                        assert!(epr_product(&state, steered, bx) >= opt - 1e-15);
                        assert!(epr_product(&state, steered, bp) >= opt - 1e-15);
                    }
                }
            }
        }
    }
}

#[test]
fn ent_death_only_with_thermal_excitation() {
    let r = SqueezeParam::new(1.0).unwrap();
    // Pure loss never kills the entanglement parameter.
    for ratio in RATIO_GRID {
        let res = ReservoirParams::new(ratio, 1.0, 0.0, 0.0).unwrap();
        assert_eq!(ent_death_time(r, &res).unwrap(), None, "ratio={ratio}");
        let initial = squeezed(1.0);
        for k in 0..=100 {
            let state = evolve(&initial, &res, 0.05 * k as f64).unwrap();
            assert!(ent_parameter(&state).0 < 1.0);
        }
    }
    // Thermal excitation kills it, faster for hotter reservoirs.
    let mut prev = f64::INFINITY;
    for n in [1.0, 5.0, 10.0] {
        let res = ReservoirParams::symmetric(1.0, n).unwrap();
        let death = ent_death_time(r, &res).unwrap().expect("finite death time");
        assert!(death < prev);
        prev = death;
    }
}

#[test]
fn ent_closed_form_gain_beats_its_neighborhood_on_grid() {
    for rv in [0.6, 1.0, 1.6] {
        let initial = squeezed(rv);
        for (ratio, n_a, n_b) in [(0.0, 0.0, 0.0), (1.0, 0.5, 0.5), (1.0, 1.0, 0.0)] {
            let res = ReservoirParams::new(ratio, 1.0, n_a, n_b).unwrap();
            for t in [0.1, 0.6] {
                let state = evolve(&initial, &res, t).unwrap();
                let (ent, g) = ent_parameter(&state);
                for dg in [-1e-4, 1e-4] {
                    let bumped = ent_at_gain(&state, g * (1.0 + dg));
                    assert!(
                        bumped >= ent - 1e-12,
                        "r={rv} ratio={ratio} t={t}: ent({}) = {bumped} < {ent}",
                        g * (1.0 + dg)
                    );
                }
            }
        }
    }
}
