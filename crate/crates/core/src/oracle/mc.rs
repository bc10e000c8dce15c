//! Monte Carlo estimation of the Gaussian steering product.
//!
//! Symmetrized quadrature moments are exactly the moments of the classical
//! multivariate normal with the state's covariance matrix, so the witness
//! can be estimated by plain sampling: draw quadrature 4-vectors, form the
//! sample analogs of the optimal gains and conditional variances, and
//! report the product with a batch-spread standard error.
//!
//! Batches own independent counter-based RNG substreams derived from
//! `(seed, batch index)`, so results are reproducible bit-for-bit no matter
//! how the batches are scheduled across threads.

use nalgebra::{Cholesky, Vector4};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gaussian::{GaussianTwoModeState, Mode, Quadrature};
use crate::witness::Gains;

/// Smallest sample budget accepted for an estimate.
pub const MIN_SAMPLES: u64 = 10_000;

const DEFAULT_BATCHES: u32 = 64;

/// Sampling budget, seed and batch layout for one estimate.
#[derive(Clone, Copy, Debug)]
pub struct McConfig {
    samples: u64,
    seed: u64,
    batches: u32,
}

impl McConfig {
    pub fn new(samples: u64, seed: u64) -> Result<Self> {
        if samples < MIN_SAMPLES {
            return Err(Error::BudgetTooSmall {
                samples,
                min: MIN_SAMPLES,
            });
        }
        Ok(McConfig {
            samples,
            seed,
            batches: DEFAULT_BATCHES,
        })
    }

    pub fn with_batches(mut self, batches: u32) -> Result<Self> {
        if batches < 2 {
            return Err(Error::InvalidParam {
                name: "batches",
                value: batches as f64,
            });
        }
        self.batches = batches;
        Ok(self)
    }

    pub fn samples(&self) -> u64 {
        self.samples
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn batches(&self) -> u32 {
        self.batches
    }
}

/// Point estimate with its standard error and the sample-regression gains.
#[derive(Clone, Copy, Debug)]
pub struct McEstimate {
    pub value: f64,
    pub std_err: f64,
    pub gains: Gains,
}

/// Raw second-moment sums of one batch, in the order
/// `(X_s², X_m², X_s X_m, P_s², P_m², P_s P_m)`.
#[derive(Clone, Copy, Debug, Default)]
struct MomentSums {
    n: u64,
    s: [f64; 6],
}

impl MomentSums {
    fn merge(self, other: MomentSums) -> MomentSums {
        MomentSums {
            n: self.n + other.n,
            s: std::array::from_fn(|i| self.s[i] + other.s[i]),
        }
    }

    /// Plug-in estimate of the steering product and gains.
    fn witness(&self) -> (f64, Gains) {
        let nf = self.n as f64;
        let [xss, xmm, xsm, pss, pmm, psm] = self.s.map(|v| v / nf);
        let g_x = xsm / xmm;
        let g_p = -psm / pmm;
        let var_x = xss - xsm * xsm / xmm;
        let var_p = pss - psm * psm / pmm;
        ((var_x.max(0.0) * var_p.max(0.0)).sqrt(), Gains { g_x, g_p })
    }
}

/// Deterministic pairwise reduction, independent of thread scheduling.
fn pairwise_merge(sums: &[MomentSums]) -> MomentSums {
    match sums.len() {
        0 => MomentSums::default(),
        1 => sums[0],
        n => pairwise_merge(&sums[..n / 2]).merge(pairwise_merge(&sums[n / 2..])),
    }
}

/// Estimate the optimized steering product of `state` by sampling.
pub fn mc_gaussian_witness(
    state: &GaussianTwoModeState,
    steered: Mode,
    cfg: &McConfig,
) -> Result<McEstimate> {
    state.check_physical()?;
    let chol = Cholesky::new(*state.cov()).ok_or(Error::Degenerate)?;
    let factor = chol.l();

    let (sx, mx, sp, mp) = (
        Quadrature::x(steered).index(),
        Quadrature::x(steered.other()).index(),
        Quadrature::p(steered).index(),
        Quadrature::p(steered.other()).index(),
    );

    let batches = cfg.batches as u64;
    let base = cfg.samples / batches;
    let remainder = cfg.samples % batches;

    let partials: Vec<MomentSums> = (0..cfg.batches)
        .into_par_iter()
        .map(|batch| {
            let mut rng = ChaCha12Rng::seed_from_u64(cfg.seed);
            rng.set_stream(batch as u64);
            let count = base + u64::from((batch as u64) < remainder);
            let mut sums = MomentSums {
                n: count,
                s: [0.0; 6],
            };
            for _ in 0..count {
                let z = Vector4::new(
                    rng.sample(StandardNormal),
                    rng.sample(StandardNormal),
                    rng.sample(StandardNormal),
                    rng.sample(StandardNormal),
                );
                // Fluctuation around the mean; the mean itself carries no
                // information for the variance product.
                let d = factor * z;
                sums.s[0] += d[sx] * d[sx];
                sums.s[1] += d[mx] * d[mx];
                sums.s[2] += d[sx] * d[mx];
                sums.s[3] += d[sp] * d[sp];
                sums.s[4] += d[mp] * d[mp];
                sums.s[5] += d[sp] * d[mp];
            }
            sums
        })
        .collect();

    let (value, gains) = pairwise_merge(&partials).witness();

    // Standard error from the spread of the per-batch estimates.
    let batch_estimates: Vec<f64> = partials.iter().map(|p| p.witness().0).collect();
    let b = batch_estimates.len() as f64;
    let mean = batch_estimates.iter().sum::<f64>() / b;
    let var = batch_estimates
        .iter()
        .map(|e| (e - mean).powi(2))
        .sum::<f64>()
        / (b - 1.0);
    let std_err = (var / b).sqrt();

    Ok(McEstimate {
        value,
        std_err,
        gains,
    })
}
