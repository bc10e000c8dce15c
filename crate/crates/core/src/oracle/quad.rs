//! Composite Simpson quadrature for density normalization and moments.

use crate::error::{Error, Result};

/// Tolerated deviation of the integrated density mass from 1.
pub const NORM_TOL: f64 = 1e-6;

/// Zeroth, first and second central moments of a density on an interval.
#[derive(Clone, Copy, Debug)]
pub struct QuadratureMoments {
    pub norm: f64,
    pub mean: f64,
    pub variance: f64,
}

/// Support wide enough to hold all but ~1e-10 of the mass of the cat
/// conditional densities at amplitude `alpha`.
pub fn cat_support(alpha: f64) -> (f64, f64) {
    let half = 2.0 * alpha + 8.0;
    (-half, half)
}

/// Integrate normalization, mean and variance of `density` over `support`
/// with the composite Simpson rule (`points` is rounded up to be odd).
pub fn quadrature_moments(
    density: impl Fn(f64) -> f64,
    support: (f64, f64),
    points: usize,
) -> QuadratureMoments {
    let n = points.max(3) | 1;
    let (a, b) = support;
    let h = (b - a) / (n - 1) as f64;
    let (mut s0, mut s1, mut s2) = (0.0, 0.0, 0.0);
    for i in 0..n {
        let x = a + h * i as f64;
        let w = if i == 0 || i == n - 1 {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        let f = w * density(x);
        s0 += f;
        s1 += f * x;
        s2 += f * x * x;
    }
    let scale = h / 3.0;
    let norm = s0 * scale;
    let mean = s1 * scale / norm;
    let variance = s2 * scale / norm - mean * mean;
    QuadratureMoments {
        norm,
        mean,
        variance,
    }
}

/// Variance of a normalized density; errors when the integrated mass
/// deviates from 1 by more than [`NORM_TOL`] (support too small or the
/// density is not normalized).
pub fn quadrature_variance(
    density: impl Fn(f64) -> f64,
    support: (f64, f64),
    points: usize,
) -> Result<f64> {
    let m = quadrature_moments(density, support, points);
    if (m.norm - 1.0).abs() > NORM_TOL {
        return Err(Error::SupportTooSmall { norm: m.norm });
    }
    Ok(m.variance)
}
