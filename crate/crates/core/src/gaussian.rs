//! Value types for two-mode Gaussian states.
//!
//! Quadratures are scaled as `X = a + a†`, `P = (a - a†)/i`, which puts the
//! vacuum variance at 1 and the commutator at `[X, P] = 2i`. The covariance
//! matrix stores symmetrized second moments in the fixed ordering
//! `(X_A, P_A, X_B, P_B)`; the commutator contribution lives entirely in the
//! symplectic form `Ω` and enters only through the physicality inequality
//! `cov + iΩ ≥ 0`.

use nalgebra::{Matrix4, SMatrix, SymmetricEigen, Vector4};

use crate::error::{Error, Result};

/// Tolerance on the smallest eigenvalue of `cov + iΩ`.
pub const PHYSICALITY_TOL: f64 = 1e-9;

/// Which oscillator a quadrature belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    A,
    B,
}

impl Mode {
    pub fn other(self) -> Mode {
        match self {
            Mode::A => Mode::B,
            Mode::B => Mode::A,
        }
    }
}

/// Amplitude (`X`) or phase (`P`) quadrature.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuadKind {
    X,
    P,
}

/// One of the four quadratures indexing the covariance matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Quadrature {
    pub mode: Mode,
    pub kind: QuadKind,
}

impl Quadrature {
    pub const X_A: Quadrature = Quadrature {
        mode: Mode::A,
        kind: QuadKind::X,
    };
    pub const P_A: Quadrature = Quadrature {
        mode: Mode::A,
        kind: QuadKind::P,
    };
    pub const X_B: Quadrature = Quadrature {
        mode: Mode::B,
        kind: QuadKind::X,
    };
    pub const P_B: Quadrature = Quadrature {
        mode: Mode::B,
        kind: QuadKind::P,
    };

    pub fn x(mode: Mode) -> Quadrature {
        Quadrature {
            mode,
            kind: QuadKind::X,
        }
    }

    pub fn p(mode: Mode) -> Quadrature {
        Quadrature {
            mode,
            kind: QuadKind::P,
        }
    }

    /// Row/column of this quadrature in the `(X_A, P_A, X_B, P_B)` ordering.
    pub fn index(self) -> usize {
        match (self.mode, self.kind) {
            (Mode::A, QuadKind::X) => 0,
            (Mode::A, QuadKind::P) => 1,
            (Mode::B, QuadKind::X) => 2,
            (Mode::B, QuadKind::P) => 3,
        }
    }
}

/// Dimensionless squeeze parameter `r ≥ 0`.
///
/// For the parametric coupling that generates the two-mode squeezed state,
/// `r` is the product of drive amplitude, coupling constant and interaction
/// time (in units where `ħ = 1`); those constants enter every observable
/// only through `r`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SqueezeParam(f64);

impl SqueezeParam {
    pub fn new(r: f64) -> Result<Self> {
        if !r.is_finite() || r < 0.0 {
            return Err(Error::InvalidParam {
                name: "r",
                value: r,
            });
        }
        Ok(SqueezeParam(r))
    }

    /// Build from the interaction constants: `r = drive * coupling * duration`.
    pub fn from_coupling(drive: f64, coupling: f64, duration: f64) -> Result<Self> {
        Self::new(drive * coupling * duration)
    }

    pub fn r(self) -> f64 {
        self.0
    }

    /// Mode-mixing factor `η = cosh r` of the interaction solution.
    pub fn eta(self) -> f64 {
        self.0.cosh()
    }
}

/// Symplectic form for two modes in the vacuum-variance-1 convention,
/// `[R_i, R_j] = 2i Ω_ij` with `R = (X_A, P_A, X_B, P_B)`.
fn symplectic_form() -> Matrix4<f64> {
    Matrix4::new(
        0.0, 1.0, 0.0, 0.0, //
        -1.0, 0.0, 0.0, 0.0, //
        0.0, 0.0, 0.0, 1.0, //
        0.0, 0.0, -1.0, 0.0,
    )
}

/// A zero-mean-or-displaced two-mode Gaussian state: symmetrized 4x4
/// covariance matrix plus mean vector.
///
/// The mean is carried explicitly (it is zero for every state prepared by
/// the constructors here) so that conditional, displaced states can reuse
/// the type.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussianTwoModeState {
    cov: Matrix4<f64>,
    mean: Vector4<f64>,
}

impl GaussianTwoModeState {
    /// Uncorrelated vacuum on both modes: `cov = I`, `mean = 0`.
    pub fn vacuum() -> Self {
        GaussianTwoModeState {
            cov: Matrix4::identity(),
            mean: Vector4::zeros(),
        }
    }

    /// Two-mode squeezed vacuum with squeeze parameter `r`.
    ///
    /// Second moments follow from the mode solutions
    /// `X_A(τ) = cosh r X_A(0) - sinh r X_B(0)` (and cyclic partners) with
    /// vacuum inputs: all diagonal entries are `cosh 2r`, the X cross
    /// correlation is `-sinh 2r` and the P cross correlation `+sinh 2r`.
    pub fn two_mode_squeezed(r: SqueezeParam) -> Self {
        let ch = (2.0 * r.r()).cosh();
        let sh = (2.0 * r.r()).sinh();
        let cov = Matrix4::new(
            ch, 0.0, -sh, 0.0, //
            0.0, ch, 0.0, sh, //
            -sh, 0.0, ch, 0.0, //
            0.0, sh, 0.0, ch,
        );
        GaussianTwoModeState {
            cov,
            mean: Vector4::zeros(),
        }
    }

    /// Build from explicit parts, enforcing symmetry and physicality.
    pub fn from_parts(cov: Matrix4<f64>, mean: Vector4<f64>) -> Result<Self> {
        for i in 0..4 {
            for j in 0..4 {
                let v = cov[(i, j)];
                if !v.is_finite() {
                    return Err(Error::InvalidParam {
                        name: "cov",
                        value: v,
                    });
                }
                if cov[(i, j)] != cov[(j, i)] {
                    return Err(Error::InvalidParam {
                        name: "cov (asymmetric entry)",
                        value: cov[(i, j)] - cov[(j, i)],
                    });
                }
            }
            if !mean[i].is_finite() {
                return Err(Error::InvalidParam {
                    name: "mean",
                    value: mean[i],
                });
            }
        }
        let state = GaussianTwoModeState { cov, mean };
        state.check_physical()?;
        Ok(state)
    }

    /// Trusted constructor for channel outputs; symmetry and physicality are
    /// guaranteed by the calling map.
    pub(crate) fn from_parts_unchecked(cov: Matrix4<f64>, mean: Vector4<f64>) -> Self {
        GaussianTwoModeState { cov, mean }
    }

    pub fn cov(&self) -> &Matrix4<f64> {
        &self.cov
    }

    pub fn mean(&self) -> &Vector4<f64> {
        &self.mean
    }

    /// Central second moment of a single quadrature.
    pub fn variance(&self, q: Quadrature) -> f64 {
        self.cov[(q.index(), q.index())]
    }

    /// Symmetrized central covariance of two quadratures.
    pub fn covariance(&self, q1: Quadrature, q2: Quadrature) -> f64 {
        self.cov[(q1.index(), q2.index())]
    }

    /// Smallest eigenvalue of the Hermitian matrix `cov + iΩ`.
    ///
    /// The complex 4x4 Hermitian eigenproblem is solved through its real
    /// symmetric 8x8 embedding `[[V, -Ω], [Ω, V]]`, whose spectrum is that of
    /// `V + iΩ` with every eigenvalue doubled.
    pub fn physicality_defect(&self) -> f64 {
        let omega = symplectic_form();
        let mut m = SMatrix::<f64, 8, 8>::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m[(i, j)] = self.cov[(i, j)];
                m[(i + 4, j + 4)] = self.cov[(i, j)];
                m[(i, j + 4)] = -omega[(i, j)];
                m[(i + 4, j)] = omega[(i, j)];
            }
        }
        let eigen = SymmetricEigen::new(m);
        eigen.eigenvalues.min()
    }

    pub fn is_physical(&self) -> bool {
        self.physicality_defect() >= -PHYSICALITY_TOL
    }

    pub fn check_physical(&self) -> Result<()> {
        let min_eig = self.physicality_defect();
        if min_eig >= -PHYSICALITY_TOL {
            Ok(())
        } else {
            Err(Error::Unphysical { min_eig })
        }
    }

    /// State purity `1 / sqrt(det cov)`; equals 1 exactly for pure states.
    pub fn purity(&self) -> Result<f64> {
        let det = self.cov.determinant();
        if det <= 0.0 {
            return Err(Error::Unphysical {
                min_eig: self.physicality_defect(),
            });
        }
        Ok(1.0 / det.sqrt())
    }
}
