//! Noisy polarization-entangled states and Bell-inequality violation analysis.
//!
//! The crate constructs two-, three-, and four-qubit density matrices for
//! maximally entangled states mixed with white or colored (polarization-basis)
//! noise, evaluates four Bell operators exactly via `Tr(rho * B)`, and
//! maximizes the violation over the local measurement angles as a function of
//! the purity `p`. Supported inequalities: the two-qubit CHSH inequality, the
//! three-qubit Mermin inequality, the four-qubit Mermin-Klyshko inequality,
//! and a CHSH-like inequality for a two-qutrit singlet simulated by four
//! photons.
//!
//! Everything is generic over the floating-point scalar through [`Scalar`];
//! `f64` aliases are exported at the crate root.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

pub mod bell;
pub mod eig;
pub mod matrix;
pub mod observables;
pub mod optimizer;
pub mod states;

pub use bell::{closed_form, evaluate, make_expression, peres_entangled};
pub use bell::{BellExpression, BellKind, BellValue};
pub use eig::hermitian_eigenvalues;
pub use matrix::ComplexMatrix;
pub use observables::{AnglePair, Observable, Pauli};
pub use optimizer::{critical_purity, maximize, state_for, sweep};
pub use optimizer::{OptimizationResult, OptimizerConfig, SweepRecord, Threshold};
pub use states::{DensityMatrix, NoiseKind, Purity};

/// Floating-point scalar the numerical core is generic over.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + NumAssign + Debug + Display + 'static
{
    /// Converts an `f64` constant into the scalar type.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("constant not representable in scalar type")
    }
}

impl<T> Scalar for T where
    T: Float + FloatConst + FromPrimitive + NumAssign + Debug + Display + 'static
{
}

/// Errors reported by the numerical core.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Matrix or state dimensions do not match the operation.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    /// Input to the eigensolver deviates from Hermitian symmetry.
    #[error("matrix is not Hermitian (max entry deviation {deviation:e})")]
    NotHermitian { deviation: f64 },
    /// The eigensolver did not reach its convergence threshold.
    #[error("eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    /// A single-qubit operator was addressed to a nonexistent tensor slot.
    #[error("site {site} out of range for {n_qubits} qubits")]
    SiteOutOfRange { site: usize, n_qubits: usize },
    /// GHZ construction is defined for three or four qubits only.
    #[error("unsupported qubit count {n}, expected 3 or 4")]
    BadQubitCount { n: usize },
    /// Purity must be a probability.
    #[error("purity must lie in [0, 1], got {value}")]
    PurityOutOfRange { value: f64 },
    /// Sweep bounds must satisfy `0 <= start <= stop <= 1` with positive step.
    #[error("bad sweep range: need 0 <= start <= stop <= 1 and step > 0")]
    BadRange,
    /// A density-matrix invariant (trace, Hermiticity, positivity) failed.
    #[error("density matrix invariant violated: {reason}")]
    InvalidDensity { reason: &'static str },
}

/// Complex scalar over `f64`.
pub type C64 = num_complex::Complex<f64>;
/// Dense complex matrix over `f64`.
pub type Matrix64 = matrix::ComplexMatrix<f64>;
/// Density matrix over `f64`.
pub type Density64 = states::DensityMatrix<f64>;
/// Measurement angle pair over `f64`.
pub type Angles64 = observables::AnglePair<f64>;
