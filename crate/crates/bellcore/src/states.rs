//! Density matrices for the studied entangled states under two noise models.
//!
//! White noise mixes the pure state with the maximally mixed state; colored
//! noise mixes it with decoherence terms diagonal in the preferred
//! polarization basis (|0> horizontal, |1> vertical). Both models are affine
//! in the purity `p` and coincide at `p = 1`.

use num_complex::Complex;

use crate::eig::hermitian_eigenvalues;
use crate::matrix::ComplexMatrix;
use crate::{Error, Scalar};

/// Which noise admixture accompanies the pure state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoiseKind {
    /// Maximally mixed admixture, `(1-p)/d * I`.
    White,
    /// Diagonal decoherence terms in the polarization basis.
    Colored,
}

/// Probability that the preparation leaves the pure state intact.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Purity<T>(T);

impl<T: Scalar> Purity<T> {
    /// Validates `p` into `[0, 1]`; out-of-range values are an error, not a clamp.
    pub fn new(p: T) -> Result<Self, Error> {
        if p >= T::zero() && p <= T::one() {
            Ok(Purity(p))
        } else {
            Err(Error::PurityOutOfRange {
                value: p.to_f64().unwrap_or(f64::NAN),
            })
        }
    }

    /// The purity value.
    pub fn value(self) -> T {
        self.0
    }
}

/// Hermitian, unit-trace, positive-semidefinite matrix on `n_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T> {
    n_qubits: usize,
    mat: ComplexMatrix<T>,
}

impl<T: Scalar> DensityMatrix<T> {
    /// Wraps a matrix, checking dimension, Hermiticity, and unit trace.
    ///
    /// Positivity needs the eigensolver and is checked by [`Self::validate`].
    pub fn new(n_qubits: usize, mat: ComplexMatrix<T>) -> Self {
        assert_eq!(mat.dim(), 1 << n_qubits, "dimension mismatch for qubit count");
        assert!(
            mat.hermiticity_error() <= T::lit(1e-12),
            "density matrix must be Hermitian"
        );
        let tr = mat.trace();
        assert!(
            (tr.re - T::one()).abs() <= T::lit(1e-12) && tr.im.abs() <= T::lit(1e-12),
            "density matrix must have unit trace"
        );
        DensityMatrix { n_qubits, mat }
    }

    /// Number of qubits the state lives on.
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// The underlying matrix.
    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.mat
    }

    /// Re-checks all three invariants, including positive semidefiniteness.
    pub fn validate(&self) -> Result<(), Error> {
        let dev = self.mat.hermiticity_error();
        if dev > T::lit(1e-12) {
            return Err(Error::NotHermitian {
                deviation: dev.to_f64().unwrap_or(f64::NAN),
            });
        }
        let tr = self.mat.trace();
        if (tr.re - T::one()).abs() > T::lit(1e-12) || tr.im.abs() > T::lit(1e-12) {
            return Err(Error::InvalidDensity {
                reason: "trace differs from one",
            });
        }
        let eigs = hermitian_eigenvalues(&self.mat)?;
        if eigs[0] < T::lit(-1e-10) {
            return Err(Error::InvalidDensity {
                reason: "negative eigenvalue",
            });
        }
        Ok(())
    }
}

/// Projector onto a real-amplitude pure state given as (basis index, amplitude).
fn projector<T: Scalar>(dim: usize, amplitudes: &[(usize, f64)]) -> ComplexMatrix<T> {
    let mut ket = vec![T::zero(); dim];
    for &(idx, a) in amplitudes {
        ket[idx] = T::lit(a);
    }
    ComplexMatrix::from_fn(dim, |i, j| Complex::new(ket[i] * ket[j], T::zero()))
}

/// Mixes a pure projector with the noise admixture selected by `noise`.
fn mix<T: Scalar>(
    n_qubits: usize,
    pure: ComplexMatrix<T>,
    noise: NoiseKind,
    p: Purity<T>,
    colored_weights: &[(usize, f64)],
) -> DensityMatrix<T> {
    let dim = 1usize << n_qubits;
    let noise_part = match noise {
        NoiseKind::White => ComplexMatrix::identity(dim).scale(T::one() / T::lit(dim as f64)),
        NoiseKind::Colored => {
            let weights: Vec<(usize, T)> = colored_weights
                .iter()
                .map(|&(i, w)| (i, T::lit(w)))
                .collect();
            ComplexMatrix::diagonal(dim, &weights)
        }
    };
    let pv = p.value();
    let mat = &pure.scale(pv) + &noise_part.scale(T::one() - pv);
    DensityMatrix::new(n_qubits, mat)
}

/// Projector onto the two-qubit singlet `(|01> - |10>)/sqrt(2)`.
pub fn singlet2<T: Scalar>() -> DensityMatrix<T> {
    let half = std::f64::consts::FRAC_1_SQRT_2;
    DensityMatrix::new(2, projector(4, &[(0b01, half), (0b10, -half)]))
}

/// Noisy singlet: the Werner state (white) or its polarization-decohered
/// counterpart `p|psi-><psi-| + (1-p)/2 (|01><01| + |10><10|)` (colored).
pub fn chsh2_state<T: Scalar>(noise: NoiseKind, p: Purity<T>) -> DensityMatrix<T> {
    let half = std::f64::consts::FRAC_1_SQRT_2;
    let pure = projector(4, &[(0b01, half), (0b10, -half)]);
    mix(2, pure, noise, p, &[(0b01, 0.5), (0b10, 0.5)])
}

/// Noisy GHZ state `(|0..0> - |1..1>)/sqrt(2)` on three or four qubits.
pub fn ghz_state<T: Scalar>(
    n: usize,
    noise: NoiseKind,
    p: Purity<T>,
) -> Result<DensityMatrix<T>, Error> {
    if n != 3 && n != 4 {
        return Err(Error::BadQubitCount { n });
    }
    let dim = 1usize << n;
    let half = std::f64::consts::FRAC_1_SQRT_2;
    let pure = projector(dim, &[(0, half), (dim - 1, -half)]);
    Ok(mix(n, pure, noise, p, &[(0, 0.5), (dim - 1, 0.5)]))
}

/// Amplitudes of the rotationally invariant four-qubit state, `1/(2 sqrt 3)`
/// times `(2, -1, -1, -1, -1, 2)` on `|0011>, |0101>, |0110>, |1001>, |1010>, |1100>`.
fn qutrit_amplitudes() -> [(usize, f64); 6] {
    let unit = 1.0 / (2.0 * 3.0f64.sqrt());
    [
        (0b0011, 2.0 * unit),
        (0b0101, -unit),
        (0b0110, -unit),
        (0b1001, -unit),
        (0b1010, -unit),
        (0b1100, 2.0 * unit),
    ]
}

/// Projector onto the four-qubit simulation of the two-qutrit singlet.
pub fn qutrit_singlet4<T: Scalar>() -> DensityMatrix<T> {
    DensityMatrix::new(4, projector(16, &qutrit_amplitudes()))
}

/// Noisy four-qubit qutrit-singlet state; the colored admixture weights the
/// six participating basis states as `(4, 1, 1, 1, 1, 4)/12`.
pub fn qutrit_state<T: Scalar>(noise: NoiseKind, p: Purity<T>) -> DensityMatrix<T> {
    let pure = projector(16, &qutrit_amplitudes());
    let w = 1.0 / 12.0;
    mix(
        4,
        pure,
        noise,
        p,
        &[
            (0b0011, 4.0 * w),
            (0b0101, w),
            (0b0110, w),
            (0b1001, w),
            (0b1010, w),
            (0b1100, 4.0 * w),
        ],
    )
}
