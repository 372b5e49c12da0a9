//! Pauli matrices and the angle-parametrized dichotomic observables.
//!
//! Two observable families appear: combinations of sigma_z and sigma_x for
//! the CHSH settings, and combinations of sigma_x and sigma_y for the GHZ
//! settings (the fourth GHZ qubit uses the pi/4-rotated diagonal pair).
//! Every observable is Hermitian with eigenvalues +-1.

use num_complex::Complex;

use crate::matrix::ComplexMatrix;
use crate::{Error, Scalar};

/// The three Pauli axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    X,
    Y,
    Z,
}

/// Pair of local measurement angles, reduced into `[0, 2*pi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnglePair<T> {
    theta: T,
    phi: T,
}

impl<T: Scalar> AnglePair<T> {
    /// Wraps both angles into `[0, 2*pi)`; angles must be finite.
    pub fn new(theta: T, phi: T) -> Self {
        AnglePair {
            theta: wrap(theta),
            phi: wrap(phi),
        }
    }

    /// First local angle.
    pub fn theta(&self) -> T {
        self.theta
    }

    /// Second local angle.
    pub fn phi(&self) -> T {
        self.phi
    }
}

fn wrap<T: Scalar>(a: T) -> T {
    assert!(a.is_finite(), "angle must be finite");
    let tau = T::PI() + T::PI();
    let r = a % tau;
    if r < T::zero() {
        r + tau
    } else {
        r
    }
}

/// A 2x2 Hermitian observable squaring to the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable<T> {
    mat: ComplexMatrix<T>,
}

impl<T: Scalar> Observable<T> {
    fn new(mat: ComplexMatrix<T>) -> Self {
        debug_assert!(mat.dim() == 2);
        debug_assert!(mat.hermiticity_error() <= T::lit(1e-14));
        Observable { mat }
    }

    /// The observable as a matrix.
    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.mat
    }

    /// Largest entry deviation of `O*O` from the identity.
    pub fn dichotomy_error(&self) -> T {
        (&self.mat * &self.mat).max_abs_diff(&ComplexMatrix::identity(2))
    }

    /// Real coefficients `(c_I, c_x, c_y, c_z)` in `O = c_I I + c_x X + c_y Y + c_z Z`.
    pub fn pauli_components(&self) -> [T; 4] {
        let half = T::lit(0.5);
        let m = &self.mat;
        [
            (m[(0, 0)].re + m[(1, 1)].re) * half,
            (m[(0, 1)].re + m[(1, 0)].re) * half,
            (m[(1, 0)].im - m[(0, 1)].im) * half,
            (m[(0, 0)].re - m[(1, 1)].re) * half,
        ]
    }
}

/// One of the standard Pauli matrices as an observable.
pub fn pauli<T: Scalar>(which: Pauli) -> Observable<T> {
    let zero = Complex::new(T::zero(), T::zero());
    let one = Complex::new(T::one(), T::zero());
    let i = Complex::new(T::zero(), T::one());
    let entries = match which {
        Pauli::X => [zero, one, one, zero],
        Pauli::Y => [zero, -i, i, zero],
        Pauli::Z => [one, zero, zero, -one],
    };
    Observable::new(ComplexMatrix::from_fn(2, |r, c| entries[2 * r + c]))
}

/// `cos(a) sigma_z + sin(a) sigma_x`.
fn zx_mix<T: Scalar>(a: T) -> Observable<T> {
    let m = &pauli(Pauli::Z).mat.scale(a.cos()) + &pauli(Pauli::X).mat.scale(a.sin());
    Observable::new(m)
}

/// `cos(a) sigma_x + sin(a) sigma_y`.
fn xy_mix<T: Scalar>(a: T) -> Observable<T> {
    let m = &pauli(Pauli::X).mat.scale(a.cos()) + &pauli(Pauli::Y).mat.scale(a.sin());
    Observable::new(m)
}

/// CHSH settings: `A0 = Z`, `A1 = Z cos(theta) + X sin(theta)`,
/// `B0` at `phi`, and `B1` at `phi - theta`.
pub fn chsh_observables<T: Scalar>(
    angles: &AnglePair<T>,
) -> (Observable<T>, Observable<T>, Observable<T>, Observable<T>) {
    let (theta, phi) = (angles.theta(), angles.phi());
    (
        pauli(Pauli::Z),
        zx_mix(theta),
        zx_mix(phi),
        zx_mix(phi - theta),
    )
}

/// GHZ settings in the equatorial plane: `A` at `theta`, `B` at `phi`.
pub fn xy_observables<T: Scalar>(angles: &AnglePair<T>) -> (Observable<T>, Observable<T>) {
    (xy_mix(angles.theta()), xy_mix(angles.phi()))
}

/// Fourth-qubit GHZ settings, built on the diagonal pair
/// `(X + Y)/sqrt(2)` and `(Y - X)/sqrt(2)`.
pub fn fourth_qubit_observables<T: Scalar>(
    angles: &AnglePair<T>,
) -> (Observable<T>, Observable<T>) {
    let inv_sqrt2 = T::lit(std::f64::consts::FRAC_1_SQRT_2);
    let plus = (&pauli::<T>(Pauli::X).mat + &pauli::<T>(Pauli::Y).mat).scale(inv_sqrt2);
    let minus = (&pauli::<T>(Pauli::Y).mat - &pauli::<T>(Pauli::X).mat).scale(inv_sqrt2);
    let build = |a: T| {
        Observable::new(&plus.scale(a.cos()) + &minus.scale(a.sin()))
    };
    (build(angles.theta()), build(angles.phi()))
}

/// Embeds a one-qubit observable at tensor position `site` among `n_qubits`.
pub fn lift<T: Scalar>(
    obs: &Observable<T>,
    site: usize,
    n_qubits: usize,
) -> Result<ComplexMatrix<T>, Error> {
    if site >= n_qubits {
        return Err(Error::SiteOutOfRange { site, n_qubits });
    }
    let mut acc = ComplexMatrix::identity(1);
    for s in 0..n_qubits {
        if s == site {
            acc = acc.kron(&obs.mat);
        } else {
            acc = acc.kron(&ComplexMatrix::identity(2));
        }
    }
    Ok(acc)
}
