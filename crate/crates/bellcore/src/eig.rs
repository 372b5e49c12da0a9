//! Hermitian eigenvalues via cyclic Jacobi rotations.
//!
//! A Hermitian `A = X + iY` embeds into the real symmetric matrix
//! `[[X, -Y], [Y, X]]`, whose spectrum is that of `A` with every eigenvalue
//! doubled. Cyclic Jacobi on the embedding is ample for dimensions up to 16.

use crate::{ComplexMatrix, Error, Scalar};

const MAX_SWEEPS: usize = 100;
const HERMITICITY_TOL: f64 = 1e-10;

/// Eigenvalues of a Hermitian matrix, sorted ascending.
///
/// Rejects inputs whose max entry deviation from `A = A^H` exceeds `1e-10`.
pub fn hermitian_eigenvalues<T: Scalar>(a: &ComplexMatrix<T>) -> Result<Vec<T>, Error> {
    let dev = a.hermiticity_error();
    if dev > T::lit(HERMITICITY_TOL) {
        return Err(Error::NotHermitian {
            deviation: dev.to_f64().unwrap_or(f64::NAN),
        });
    }
    let n = a.dim();
    let m = 2 * n;
    let mut s = vec![T::zero(); m * m];
    for i in 0..n {
        for j in 0..n {
            let z = a[(i, j)];
            s[i * m + j] = z.re;
            s[(i + n) * m + (j + n)] = z.re;
            s[i * m + (j + n)] = -z.im;
            s[(i + n) * m + j] = z.im;
        }
    }
    jacobi(&mut s, m)?;
    let mut d: Vec<T> = (0..m).map(|i| s[i * m + i]).collect();
    d.sort_by(|x, y| x.partial_cmp(y).expect("eigenvalue comparison"));
    // The embedding doubles every eigenvalue; adjacent sorted pairs collapse.
    Ok(d.into_iter().step_by(2).collect())
}

/// Off-diagonal Frobenius norm of a real symmetric matrix.
fn off_diagonal_norm<T: Scalar>(s: &[T], m: usize) -> T {
    let mut acc = T::zero();
    for p in 0..m {
        for q in (p + 1)..m {
            acc += s[p * m + q] * s[p * m + q];
        }
    }
    (acc + acc).sqrt()
}

/// Diagonalizes a real symmetric matrix in place by cyclic Jacobi sweeps.
fn jacobi<T: Scalar>(s: &mut [T], m: usize) -> Result<(), Error> {
    let frobenius = s
        .iter()
        .fold(T::zero(), |acc, &x| acc + x * x)
        .sqrt()
        .max(T::one());
    // The 1e-12 floor matches f64; narrower scalars still converge because
    // the threshold never drops below a few ulps of the matrix norm.
    let tol = T::lit(1e-12).max(frobenius * T::epsilon() * T::lit(4.0));
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(s, m) < tol {
            return Ok(());
        }
        for p in 0..(m - 1) {
            for q in (p + 1)..m {
                let spq = s[p * m + q];
                if spq == T::zero() {
                    continue;
                }
                let theta = (s[q * m + q] - s[p * m + p]) / (spq + spq);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = T::one() / (t * t + T::one()).sqrt();
                let sn = t * c;
                for k in 0..m {
                    let skp = s[k * m + p];
                    let skq = s[k * m + q];
                    s[k * m + p] = c * skp - sn * skq;
                    s[k * m + q] = sn * skp + c * skq;
                }
                for k in 0..m {
                    let spk = s[p * m + k];
                    let sqk = s[q * m + k];
                    s[p * m + k] = c * spk - sn * sqk;
                    s[q * m + k] = sn * spk + c * sqk;
                }
            }
        }
    }
    if off_diagonal_norm(s, m) < tol {
        Ok(())
    } else {
        Err(Error::NoConvergence { sweeps: MAX_SWEEPS })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::observables::{pauli, Pauli};
    use crate::states::singlet2;
    use crate::Matrix64;
    use num_complex::Complex64;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn assert_close(got: &[f64], want: &[f64], tol: f64) {
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < tol, "got {got:?}, want {want:?}");
        }
    }

    #[test]
    fn pauli_z_spectrum() {
        let eigs = hermitian_eigenvalues(pauli::<f64>(Pauli::Z).matrix()).unwrap();
        assert_close(&eigs, &[-1.0, 1.0], 1e-12);
    }

    #[test]
    fn complex_two_by_two_spectrum() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3.
        let m = Matrix64::from_fn(2, |i, j| match (i, j) {
            (0, 0) | (1, 1) => Complex64::new(2.0, 0.0),
            (0, 1) => Complex64::new(0.0, 1.0),
            _ => Complex64::new(0.0, -1.0),
        });
        assert_close(&hermitian_eigenvalues(&m).unwrap(), &[1.0, 3.0], 1e-12);
    }

    #[test]
    fn singlet_projector_spectrum() {
        let eigs = hermitian_eigenvalues(singlet2::<f64>().matrix()).unwrap();
        assert_close(&eigs, &[0.0, 0.0, 0.0, 1.0], 1e-12);
    }

    #[test]
    fn transposed_singlet_spectrum() {
        // The partial transpose of the singlet projector has a -1/2 eigenvalue.
        let pt = singlet2::<f64>()
            .matrix()
            .partial_transpose(2, &[1])
            .unwrap();
        let eigs = hermitian_eigenvalues(&pt).unwrap();
        assert_close(&eigs, &[-0.5, 0.5, 0.5, 0.5], 1e-12);
    }

    #[test]
    fn eigenvalue_sum_matches_trace() {
        let mut rng = StdRng::seed_from_u64(23);
        for dim in [2usize, 4, 8, 16] {
            let a = Matrix64::from_fn(dim, |_, _| {
                Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            });
            let h = (&a + &a.adjoint()).scale(0.5);
            let eigs = hermitian_eigenvalues(&h).unwrap();
            let sum: f64 = eigs.iter().sum();
            assert!((sum - h.trace().re).abs() < 1e-10);
        }
    }

    #[test]
    fn rejects_non_hermitian_input() {
        let mut m = Matrix64::identity(2);
        m[(0, 1)] = Complex64::new(0.5, 0.0);
        match hermitian_eigenvalues(&m) {
            Err(Error::NotHermitian { deviation }) => assert!(deviation > 0.4),
            other => panic!("expected NotHermitian, got {other:?}"),
        }
    }

    #[test]
    fn f32_spectra_converge() {
        let m = crate::matrix::ComplexMatrix::<f32>::from_fn(2, |i, j| match (i, j) {
            (0, 0) | (1, 1) => num_complex::Complex::new(2.0f32, 0.0),
            (0, 1) => num_complex::Complex::new(0.0, 1.0),
            _ => num_complex::Complex::new(0.0, -1.0),
        });
        let eigs = hermitian_eigenvalues(&m).unwrap();
        assert!((eigs[0] - 1.0).abs() < 1e-5 && (eigs[1] - 3.0).abs() < 1e-5);
    }
}
