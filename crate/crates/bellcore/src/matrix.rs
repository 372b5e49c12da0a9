//! Dense square complex matrices up to 16x16.
//!
//! Row-major storage, no sparsity: the largest matrix in this crate is the
//! four-qubit 16x16 case, where dense arithmetic is both simplest and fastest.
//! Qubit 0 is the leftmost tensor factor, i.e. the most significant bit of a
//! computational-basis index.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex;

use crate::{Error, Scalar};

/// Dense square complex matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix<T> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Scalar> ComplexMatrix<T> {
    /// Zero matrix of the given dimension.
    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        ComplexMatrix {
            dim,
            data: vec![Complex::new(T::zero(), T::zero()); dim * dim],
        }
    }

    /// Identity matrix of the given dimension.
    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex::new(T::one(), T::zero());
        }
        m
    }

    /// Builds a matrix entry by entry.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds a diagonal matrix from real weights.
    pub fn diagonal(dim: usize, weights: &[(usize, T)]) -> Self {
        let mut m = Self::zeros(dim);
        for &(i, w) in weights {
            m[(i, i)] = Complex::new(w, T::zero());
        }
        m
    }

    /// Matrix dimension (the matrix is `dim x dim`).
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Scales every entry by a real factor.
    pub fn scale(&self, s: T) -> Self {
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    /// Sum of the diagonal entries.
    pub fn trace(&self) -> Complex<T> {
        let mut t = Complex::new(T::zero(), T::zero());
        for i in 0..self.dim {
            t += self[(i, i)];
        }
        t
    }

    /// `Tr(self * other)` without forming the product matrix.
    pub fn trace_product(&self, other: &Self) -> Complex<T> {
        assert_eq!(self.dim, other.dim, "dimension mismatch in trace_product");
        let mut t = Complex::new(T::zero(), T::zero());
        for i in 0..self.dim {
            for j in 0..self.dim {
                t += self[(i, j)] * other[(j, i)];
            }
        }
        t
    }

    /// Kronecker product; the result has dimension `self.dim * other.dim`.
    pub fn kron(&self, other: &Self) -> Self {
        let n = other.dim;
        Self::from_fn(self.dim * n, |r, c| {
            self[(r / n, c / n)] * other[(r % n, c % n)]
        })
    }

    /// Largest entry deviation from Hermitian symmetry, `max |a_ij - conj(a_ji)|`.
    pub fn hermiticity_error(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let d = (self[(i, j)] - self[(j, i)].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// True when the matrix is Hermitian within `tol` per entry.
    pub fn is_hermitian(&self, tol: T) -> bool {
        self.hermiticity_error() <= tol
    }

    /// Frobenius norm.
    pub fn frobenius_norm(&self) -> T {
        let mut s = T::zero();
        for z in &self.data {
            s += z.norm_sqr();
        }
        s.sqrt()
    }

    /// Largest entry-wise absolute difference to another matrix.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!(self.dim, other.dim, "dimension mismatch in max_abs_diff");
        let mut worst = T::zero();
        for (a, b) in self.data.iter().zip(&other.data) {
            worst = worst.max((a - b).norm());
        }
        worst
    }

    /// Transposes the tensor factors named in `party`, leaving the rest alone.
    ///
    /// The matrix must act on `n_qubits` qubits (`dim == 2^n_qubits`). The
    /// operation is involutive and preserves the trace exactly.
    pub fn partial_transpose(&self, n_qubits: usize, party: &[usize]) -> Result<Self, Error> {
        let expected = 1usize << n_qubits;
        if self.dim != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: self.dim,
            });
        }
        for &q in party {
            if q >= n_qubits {
                return Err(Error::SiteOutOfRange {
                    site: q,
                    n_qubits,
                });
            }
        }
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let (mut ii, mut jj) = (i, j);
                for &q in party {
                    let s = n_qubits - 1 - q;
                    let bi = (i >> s) & 1;
                    let bj = (j >> s) & 1;
                    ii = (ii & !(1 << s)) | (bj << s);
                    jj = (jj & !(1 << s)) | (bi << s);
                }
                out[(ii, jj)] = self[(i, j)];
            }
        }
        Ok(out)
    }
}

impl<T> Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = Complex<T>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.dim + j]
    }
}

impl<T> IndexMut<(usize, usize)> for ComplexMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.dim + j]
    }
}

impl<T: Scalar> Add for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn add(self, rhs: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in add");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<T: Scalar> Sub for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn sub(self, rhs: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in sub");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<T: Scalar> Mul for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn mul(self, rhs: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in mul");
        ComplexMatrix::from_fn(self.dim, |i, j| {
            let mut s = Complex::new(T::zero(), T::zero());
            for k in 0..self.dim {
                s += self[(i, k)] * rhs[(k, j)];
            }
            s
        })
    }
}
