use num_complex::Complex64;

use super::density::{DensityMatrix, Subsystem};
use super::eig::hermitian_eig;
use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::tolerance::{PSD, SUPPORT_CUTOFF};

/// Kronecker product, A-index major: `out[(i*p + k, j*q + l)] = a[(i,j)] * b[(k,l)]`.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (p, q) = (b.rows(), b.cols());
    ComplexMatrix::from_fn(a.rows() * p, a.cols() * q, |r, c| {
        a[(r / p, c / q)] * b[(r % p, c % q)]
    })
}

/// Kronecker product of two state vectors.
pub fn tensor_vec(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}

/// Reduced state of the `keep` factor.
pub fn partial_trace(rho: &DensityMatrix, keep: Subsystem) -> DensityMatrix {
    let (da, db) = rho.dims();
    let m = rho.matrix();
    let reduced = match keep {
        Subsystem::A => ComplexMatrix::from_fn(da, da, |i, j| {
            (0..db).map(|k| m[(i * db + k, j * db + k)]).sum()
        }),
        Subsystem::B => ComplexMatrix::from_fn(db, db, |k, l| {
            (0..da).map(|i| m[(i * db + k, i * db + l)]).sum()
        }),
    };
    let d = reduced.rows();
    DensityMatrix::from_trusted(reduced.hermitian_part(), (d, 1))
}

/// Transpose the indices of one factor only.
pub fn partial_transpose(rho: &DensityMatrix, side: Subsystem) -> ComplexMatrix {
    let (da, db) = rho.dims();
    let m = rho.matrix();
    ComplexMatrix::from_fn(da * db, da * db, |r, c| {
        let (i, k) = (r / db, r % db);
        let (j, l) = (c / db, c % db);
        match side {
            Subsystem::A => m[(j * db + k, i * db + l)],
            Subsystem::B => m[(i * db + l, j * db + k)],
        }
    })
}

/// Scalar function applied spectrally to a PSD matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixFunction {
    Sqrt,
    /// Natural log on the support; kernel directions map to zero.
    Log,
}

/// `V f(L) V^dagger` for a Hermitian PSD matrix.
///
/// Eigenvalues at or below the support cutoff are treated as exact zeros for
/// both functions, so round-off in the kernel does not leak into the result.
pub fn psd_function(m: &ComplexMatrix, f: MatrixFunction) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(m)?;
    if let Some(&min) = eig.values.last() {
        if min < -PSD {
            return Err(Error::NegativeEigenvalue { value: min });
        }
    }
    Ok(eig.map_values(|x| {
        if x <= SUPPORT_CUTOFF {
            0.0
        } else {
            match f {
                MatrixFunction::Sqrt => x.sqrt(),
                MatrixFunction::Log => x.ln(),
            }
        }
    }))
}
