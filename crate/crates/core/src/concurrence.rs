//! Two-qubit concurrence via the spin-flip construction.
//!
//! The lambda values are the square roots of the eigenvalues of
//! `rho * rho~`. They are obtained without a non-Hermitian eigensolver: with
//! `S = sqrt(rho)` and `S~ = sqrt(rho~)`, the eigenvalues of the Hermitian
//! `S rho~ S` are the squared singular values of `X = S S~`, and those singular
//! values are read off the Hermitian dilation `[[0, X], [X^dagger, 0]]`. The
//! dilation keeps small lambdas accurate to machine precision instead of the
//! square root of it.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::pauli::pauli;
use crate::linalg::{hermitian_eig, psd_function, tensor_product, ComplexMatrix, DensityMatrix, MatrixFunction};
use crate::states::PureStateAmplitudes;

/// Lambdas within this of zero from below are clipped.
const LAMBDA_CLIP: f64 = 1e-9;

fn require_two_qubits(rho: &DensityMatrix) -> Result<()> {
    if !rho.is_two_qubit() {
        return Err(Error::DimensionMismatch(format!(
            "concurrence needs a 2x2 bipartite state, got dims {:?}",
            rho.dims()
        )));
    }
    Ok(())
}

/// tau2 (x) tau2
pub fn sigma_yy() -> ComplexMatrix {
    tensor_product(&pauli(2), &pauli(2))
}

/// `(tau2 (x) tau2) M^* (tau2 (x) tau2)` for any 4x4 matrix.
pub fn spin_flip_matrix(m: &ComplexMatrix) -> ComplexMatrix {
    let yy = sigma_yy();
    &(&yy * &m.conj()) * &yy
}

/// The spin-flipped state `rho~`.
pub fn spin_flip(rho: &DensityMatrix) -> Result<ComplexMatrix> {
    require_two_qubits(rho)?;
    Ok(spin_flip_matrix(rho.matrix()))
}

/// Square roots of the eigenvalues of `rho rho~`, descending.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LambdaSpectrum {
    pub lambdas: [f64; 4],
}

impl LambdaSpectrum {
    /// `lambda1 - lambda2 - lambda3 - lambda4` before clipping at zero.
    pub fn margin(&self) -> f64 {
        let [l1, l2, l3, l4] = self.lambdas;
        l1 - l2 - l3 - l4
    }

    pub fn concurrence(&self) -> f64 {
        self.margin().max(0.0)
    }
}

pub fn lambda_spectrum(rho: &DensityMatrix) -> Result<LambdaSpectrum> {
    require_two_qubits(rho)?;
    let root = psd_function(rho.matrix(), MatrixFunction::Sqrt)?;
    let flipped_root = spin_flip_matrix(&root);
    let x = &root * &flipped_root;

    let mut dilation = ComplexMatrix::zeros(8, 8);
    let xa = x.adjoint();
    for i in 0..4 {
        for j in 0..4 {
            dilation[(i, j + 4)] = x[(i, j)];
            dilation[(i + 4, j)] = xa[(i, j)];
        }
    }
    let eig = hermitian_eig(&dilation)?;
    let mut lambdas = [0.0; 4];
    for (slot, &v) in lambdas.iter_mut().zip(&eig.values) {
        *slot = if (-LAMBDA_CLIP..0.0).contains(&v) { 0.0 } else { v };
    }
    Ok(LambdaSpectrum { lambdas })
}

/// `max(lambda1 - lambda2 - lambda3 - lambda4, 0)`
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    Ok(lambda_spectrum(rho)?.concurrence())
}

/// `2 |a11 a00 - a01 a10|`
pub fn pure_concurrence(amps: &PureStateAmplitudes) -> f64 {
    2.0 * amps.determinant().norm()
}
