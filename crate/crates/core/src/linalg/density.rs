use serde::{Deserialize, Serialize};

use super::eig::{hermitian_eig, EigenSystem};
use super::matrix::ComplexMatrix;
use super::ops::tensor_product;
use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

/// Which factor of a bipartite system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Subsystem {
    A,
    B,
}

impl Subsystem {
    pub fn other(self) -> Self {
        match self {
            Subsystem::A => Subsystem::B,
            Subsystem::B => Subsystem::A,
        }
    }
}

/// Hermitian, positive semidefinite, unit-trace matrix over a `dim_a x dim_b`
/// product space. Single-subsystem states use `dim_b = 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityMatrix {
    dims: (usize, usize),
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validate with the default tolerances.
    pub fn new(matrix: ComplexMatrix, dims: (usize, usize)) -> Result<Self> {
        Self::with_tolerances(matrix, dims, &Tolerances::default())
    }

    pub fn with_tolerances(matrix: ComplexMatrix, dims: (usize, usize), tol: &Tolerances) -> Result<Self> {
        check_dims(&matrix, dims)?;
        let deviation = matrix.hermiticity_error();
        if deviation > tol.hermiticity || deviation.is_nan() {
            return Err(Error::NotHermitian { deviation });
        }
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > tol.hermiticity || trace.is_nan() {
            return Err(Error::TraceNotUnit { trace });
        }
        let eig = hermitian_eig(&matrix.hermitian_part())?;
        let min = eig.values.last().copied().unwrap_or(0.0);
        if min < -tol.psd {
            return Err(Error::NegativeEigenvalue { value: min });
        }
        Ok(Self {
            dims,
            matrix: matrix.hermitian_part(),
        })
    }

    /// A `d x d` state with no bipartite structure (`dims = (d, 1)`).
    pub fn single(matrix: ComplexMatrix) -> Result<Self> {
        let d = matrix.rows();
        Self::new(matrix, (d, 1))
    }

    /// Wrap a matrix known to be a valid state (results of trace-preserving
    /// operations on valid states).
    pub(crate) fn from_trusted(matrix: ComplexMatrix, dims: (usize, usize)) -> Self {
        debug_assert_eq!(matrix.rows(), dims.0 * dims.1);
        Self { dims, matrix }
    }

    pub fn maximally_mixed(dims: (usize, usize)) -> Self {
        let d = dims.0 * dims.1;
        Self::from_trusted(ComplexMatrix::identity(d).scale_real(1.0 / d as f64), dims)
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn is_two_qubit(&self) -> bool {
        self.dims == (2, 2)
    }

    pub fn eigen(&self) -> Result<EigenSystem> {
        hermitian_eig(&self.matrix)
    }

    /// Spectrum in descending order with round-off negatives clipped to zero.
    pub fn spectrum(&self) -> Result<Vec<f64>> {
        let eig = self.eigen()?;
        clip_spectrum(eig.values)
    }

    /// Tr rho^2
    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    /// rho (x) sigma for two single-subsystem states.
    pub fn tensor(a: &DensityMatrix, b: &DensityMatrix) -> DensityMatrix {
        Self::from_trusted(tensor_product(&a.matrix, &b.matrix), (a.dim(), b.dim()))
    }

    /// Reinterpret the same matrix with different subsystem dimensions.
    pub fn with_dims(self, dims: (usize, usize)) -> Result<Self> {
        check_dims(&self.matrix, dims)?;
        Ok(Self { dims, ..self })
    }
}

/// Clip eigenvalues in `[-PSD, 0)` to zero; anything more negative is an error.
pub(crate) fn clip_spectrum(values: Vec<f64>) -> Result<Vec<f64>> {
    values
        .into_iter()
        .map(|v| {
            if v >= 0.0 {
                Ok(v)
            } else if v >= -crate::tolerance::PSD {
                Ok(0.0)
            } else {
                Err(Error::NegativeEigenvalue { value: v })
            }
        })
        .collect()
}

fn check_dims(matrix: &ComplexMatrix, dims: (usize, usize)) -> Result<()> {
    if !matrix.is_square() {
        return Err(Error::NotSquare {
            rows: matrix.rows(),
            cols: matrix.cols(),
        });
    }
    if dims.0 == 0 || dims.1 == 0 || dims.0 * dims.1 != matrix.rows() {
        return Err(Error::DimensionMismatch(format!(
            "dims {:?} do not match matrix side {}",
            dims,
            matrix.rows()
        )));
    }
    Ok(())
}

#[derive(Deserialize)]
#[serde(untagged)]
enum StateFile {
    Matrix(ComplexMatrix),
    WithDims { dims: (usize, usize), matrix: ComplexMatrix },
}

impl DensityMatrix {
    /// Parse a state from JSON: either a bare matrix of `[re, im]` pairs
    /// (a 4x4 matrix is read as two qubits) or `{"dims": [dA, dB], "matrix": ...}`.
    pub fn from_json(text: &str, tol: &Tolerances) -> Result<Self> {
        let parsed: StateFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let (matrix, dims) = match parsed {
            StateFile::WithDims { dims, matrix } => (matrix, dims),
            StateFile::Matrix(matrix) => {
                let n = matrix.rows();
                let dims = if n == 4 { (2, 2) } else { (n, 1) };
                (matrix, dims)
            }
        };
        Self::with_tolerances(matrix, dims, tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn rejects_bad_trace_and_negative_states() {
        let m = ComplexMatrix::diagonal(&[0.5, 0.4]);
        assert!(matches!(DensityMatrix::single(m), Err(Error::TraceNotUnit { .. })));
        let m = ComplexMatrix::diagonal(&[1.2, -0.2]);
        assert!(matches!(DensityMatrix::single(m), Err(Error::NegativeEigenvalue { .. })));
        let m = ComplexMatrix::diagonal(&[0.5, 0.5]);
        assert!(matches!(DensityMatrix::new(m, (2, 2)), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn tiny_negative_eigenvalue_is_tolerated() {
        let m = ComplexMatrix::diagonal(&[1.0 + 5e-11, -5e-11]);
        let rho = DensityMatrix::single(m).unwrap();
        assert_eq!(rho.spectrum().unwrap(), vec![1.0 + 5e-11, 0.0]);
    }

    #[test]
    fn json_forms() {
        let tol = Tolerances::default();
        let bare = "[[[0.5,0],[0,0],[0,0],[0,0]],[[0,0],[0.5,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]]]";
        let rho = DensityMatrix::from_json(bare, &tol).unwrap();
        assert_eq!(rho.dims(), (2, 2));
        let with_dims = r#"{"dims":[2,1],"matrix":[[[0.5,0],[0,0.5]],[[0,-0.5],[0.5,0]]]}"#;
        let rho = DensityMatrix::from_json(with_dims, &tol).unwrap();
        assert_eq!(rho.dims(), (2, 1));
        assert_eq!(rho.matrix()[(0, 1)], Complex64::new(0.0, 0.5));
        assert!(DensityMatrix::from_json("[1,2]", &tol).is_err());
    }
}
