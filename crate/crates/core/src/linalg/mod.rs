//! Dense complex Hermitian linear algebra for small bipartite systems.

pub mod density;
pub mod eig;
pub mod matrix;
pub mod ops;
pub mod pauli;

pub use density::{DensityMatrix, Subsystem};
pub use eig::{hermitian_eig, EigenSystem};
pub use matrix::ComplexMatrix;
pub use ops::{partial_trace, partial_transpose, psd_function, tensor_product, tensor_vec, MatrixFunction};
