//! Entropy-based separability and correlation diagnostics for bipartite
//! quantum states: concurrence, von Neumann and Tsallis entropies, the
//! marginal-eigenbasis frame, decohered states and the quantum deficit.
//!
//! Two-qubit states use the fixed computational basis order
//! `|11>, |10>, |01>, |00>` (indices 0..3), i.e. the single-qubit basis is
//! ordered `|1>, |0>` and products are A-major.

pub mod audit;
pub mod concurrence;
pub mod entropy;
pub mod error;
pub mod linalg;
pub mod reproduce;
pub mod states;
pub mod structure;
pub mod tolerance;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, DensityMatrix, EigenSystem, Subsystem};
pub use num_complex::Complex64;
pub use states::{ExampleId, PureStateAmplitudes};
pub use structure::{AlphaBetaFrame, ClassificationReport, JointDistribution, LocalDecomposition, LocalTerm};
pub use tolerance::Tolerances;
