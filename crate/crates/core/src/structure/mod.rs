//! The `{alpha, beta}` marginal-eigenbasis frame and everything built on it:
//! overlap weights, the decohered state, the quantum deficit, conditional
//! probability checks, local decompositions and the aggregate classifier.

mod classify;
mod decohere;
mod decomposition;
mod frame;

pub use classify::{classify, classify_with, ClassificationReport};
pub use decohere::{
    commutes_with_marginals, conditional_ratio_check, decohere, decohere_in, deficit_mutual_gap,
    literal_marginal_commutators, marginal_commutator_norm, overlap_tensor, quantum_deficit,
    Decoherence, JointDistribution, OverlapTensor, RatioCheck,
};
pub use decomposition::{decomposition_commutes, decomposition_joint, reconstruct, LocalDecomposition, LocalTerm};
pub use frame::{alpha_beta_frame, AlphaBetaFrame};
