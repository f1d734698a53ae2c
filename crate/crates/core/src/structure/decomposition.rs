use serde::Serialize;

use super::decohere::JointDistribution;
use super::frame::AlphaBetaFrame;
use crate::error::{Error, Result};
use crate::linalg::{tensor_product, ComplexMatrix, DensityMatrix};

const WEIGHT_SUM_TOL: f64 = 1e-10;
const NEGATIVE_WEIGHT_SLACK: f64 = 1e-12;
/// Terms with |w| at or below this do not take part in the commutation test.
const ZERO_WEIGHT: f64 = 1e-12;
const COMMUTATOR_TOL: f64 = 1e-9;

/// One term `w rho(A) (x) sigma(B)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocalTerm {
    pub weight: f64,
    pub factor_a: DensityMatrix,
    pub factor_b: DensityMatrix,
}

impl LocalTerm {
    pub fn new(weight: f64, factor_a: DensityMatrix, factor_b: DensityMatrix) -> Self {
        Self {
            weight,
            factor_a,
            factor_b,
        }
    }

    pub fn product(&self) -> ComplexMatrix {
        tensor_product(self.factor_a.matrix(), self.factor_b.matrix())
    }
}

/// `sum_j w_j rho_j(A) (x) sigma_j(B)`; weights may be negative
/// (pseudo-mixture) but must sum to one.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocalDecomposition {
    terms: Vec<LocalTerm>,
    dims: (usize, usize),
}

impl LocalDecomposition {
    pub fn new(terms: Vec<LocalTerm>) -> Result<Self> {
        let first = terms
            .first()
            .ok_or_else(|| Error::InvalidDecomposition("no terms".into()))?;
        let dims = (first.factor_a.dim(), first.factor_b.dim());
        for (j, t) in terms.iter().enumerate() {
            if (t.factor_a.dim(), t.factor_b.dim()) != dims {
                return Err(Error::InvalidDecomposition(format!(
                    "term {j} has factor dimensions {}x{}, expected {}x{}",
                    t.factor_a.dim(),
                    t.factor_b.dim(),
                    dims.0,
                    dims.1
                )));
            }
            if !t.weight.is_finite() {
                return Err(Error::InvalidDecomposition(format!("term {j} has weight {}", t.weight)));
            }
        }
        let total: f64 = terms.iter().map(|t| t.weight).sum();
        if (total - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::InvalidDecomposition(format!("weights sum to {total}")));
        }
        Ok(Self { terms, dims })
    }

    pub fn terms(&self) -> &[LocalTerm] {
        &self.terms
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    pub fn all_weights_nonnegative(&self) -> bool {
        self.terms.iter().all(|t| t.weight >= -NEGATIVE_WEIGHT_SLACK)
    }

    /// `sum_j w_j rho_j (x) sigma_j` without validation.
    pub fn sum_matrix(&self) -> ComplexMatrix {
        let d = self.dims.0 * self.dims.1;
        self.terms
            .iter()
            .fold(ComplexMatrix::zeros(d, d), |acc, t| &acc + &t.product().scale_real(t.weight))
    }

    fn active_terms(&self) -> impl Iterator<Item = &LocalTerm> {
        self.terms.iter().filter(|t| t.weight.abs() > ZERO_WEIGHT)
    }
}

/// Whether all `rho_j(A)` commute pairwise and all `sigma_j(B)` commute
/// pairwise. Zero-weight terms are ignored.
pub fn decomposition_commutes(dec: &LocalDecomposition) -> bool {
    let active: Vec<&LocalTerm> = dec.active_terms().collect();
    for (j, tj) in active.iter().enumerate() {
        for tk in &active[j + 1..] {
            if tj.factor_a.matrix().commutator(tk.factor_a.matrix()).max_abs() > COMMUTATOR_TOL
                || tj.factor_b.matrix().commutator(tk.factor_b.matrix()).max_abs() > COMMUTATOR_TOL
            {
                return false;
            }
        }
    }
    true
}

/// Assemble the state; fails when the (pseudo-)mixture is not a valid state.
pub fn reconstruct(dec: &LocalDecomposition) -> Result<DensityMatrix> {
    DensityMatrix::new(dec.sum_matrix(), dec.dims())
}

/// `P_D(alpha,beta) = sum_j w_j <alpha|rho_j|alpha> <beta|sigma_j|beta>`
/// in the given frame.
pub fn decomposition_joint(dec: &LocalDecomposition, frame: &AlphaBetaFrame) -> Result<JointDistribution> {
    if frame.dims() != dec.dims() {
        return Err(Error::DimensionMismatch(format!(
            "frame is {:?} but the decomposition is {:?}",
            frame.dims(),
            dec.dims()
        )));
    }
    let (da, db) = dec.dims();
    let mut probs = vec![0.0; da * db];
    for t in dec.terms() {
        let pa: Vec<f64> = (0..da)
            .map(|a| t.factor_a.matrix().expectation(&frame.eig_a.vector(a)).re)
            .collect();
        let pb: Vec<f64> = (0..db)
            .map(|b| t.factor_b.matrix().expectation(&frame.eig_b.vector(b)).re)
            .collect();
        for a in 0..da {
            for b in 0..db {
                probs[a * db + b] += t.weight * pa[a] * pb[b];
            }
        }
    }
    JointDistribution::new(dec.dims(), probs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{e6_decomposition, example_state, werner, werner_local_decomposition, ExampleId};
    use crate::structure::{alpha_beta_frame, decohere};

    fn qubit(diag: [f64; 2]) -> DensityMatrix {
        DensityMatrix::single(ComplexMatrix::diagonal(&diag)).unwrap()
    }

    #[test]
    fn validation() {
        assert!(LocalDecomposition::new(vec![]).is_err());
        let t = LocalTerm::new(0.6, qubit([1.0, 0.0]), qubit([0.5, 0.5]));
        assert!(matches!(LocalDecomposition::new(vec![t.clone()]), Err(Error::InvalidDecomposition(_))));
        let three = DensityMatrix::maximally_mixed((3, 1));
        let bad = LocalTerm::new(0.4, three, qubit([0.5, 0.5]));
        assert!(LocalDecomposition::new(vec![t, bad]).is_err());
    }

    #[test]
    fn e6_and_single_term() {
        let d = e6_decomposition();
        assert!(decomposition_commutes(&d));
        assert!(reconstruct(&d).unwrap().matrix().max_abs_diff(example_state(ExampleId::E6).matrix()) < 1e-15);
        let a = qubit([0.3, 0.7]);
        let b = qubit([0.9, 0.1]);
        let single = LocalDecomposition::new(vec![LocalTerm::new(1.0, a.clone(), b.clone())]).unwrap();
        assert!(decomposition_commutes(&single));
        let expected = DensityMatrix::tensor(&a, &b);
        assert!(reconstruct(&single).unwrap().matrix().max_abs_diff(expected.matrix()) < 1e-15);
    }

    #[test]
    fn werner_decomposition() {
        for k in 0..=20 {
            let p = k as f64 / 20.0;
            let d = werner_local_decomposition(p).unwrap();
            assert!(reconstruct(&d).unwrap().matrix().max_abs_diff(werner(p).unwrap().matrix()) < 1e-12);
            if p > 0.0 {
                assert!(!decomposition_commutes(&d));
            }
        }
    }

    #[test]
    fn invalid_pseudo_mixture_is_rejected() {
        let up = qubit([1.0, 0.0]);
        let down = qubit([0.0, 1.0]);
        let d = LocalDecomposition::new(vec![
            LocalTerm::new(2.0, up.clone(), up.clone()),
            LocalTerm::new(-1.0, down.clone(), down),
        ])
        .unwrap();
        assert!(matches!(reconstruct(&d), Err(Error::NegativeEigenvalue { .. })));
    }

    #[test]
    fn commuting_decomposition_joint_matches_decohered() {
        let d = e6_decomposition();
        let rho = reconstruct(&d).unwrap();
        let frame = alpha_beta_frame(&rho).unwrap();
        let pd = decomposition_joint(&d, &frame).unwrap();
        let joint = decohere(&rho).unwrap().joint;
        for (x, y) in pd.as_slice().iter().zip(joint.as_slice()) {
            assert!((x - y).abs() < 1e-14);
        }
    }
}
