use serde::{Deserialize, Serialize};

use super::decohere::{conditional_ratio_check, decohere_in, marginal_commutator_norm};
use super::frame::alpha_beta_frame;
use crate::concurrence::concurrence;
use crate::entropy::{entropy_difference, mutual_entropy, von_neumann};
use crate::error::Result;
use crate::linalg::{hermitian_eig, partial_transpose, DensityMatrix, Subsystem};
use crate::tolerance::Tolerances;

const SEPARABLE: f64 = 1e-8;
const ZERO_ENTROPY: f64 = 1e-10;
const COMMUTATOR_TOL: f64 = 1e-9;
const PURE: f64 = 1e-10;

/// Aggregate diagnostics for one two-qubit state. Entropies in nats.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub concurrence: f64,
    /// `S(A,B) - S(A)`
    pub entropy_diff_a: f64,
    /// `S(A,B) - S(B)`
    pub entropy_diff_b: f64,
    pub mutual: f64,
    pub deficit: f64,
    pub ppt_min_eig: f64,
    /// The smaller of the two q = 1 conditional entropies.
    pub cond_entropy_q1: f64,
    pub conditional_prob_defined: bool,
    pub commutes_with_marginals: bool,
    pub degenerate_frame: bool,
    pub verdicts: Vec<String>,
}

impl ClassificationReport {
    pub fn is_separable(&self) -> bool {
        self.verdicts.iter().any(|v| v == "separable")
    }
}

pub fn classify(rho: &DensityMatrix) -> Result<ClassificationReport> {
    classify_with(rho, &Tolerances::default())
}

pub fn classify_with(rho: &DensityMatrix, tol: &Tolerances) -> Result<ClassificationReport> {
    let c = concurrence(rho)?;
    let diff_a = entropy_difference(rho, Subsystem::A, 1.0)?;
    let diff_b = entropy_difference(rho, Subsystem::B, 1.0)?;
    let mutual = mutual_entropy(rho)?;
    let frame = alpha_beta_frame(rho)?;
    let ratio = conditional_ratio_check(rho, &frame)?;
    let commutes = marginal_commutator_norm(rho, &frame) <= tol.bound(COMMUTATOR_TOL);
    let degenerate = frame.is_degenerate();
    let decohered = decohere_in(rho, frame)?;
    let deficit = von_neumann(&decohered.state)? - von_neumann(rho)?;
    let ppt_min_eig = *hermitian_eig(&partial_transpose(rho, Subsystem::B))?
        .values
        .last()
        .expect("nonempty spectrum");

    let zero = tol.bound(ZERO_ENTROPY);
    let entangled = c > tol.bound(SEPARABLE);
    let mut verdicts = Vec::new();
    if entangled {
        verdicts.push("entangled".to_string());
    } else {
        verdicts.push("separable".to_string());
    }
    if diff_a < -zero || diff_b < -zero {
        verdicts.push("Theorem A: negative entropy difference witnesses entanglement".into());
    } else if entangled && diff_a.abs() <= zero && diff_b.abs() <= zero {
        verdicts.push("entangled despite zero entropy difference".into());
    } else if entangled {
        verdicts.push("entangled despite nonnegative entropy difference".into());
    }
    if entangled && (1.0 - rho.purity()).abs() <= tol.bound(PURE) {
        verdicts.push("Theorem B: pure entangled state has negative conditional entropy".into());
    }
    if ratio.defined {
        verdicts.push("Theorem A: conditional probabilities P(Gamma)/p are defined".into());
    } else {
        verdicts.push("Theorem A: P(Gamma)/p exceeds 1, conditional probability undefined".into());
    }
    if commutes {
        verdicts.push("Theorem C hypothesis holds: commutes with marginals".into());
    }
    if mutual.abs() <= zero {
        verdicts.push("classically uncorrelated product state".into());
    } else if commutes && !entangled {
        verdicts.push("classically correlated".into());
    }
    if degenerate {
        verdicts.push("degenerate marginal spectrum: frame defaults to the computational basis".into());
    }

    Ok(ClassificationReport {
        concurrence: c,
        entropy_diff_a: diff_a,
        entropy_diff_b: diff_b,
        mutual,
        deficit,
        ppt_min_eig,
        cond_entropy_q1: diff_a.min(diff_b),
        conditional_prob_defined: ratio.defined,
        commutes_with_marginals: commutes,
        degenerate_frame: degenerate,
        verdicts,
    })
}
