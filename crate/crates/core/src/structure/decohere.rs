use serde::Serialize;

use super::frame::{alpha_beta_frame, AlphaBetaFrame};
use crate::entropy::{mutual_entropy, von_neumann};
use crate::error::{Error, Result};
use crate::linalg::{partial_trace, tensor_product, ComplexMatrix, DensityMatrix, Subsystem};
use crate::tolerance::SUPPORT_CUTOFF;

/// Overlap weight below which a `(Gamma, alpha)` pair counts as disconnected.
const OVERLAP_FLOOR: f64 = 1e-12;
const RATIO_SLACK: f64 = 1e-10;
const COMMUTATOR_TOL: f64 = 1e-9;

/// `w[alpha][beta][Gamma] = |<alpha,beta|Gamma>|^2` together with `P(Gamma)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OverlapTensor {
    dims: (usize, usize),
    /// row `alpha * dB + beta`, column `Gamma`
    weights: Vec<Vec<f64>>,
    pub gamma_probs: Vec<f64>,
}

impl OverlapTensor {
    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    pub fn gamma_count(&self) -> usize {
        self.gamma_probs.len()
    }

    pub fn get(&self, alpha: usize, beta: usize, gamma: usize) -> f64 {
        self.weights[alpha * self.dims.1 + beta][gamma]
    }

    /// `sum_Gamma w P(Gamma)`, the decohered joint probability.
    pub fn joint(&self) -> JointDistribution {
        let probs = self
            .weights
            .iter()
            .map(|row| row.iter().zip(&self.gamma_probs).map(|(w, p)| w * p).sum())
            .collect();
        JointDistribution { dims: self.dims, probs }
    }

    /// Largest deviation of `sum_{alpha,beta} w` (per Gamma) and
    /// `sum_Gamma w` (per pair) from one.
    pub fn normalization_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for g in 0..self.gamma_count() {
            let col: f64 = self.weights.iter().map(|row| row[g]).sum();
            worst = worst.max((col - 1.0).abs());
        }
        for row in &self.weights {
            worst = worst.max((row.iter().sum::<f64>() - 1.0).abs());
        }
        worst
    }

    /// Largest deviation of the reconstructed marginals from `p(alpha)` and
    /// `q(beta)`.
    pub fn reconstruction_error(&self, frame: &AlphaBetaFrame) -> f64 {
        let joint = self.joint();
        let pa = joint.marginal(Subsystem::A);
        let qb = joint.marginal(Subsystem::B);
        pa.iter()
            .zip(frame.p())
            .chain(qb.iter().zip(frame.q()))
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }
}

pub fn overlap_tensor(rho: &DensityMatrix, frame: &AlphaBetaFrame) -> Result<OverlapTensor> {
    let dims = frame.dims();
    if dims.0 * dims.1 != rho.dim() {
        return Err(Error::DimensionMismatch(format!(
            "frame is {}x{} but the state has dimension {}",
            dims.0,
            dims.1,
            rho.dim()
        )));
    }
    let eig = rho.eigen()?;
    let gamma_probs = crate::linalg::density::clip_spectrum(eig.values.clone())?;
    let weights = frame
        .product_basis
        .iter()
        .map(|ab| {
            (0..eig.dim())
                .map(|g| {
                    let gamma = eig.vector(g);
                    ab.iter().zip(&gamma).map(|(x, y)| x.conj() * y).sum::<num_complex::Complex64>().norm_sqr()
                })
                .collect()
        })
        .collect();
    Ok(OverlapTensor {
        dims,
        weights,
        gamma_probs,
    })
}

/// `P[alpha][beta]` over the frame's product basis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JointDistribution {
    dims: (usize, usize),
    probs: Vec<f64>,
}

impl JointDistribution {
    pub fn new(dims: (usize, usize), probs: Vec<f64>) -> Result<Self> {
        if probs.len() != dims.0 * dims.1 {
            return Err(Error::DimensionMismatch(format!(
                "{} probabilities for a {}x{} table",
                probs.len(),
                dims.0,
                dims.1
            )));
        }
        Ok(Self { dims, probs })
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    pub fn get(&self, alpha: usize, beta: usize) -> f64 {
        self.probs[alpha * self.dims.1 + beta]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.probs
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    /// Row sums for `A`, column sums for `B`.
    pub fn marginal(&self, side: Subsystem) -> Vec<f64> {
        let (da, db) = self.dims;
        match side {
            Subsystem::A => (0..da).map(|a| (0..db).map(|b| self.get(a, b)).sum()).collect(),
            Subsystem::B => (0..db).map(|b| (0..da).map(|a| self.get(a, b)).sum()).collect(),
        }
    }

    /// Largest `P(alpha,beta) / q(beta)` over columns with `q(beta)` above the
    /// support cutoff.
    pub fn max_conditional_given_b(&self) -> f64 {
        let qb = self.marginal(Subsystem::B);
        let (da, db) = self.dims;
        (0..db)
            .filter(|&b| qb[b] > SUPPORT_CUTOFF)
            .flat_map(|b| (0..da).map(move |a| (a, b)))
            .map(|(a, b)| self.get(a, b) / qb[b])
            .fold(0.0, f64::max)
    }
}

/// The decohered state with the joint distribution and frame that built it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Decoherence {
    pub state: DensityMatrix,
    pub joint: JointDistribution,
    pub frame: AlphaBetaFrame,
}

/// `rho_d = sum P_d(alpha,beta) |alpha,beta><alpha,beta|` with
/// `P_d(alpha,beta) = <alpha,beta|rho|alpha,beta>`.
pub fn decohere(rho: &DensityMatrix) -> Result<Decoherence> {
    let frame = alpha_beta_frame(rho)?;
    decohere_in(rho, frame)
}

pub fn decohere_in(rho: &DensityMatrix, frame: AlphaBetaFrame) -> Result<Decoherence> {
    let probs: Vec<f64> = frame
        .product_basis
        .iter()
        .map(|v| rho.matrix().expectation(v).re.max(0.0))
        .collect();
    let n = probs.len();
    let mut m = ComplexMatrix::zeros(n, n);
    for (v, &p) in frame.product_basis.iter().zip(&probs) {
        m = &m + &ComplexMatrix::outer(v, v).scale_real(p);
    }
    let joint = JointDistribution::new(frame.dims(), probs)?;
    Ok(Decoherence {
        state: DensityMatrix::from_trusted(m.hermitian_part(), rho.dims()),
        joint,
        frame,
    })
}

/// `D = S(rho_d) - S(rho)`
pub fn quantum_deficit(rho: &DensityMatrix) -> Result<f64> {
    Ok(von_neumann(&decohere(rho)?.state)? - von_neumann(rho)?)
}

/// `D - S(A:B)`, which equals `S(rho_d) - S(A) - S(B)`.
pub fn deficit_mutual_gap(rho: &DensityMatrix) -> Result<f64> {
    Ok(quantum_deficit(rho)? - mutual_entropy(rho)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioCheck {
    pub max_ratio_a: f64,
    pub max_ratio_b: f64,
    pub defined: bool,
}

/// Largest `P(Gamma)/p(alpha)` (and `P(Gamma)/q(beta)`) over overlap-connected
/// pairs; conditional probabilities are defined when both stay at most one.
pub fn conditional_ratio_check(rho: &DensityMatrix, frame: &AlphaBetaFrame) -> Result<RatioCheck> {
    let w = overlap_tensor(rho, frame)?;
    let (da, db) = w.dims();
    let mut max_a: f64 = 0.0;
    let mut max_b: f64 = 0.0;
    for g in 0..w.gamma_count() {
        let pg = w.gamma_probs[g];
        for a in 0..da {
            let connected: f64 = (0..db).map(|b| w.get(a, b, g)).sum();
            if connected > OVERLAP_FLOOR && frame.p()[a] > SUPPORT_CUTOFF {
                max_a = max_a.max(pg / frame.p()[a]);
            }
        }
        for b in 0..db {
            let connected: f64 = (0..da).map(|a| w.get(a, b, g)).sum();
            if connected > OVERLAP_FLOOR && frame.q()[b] > SUPPORT_CUTOFF {
                max_b = max_b.max(pg / frame.q()[b]);
            }
        }
    }
    Ok(RatioCheck {
        max_ratio_a: max_a,
        max_ratio_b: max_b,
        defined: max_a <= 1.0 + RATIO_SLACK && max_b <= 1.0 + RATIO_SLACK,
    })
}

/// Largest commutator entry of `rho` with the frame projectors
/// `|alpha><alpha| (x) I` and `I (x) |beta><beta|`.
pub fn marginal_commutator_norm(rho: &DensityMatrix, frame: &AlphaBetaFrame) -> f64 {
    let (da, db) = frame.dims();
    let mut worst: f64 = 0.0;
    for a in 0..da {
        let proj = tensor_product(&frame.local_projector(Subsystem::A, a), &ComplexMatrix::identity(db));
        worst = worst.max(rho.matrix().commutator(&proj).max_abs());
    }
    for b in 0..db {
        let proj = tensor_product(&ComplexMatrix::identity(da), &frame.local_projector(Subsystem::B, b));
        worst = worst.max(rho.matrix().commutator(&proj).max_abs());
    }
    worst
}

/// Whether `rho` commutes with both marginal eigenprojector families, i.e.
/// is already diagonal in its own `{alpha, beta}` frame.
pub fn commutes_with_marginals(rho: &DensityMatrix) -> Result<bool> {
    let frame = alpha_beta_frame(rho)?;
    Ok(marginal_commutator_norm(rho, &frame) <= COMMUTATOR_TOL)
}

/// `[rho, rho(A) (x) I]` and `[rho, I (x) sigma(B)]` taken literally.
pub fn literal_marginal_commutators(rho: &DensityMatrix) -> (f64, f64) {
    let (da, db) = rho.dims();
    let ra = tensor_product(partial_trace(rho, Subsystem::A).matrix(), &ComplexMatrix::identity(db));
    let sb = tensor_product(&ComplexMatrix::identity(da), partial_trace(rho, Subsystem::B).matrix());
    (
        rho.matrix().commutator(&ra).max_abs(),
        rho.matrix().commutator(&sb).max_abs(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::von_neumann;
    use crate::states::{example_state, isospectral_pair, random_mixed, werner, ExampleId};
    use std::f64::consts::LN_2;

    fn werner_deficit_oracle(p: f64) -> f64 {
        let xlnx = |x: f64| if x > 0.0 { x * x.ln() } else { 0.0 };
        xlnx((1.0 + 3.0 * p) / 4.0) + 3.0 * xlnx((1.0 - p) / 4.0) - 2.0 * xlnx((1.0 + p) / 4.0)
            - 2.0 * xlnx((1.0 - p) / 4.0)
    }

    #[test]
    fn werner_decohered_diagonal() {
        for p in [0.0, 0.25, 0.5, 0.9, 1.0] {
            let d = decohere(&werner(p).unwrap()).unwrap();
            let expected = ComplexMatrix::diagonal(&[(1.0 + p) / 4.0, (1.0 - p) / 4.0, (1.0 - p) / 4.0, (1.0 + p) / 4.0]);
            assert!(d.state.matrix().max_abs_diff(&expected) < 1e-14);
        }
    }

    #[test]
    fn werner_deficit_closed_form() {
        for k in 0..=100 {
            let p = k as f64 / 100.0;
            let d = quantum_deficit(&werner(p).unwrap()).unwrap();
            // expanded form: (1+3p)/4 ln((1+3p)/4) + (1-p)/4 ln((1-p)/4) - (1+p)/2 ln((1+p)/4)
            let printed = {
                let xlnx = |x: f64| if x > 0.0 { x * x.ln() } else { 0.0 };
                xlnx((1.0 + 3.0 * p) / 4.0) + xlnx((1.0 - p) / 4.0) - (1.0 + p) / 2.0 * ((1.0 + p) / 4.0).ln()
            };
            assert!((d - werner_deficit_oracle(p)).abs() < 1e-10, "p = {p}");
            assert!((d - printed).abs() < 1e-10, "p = {p}");
        }
    }

    #[test]
    fn isospectral_decoherence() {
        let (e, s) = isospectral_pair();
        let de = decohere(&e).unwrap();
        let third = 1.0 / 3.0;
        assert!(de.state.matrix().max_abs_diff(&ComplexMatrix::diagonal(&[third, third, third, 0.0])) < 1e-14);
        assert!(decohere(&s).unwrap().state.matrix().max_abs_diff(s.matrix()) < 1e-14);
        assert!((quantum_deficit(&e).unwrap() - 2.0 / 3.0 * LN_2).abs() < 1e-10);
        assert!(quantum_deficit(&s).unwrap().abs() < 1e-10);
        assert!((quantum_deficit(&example_state(ExampleId::E2)).unwrap() - LN_2 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn decohere_is_idempotent_and_preserves_marginals() {
        for seed in 0..50 {
            let rho = random_mixed(seed, 1 + (seed as usize % 4)).unwrap();
            let d = decohere(&rho).unwrap();
            let dd = decohere(&d.state).unwrap();
            assert!(dd.state.matrix().max_abs_diff(d.state.matrix()) < 1e-9);
            for side in [Subsystem::A, Subsystem::B] {
                let before = partial_trace(&rho, side);
                let after = partial_trace(&d.state, side);
                assert!(before.matrix().max_abs_diff(after.matrix()) < 1e-9);
            }
            let pa = d.joint.marginal(Subsystem::A);
            assert!(pa.iter().zip(d.frame.p()).all(|(x, y)| (x - y).abs() < 1e-10));
            assert!(commutes_with_marginals(&d.state).unwrap());
            assert!(d.joint.max_conditional_given_b() <= 1.0 + 1e-10);
        }
    }

    #[test]
    fn overlap_tensor_routes_agree() {
        for seed in 0..50 {
            let rho = random_mixed(seed, 4).unwrap();
            let frame = alpha_beta_frame(&rho).unwrap();
            let w = overlap_tensor(&rho, &frame).unwrap();
            assert!(w.normalization_error() < 1e-10);
            assert!(w.reconstruction_error(&frame) < 1e-9);
            let direct = decohere_in(&rho, frame).unwrap().joint;
            let via_w = w.joint();
            for (x, y) in direct.as_slice().iter().zip(via_w.as_slice()) {
                assert!((x - y).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn singlet_overlaps() {
        let rho = example_state(ExampleId::E4);
        let frame = alpha_beta_frame(&rho).unwrap();
        let w = overlap_tensor(&rho, &frame).unwrap();
        assert!((w.gamma_probs[0] - 1.0).abs() < 1e-14);
        // antiparallel pairs (1,0) and (0,1)
        assert!((w.get(0, 1, 0) - 0.5).abs() < 1e-14);
        assert!((w.get(1, 0, 0) - 0.5).abs() < 1e-14);
        assert!(w.get(0, 0, 0) < 1e-14 && w.get(1, 1, 0) < 1e-14);
    }

    #[test]
    fn e2_marginal_reconstruction() {
        let rho = example_state(ExampleId::E2);
        let frame = alpha_beta_frame(&rho).unwrap();
        let pa = overlap_tensor(&rho, &frame).unwrap().joint().marginal(Subsystem::A);
        assert!((pa[0] - 5.0 / 6.0).abs() < 1e-9 && (pa[1] - 1.0 / 6.0).abs() < 1e-9);
    }

    #[test]
    fn product_state_overlaps_are_zero_one() {
        let rho = DensityMatrix::tensor(
            &DensityMatrix::single(ComplexMatrix::diagonal(&[0.7, 0.3])).unwrap(),
            &DensityMatrix::single(ComplexMatrix::diagonal(&[0.2, 0.8])).unwrap(),
        );
        let frame = alpha_beta_frame(&rho).unwrap();
        let w = overlap_tensor(&rho, &frame).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                for g in 0..4 {
                    let x = w.get(a, b, g);
                    assert!(x < 1e-14 || (x - 1.0).abs() < 1e-14);
                }
            }
        }
        assert!(deficit_mutual_gap(&rho).unwrap().abs() < 1e-12);
    }

    #[test]
    fn gap_identity() {
        let singlet = example_state(ExampleId::E4);
        assert!((deficit_mutual_gap(&singlet).unwrap() + LN_2).abs() < 1e-12);
        for seed in 0..50 {
            let rho = random_mixed(seed, 3).unwrap();
            let gap = deficit_mutual_gap(&rho).unwrap();
            let sd = von_neumann(&decohere(&rho).unwrap().state).unwrap();
            let sa = von_neumann(&partial_trace(&rho, Subsystem::A)).unwrap();
            let sb = von_neumann(&partial_trace(&rho, Subsystem::B)).unwrap();
            assert!((gap - (sd - sa - sb)).abs() < 1e-9);
            assert!(gap <= 1e-9);
            assert!(quantum_deficit(&rho).unwrap() >= -1e-9);
        }
    }

    #[test]
    fn ratio_check_examples() {
        let check = |rho: &DensityMatrix| conditional_ratio_check(rho, &alpha_beta_frame(rho).unwrap()).unwrap();
        let r = check(&werner(1.0 / 3.0).unwrap());
        assert!((r.max_ratio_a - 1.0).abs() < 1e-12 && r.defined);
        let r = check(&werner(0.5).unwrap());
        assert!((r.max_ratio_a - 1.25).abs() < 1e-12 && (r.max_ratio_b - 1.25).abs() < 1e-12);
        assert!(!r.defined);
        let r = check(&example_state(ExampleId::E5));
        assert!(r.max_ratio_a <= 1.0 + 1e-10 && r.max_ratio_b <= 1.0 + 1e-10 && r.defined);
    }

    #[test]
    fn commutation_examples() {
        assert!(commutes_with_marginals(&example_state(ExampleId::E6)).unwrap());
        assert!(!commutes_with_marginals(&werner(0.5).unwrap()).unwrap());
        // the literal I/2 marginals commute with everything
        let (ca, cb) = literal_marginal_commutators(&werner(0.5).unwrap());
        assert!(ca < 1e-15 && cb < 1e-15);
    }
}
