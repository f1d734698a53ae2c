//! Randomized property audit.
//!
//! Sample `i` draws everything it needs from its own ChaCha8 stream
//! (`seed`, stream `i`), so results do not depend on how samples are split
//! across workers. Outcomes are merged in sample order.

use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::concurrence::{concurrence, pure_concurrence, spin_flip};
use crate::entropy::{conditional_tsallis, entropy_difference, mutual_entropy, tsallis, von_neumann};
use crate::error::Result;
use crate::linalg::{
    hermitian_eig, partial_trace, partial_transpose, psd_function, tensor_product, tensor_vec, ComplexMatrix,
    DensityMatrix, MatrixFunction, Subsystem,
};
use crate::reproduce::ppt_min_eigenvalue;
use crate::states::random::{dirichlet_weights, haar_vector, random_mixed_with, random_pure_with, random_qubit_density, random_qubit_unitary};
use crate::states::{bloch_vectors, correlation_tensor, example_state, isospectral_pair, pauli_reconstruction, pure_density, purity_check, werner, ExampleId, PureStateAmplitudes};
use crate::structure::{
    alpha_beta_frame, decohere, decohere_in, decomposition_commutes, marginal_commutator_norm, overlap_tensor,
    reconstruct, LocalDecomposition, LocalTerm,
};
use crate::tolerance::Tolerances;

/// Every this many samples the pure state is replaced by a product state.
const PRODUCT_INJECTION_PERIOD: u64 = 100;
const POLARIZATION_FLOOR: f64 = 1e-12;

/// Everything one audit sample needs.
#[derive(Debug, Clone)]
pub struct Sample {
    pub index: u64,
    pub mixed: DensityMatrix,
    pub pure: PureStateAmplitudes,
    pub product: (DensityMatrix, DensityMatrix),
    pub hermitian: ComplexMatrix,
    pub unitaries: (ComplexMatrix, ComplexMatrix),
    pub decomposition: LocalDecomposition,
}

pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn rotated_diagonal<R: Rng + ?Sized>(rng: &mut R, u: &ComplexMatrix) -> DensityMatrix {
    let x: f64 = rng.random();
    let d = ComplexMatrix::diagonal(&[x, 1.0 - x]);
    DensityMatrix::single((&(u * &d) * &u.adjoint()).hermitian_part()).expect("valid qubit state")
}

/// Commuting nonnegative decomposition: every factor on a side is diagonal
/// in one shared local basis (the computational one for even samples).
fn commuting_decomposition<R: Rng + ?Sized>(rng: &mut R, index: u64) -> LocalDecomposition {
    let (ua, ub) = if index.is_multiple_of(2) {
        (ComplexMatrix::identity(2), ComplexMatrix::identity(2))
    } else {
        (random_qubit_unitary(rng), random_qubit_unitary(rng))
    };
    let k = 2 + (index % 3) as usize;
    let weights = dirichlet_weights(rng, k);
    let terms = weights
        .into_iter()
        .map(|w| {
            let a = rotated_diagonal(rng, &ua);
            let b = rotated_diagonal(rng, &ub);
            LocalTerm::new(w, a, b)
        })
        .collect();
    LocalDecomposition::new(terms).expect("Dirichlet weights sum to one")
}

pub fn draw_sample(seed: u64, index: u64) -> Sample {
    let mut rng = sample_rng(seed, index);
    let rank = 1 + (index % 4) as usize;
    let mixed = random_mixed_with(&mut rng, rank).expect("rank in range");
    let pure = if index.is_multiple_of(PRODUCT_INJECTION_PERIOD) {
        let a = haar_vector(&mut rng, 2);
        let b = haar_vector(&mut rng, 2);
        PureStateAmplitudes::from_vector(&tensor_vec(&a, &b)).expect("four amplitudes")
    } else {
        random_pure_with(&mut rng)
    };
    let product = (random_qubit_density(&mut rng), random_qubit_density(&mut rng));
    let g = ComplexMatrix::from_fn(4, 4, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let hermitian = g.hermitian_part();
    let unitaries = (random_qubit_unitary(&mut rng), random_qubit_unitary(&mut rng));
    let decomposition = commuting_decomposition(&mut rng, index);
    Sample {
        index,
        mixed,
        pure,
        product,
        hermitian,
        unitaries,
        decomposition,
    }
}

type Check = fn(&Sample, &Tolerances) -> Result<Option<String>>;

fn fail_if(condition: bool, detail: impl FnOnce() -> String) -> Result<Option<String>> {
    Ok(condition.then(detail))
}

fn check_eig(s: &Sample, tol: &Tolerances) -> Result<Option<String>> {
    let eig = hermitian_eig(&s.hermitian)?;
    let recon = eig.reconstruct().max_abs_diff(&s.hermitian);
    let trace_gap = (eig.values.iter().sum::<f64>() - s.hermitian.trace().re).abs();
    fail_if(recon > tol.bound(1e-9) || trace_gap > tol.bound(1e-9), || {
        format!("reconstruction {recon:e}, trace gap {trace_gap:e}")
    })
}

fn check_partial_trace(s: &Sample, tol: &Tolerances) -> Result<Option<String>> {
    let (a, b) = &s.product;
    let prod = DensityMatrix::tensor(a, b);
    let ea = partial_trace(&prod, Subsystem::A).matrix().max_abs_diff(a.matrix());
    let eb = partial_trace(&prod, Subsystem::B).matrix().max_abs_diff(b.matrix());
    fail_if(ea.max(eb) > tol.bound(1e-12), || format!("marginal errors {ea:e}, {eb:e}"))
}

fn check_partial_transpose(s: &Sample, tol: &Tolerances) -> Result<Option<String>> {
    let pt = partial_transpose(&s.mixed, Subsystem::B);
    let trace_gap = (pt.trace() - Complex64::new(1.0, 0.0)).norm();
    let back = DensityMatrix::from_trusted(pt, (2, 2));
    let involution = partial_transpose(&back, Subsystem::B).max_abs_diff(s.mixed.matrix());
    fail_if(trace_gap > tol.bound(1e-12) || involution > tol.bound(1e-12), || {
        format!("trace gap {trace_gap:e}, involution error {involution:e}")
    })
}

fn check_sqrt(s: &Sample, tol: &Tolerances) -> Result<Option<String>> {
    let root = psd_function(s.mixed.matrix(), MatrixFunction::Sqrt)?;
    let err = (&root * &root).max_abs_diff(s.mixed.matrix());
    fail_if(err > tol.bound(1e-8), || format!("sqrt^2 error {err:e}"))
}

fn check_pauli_reconstruction(s: &Sample, tol: &Tolerances) -> Result<Option<String>> {
    let (sa, sb) = bloch_vectors(&s.pure);
    let rebuilt = pauli_reconstruction(&sa, &sb, &correlation_tensor(&s.pure));
    let err = rebuilt.max_abs_diff(pure_density(&s.pure)?.matrix());
    let pc = purity_check(&s.pure);
    fail_if(
        err > tol.bound(1e-9) || pc.identity_residual > tol.bound(1e-10) || pc.polarization_mismatch > tol.bound(1e-10),
        || format!("reconstruction {err:e}, identity residual {:e}, |s| mismatch {:e}", pc.identity_residual, pc.polarization_mismatch),
    )
}

fn check_mutual_nonnegative(s: &Sample, tol: &Tolerances) -> Result<Option<String>> {
    let m = mutual_entropy(&s.mixed)?;
    fail_if(m < -tol.bound(1e-10), || format!("mutual entropy {m:e}"))
}

fn check_tsallis_limit(s: &Sample, tol: &Tolerances) -> Result<Option<String>> {
    let s1 = von_neumann(&s.mixed)?;
    let lo = (tsallis(&s.mixed, 1.0 - 1e-4)? - s1).abs();
    let hi = (tsallis(&s.mixed, 1.0 + 1e-4)? - s1).abs();
    fail_if(lo.max(hi) > tol.bound(1e-3), || format!("q -> 1 gaps {lo:e}, {hi:e}"))
}

fn check_product_entropy(s: &Sample, tol: &Tolerances) -> Result<Option<String>> {
    let (a, b) = &s.product;
    let prod = DensityMatrix::tensor(a, b);
    let diff = entropy_difference(&prod, Subsystem::A, 1.0)?;
    let sb = von_neumann(b)?;
    let m = mutual_entropy(&prod)?;
    fail_if((diff - sb).abs() > tol.bound(1e-10) || diff < -tol.bound(1e-10) || m.abs() > tol.bound(1e-10), || {
        format!("difference {diff} vs S(B) {sb}, mutual {m:e}")
    })
}

fn check_theorem_b(s: &Sample, tol: &Tolerances) -> Result<Option<String>> {
    let rho = pure_density(&s.pure)?;
    let sa = von_neumann(&partial_trace(&rho, Subsystem::A))?;
    let sb = von_neumann(&partial_trace(&rho, Subsystem::B))?;
    let ca = conditional_tsallis(&rho, Subsystem::A, 1.0)?;
    let cb = conditional_tsallis(&rho, Subsystem::B, 1.0)?;
    let c = pure_concurrence(&s.pure);
    let zero_cond = ca.abs() <= tol.bound(1e-10) && cb.abs() <= tol.bound(1e-10);
    let separable = c <= tol.bound(1e-8);
    fail_if(
        (sa - sb).abs() > tol.bound(1e-9) || ca.max(cb) > tol.bound(1e-10) || zero_cond != separable,
        || format!("S(A) {sa}, S(B) {sb}, conditional ({ca:e}, {cb:e}), concurrence {c:e}"),
    )
}

fn check_concurrence_range(s: &Sample, tol: &Tolerances) -> Result<Option<String>> {
    let c = concurrence(&s.mixed)?;
    let flipped = DensityMatrix::from_trusted(spin_flip(&s.mixed)?.hermitian_part(), (2, 2));
    let cf = concurrence(&flipped)?;
    fail_if(!(0.0..=1.0 + 1e-10).contains(&c) || (c - cf).abs() > tol.bound(1e-8), || {
        format!("concurrence {c}, after spin flip {cf}")
    })
}

fn check_local_unitary(s: &Sample, tol: &Tolerances) -> Result<Option<String>> {
    let u = tensor_product(&s.unitaries.0, &s.unitaries.1);
    let rotated = (&(&u * s.mixed.matrix()) * &u.adjoint()).hermitian_part();
    let c0 = concurrence(&s.mixed)?;
    let c1 = concurrence(&DensityMatrix::from_trusted(rotated, (2, 2)))?;
    fail_if((c0 - c1).abs() > tol.bound(1e-8), || format!("concurrence {c0} vs rotated {c1}"))
}

fn check_ppt(s: &Sample, tol: &Tolerances) -> Result<Option<String>> {
    let c = concurrence(&s.mixed)?;
    let min = ppt_min_eigenvalue(&s.mixed)?;
    fail_if((c > tol.bound(1e-8)) != (min < -tol.bound(1e-8)), || {
        format!("concurrence {c:e}, partial transpose min eigenvalue {min:e}")
    })
}

fn check_pure_routes(s: &Sample, tol: &Tolerances) -> Result<Option<String>> {
    let c = pure_concurrence(&s.pure);
    let mixed = concurrence(&pure_density(&s.pure)?)?;
    let (sa, _) = bloch_vectors(&s.pure);
    let one_minus = 1.0 - sa.norm().powi(2);
    let via_s = one_minus.max(0.0).sqrt();
    // Below the floor 1 - |s|^2 is pure cancellation noise and its square
    // root is not resolvable to 1e-8; the identity then only bounds C.
    let polarization_ok = if one_minus >= POLARIZATION_FLOOR {
        (c - via_s).abs() <= tol.bound(1e-8)
    } else {
        c <= POLARIZATION_FLOOR.sqrt()
    };
    fail_if((c - mixed).abs() > tol.bound(1e-8) || !polarization_ok, || {
        format!("pure {c}, mixed route {mixed}, polarization route {via_s}")
    })
}

fn check_marginal_preservation(s: &Sample, tol: &Tolerances) -> Result<Option<String>> {
    let d = decohere(&s.mixed)?;
    let mut worst: f64 = 0.0;
    for side in [Subsystem::A, Subsystem::B] {
        let before = partial_trace(&s.mixed, side);
        worst = worst.max(partial_trace(&d.state, side).matrix().max_abs_diff(before.matrix()));
    }
    let pa = d.joint.marginal(Subsystem::A);
    let qb = d.joint.marginal(Subsystem::B);
    let joint_gap = pa
        .iter()
        .zip(d.frame.p())
        .chain(qb.iter().zip(d.frame.q()))
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    fail_if(worst > tol.bound(1e-9) || joint_gap > tol.bound(1e-10), || {
        format!("marginal error {worst:e}, joint marginal gap {joint_gap:e}")
    })
}

fn klein_case(rho: &DensityMatrix, tol: &Tolerances) -> Result<Option<String>> {
    let frame = alpha_beta_frame(rho)?;
    let commutes = marginal_commutator_norm(rho, &frame) <= tol.bound(1e-9);
    let d = decohere_in(rho, frame)?;
    let deficit = von_neumann(&d.state)? - von_neumann(rho)?;
    let equal = deficit.abs() <= tol.bound(1e-8);
    fail_if(deficit < -tol.bound(1e-9) || equal != commutes, || {
        format!("deficit {deficit:e}, commutes {commutes}")
    })
}

fn check_klein(s: &Sample, tol: &Tolerances) -> Result<Option<String>> {
    if let Some(f) = klein_case(&s.mixed, tol)? {
        return Ok(Some(f));
    }
    klein_case(&decohere(&s.mixed)?.state, tol).map(|f| f.map(|d| format!("decohered state: {d}")))
}

fn check_idempotent(s: &Sample, tol: &Tolerances) -> Result<Option<String>> {
    let once = decohere(&s.mixed)?.state;
    let twice = decohere(&once)?.state;
    let err = twice.matrix().max_abs_diff(once.matrix());
    fail_if(err > tol.bound(1e-9), || format!("decohere twice differs by {err:e}"))
}

fn overlap_identities(rho: &DensityMatrix, tol: &Tolerances) -> Result<Option<String>> {
    let frame = alpha_beta_frame(rho)?;
    let w = overlap_tensor(rho, &frame)?;
    let norm = w.normalization_error();
    let recon = w.reconstruction_error(&frame);
    fail_if(norm > tol.bound(1e-10) || recon > tol.bound(1e-9), || {
        format!("normalization {norm:e}, reconstruction {recon:e}")
    })
}

fn check_overlap(s: &Sample, tol: &Tolerances) -> Result<Option<String>> {
    overlap_identities(&s.mixed, tol)
}

fn check_conditional_probabilities(s: &Sample, tol: &Tolerances) -> Result<Option<String>> {
    let joint = decohere(&s.mixed)?.joint;
    let max = joint.max_conditional_given_b();
    let min = joint.as_slice().iter().cloned().fold(f64::INFINITY, f64::min);
    fail_if(max > 1.0 + tol.bound(1e-10) || min < -1e-12, || {
        format!("P_d(alpha|beta) ranges over [{min:e}, {max}]")
    })
}

fn deficit_identities(rho: &DensityMatrix, tol: &Tolerances) -> Result<Option<String>> {
    let d = decohere(rho)?;
    let sd = von_neumann(&d.state)?;
    let s = von_neumann(rho)?;
    let sa = von_neumann(&partial_trace(rho, Subsystem::A))?;
    let sb = von_neumann(&partial_trace(rho, Subsystem::B))?;
    let deficit = sd - s;
    let mutual = sa + sb - s;
    let gap = deficit - mutual;
    let identity = (gap - (sd - sa - sb)).abs();
    fail_if(deficit > mutual + tol.bound(1e-9) || gap > tol.bound(1e-9) || identity > tol.bound(1e-9), || {
        format!("deficit {deficit}, mutual {mutual}, identity residual {identity:e}")
    })
}

fn check_deficit_bound(s: &Sample, tol: &Tolerances) -> Result<Option<String>> {
    deficit_identities(&s.mixed, tol)
}

fn check_theorem_d(s: &Sample, tol: &Tolerances) -> Result<Option<String>> {
    let dec = &s.decomposition;
    if !decomposition_commutes(dec) || !dec.all_weights_nonnegative() {
        return Ok(Some("generated decomposition is not commuting and nonnegative".into()));
    }
    let rho = reconstruct(dec)?;
    let da = entropy_difference(&rho, Subsystem::A, 1.0)?;
    let db = entropy_difference(&rho, Subsystem::B, 1.0)?;
    fail_if(da.min(db) < -tol.bound(1e-9), || format!("entropy differences {da:e}, {db:e}"))
}

/// The per-sample properties in report order.
pub const PROPERTIES: &[(&str, Check)] = &[
    ("linalg: eigen reconstruction and trace", check_eig),
    ("linalg: partial trace of products", check_partial_trace),
    ("linalg: partial transpose trace and involution", check_partial_transpose),
    ("linalg: psd square root", check_sqrt),
    ("states: Pauli reconstruction and purity identity", check_pauli_reconstruction),
    ("entropy: mutual entropy nonnegative", check_mutual_nonnegative),
    ("entropy: Tsallis q -> 1 limit", check_tsallis_limit),
    ("entropy: product state difference and mutual", check_product_entropy),
    ("entropy: pure-state conditional entropy (Theorem B)", check_theorem_b),
    ("concurrence: range and spin-flip invariance", check_concurrence_range),
    ("concurrence: local unitary invariance", check_local_unitary),
    ("concurrence: PPT equivalence", check_ppt),
    ("concurrence: pure-state routes agree", check_pure_routes),
    ("structure: decohere preserves marginals", check_marginal_preservation),
    ("structure: Klein inequality and equality condition", check_klein),
    ("structure: decohere idempotent", check_idempotent),
    ("structure: overlap reconstruction identities", check_overlap),
    ("structure: decohered conditional probabilities", check_conditional_probabilities),
    ("structure: deficit bounded by mutual entropy", check_deficit_bound),
    ("structure: commuting decompositions (Theorem D)", check_theorem_d),
];

pub const REGISTRY_PROPERTY: &str = "structure: identities on registry states";

/// Named fixed states checked once per audit.
pub fn registry_states() -> Vec<(String, DensityMatrix)> {
    let mut out: Vec<(String, DensityMatrix)> =
        ExampleId::ALL.into_iter().map(|id| (id.to_string(), example_state(id))).collect();
    let (e, s) = isospectral_pair();
    out.push(("iso:E".into(), e));
    out.push(("iso:S".into(), s));
    for k in 0..=10 {
        let p = k as f64 / 10.0;
        out.push((format!("werner:{p}"), werner(p).expect("p in range")));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub sample: u64,
    pub state: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyResult {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    pub first_failure: Option<Failure>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditSummary {
    pub n: u64,
    pub seed: u64,
    pub properties: Vec<PropertyResult>,
}

impl AuditSummary {
    pub fn all_passed(&self) -> bool {
        self.properties.iter().all(|p| p.failed == 0)
    }
}

impl fmt::Display for AuditSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "audit: n = {}, seed = {}", self.n, self.seed)?;
        for p in &self.properties {
            let status = if p.failed == 0 { "PASS" } else { "FAIL" };
            writeln!(f, "[{status}] {}: {} passed, {} failed", p.name, p.passed, p.failed)?;
            if let Some(fail) = &p.first_failure {
                writeln!(f, "    first failure: sample {} (seed {}, stream {})", fail.sample, self.seed, fail.sample)?;
                writeln!(f, "    state: {}", fail.state)?;
                writeln!(f, "    {}", fail.detail)?;
            }
        }
        let failed = self.properties.iter().filter(|p| p.failed > 0).count();
        write!(f, "{} of {} properties passed", self.properties.len() - failed, self.properties.len())
    }
}

fn describe_state(s: &Sample) -> String {
    let pairs = s.mixed.matrix().to_pairs();
    let amps = s.pure.to_vector();
    format!(
        "mixed {} ; pure [{}]",
        serde_json::to_string(&pairs).unwrap_or_default(),
        amps.iter().map(|z| format!("{z}")).collect::<Vec<_>>().join(", ")
    )
}

fn run_sample(seed: u64, index: u64, tol: &Tolerances) -> (Vec<Option<String>>, String) {
    let sample = draw_sample(seed, index);
    let outcomes = PROPERTIES
        .iter()
        .map(|(_, check)| match check(&sample, tol) {
            Ok(outcome) => outcome,
            Err(e) => Some(format!("error: {e}")),
        })
        .collect();
    (outcomes, describe_state(&sample))
}

/// Run every property on `n` samples. `jobs = 0` uses the global pool.
pub fn run_audit(n: u64, seed: u64, jobs: usize, tol: &Tolerances) -> AuditSummary {
    let work = || -> Vec<(Vec<Option<String>>, String)> {
        (0..n).into_par_iter().map(|i| run_sample(seed, i, tol)).collect()
    };
    let per_sample = if jobs == 0 {
        work()
    } else {
        match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(pool) => pool.install(work),
            Err(_) => work(),
        }
    };

    let mut properties: Vec<PropertyResult> = PROPERTIES
        .iter()
        .map(|(name, _)| PropertyResult {
            name,
            passed: 0,
            failed: 0,
            first_failure: None,
        })
        .collect();
    for (index, (outcomes, state)) in per_sample.into_iter().enumerate() {
        for (result, outcome) in properties.iter_mut().zip(outcomes) {
            match outcome {
                None => result.passed += 1,
                Some(detail) => {
                    result.failed += 1;
                    result.first_failure.get_or_insert_with(|| Failure {
                        sample: index as u64,
                        state: state.clone(),
                        detail,
                    });
                }
            }
        }
    }

    let mut registry = PropertyResult {
        name: REGISTRY_PROPERTY,
        passed: 0,
        failed: 0,
        first_failure: None,
    };
    for (name, rho) in registry_states() {
        let outcome = overlap_identities(&rho, tol)
            .and_then(|o| match o {
                Some(f) => Ok(Some(f)),
                None => deficit_identities(&rho, tol),
            })
            .unwrap_or_else(|e| Some(format!("error: {e}")));
        match outcome {
            None => registry.passed += 1,
            Some(detail) => {
                registry.failed += 1;
                registry.first_failure.get_or_insert(Failure {
                    sample: 0,
                    state: name,
                    detail,
                });
            }
        }
    }
    properties.push(registry);

    AuditSummary { n, seed, properties }
}
