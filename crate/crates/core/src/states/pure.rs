//! General two-qubit pure states: amplitudes, polarization vectors,
//! the correlation tensor and the closed-form marginal eigensystem.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, DensityMatrix};

const NORMALIZATION_TOL: f64 = 1e-8;

/// `|psi> = a11|11> + a10|10> + a01|01> + a00|00>`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PureStateAmplitudes {
    pub a11: Complex64,
    pub a10: Complex64,
    pub a01: Complex64,
    pub a00: Complex64,
}

impl PureStateAmplitudes {
    pub fn new(a11: Complex64, a10: Complex64, a01: Complex64, a00: Complex64) -> Self {
        Self { a11, a10, a01, a00 }
    }

    pub fn real(a11: f64, a10: f64, a01: f64, a00: f64) -> Self {
        let c = |x| Complex64::new(x, 0.0);
        Self::new(c(a11), c(a10), c(a01), c(a00))
    }

    /// Amplitudes in basis order `|11>, |10>, |01>, |00>`.
    pub fn from_vector(v: &[Complex64]) -> Result<Self> {
        match v {
            [a11, a10, a01, a00] => Ok(Self::new(*a11, *a10, *a01, *a00)),
            _ => Err(Error::DimensionMismatch(format!("expected 4 amplitudes, got {}", v.len()))),
        }
    }

    pub fn to_vector(&self) -> [Complex64; 4] {
        [self.a11, self.a10, self.a01, self.a00]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.to_vector().iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm_sqr().sqrt();
        let [a, b, c, d] = self.to_vector();
        Self::new(a / n, b / n, c / n, d / n)
    }

    fn check(&self) -> Result<()> {
        let n = self.norm_sqr();
        if (n - 1.0).abs() > NORMALIZATION_TOL || n.is_nan() {
            return Err(Error::Unnormalized { norm_sq: n });
        }
        Ok(())
    }

    /// a11 a00 - a01 a10
    pub fn determinant(&self) -> Complex64 {
        self.a11 * self.a00 - self.a01 * self.a10
    }
}

/// `|psi><psi|`; amplitudes must already be normalized.
pub fn pure_density(amps: &PureStateAmplitudes) -> Result<DensityMatrix> {
    amps.check()?;
    let v = amps.to_vector();
    Ok(DensityMatrix::from_trusted(ComplexMatrix::outer(&v, &v), (2, 2)))
}

/// Polarization vector of one qubit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochVector {
    pub s1: f64,
    pub s2: f64,
    pub s3: f64,
}

impl BlochVector {
    pub fn new(s1: f64, s2: f64, s3: f64) -> Self {
        Self { s1, s2, s3 }
    }

    pub fn norm(&self) -> f64 {
        (self.s1 * self.s1 + self.s2 * self.s2 + self.s3 * self.s3).sqrt()
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.s1, self.s2, self.s3]
    }

    /// (I + s.tau) / 2
    pub fn density(&self) -> ComplexMatrix {
        let c = |re, im| Complex64::new(re, im);
        ComplexMatrix::from_vec(
            2,
            2,
            vec![
                c(0.5 * (1.0 + self.s3), 0.0),
                c(0.5 * self.s1, -0.5 * self.s2),
                c(0.5 * self.s1, 0.5 * self.s2),
                c(0.5 * (1.0 - self.s3), 0.0),
            ],
        )
        .expect("2x2")
    }
}

/// Polarization vectors `(s(A), s(B))` of a pure two-qubit state.
pub fn bloch_vectors(amps: &PureStateAmplitudes) -> (BlochVector, BlochVector) {
    let PureStateAmplitudes { a11, a10, a01, a00 } = *amps;
    let i = Complex64::i();
    // 2 Re and i(z - z*) = -2 Im expressions written out as in the amplitude form
    let sa1 = a11 * a01.conj() + a11.conj() * a01 + a10 * a00.conj() + a10.conj() * a00;
    let sa2 = i * (a11 * a01.conj() - a11.conj() * a01 + a10 * a00.conj() - a10.conj() * a00);
    let sa3 = a11.norm_sqr() - a01.norm_sqr() + a10.norm_sqr() - a00.norm_sqr();

    let sb1 = a11 * a10.conj() + a11.conj() * a10 + a01 * a00.conj() + a01.conj() * a00;
    let sb2 = i * (a11 * a10.conj() - a11.conj() * a10 + a01 * a00.conj() - a01.conj() * a00);
    let sb3 = a11.norm_sqr() - a10.norm_sqr() + a01.norm_sqr() - a00.norm_sqr();

    (
        BlochVector::new(sa1.re, sa2.re, sa3),
        BlochVector::new(sb1.re, sb2.re, sb3),
    )
}

/// `C_ij = <psi| tau_i (x) tau_j |psi>`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrelationTensor(pub [[f64; 3]; 3]);

impl CorrelationTensor {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[i - 1][j - 1]
    }
}

pub fn correlation_tensor(amps: &PureStateAmplitudes) -> CorrelationTensor {
    let PureStateAmplitudes { a11, a10, a01, a00 } = *amps;
    let i = Complex64::i();
    let cj = |z: Complex64| z.conj();

    let c11 = a11 * cj(a00) + a00 * cj(a11) + a10 * cj(a01) + a01 * cj(a10);
    let c12 = i * (a11 * cj(a00) - a00 * cj(a11) + a01 * cj(a10) - a10 * cj(a01));
    let c13 = a11 * cj(a01) + a01 * cj(a11) - a10 * cj(a00) - a00 * cj(a10);

    let c21 = i * (a11 * cj(a00) - a00 * cj(a11) - a01 * cj(a10) + a10 * cj(a01));
    let c22 = -a11 * cj(a00) - a00 * cj(a11) + a10 * cj(a01) + a01 * cj(a10);
    let c23 = i * (a11 * cj(a01) - a01 * cj(a11) - a10 * cj(a00) + a00 * cj(a10));

    let c31 = a11 * cj(a10) + a10 * cj(a11) - a01 * cj(a00) - a00 * cj(a01);
    let c32 = i * (a11 * cj(a10) - a10 * cj(a11) - a01 * cj(a00) + a00 * cj(a01));
    let c33 = a11.norm_sqr() - a10.norm_sqr() - a01.norm_sqr() + a00.norm_sqr();

    CorrelationTensor([
        [c11.re, c12.re, c13.re],
        [c21.re, c22.re, c23.re],
        [c31.re, c32.re, c33],
    ])
}

/// Rebuild `rho(A,B)` from its Pauli expansion
/// `(I(x)I + s(A).tau(x)I + I(x)s(B).tau + sum C_ij tau_i(x)tau_j) / 4`.
pub fn pauli_reconstruction(sa: &BlochVector, sb: &BlochVector, c: &CorrelationTensor) -> ComplexMatrix {
    use crate::linalg::pauli::{identity2, pauli};
    use crate::linalg::tensor_product;

    let id = identity2();
    let mut out = tensor_product(&id, &id);
    for k in 1..=3 {
        out = &out + &tensor_product(&pauli(k), &id).scale_real(sa.as_array()[k - 1]);
        out = &out + &tensor_product(&id, &pauli(k)).scale_real(sb.as_array()[k - 1]);
        for l in 1..=3 {
            out = &out + &tensor_product(&pauli(k), &pauli(l)).scale_real(c.get(k, l));
        }
    }
    out.scale_real(0.25)
}

/// Closed-form eigensystem of `(I + s.tau)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MarginalEigenData {
    /// (1 + |s|) / 2
    pub p_plus: f64,
    /// (1 - |s|) / 2
    pub p_minus: f64,
    pub phi: f64,
    pub a_plus: f64,
    pub a_minus: f64,
}

impl MarginalEigenData {
    /// Eigenvectors for `p_plus` and `p_minus` as `[c1, c0]` components on `|1>, |0>`.
    pub fn eigenvectors(&self) -> [[Complex64; 2]; 2] {
        let e = Complex64::from_polar(1.0, self.phi);
        let ap = Complex64::new(self.a_plus, 0.0);
        let am = Complex64::new(self.a_minus, 0.0);
        [[ap, e * am], [-(e.conj()) * am, ap]]
    }
}

pub fn marginal_eigendata(s: &BlochVector) -> MarginalEigenData {
    let norm = s.norm();
    let p_plus = 0.5 * (1.0 + norm);
    let p_minus = 0.5 * (1.0 - norm);
    if norm == 0.0 {
        return MarginalEigenData {
            p_plus,
            p_minus,
            phi: 0.0,
            a_plus: 1.0,
            a_minus: 0.0,
        };
    }
    let transverse = s.s1.hypot(s.s2);
    let phi = if transverse == 0.0 { 0.0 } else { s.s2.atan2(s.s1) };
    let a_plus = ((norm + s.s3) / (2.0 * norm)).max(0.0).sqrt();
    let a_minus = ((norm - s.s3) / (2.0 * norm)).max(0.0).sqrt();
    MarginalEigenData {
        p_plus,
        p_minus,
        phi,
        a_plus,
        a_minus,
    }
}

/// Purity of the A marginal and the residual of `1 - |s|^2 = 4|a11 a00 - a01 a10|^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PurityCheck {
    pub purity_a: f64,
    pub identity_residual: f64,
    /// | |s(A)| - |s(B)| |
    pub polarization_mismatch: f64,
}

pub fn purity_check(amps: &PureStateAmplitudes) -> PurityCheck {
    let (sa, sb) = bloch_vectors(amps);
    let na2 = sa.norm().powi(2);
    PurityCheck {
        purity_a: 0.5 * (1.0 + na2),
        identity_residual: ((1.0 - na2) - 4.0 * amps.determinant().norm_sqr()).abs(),
        polarization_mismatch: (sa.norm() - sb.norm()).abs(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::pauli::pauli;
    use crate::linalg::{partial_trace, tensor_product, Subsystem};
    use std::f64::consts::FRAC_1_SQRT_2 as H;

    fn singlet() -> PureStateAmplitudes {
        PureStateAmplitudes::real(0.0, H, -H, 0.0)
    }

    /// <psi| tau_i (x) tau_j |psi> straight from the matrices.
    fn expectation_oracle(amps: &PureStateAmplitudes, i: usize, j: usize) -> f64 {
        let op = tensor_product(&pauli(i), &pauli(j));
        op.expectation(&amps.to_vector()).re
    }

    #[test]
    fn basis_state_projector() {
        let rho = pure_density(&PureStateAmplitudes::real(1.0, 0.0, 0.0, 0.0)).unwrap();
        assert_eq!(rho.matrix(), &ComplexMatrix::diagonal(&[1.0, 0.0, 0.0, 0.0]));
    }

    #[test]
    fn singlet_density_matches_explicit_form() {
        let rho = pure_density(&singlet()).unwrap();
        let m = rho.matrix();
        assert!((m[(1, 1)].re - 0.5).abs() < 1e-15);
        assert!((m[(2, 2)].re - 0.5).abs() < 1e-15);
        assert!((m[(1, 2)].re + 0.5).abs() < 1e-15);
        assert!((m[(2, 1)].re + 0.5).abs() < 1e-15);
        assert!((rho.purity() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn unnormalized_amplitudes_are_rejected() {
        let amps = PureStateAmplitudes::real(1.0, 1.0, 0.0, 0.0);
        assert!(matches!(pure_density(&amps), Err(Error::Unnormalized { .. })));
    }

    #[test]
    fn bloch_vectors_of_reference_states() {
        let (a, b) = bloch_vectors(&singlet());
        assert!(a.norm() < 1e-15 && b.norm() < 1e-15);
        let (a, b) = bloch_vectors(&PureStateAmplitudes::real(1.0, 0.0, 0.0, 0.0));
        assert_eq!(a, BlochVector::new(0.0, 0.0, 1.0));
        assert_eq!(b, BlochVector::new(0.0, 0.0, 1.0));
        // (|11> + |00>)/sqrt2: every term in s1, s2 pairs a zero amplitude, s3 = 1/2 - 1/2
        let (a, b) = bloch_vectors(&PureStateAmplitudes::real(H, 0.0, 0.0, H));
        assert!(a.norm() < 1e-15 && b.norm() < 1e-15);
    }

    #[test]
    fn bloch_vectors_reproduce_marginals() {
        let amps = PureStateAmplitudes::new(
            Complex64::new(0.3, 0.1),
            Complex64::new(-0.2, 0.5),
            Complex64::new(0.4, -0.3),
            Complex64::new(0.1, 0.2),
        )
        .normalized();
        let rho = pure_density(&amps).unwrap();
        let (sa, sb) = bloch_vectors(&amps);
        assert!(partial_trace(&rho, Subsystem::A).matrix().max_abs_diff(&sa.density()) < 1e-12);
        assert!(partial_trace(&rho, Subsystem::B).matrix().max_abs_diff(&sb.density()) < 1e-12);
    }

    #[test]
    fn correlation_tensor_reference_states() {
        let c = correlation_tensor(&PureStateAmplitudes::real(1.0, 0.0, 0.0, 0.0));
        assert_eq!(c.0, [[0.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 1.0]]);
        let c = correlation_tensor(&singlet());
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j { -1.0 } else { 0.0 };
                assert!((c.0[i][j] - expected).abs() < 1e-15, "C{}{}", i + 1, j + 1);
            }
        }
    }

    #[test]
    fn correlation_tensor_matches_pauli_expectations() {
        // |+x>|+y> and |+y>|+x> pin the off-diagonal x/y entries
        let half = Complex64::new(0.5, 0.0);
        let ihalf = Complex64::new(0.0, 0.5);
        let xy = PureStateAmplitudes::new(half, ihalf, half, ihalf);
        let yx = PureStateAmplitudes::new(half, half, ihalf, ihalf);
        assert!((correlation_tensor(&xy).get(1, 2) - 1.0).abs() < 1e-15);
        assert!((correlation_tensor(&yx).get(2, 1) - 1.0).abs() < 1e-15);

        let amps = PureStateAmplitudes::new(
            Complex64::new(0.1, -0.4),
            Complex64::new(0.6, 0.2),
            Complex64::new(-0.3, 0.35),
            Complex64::new(0.25, 0.1),
        )
        .normalized();
        let c = correlation_tensor(&amps);
        for i in 1..=3 {
            for j in 1..=3 {
                assert!((c.get(i, j) - expectation_oracle(&amps, i, j)).abs() < 1e-14, "C{i}{j}");
            }
        }
        let (sa, sb) = bloch_vectors(&amps);
        let rebuilt = pauli_reconstruction(&sa, &sb, &c);
        assert!(rebuilt.max_abs_diff(pure_density(&amps).unwrap().matrix()) < 1e-14);
    }

    #[test]
    fn marginal_eigendata_cases() {
        let d = marginal_eigendata(&BlochVector::new(0.0, 0.0, 0.0));
        assert_eq!((d.p_plus, d.p_minus), (0.5, 0.5));

        let d = marginal_eigendata(&BlochVector::new(0.0, 0.0, 1.0));
        assert_eq!((d.p_plus, d.p_minus), (1.0, 0.0));
        let [v1, v2] = d.eigenvectors();
        assert_eq!(v1, [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
        assert!(v2[0].norm() < 1e-15 && (v2[1].re - 1.0).abs() < 1e-15);

        let s = BlochVector::new(0.5, 0.0, 0.0);
        let d = marginal_eigendata(&s);
        assert!((d.p_plus - 0.75).abs() < 1e-15 && (d.p_minus - 0.25).abs() < 1e-15);
        assert_eq!(d.phi, 0.0);
        assert!((d.a_plus - H).abs() < 1e-15 && (d.a_minus - H).abs() < 1e-15);
        // direct diagonalization of (I + tau1/2)/2
        let eig = crate::linalg::hermitian_eig(&s.density()).unwrap();
        assert!((eig.values[0] - 0.75).abs() < 1e-15 && (eig.values[1] - 0.25).abs() < 1e-15);
    }

    #[test]
    fn marginal_eigenvectors_diagonalize_general_vector() {
        let s = BlochVector::new(0.3, -0.4, -0.5);
        let d = marginal_eigendata(&s);
        let rho = s.density();
        for (v, p) in d.eigenvectors().iter().zip([d.p_plus, d.p_minus]) {
            let rv = rho.mul_vec(v);
            assert!(rv.iter().zip(v).all(|(a, b)| (a - b * p).norm() < 1e-12));
        }
    }

    #[test]
    fn purity_identity() {
        let p = purity_check(&PureStateAmplitudes::real(1.0, 0.0, 0.0, 0.0));
        assert_eq!(p.purity_a, 1.0);
        assert_eq!(p.identity_residual, 0.0);
        let p = purity_check(&singlet());
        assert!((p.purity_a - 0.5).abs() < 1e-15);
        assert!(p.identity_residual < 1e-15);
    }
}
