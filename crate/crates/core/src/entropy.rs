//! Entropy functionals in nats.
//!
//! All of them are evaluated from spectra. Eigenvalues in `[-1e-10, 0)` are
//! clipped to zero and eigenvalues at or below the support cutoff contribute
//! nothing (`0 ln 0 = 0`).

use crate::error::{Error, Result};
use crate::linalg::{partial_trace, psd_function, DensityMatrix, MatrixFunction, Subsystem};
use crate::tolerance::SUPPORT_CUTOFF;

const DENOMINATOR_FLOOR: f64 = 1e-12;
/// Kernel leakage above this makes the relative entropy infinite.
const SUPPORT_LEAK: f64 = 1e-10;

/// Shannon entropy of a probability vector, natural log.
pub fn shannon(probs: &[f64]) -> f64 {
    probs
        .iter()
        .filter(|&&p| p > SUPPORT_CUTOFF)
        .map(|&p| -p * p.ln())
        .sum()
}

/// Tsallis entropy of a probability vector; `q == 1` is Shannon.
pub fn tsallis_of_spectrum(probs: &[f64], q: f64) -> Result<f64> {
    check_q(q)?;
    if q == 1.0 {
        return Ok(shannon(probs));
    }
    let sum: f64 = probs.iter().filter(|&&p| p > SUPPORT_CUTOFF).map(|p| p.powf(q)).sum();
    Ok((sum - 1.0) / (1.0 - q))
}

fn check_q(q: f64) -> Result<()> {
    if q <= 0.0 || !q.is_finite() {
        return Err(Error::OutOfRange {
            name: "q",
            value: q,
            range: "(0, inf)",
        });
    }
    Ok(())
}

/// `-Tr rho ln rho`
pub fn von_neumann(rho: &DensityMatrix) -> Result<f64> {
    Ok(shannon(&rho.spectrum()?))
}

/// `(Tr rho^q - 1) / (1 - q)`, dispatching to von Neumann at `q = 1`.
pub fn tsallis(rho: &DensityMatrix, q: f64) -> Result<f64> {
    tsallis_of_spectrum(&rho.spectrum()?, q)
}

/// `S_q(A,B) - S_q(side)`. No sign is implied.
pub fn entropy_difference(rho: &DensityMatrix, side: Subsystem, q: f64) -> Result<f64> {
    let joint = tsallis(rho, q)?;
    let marginal = tsallis(&partial_trace(rho, side), q)?;
    Ok(joint - marginal)
}

/// `(S_q(A,B) - S_q(side)) / (1 + (1 - q) S_q(side))`.
///
/// `side` is the subsystem whose entropy is subtracted, so `Subsystem::A`
/// gives the quantity conventionally written `S_q(A|B)`.
pub fn conditional_tsallis(rho: &DensityMatrix, side: Subsystem, q: f64) -> Result<f64> {
    let joint = tsallis(rho, q)?;
    let marginal = tsallis(&partial_trace(rho, side), q)?;
    let denominator = 1.0 + (1.0 - q) * marginal;
    if denominator.abs() <= DENOMINATOR_FLOOR {
        return Err(Error::VanishingDenominator { q, entropy: marginal });
    }
    Ok((joint - marginal) / denominator)
}

/// Outcome of the large-`q` conditional Tsallis test for each side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InfinityCriterion {
    pub satisfied_a: bool,
    pub satisfied_b: bool,
}

/// Sign of `S_q(A|B)` as `q -> inf`.
///
/// With `1 + (1 - q) S_q(X) = Tr rho_X^q`, the conditional entropy is
/// `(Tr rho^q - Tr rho_X^q) / ((1 - q) Tr rho_X^q)`, nonnegative for `q > 1`
/// exactly when `Tr rho^q <= Tr rho_X^q`. Both traces are dominated by their
/// largest eigenvalue, so the limit is nonnegative iff
/// `lambda_max(rho) < lambda_max(rho_X)`, or the maxima tie and the joint
/// maximum is no more degenerate than the marginal one.
pub fn tsallis_infinity_criterion(rho: &DensityMatrix) -> Result<InfinityCriterion> {
    let joint = rho.spectrum()?;
    let side_ok = |side| -> Result<bool> {
        let marginal = partial_trace(rho, side).spectrum()?;
        Ok(dominates(&marginal, &joint))
    };
    Ok(InfinityCriterion {
        satisfied_a: side_ok(Subsystem::A)?,
        satisfied_b: side_ok(Subsystem::B)?,
    })
}

/// Tie tolerance for comparing the two leading eigenvalues.
const TIE: f64 = 1e-10;

fn dominates(marginal: &[f64], joint: &[f64]) -> bool {
    let m = marginal[0];
    let j = joint[0];
    if j < m - TIE {
        return true;
    }
    if j > m + TIE {
        return false;
    }
    let count = |v: &[f64], top: f64| v.iter().filter(|&&x| (x - top).abs() <= TIE).count();
    count(joint, j) <= count(marginal, m)
}

/// `S(A) + S(B) - S(A,B)`
pub fn mutual_entropy(rho: &DensityMatrix) -> Result<f64> {
    let sa = von_neumann(&partial_trace(rho, Subsystem::A))?;
    let sb = von_neumann(&partial_trace(rho, Subsystem::B))?;
    Ok(sa + sb - von_neumann(rho)?)
}

/// `Tr rho1 (ln rho1 - ln rho2)`; `f64::INFINITY` when `rho1` has weight
/// outside the support of `rho2`.
pub fn relative_entropy(rho1: &DensityMatrix, rho2: &DensityMatrix) -> Result<f64> {
    if rho1.dim() != rho2.dim() {
        return Err(Error::DimensionMismatch(format!(
            "relative entropy of {}x{} and {}x{} states",
            rho1.dim(),
            rho1.dim(),
            rho2.dim(),
            rho2.dim()
        )));
    }
    let eig2 = rho2.eigen()?;
    for (k, &value) in eig2.values.iter().enumerate() {
        if value <= SUPPORT_CUTOFF {
            let leak = rho1.matrix().expectation(&eig2.vector(k)).re;
            if leak > SUPPORT_LEAK {
                return Ok(f64::INFINITY);
            }
        }
    }
    let log2 = psd_function(rho2.matrix(), MatrixFunction::Log)?;
    let cross = (rho1.matrix() * &log2).trace().re;
    Ok(-von_neumann(rho1)? - cross)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ComplexMatrix;
    use crate::states::{example_state, pure_density, werner, ExampleId, PureStateAmplitudes};
    use std::f64::consts::LN_2;

    fn werner_half_entropy_oracle() -> f64 {
        -0.625 * 0.625_f64.ln() - 3.0 * 0.125 * 0.125_f64.ln()
    }

    #[test]
    fn von_neumann_values() {
        let pure = pure_density(&PureStateAmplitudes::real(0.6, 0.0, 0.8, 0.0)).unwrap();
        assert!(von_neumann(&pure).unwrap().abs() < 1e-14);
        let mixed = DensityMatrix::single(ComplexMatrix::identity(2).scale_real(0.5)).unwrap();
        assert!((von_neumann(&mixed).unwrap() - LN_2).abs() < 1e-15);
        let w = von_neumann(&werner(0.5).unwrap()).unwrap();
        assert!((w - werner_half_entropy_oracle()).abs() < 1e-14);
        assert!((w - 1.0735).abs() < 1e-4);
    }

    #[test]
    fn tsallis_values() {
        let pure = example_state(ExampleId::E4);
        for q in [0.5, 2.0, 3.0] {
            assert!(tsallis(&pure, q).unwrap().abs() < 1e-14);
        }
        let mixed = DensityMatrix::maximally_mixed((2, 2));
        assert!((tsallis(&mixed, 2.0).unwrap() - 0.75).abs() < 1e-15);
        let w = werner(0.5).unwrap();
        assert!((tsallis(&w, 2.0).unwrap() - 0.5625).abs() < 1e-14);
        assert!(tsallis(&w, 0.0).is_err());
        assert!(tsallis(&w, -1.0).is_err());
        let s1 = tsallis(&w, 1.0).unwrap();
        for q in [1.0 - 1e-4, 1.0 + 1e-4] {
            assert!((tsallis(&w, q).unwrap() - s1).abs() < 1e-3);
        }
    }

    #[test]
    fn entropy_differences_of_examples() {
        let e1 = example_state(ExampleId::E1);
        let d = entropy_difference(&e1, Subsystem::A, 1.0).unwrap();
        assert!((d - 5.0 / 6.0 * (0.8_f64).ln()).abs() < 1e-12);
        let e2 = example_state(ExampleId::E2);
        let d = entropy_difference(&e2, Subsystem::B, 1.0).unwrap();
        assert!((d - 5.0 / 6.0 * (1.25_f64).ln()).abs() < 1e-12);
        let e3 = example_state(ExampleId::E3);
        for q in [0.5, 1.0, 2.0, 5.0] {
            for side in [Subsystem::A, Subsystem::B] {
                assert!(entropy_difference(&e3, side, q).unwrap().abs() < 1e-12);
            }
        }
    }

    #[test]
    fn conditional_entropy_cases() {
        let bell = example_state(ExampleId::E4);
        for side in [Subsystem::A, Subsystem::B] {
            assert!((conditional_tsallis(&bell, side, 1.0).unwrap() + LN_2).abs() < 1e-12);
        }
        // product state: q = 1 gives the entropy of the other factor
        let a = DensityMatrix::single(ComplexMatrix::diagonal(&[0.9, 0.1])).unwrap();
        let b = DensityMatrix::single(ComplexMatrix::diagonal(&[0.3, 0.7])).unwrap();
        let ab = DensityMatrix::tensor(&a, &b);
        let c = conditional_tsallis(&ab, Subsystem::A, 1.0).unwrap();
        assert!((c - von_neumann(&b).unwrap()).abs() < 1e-12);
        // Tsallis pseudo-additivity: S_q(AB) = S_q(A) + S_q(B) + (1-q) S_q(A) S_q(B)
        let q = 2.5;
        let c = conditional_tsallis(&ab, Subsystem::A, q).unwrap();
        assert!((c - tsallis(&b, q).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn vanishing_denominator_is_reported() {
        // 1 + (1 - q) S_q(A) = Tr rho_A^q; for rho_A = I/2 and huge q it underflows
        let bell = example_state(ExampleId::E4);
        match conditional_tsallis(&bell, Subsystem::A, 2000.0) {
            Err(Error::VanishingDenominator { q, .. }) => assert_eq!(q, 2000.0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn infinity_criterion_examples() {
        let crit = |rho: &DensityMatrix| tsallis_infinity_criterion(rho).unwrap();
        let w = crit(&werner(0.3).unwrap());
        assert!(w.satisfied_a && w.satisfied_b);
        let w = crit(&werner(1.0 / 3.0).unwrap());
        assert!(w.satisfied_a && w.satisfied_b);
        let w = crit(&werner(0.34).unwrap());
        assert!(!w.satisfied_a && !w.satisfied_b);
        let bell = crit(&example_state(ExampleId::E4));
        assert!(!bell.satisfied_a && !bell.satisfied_b);
        let e6 = crit(&example_state(ExampleId::E6));
        assert!(e6.satisfied_a && e6.satisfied_b);
    }

    #[test]
    fn mutual_entropy_examples() {
        assert!(mutual_entropy(&example_state(ExampleId::E5)).unwrap().abs() < 1e-12);
        assert!((mutual_entropy(&example_state(ExampleId::E4)).unwrap() - 2.0 * LN_2).abs() < 1e-12);
        let (e, s) = crate::states::isospectral_pair();
        let expected = (3.0 * 3f64.ln() - 2.0 * LN_2) / 3.0;
        assert!((mutual_entropy(&e).unwrap() - expected).abs() < 1e-12);
        assert!((mutual_entropy(&s).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn relative_entropy_cases() {
        let w = werner(0.5).unwrap();
        assert!(relative_entropy(&w, &w).unwrap().abs() < 1e-12);
        let basis = DensityMatrix::new(ComplexMatrix::diagonal(&[1.0, 0.0, 0.0, 0.0]), (2, 2)).unwrap();
        let mixed = DensityMatrix::maximally_mixed((2, 2));
        assert!((relative_entropy(&basis, &mixed).unwrap() - 4f64.ln()).abs() < 1e-12);
        assert_eq!(relative_entropy(&mixed, &basis).unwrap(), f64::INFINITY);
        let qubit = DensityMatrix::maximally_mixed((2, 1));
        assert!(matches!(relative_entropy(&qubit, &mixed), Err(Error::DimensionMismatch(_))));
    }
}
