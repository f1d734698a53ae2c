//! Constructors for the reference state families.

pub mod pure;
pub mod random;
pub mod registry;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::pauli::{identity2, spin_projector};
use crate::linalg::{ComplexMatrix, DensityMatrix};
use crate::structure::{LocalDecomposition, LocalTerm};

pub use pure::{
    bloch_vectors, correlation_tensor, marginal_eigendata, pauli_reconstruction, pure_density,
    purity_check, BlochVector, CorrelationTensor, MarginalEigenData, PureStateAmplitudes,
    PurityCheck,
};
pub use random::{random_mixed, random_pure};

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfRange {
            name: "p",
            value: p,
            range: "[0, 1]",
        });
    }
    Ok(())
}

/// `p |Phi+><Phi+| + (1 - p) I/4` with `|Phi+> = (|00> + |11>)/sqrt2`.
pub fn werner(p: f64) -> Result<DensityMatrix> {
    check_probability(p)?;
    let mut m = ComplexMatrix::identity(4).scale_real((1.0 - p) / 4.0);
    // |11> is index 0, |00> is index 3
    for (i, j) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
        m[(i, j)] += Complex64::new(p / 2.0, 0.0);
    }
    Ok(DensityMatrix::from_trusted(m, (2, 2)))
}

/// Seven-term local representation of the Werner state:
/// `(1 - 3p) I/4 + p/2 * [sum_{i=1,3; e} P_i^e (x) P_i^e + sum_e P_2^e (x) P_2^-e]`
/// with `P_i^e = (I + e tau_i)/2`. Weights are nonnegative exactly when `p <= 1/3`.
pub fn werner_local_decomposition(p: f64) -> Result<LocalDecomposition> {
    check_probability(p)?;
    let half_identity = DensityMatrix::from_trusted(identity2().scale_real(0.5), (2, 1));
    let mut terms = vec![LocalTerm::new(1.0 - 3.0 * p, half_identity.clone(), half_identity)];
    for i in 1..=3 {
        for eps in [1.0, -1.0] {
            let partner = if i == 2 { -eps } else { eps };
            terms.push(LocalTerm::new(
                p / 2.0,
                DensityMatrix::from_trusted(spin_projector(i, eps), (2, 1)),
                DensityMatrix::from_trusted(spin_projector(i, partner), (2, 1)),
            ));
        }
    }
    LocalDecomposition::new(terms)
}

/// The six worked two-qubit examples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExampleId {
    E1,
    E2,
    E3,
    E4,
    E5,
    E6,
}

impl ExampleId {
    pub const ALL: [ExampleId; 6] = [
        ExampleId::E1,
        ExampleId::E2,
        ExampleId::E3,
        ExampleId::E4,
        ExampleId::E5,
        ExampleId::E6,
    ];
}

impl fmt::Display for ExampleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for ExampleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ExampleId::ALL
            .into_iter()
            .find(|id| id.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown example '{s}'")))
    }
}

/// Two-qubit ket from `(amplitude, "ab")` pairs, e.g. `(-2.0, "10")`.
fn ket(components: &[(f64, &str)]) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); 4];
    for &(amp, label) in components {
        v[basis_index(label)] += Complex64::new(amp, 0.0);
    }
    v
}

/// Index of `|ab>` in the `|11>, |10>, |01>, |00>` order.
pub fn basis_index(label: &str) -> usize {
    match label {
        "11" => 0,
        "10" => 1,
        "01" => 2,
        "00" => 3,
        _ => panic!("not a two-qubit basis label: {label}"),
    }
}

/// `sum_k w_k |v_k><v_k|`
fn mixture(terms: &[(f64, Vec<Complex64>)]) -> ComplexMatrix {
    terms.iter().fold(ComplexMatrix::zeros(4, 4), |acc, (w, v)| {
        &acc + &ComplexMatrix::outer(v, v).scale_real(*w)
    })
}

pub fn example_state(id: ExampleId) -> DensityMatrix {
    let m = match id {
        ExampleId::E1 => mixture(&[
            (1.0 / 6.0, ket(&[(-2.0, "10"), (1.0, "01")])),
            (1.0 / 6.0, ket(&[(1.0, "00")])),
        ]),
        ExampleId::E2 => mixture(&[
            (1.0 / 6.0, ket(&[(1.0, "10"), (1.0, "01")])),
            (4.0 / 6.0, ket(&[(1.0, "00")])),
        ]),
        ExampleId::E3 => mixture(&[
            (1.0 / 3.0, ket(&[(1.0, "10"), (1.0, "01")])),
            (1.0 / 3.0, ket(&[(1.0, "00")])),
        ]),
        ExampleId::E4 => mixture(&[(0.5, ket(&[(1.0, "10"), (-1.0, "01")]))]),
        ExampleId::E5 => mixture(&[(0.5, ket(&[(1.0, "00")])), (0.5, ket(&[(1.0, "01")]))]),
        ExampleId::E6 => mixture(&[(0.5, ket(&[(1.0, "11")])), (0.5, ket(&[(1.0, "00")]))]),
    };
    DensityMatrix::from_trusted(m, (2, 2))
}

/// Isospectral pair `(rho_E, rho_S)`: same global and local spectra, the
/// first entangled and the second separable.
pub fn isospectral_pair() -> (DensityMatrix, DensityMatrix) {
    let third = 1.0 / 3.0;
    let mut e = ComplexMatrix::diagonal(&[third, third, third, 0.0]);
    e[(1, 2)] = Complex64::new(third, 0.0);
    e[(2, 1)] = Complex64::new(third, 0.0);
    let s = ComplexMatrix::diagonal(&[third, 0.0, 0.0, 2.0 * third]);
    (
        DensityMatrix::from_trusted(e, (2, 2)),
        DensityMatrix::from_trusted(s, (2, 2)),
    )
}

/// Natural two-term decomposition of E6: `(|1><1|(x)|1><1| + |0><0|(x)|0><0|) / 2`.
pub fn e6_decomposition() -> LocalDecomposition {
    let up = DensityMatrix::from_trusted(ComplexMatrix::diagonal(&[1.0, 0.0]), (2, 1));
    let down = DensityMatrix::from_trusted(ComplexMatrix::diagonal(&[0.0, 1.0]), (2, 1));
    LocalDecomposition::new(vec![
        LocalTerm::new(0.5, up.clone(), up),
        LocalTerm::new(0.5, down.clone(), down),
    ])
    .expect("weights sum to one")
}
