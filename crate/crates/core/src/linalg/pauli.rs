//! Pauli matrices in the single-qubit basis order `|1>, |0>`.
//!
//! With `|1>` first, `tau3 = |1><1| - |0><0|` is `diag(1, -1)` and all three
//! take their textbook matrix form.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;

pub fn identity2() -> ComplexMatrix {
    ComplexMatrix::identity(2)
}

/// tau_i for i in 1..=3.
pub fn pauli(i: usize) -> ComplexMatrix {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let im = Complex64::new(0.0, 1.0);
    let entries = match i {
        1 => vec![z, one, one, z],
        2 => vec![z, -im, im, z],
        3 => vec![one, z, z, -one],
        _ => panic!("Pauli index must be 1, 2 or 3, got {i}"),
    };
    ComplexMatrix::from_vec(2, 2, entries).expect("2x2")
}

/// (I + eps * tau_i) / 2
pub fn spin_projector(i: usize, eps: f64) -> ComplexMatrix {
    &identity2().scale_real(0.5) + &pauli(i).scale_real(0.5 * eps)
}
