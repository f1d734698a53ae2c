//! Reference computations that share no code path with the library
//! algorithms they check.

#![allow(dead_code)]

use qcorr_core::linalg::pauli::pauli;
use qcorr_core::linalg::tensor_product;
use qcorr_core::{Complex64, ComplexMatrix, DensityMatrix};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Characteristic polynomial coefficients of an n x n matrix by
/// Faddeev-LeVerrier: `x^n + c[1] x^(n-1) + ... + c[n]`, with `c[0] = 1`.
pub fn char_poly(m: &ComplexMatrix) -> Vec<Complex64> {
    let n = m.rows();
    let mut coeffs = vec![c(1.0)];
    let mut mk = ComplexMatrix::zeros(n, n);
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{k-1} I
        let mut shifted = mk.clone();
        for i in 0..n {
            shifted[(i, i)] += coeffs[k - 1];
        }
        mk = m * &shifted;
        coeffs.push(-mk.trace() / c(k as f64));
    }
    coeffs
}

fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = c(0.0);
    let mut dp = c(0.0);
    for &a in coeffs {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// All roots of a monic polynomial by Durand-Kerner, Newton-polished.
pub fn poly_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32)).collect();
    for _ in 0..2000 {
        let mut delta: f64 = 0.0;
        for i in 0..n {
            let (p, _) = horner(coeffs, roots[i]);
            let mut denom = c(1.0);
            for j in 0..n {
                if j != i {
                    denom *= roots[i] - roots[j];
                }
            }
            let step = p / denom;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-16 {
            break;
        }
    }
    for r in &mut roots {
        for _ in 0..5 {
            let (p, dp) = horner(coeffs, *r);
            if dp.norm() == 0.0 {
                break;
            }
            *r -= p / dp;
        }
    }
    roots
}

/// `sigma2 (x) sigma2`, built independently of the library's spin flip.
pub fn yy() -> ComplexMatrix {
    tensor_product(&pauli(2), &pauli(2))
}

/// Square roots of the eigenvalues of `rho rho~`, descending, straight from
/// the non-Hermitian product.
pub fn brute_force_lambdas(rho: &DensityMatrix) -> Vec<f64> {
    let y = yy();
    let tilde = &(&y * &rho.matrix().conj()) * &y;
    let product = rho.matrix() * &tilde;
    sqrt_sorted(poly_roots(&char_poly(&product)))
}

fn sqrt_sorted(roots: Vec<Complex64>) -> Vec<f64> {
    let mut l: Vec<f64> = roots.into_iter().map(|z| z.re.max(0.0).sqrt()).collect();
    l.sort_by(|a, b| b.partial_cmp(a).unwrap());
    l
}

/// The eigenbasis form of `rho rho~`:
/// `C(G, G') = sum_{G1} P(G) P(G1) <G|YY|G1*> <G1*|YY|G'>`.
pub fn gamma_matrix(rho: &DensityMatrix) -> ComplexMatrix {
    let eig = rho.eigen().unwrap();
    let y = yy();
    let n = eig.dim();
    let p: Vec<f64> = eig.values.iter().map(|v| v.max(0.0)).collect();
    let vecs: Vec<Vec<Complex64>> = (0..n).map(|k| eig.vector(k)).collect();
    let conj: Vec<Vec<Complex64>> = vecs.iter().map(|v| v.iter().map(|z| z.conj()).collect()).collect();
    let braket = |bra: &[Complex64], ket: &[Complex64]| -> Complex64 {
        let yk = y.mul_vec(ket);
        bra.iter().zip(&yk).map(|(a, b)| a.conj() * b).sum()
    };
    ComplexMatrix::from_fn(n, n, |g, gp| {
        (0..n)
            .map(|g1| braket(&vecs[g], &conj[g1]) * braket(&conj[g1], &vecs[gp]) * c(p[g] * p[g1]))
            .sum()
    })
}

/// Lambdas from the eigenbasis route.
pub fn gamma_route_lambdas(rho: &DensityMatrix) -> Vec<f64> {
    sqrt_sorted(poly_roots(&char_poly(&gamma_matrix(rho))))
}

/// Matrix exponential by scaling and squaring with a Taylor series.
pub fn expm(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.rows();
    let norm = a.frobenius_norm();
    let mut squarings = 0;
    while norm / f64::powi(2.0, squarings) > 0.25 {
        squarings += 1;
    }
    let scaled = a.scale_real(1.0 / f64::powi(2.0, squarings));
    let mut term = ComplexMatrix::identity(n);
    let mut sum = ComplexMatrix::identity(n);
    for k in 1..30 {
        term = (&term * &scaled).scale_real(1.0 / k as f64);
        sum = &sum + &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// `-sum p ln p` over a plain probability list.
pub fn shannon(p: &[f64]) -> f64 {
    p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.ln()).sum()
}

/// Eigenvalues of a 2x2 Hermitian matrix in closed form, descending.
pub fn qubit_spectrum(m: &ComplexMatrix) -> [f64; 2] {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let b = m[(0, 1)].norm();
    let mean = 0.5 * (a + d);
    let half_gap = (0.25 * (a - d) * (a - d) + b * b).sqrt();
    [mean + half_gap, mean - half_gap]
}

/// Partial trace over B of a 4x4 matrix, written out element by element.
pub fn trace_out_b(m: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_fn(2, 2, |i, j| m[(2 * i, 2 * j)] + m[(2 * i + 1, 2 * j + 1)])
}

/// Partial trace over A of a 4x4 matrix.
pub fn trace_out_a(m: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_fn(2, 2, |i, j| m[(i, j)] + m[(i + 2, j + 2)])
}
