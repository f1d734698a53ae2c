//! Seeded random states. Every sampler owns its generator; nothing global.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};

use super::pure::{pure_density, PureStateAmplitudes};
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, DensityMatrix};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random unit vector of dimension `d`.
pub fn haar_vector<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..d).map(|_| gaussian_complex(rng)).collect();
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / n).collect()
}

pub fn random_pure_with<R: Rng + ?Sized>(rng: &mut R) -> PureStateAmplitudes {
    let v = haar_vector(rng, 4);
    PureStateAmplitudes::new(v[0], v[1], v[2], v[3])
}

/// Four independent standard complex Gaussians, normalized.
pub fn random_pure(seed: u64) -> PureStateAmplitudes {
    random_pure_with(&mut rng_from_seed(seed))
}

/// Flat-Dirichlet weights from normalized exponentials.
pub fn dirichlet_weights<R: Rng + ?Sized>(rng: &mut R, k: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..k).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / total).collect()
}

pub fn random_mixed_with<R: Rng + ?Sized>(rng: &mut R, rank: usize) -> Result<DensityMatrix> {
    if !(1..=4).contains(&rank) {
        return Err(Error::OutOfRange {
            name: "rank",
            value: rank as f64,
            range: "1..=4",
        });
    }
    let weights = dirichlet_weights(rng, rank);
    let mut m = ComplexMatrix::zeros(4, 4);
    for w in weights {
        let psi = random_pure_with(rng);
        let proj = pure_density(&psi)?;
        m = &m + &proj.matrix().scale_real(w);
    }
    Ok(DensityMatrix::from_trusted(m.hermitian_part(), (2, 2)))
}

/// Mixture of `rank` Haar-random pure states with flat-Dirichlet weights.
pub fn random_mixed(seed: u64, rank: usize) -> Result<DensityMatrix> {
    random_mixed_with(&mut rng_from_seed(seed), rank)
}

/// Haar-random 2x2 unitary (Gaussian matrix orthonormalized by Gram-Schmidt).
pub fn random_qubit_unitary<R: Rng + ?Sized>(rng: &mut R) -> ComplexMatrix {
    let u = haar_vector(rng, 2);
    let mut w: Vec<Complex64> = (0..2).map(|_| gaussian_complex(rng)).collect();
    let overlap: Complex64 = u.iter().zip(&w).map(|(a, b)| a.conj() * b).sum();
    for (wi, ui) in w.iter_mut().zip(&u) {
        *wi -= overlap * ui;
    }
    let n = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    ComplexMatrix::from_fn(2, 2, |i, j| if j == 0 { u[i] } else { w[i] / n })
}

/// Random single-qubit mixed state.
pub fn random_qubit_density<R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix {
    let w = dirichlet_weights(rng, 2);
    let u = random_qubit_unitary(rng);
    let d = ComplexMatrix::diagonal(&w);
    let m = &(&u * &d) * &u.adjoint();
    DensityMatrix::from_trusted(m.hermitian_part(), (2, 1))
}
