use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::eig::fix_phases;
use crate::linalg::{hermitian_eig, partial_trace, tensor_vec, ComplexMatrix, DensityMatrix, EigenSystem, Subsystem};
use crate::tolerance::{DEGENERACY, PSD};

/// Residual norm below which a projected basis vector is treated as lying
/// outside the eigenspace.
const PROJECTION_FLOOR: f64 = 1e-6;

/// Product basis `|alpha, beta>` built from the marginal eigenvectors.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlphaBetaFrame {
    pub eig_a: EigenSystem,
    pub eig_b: EigenSystem,
    /// `|alpha> (x) |beta>`, alpha-major.
    pub product_basis: Vec<Vec<Complex64>>,
    /// A degenerate eigenspace of the A marginal was replaced by projected
    /// computational basis vectors.
    pub degenerate_a: bool,
    pub degenerate_b: bool,
}

impl AlphaBetaFrame {
    pub fn dims(&self) -> (usize, usize) {
        (self.eig_a.dim(), self.eig_b.dim())
    }

    /// p(alpha)
    pub fn p(&self) -> &[f64] {
        &self.eig_a.values
    }

    /// q(beta)
    pub fn q(&self) -> &[f64] {
        &self.eig_b.values
    }

    pub fn index(&self, alpha: usize, beta: usize) -> usize {
        alpha * self.eig_b.dim() + beta
    }

    pub fn vector(&self, alpha: usize, beta: usize) -> &[Complex64] {
        &self.product_basis[self.index(alpha, beta)]
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate_a || self.degenerate_b
    }

    /// The product vectors as the columns of a unitary.
    pub fn basis_matrix(&self) -> ComplexMatrix {
        let n = self.product_basis.len();
        ComplexMatrix::from_fn(n, n, |i, k| self.product_basis[k][i])
    }

    /// max |U^dagger U - I| over the product basis.
    pub fn orthonormality_error(&self) -> f64 {
        let u = self.basis_matrix();
        (&u.adjoint() * &u).max_abs_diff(&ComplexMatrix::identity(u.rows()))
    }

    /// `|alpha><alpha|` on A or `|beta><beta|` on B.
    pub fn local_projector(&self, side: Subsystem, k: usize) -> ComplexMatrix {
        let v = match side {
            Subsystem::A => self.eig_a.vector(k),
            Subsystem::B => self.eig_b.vector(k),
        };
        ComplexMatrix::outer(&v, &v)
    }
}

pub fn alpha_beta_frame(rho: &DensityMatrix) -> Result<AlphaBetaFrame> {
    let (eig_a, degenerate_a) = marginal_eigensystem(&partial_trace(rho, Subsystem::A))?;
    let (eig_b, degenerate_b) = marginal_eigensystem(&partial_trace(rho, Subsystem::B))?;
    let mut product_basis = Vec::with_capacity(eig_a.dim() * eig_b.dim());
    for alpha in 0..eig_a.dim() {
        for beta in 0..eig_b.dim() {
            product_basis.push(tensor_vec(&eig_a.vector(alpha), &eig_b.vector(beta)));
        }
    }
    Ok(AlphaBetaFrame {
        eig_a,
        eig_b,
        product_basis,
        degenerate_a,
        degenerate_b,
    })
}

/// Eigensystem of a marginal with clipped eigenvalues and the degeneracy
/// default applied inside every cluster of (nearly) equal eigenvalues.
fn marginal_eigensystem(marginal: &DensityMatrix) -> Result<(EigenSystem, bool)> {
    let mut eig = hermitian_eig(marginal.matrix())?;
    for v in &mut eig.values {
        if *v < 0.0 {
            if *v < -PSD {
                return Err(Error::NegativeEigenvalue { value: *v });
            }
            *v = 0.0;
        }
    }
    let n = eig.dim();
    let mut degenerate = false;
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && eig.values[end - 1] - eig.values[end] <= DEGENERACY {
            end += 1;
        }
        if end - start > 1 {
            degenerate = true;
            canonicalize_cluster(&mut eig.vectors, start..end);
        }
        start = end;
    }
    fix_phases(&mut eig.vectors);
    Ok((eig, degenerate))
}

/// Replace the columns in `cluster` by the computational basis vectors
/// projected onto their span, orthonormalized in index order.
fn canonicalize_cluster(vectors: &mut ComplexMatrix, cluster: std::ops::Range<usize>) {
    let n = vectors.rows();
    let span: Vec<Vec<Complex64>> = cluster.clone().map(|k| vectors.column(k)).collect();
    let mut chosen: Vec<Vec<Complex64>> = Vec::with_capacity(span.len());
    for e in 0..n {
        if chosen.len() == span.len() {
            break;
        }
        // P e = sum_k v_k conj(v_k[e])
        let mut w = vec![Complex64::new(0.0, 0.0); n];
        for v in &span {
            let c = v[e].conj();
            for (wi, vi) in w.iter_mut().zip(v) {
                *wi += vi * c;
            }
        }
        for u in &chosen {
            let overlap: Complex64 = u.iter().zip(&w).map(|(a, b)| a.conj() * b).sum();
            for (wi, ui) in w.iter_mut().zip(u) {
                *wi -= overlap * ui;
            }
        }
        let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > PROJECTION_FLOOR {
            chosen.push(w.into_iter().map(|z| z / norm).collect());
        }
    }
    for (k, v) in cluster.zip(chosen) {
        vectors.set_column(k, &v);
    }
}
