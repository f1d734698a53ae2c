//! Numerical tolerances shared by validation and comparison code.

use serde::{Deserialize, Serialize};

/// Hermiticity bound on max |M - M^dagger|.
pub const HERMITICITY: f64 = 1e-10;
/// Eigenvalues down to `-PSD` are accepted as round-off and clipped to zero.
pub const PSD: f64 = 1e-10;
/// Eigensystem reconstruction and unitarity bound.
pub const RECONSTRUCTION: f64 = 1e-9;
/// Eigenvalues at or below this are outside the support (0 ln 0 = 0).
pub const SUPPORT_CUTOFF: f64 = 1e-12;
/// Marginal eigenvalues closer than this are treated as one eigenspace.
pub const DEGENERACY: f64 = 1e-10;

/// Tolerance record. `scale` multiplies every comparison bound uniformly;
/// the support cutoff is a numerical convention and is never scaled.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub hermiticity: f64,
    pub psd: f64,
    pub reconstruction: f64,
    pub support_cutoff: f64,
    pub degeneracy: f64,
    pub scale: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermiticity: HERMITICITY,
            psd: PSD,
            reconstruction: RECONSTRUCTION,
            support_cutoff: SUPPORT_CUTOFF,
            degeneracy: DEGENERACY,
            scale: 1.0,
        }
    }
}

impl Tolerances {
    pub fn scaled(factor: f64) -> Self {
        let base = Self::default();
        Self {
            hermiticity: base.hermiticity * factor,
            psd: base.psd * factor,
            reconstruction: base.reconstruction * factor,
            scale: factor,
            ..base
        }
    }

    /// Scale an arbitrary comparison bound by the configured factor.
    pub fn bound(&self, tol: f64) -> f64 {
        tol * self.scale
    }
}
