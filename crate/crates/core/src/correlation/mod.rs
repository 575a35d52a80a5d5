//! Transmit-side correlation of the 2×2 channel.
//!
//! Two sources of correlation are modelled:
//!
//! * polarization leakage between the two ports of a collocated dual-polarized
//!   element, set by the XPD of each port in the departure direction
//!   ([`dualpole_corr_exact`], [`dualpole_corr_approx`]);
//! * spatial correlation between two omnidirectional elements a distance `d`
//!   apart, set by the angle-of-departure law ([`spatial_corr`]).
//!
//! [`equivalent_spacing`] maps one onto the other: the element spacing whose
//! spatial correlation magnitude equals a given dual-polarized correlation.

mod bessel;
mod quadrature;
mod spacing;
mod spatial;

use num_complex::Complex64;
use thiserror::Error;

use crate::mat2::Mat2;

pub use bessel::{bessel_j0, J0_FIRST_ZERO};
pub use quadrature::GaussLegendre;
pub use spacing::{equivalent_spacing, SpacingQuery};
pub use spatial::{spatial_corr, AodDistribution};

/// Eigenvalues below this are treated as negative.
pub const PSD_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum CorrelationError {
    #[error("XPD must be positive, got {0}")]
    NonPositiveXpd(f64),
    #[error("invalid correlation matrix: {0}")]
    Invalid(String),
    #[error("correlation matrix is not positive semidefinite (smallest eigenvalue {0:e})")]
    NotPsd(f64),
    #[error("angle spread must be positive and finite, got {0}")]
    InvalidSpread(f64),
    #[error("target correlation must lie in (0, 1], got {0}")]
    InvalidTarget(f64),
    #[error("no spacing reaches |rho| = {target}; achievable range is [{min_rho}, 1]")]
    NoSolution { target: f64, min_rho: f64 },
    #[error("wavelength must be positive and finite, got {0}")]
    InvalidWavelength(f64),
}

/// Hermitian 2×2 correlation matrix with unit diagonal,
/// `R = [[1, ρ], [ρ*, 1]]` with `|ρ| ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationMatrix {
    rho: Complex64,
}

impl CorrelationMatrix {
    pub fn identity() -> Self {
        CorrelationMatrix { rho: Complex64::new(0.0, 0.0) }
    }

    /// Builds `[[1, ρ], [ρ*, 1]]`. Magnitudes within [`PSD_TOLERANCE`] above 1
    /// are clamped onto the unit circle.
    pub fn new(rho: Complex64) -> Result<Self, CorrelationError> {
        if !(rho.re.is_finite() && rho.im.is_finite()) {
            return Err(CorrelationError::Invalid(format!("non-finite coefficient {rho}")));
        }
        let mag = rho.norm();
        if 1.0 - mag < -PSD_TOLERANCE {
            return Err(CorrelationError::NotPsd(1.0 - mag));
        }
        let rho = if mag > 1.0 { rho / mag } else { rho };
        Ok(CorrelationMatrix { rho })
    }

    pub fn real(rho: f64) -> Result<Self, CorrelationError> {
        Self::new(Complex64::new(rho, 0.0))
    }

    /// Validates a general matrix against the type invariants.
    pub fn from_matrix(m: &Mat2) -> Result<Self, CorrelationError> {
        if !m.is_finite() {
            return Err(CorrelationError::Invalid("non-finite entry".into()));
        }
        for i in 0..2 {
            if m.get(i, i) != Complex64::new(1.0, 0.0) {
                return Err(CorrelationError::Invalid(format!("diagonal entry {i} is {}", m.get(i, i))));
            }
        }
        if (m.get(0, 1) - m.get(1, 0).conj()).norm() > PSD_TOLERANCE {
            return Err(CorrelationError::Invalid("matrix is not Hermitian".into()));
        }
        Self::new(m.get(0, 1))
    }

    /// Upper off-diagonal coefficient `ρ = R[0][1]`.
    pub fn rho(&self) -> Complex64 {
        self.rho
    }

    pub fn matrix(&self) -> Mat2 {
        let one = Complex64::new(1.0, 0.0);
        Mat2::new(one, self.rho, self.rho.conj(), one)
    }

    /// Eigenvalues `(1 − |ρ|, 1 + |ρ|)`.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let m = self.rho.norm();
        (1.0 - m, 1.0 + m)
    }
}

fn check_xpd(chi: f64) -> Result<(), CorrelationError> {
    if chi > 0.0 {
        Ok(())
    } else {
        Err(CorrelationError::NonPositiveXpd(chi))
    }
}

/// Effective transmit correlation of a dual-polarized port pair with linear
/// XPDs `chi1`, `chi2`.
///
/// The leakage coupling `C = [[1, 1/√χ₁], [1/√χ₂, 1]]` gives `CᴴC`, which is
/// normalised to unit diagonal:
///
/// `ρ = (1/√χ₁ + 1/√χ₂) / √((1 + 1/χ₁)(1 + 1/χ₂))`,
///
/// i.e. `2√χ/(χ+1)` for equal XPDs. `χ = +∞` (no leakage) gives `R = I`.
pub fn dualpole_corr_exact(chi1: f64, chi2: f64) -> Result<CorrelationMatrix, CorrelationError> {
    check_xpd(chi1)?;
    check_xpd(chi2)?;
    let (l1, l2) = (chi1.recip(), chi2.recip());
    let rho = (l1.sqrt() + l2.sqrt()) / ((1.0 + l1) * (1.0 + l2)).sqrt();
    CorrelationMatrix::real(rho.min(1.0))
}

/// High-XPD approximation `[[1, 2/√χ₁], [2/√χ₂, 1]]`.
///
/// The off-diagonals are clamped at 1; `high_xpd_valid` is false when either
/// XPD is below 4 (where the unclamped value exceeds 1). The matrix is only
/// Hermitian for equal XPDs, so it is kept as a separate type.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproxDualpole {
    pub rho12: f64,
    pub rho21: f64,
    pub high_xpd_valid: bool,
}

impl ApproxDualpole {
    /// The approximation as a [`CorrelationMatrix`], defined when both
    /// off-diagonals agree.
    pub fn correlation(&self) -> Result<CorrelationMatrix, CorrelationError> {
        if self.rho12 != self.rho21 {
            return Err(CorrelationError::Invalid(format!(
                "approximate matrix is not Hermitian ({} vs {})",
                self.rho12, self.rho21
            )));
        }
        CorrelationMatrix::real(self.rho12)
    }
}

pub fn dualpole_corr_approx(chi1: f64, chi2: f64) -> Result<ApproxDualpole, CorrelationError> {
    check_xpd(chi1)?;
    check_xpd(chi2)?;
    let raw = |chi: f64| 2.0 / chi.sqrt();
    Ok(ApproxDualpole {
        rho12: raw(chi1).min(1.0),
        rho21: raw(chi2).min(1.0),
        high_xpd_valid: chi1 >= 4.0 && chi2 >= 4.0,
    })
}

/// Principal square root of a Hermitian PSD 2×2 matrix.
///
/// Uses `√M = (M + √det·I) / √(tr M + 2√det)`, which follows from
/// Cayley–Hamilton.
pub fn sqrt_hermitian_psd(m: &Mat2) -> Result<Mat2, CorrelationError> {
    let tr = m.trace().re;
    let det = m.det().re;
    let disc = ((tr * tr) / 4.0 - det).max(0.0).sqrt();
    let min_eig = tr / 2.0 - disc;
    if min_eig < -PSD_TOLERANCE {
        return Err(CorrelationError::NotPsd(min_eig));
    }
    let s = det.max(0.0).sqrt();
    let t = (tr + 2.0 * s).sqrt();
    if t == 0.0 {
        return Ok(Mat2::zeros());
    }
    let shifted = *m + Mat2::identity().scale(s);
    Ok(shifted.scale(t.recip()))
}

/// `R^{1/2}`, the principal square root of a correlation matrix.
pub fn matrix_sqrt_psd(r: &CorrelationMatrix) -> Result<Mat2, CorrelationError> {
    sqrt_hermitian_psd(&r.matrix())
}
