use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;

use super::{bessel_j0, CorrelationError, GaussLegendre};
use crate::pattern::wrap_angle;

/// Angle-of-departure law in the azimuth plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AodDistribution {
    /// Uniform over the full turn.
    Isotropic,
    /// Laplacian power-azimuth spectrum
    /// `p(φ) ∝ exp(−√2·|φ − mean|/spread) / (√2·spread)`, truncated to
    /// `[−π, π]` and renormalised.
    Laplacian { mean: f64, spread: f64 },
}

impl AodDistribution {
    /// Laplacian law; `mean` is wrapped into `[-π, π)`.
    pub fn laplacian(mean: f64, spread: f64) -> Result<Self, CorrelationError> {
        if !(spread.is_finite() && spread > 0.0) {
            return Err(CorrelationError::InvalidSpread(spread));
        }
        if !mean.is_finite() {
            return Err(CorrelationError::Invalid(format!("mean AoD {mean} is not finite")));
        }
        Ok(AodDistribution::Laplacian { mean: wrap_angle(mean), spread })
    }

    /// Probability density at `phi`, zero outside `[-π, π]`.
    pub fn density(&self, phi: f64) -> f64 {
        if !(-PI..=PI).contains(&phi) {
            return 0.0;
        }
        match *self {
            AodDistribution::Isotropic => 1.0 / (2.0 * PI),
            AodDistribution::Laplacian { mean, spread } => {
                laplacian_kernel(phi - mean, spread) / laplacian_mass(mean, spread)
            }
        }
    }
}

fn laplacian_kernel(offset: f64, spread: f64) -> f64 {
    (-SQRT_2 * offset.abs() / spread).exp() / (SQRT_2 * spread)
}

/// Mass of the untruncated Laplacian inside `[-π, π]`.
fn laplacian_mass(mean: f64, spread: f64) -> f64 {
    let tail = |len: f64| 0.5 * (1.0 - (-SQRT_2 * len / spread).exp());
    tail(PI - mean) + tail(PI + mean)
}

/// Spatial correlation `E_φ[exp(−j·k·d·sin φ)]` between two elements spaced
/// `d` apart, with `k = 2π / wavelength`.
///
/// Isotropic departures give `J₀(kd)`; the Laplacian law is integrated
/// numerically with composite Gauss–Legendre, split at the density peak.
pub fn spatial_corr(d: f64, dist: &AodDistribution, wavelength: f64) -> Complex64 {
    let kd = 2.0 * PI * d / wavelength;
    if kd == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    match *dist {
        AodDistribution::Isotropic => Complex64::new(bessel_j0(kd), 0.0),
        AodDistribution::Laplacian { mean, spread } => laplacian_corr(kd, mean, spread),
    }
}

fn laplacian_corr(kd: f64, mean: f64, spread: f64) -> Complex64 {
    let rule = GaussLegendre::sixteen();
    // Resolve both the carrier oscillation and the exponential decay.
    let rate = kd.max(SQRT_2 / spread).max(1.0);
    let integrand = |phi: f64| Complex64::from_polar(laplacian_kernel(phi - mean, spread), -kd * phi.sin());
    let mut total = Complex64::new(0.0, 0.0);
    for (a, b) in [(-PI, mean), (mean, PI)] {
        let len = b - a;
        if len <= 0.0 {
            continue;
        }
        let panels = (len * rate / 1.5).ceil() as usize + 2;
        total += rule.integrate(a, b, panels, integrand);
    }
    let rho = total / laplacian_mass(mean, spread);
    // Quadrature noise must not push |ρ| past 1.
    let mag = rho.norm();
    if mag > 1.0 {
        rho / mag
    } else {
        rho
    }
}
