use std::f64::consts::PI;

use super::{spatial_corr, AodDistribution, CorrelationError, J0_FIRST_ZERO};

/// Scan step (in wavelengths) used to bracket the first branch of `|ρ(d)|`
/// for non-isotropic laws.
const SCAN_STEP: f64 = 0.005;
/// Give up looking for a local minimum of `|ρ(d)|` beyond this many wavelengths.
const SCAN_LIMIT: f64 = 20.0;
/// Bisection stops once the bracket is this narrow (wavelengths).
const SPACING_TOLERANCE: f64 = 1e-12;

/// Request for the element spacing that produces a given correlation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpacingQuery {
    /// Target `|ρ|` in `(0, 1]`.
    pub target_rho: f64,
    pub wavelength: f64,
    pub distribution: AodDistribution,
}

/// Smallest spacing `d ≥ 0` (in wavelengths) with `|spatial_corr(d)| = target_rho`.
///
/// `|ρ(d)|` oscillates, so the search is restricted to its first branch: for
/// isotropic departures `[0, j₀,₁/k]` where `J₀` falls monotonically to zero;
/// otherwise `[0, d_min]` with `d_min` the first local minimum of `|ρ|` found
/// by a scan. The root is then refined by bisection.
pub fn equivalent_spacing(q: &SpacingQuery) -> Result<f64, CorrelationError> {
    if !(q.target_rho > 0.0 && q.target_rho <= 1.0) {
        return Err(CorrelationError::InvalidTarget(q.target_rho));
    }
    if !(q.wavelength.is_finite() && q.wavelength > 0.0) {
        return Err(CorrelationError::InvalidWavelength(q.wavelength));
    }
    if q.target_rho == 1.0 {
        return Ok(0.0);
    }
    // Work in wavelengths.
    let mag = |d: f64| spatial_corr(d, &q.distribution, 1.0).norm();
    let excess = |d: f64| mag(d) - q.target_rho;

    let (lo, hi) = match q.distribution {
        AodDistribution::Isotropic => (0.0, J0_FIRST_ZERO / (2.0 * PI)),
        AodDistribution::Laplacian { .. } => scan_first_branch(&mag, q.target_rho)?,
    };
    Ok(bisect(excess, lo, hi))
}

/// Walks `|ρ|` outward from `d = 0` and returns a grid cell containing the
/// first crossing of `target`. Fails if a local minimum above `target` is
/// reached first.
fn scan_first_branch(mag: &impl Fn(f64) -> f64, target: f64) -> Result<(f64, f64), CorrelationError> {
    let mut prev_d = 0.0;
    let mut prev = 1.0;
    let mut lowest = 1.0f64;
    let steps = (SCAN_LIMIT / SCAN_STEP).round() as usize;
    for i in 1..=steps {
        let d = i as f64 * SCAN_STEP;
        let v = mag(d);
        if v <= target {
            return Ok((prev_d, d));
        }
        if v > prev {
            // prev_d was the first local minimum
            return Err(CorrelationError::NoSolution { target, min_rho: prev });
        }
        lowest = lowest.min(v);
        prev_d = d;
        prev = v;
    }
    Err(CorrelationError::NoSolution { target, min_rho: lowest })
}

/// Bisection for `f(lo) ≥ 0 ≥ f(hi)` (a decreasing crossing).
fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        if hi - lo <= SPACING_TOLERANCE {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
