//! Random channel generation for the dual-polarized 2×2 link.
//!
//! Three constructions are provided, all driven by the same i.i.d. Rayleigh
//! draw ([`FadingDraw`]):
//!
//! * [`build_effective`]: the co-polarized channel `H` plus the
//!   cross-polarized leakage `G`, `H_eff = H + G`, where column `t` of `G`
//!   reuses the fading of the opposite port `t′`;
//! * [`kronecker_effective`]: `H_eff = D·R^{1/2}` with `D[r][t] = √α_t·h_rt`;
//! * [`multitap_effective`]: a tapped-delay-line sum
//!   `Σ_ℓ √(p_ℓ/Σp)·D_ℓ·(R_ℓ^{1/2})ᵀ` with independent fading per tap.
//!
//! Generators are `ChaCha8Rng` streams so that a `(seed, stream)` pair pins
//! every draw regardless of thread scheduling.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

use crate::correlation::{matrix_sqrt_psd, CorrelationError, CorrelationMatrix};
use crate::mat2::Mat2;
use crate::pattern::Port;

/// Deterministic generator used throughout the simulator.
pub type SimRng = ChaCha8Rng;

/// Independent substream `stream` of the master `seed`.
pub fn substream(seed: u64, stream: u64) -> SimRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[derive(Debug, Error, PartialEq)]
pub enum ChannelError {
    #[error("invalid propagation gains: {0}")]
    InvalidGains(String),
    #[error("tap list is empty")]
    NoTaps,
    #[error("tap {index} has invalid power {power}")]
    InvalidTapPower { index: usize, power: f64 },
    #[error("tap powers sum to zero")]
    ZeroTapPower,
    #[error(transparent)]
    Correlation(#[from] CorrelationError),
}

/// Large-scale gains of the two ports toward one mobile.
///
/// Indexing follows the leakage convention: `beta[t']` scales the fading
/// `h_rt'` that carries port `t`'s cross-polarized energy, so the XPD of port
/// `t` is `alpha[t] / beta[t']`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagationGains {
    /// Co-polarized power gain per port, path loss included.
    pub alpha: [f64; 2],
    /// Cross-polarized power gain per port, path loss included.
    pub beta: [f64; 2],
    /// Linear path loss `L ≥ 1` (kept for reporting; already in alpha/beta).
    pub path_loss: f64,
}

impl PropagationGains {
    pub fn new(alpha: [f64; 2], beta: [f64; 2], path_loss: f64) -> Result<Self, ChannelError> {
        for t in 0..2 {
            let (a, b) = (alpha[t], beta[t]);
            if !(a.is_finite() && b.is_finite() && a >= 0.0 && b >= 0.0) {
                return Err(ChannelError::InvalidGains(format!("port {}: alpha {a}, beta {b}", t + 1)));
            }
            if a + b <= 0.0 {
                return Err(ChannelError::InvalidGains(format!("port {}: alpha + beta must be positive", t + 1)));
            }
        }
        if !(path_loss.is_finite() && path_loss >= 1.0) {
            return Err(ChannelError::InvalidGains(format!("path loss {path_loss} must be >= 1")));
        }
        Ok(PropagationGains { alpha, beta, path_loss })
    }

    /// Gains for an azimuth-flat element with linear XPD `chi` on both ports
    /// and unit total (co + cross) gain, divided by the path loss.
    pub fn equal_power(chi: f64, path_loss: f64) -> Result<Self, ChannelError> {
        if !(chi > 0.0) {
            return Err(ChannelError::InvalidGains(format!("XPD {chi} must be positive")));
        }
        let (co, cross) = if chi.is_infinite() { (1.0, 0.0) } else { (chi / (chi + 1.0), 1.0 / (chi + 1.0)) };
        Self::new([co / path_loss; 2], [cross / path_loss; 2], path_loss)
    }

    /// XPD of `port`, `alpha[t] / beta[t']`; infinite when there is no leakage.
    pub fn xpd(&self, port: Port) -> f64 {
        let t = port.index();
        let b = self.beta[port.other().index()];
        if b == 0.0 {
            f64::INFINITY
        } else {
            self.alpha[t] / b
        }
    }

    /// Mean power of column `t` of `H + G`: `alpha[t] + beta[t']`.
    pub fn column_power(&self, port: Port) -> f64 {
        self.alpha[port.index()] + self.beta[port.other().index()]
    }
}

/// One i.i.d. Rayleigh draw: `h[r][t] ~ CN(0, 1)` plus the per-antenna
/// initial phases of the horizontal and vertical polarization paths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FadingDraw {
    pub h: Mat2,
    /// `[Φ^{rH}, Φ^{rV}]` per receive antenna `r`, uniform on `(-π, π)`.
    ///
    /// A circularly symmetric Gaussian already has uniform phase, so these do
    /// not change the distribution of any channel built here.
    pub phases: [[f64; 2]; 2],
}

pub fn draw_fading<R: Rng + ?Sized>(rng: &mut R) -> FadingDraw {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let mut cn = || {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re * scale, im * scale)
    };
    let h = Mat2::new(cn(), cn(), cn(), cn());
    let mut phase = || PI * (2.0 * rng.random::<f64>() - 1.0);
    let phases = [[phase(), phase()], [phase(), phase()]];
    FadingDraw { h, phases }
}

/// Per-tap contribution of a multi-tap channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TapRealization {
    pub power: f64,
    /// `D_ℓ·(R_ℓ^{1/2})ᵀ`, before the power weight.
    pub channel: Mat2,
}

/// A channel realization.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    /// Co-polarized part (or the scaled i.i.d. matrix `D` for analytic models).
    pub h: Mat2,
    /// Cross-polarized leakage; present only for [`build_effective`].
    pub g: Option<Mat2>,
    pub h_eff: Mat2,
    pub taps: Vec<TapRealization>,
}

fn scaled_iid(f: &FadingDraw, alpha: [f64; 2]) -> Mat2 {
    let s = [alpha[0].sqrt(), alpha[1].sqrt()];
    let h = &f.h.0;
    Mat2::new(h[0][0] * s[0], h[0][1] * s[1], h[1][0] * s[0], h[1][1] * s[1])
}

fn check_alpha(alpha: [f64; 2]) -> Result<(), ChannelError> {
    if alpha.iter().all(|a| a.is_finite() && *a >= 0.0) {
        Ok(())
    } else {
        Err(ChannelError::InvalidGains(format!("alpha {alpha:?}")))
    }
}

/// `H_eff = H + G` with `H[r][t] = √α_t·h_rt` and `G[r][t] = √β_t'·h_rt'`.
pub fn build_effective(gains: &PropagationGains, f: &FadingDraw) -> ChannelRealization {
    let h = scaled_iid(f, gains.alpha);
    let sb = [gains.beta[0].sqrt(), gains.beta[1].sqrt()];
    let m = &f.h.0;
    let g = Mat2::new(m[0][1] * sb[1], m[0][0] * sb[0], m[1][1] * sb[1], m[1][0] * sb[0]);
    ChannelRealization { h, g: Some(g), h_eff: h + g, taps: Vec::new() }
}

/// Kronecker model `H_eff = D·R^{1/2}` with `D[r][t] = √α_t·h_rt`.
pub fn kronecker_effective(
    f: &FadingDraw,
    alpha: [f64; 2],
    r: &CorrelationMatrix,
) -> Result<ChannelRealization, ChannelError> {
    check_alpha(alpha)?;
    let root = matrix_sqrt_psd(r)?;
    let d = scaled_iid(f, alpha);
    Ok(ChannelRealization { h: d, g: None, h_eff: d * root, taps: Vec::new() })
}

/// One tap of a tapped-delay-line channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tap {
    pub power: f64,
    pub fading: FadingDraw,
    pub correlation: CorrelationMatrix,
}

/// Validates a power-delay profile and returns its total power.
pub fn check_tap_powers(powers: &[f64]) -> Result<f64, ChannelError> {
    if powers.is_empty() {
        return Err(ChannelError::NoTaps);
    }
    for (index, &power) in powers.iter().enumerate() {
        if !(power.is_finite() && power >= 0.0) {
            return Err(ChannelError::InvalidTapPower { index, power });
        }
    }
    let total: f64 = powers.iter().sum();
    if total <= 0.0 {
        return Err(ChannelError::ZeroTapPower);
    }
    Ok(total)
}

/// `H_eff = Σ_ℓ √(p_ℓ/Σp)·D_ℓ·(R_ℓ^{1/2})ᵀ`.
pub fn multitap_effective(taps: &[Tap], alpha: [f64; 2]) -> Result<ChannelRealization, ChannelError> {
    check_alpha(alpha)?;
    let powers: Vec<f64> = taps.iter().map(|t| t.power).collect();
    let total = check_tap_powers(&powers)?;
    let mut h_eff = Mat2::zeros();
    let mut realized = Vec::with_capacity(taps.len());
    for tap in taps {
        let root = matrix_sqrt_psd(&tap.correlation)?;
        let channel = scaled_iid(&tap.fading, alpha) * root.transpose();
        h_eff = h_eff + channel.scale((tap.power / total).sqrt());
        realized.push(TapRealization { power: tap.power, channel });
    }
    let h = if taps.len() == 1 { realized[0].channel } else { h_eff };
    Ok(ChannelRealization { h, g: None, h_eff, taps: realized })
}
