//! Zero-forcing link abstraction: receiver weights, per-stream SINR, mapped
//! throughput and the per-user Monte Carlo over the four channel models.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use thiserror::Error;

use crate::chanmodel::{
    build_effective, check_tap_powers, draw_fading, kronecker_effective, multitap_effective, ChannelError,
    PropagationGains, Tap,
};
use crate::correlation::{dualpole_corr_exact, spatial_corr, AodDistribution, CorrelationError, CorrelationMatrix};
use crate::mat2::Mat2;
use crate::pattern::Port;

/// Channels with a spectral condition number above this are treated as
/// rank-deficient.
pub const MAX_CONDITION_NUMBER: f64 = 1e12;

#[derive(Debug, Error, PartialEq)]
pub enum LinkError {
    #[error("channel is rank-deficient (condition number {condition:e})")]
    RankDeficient { condition: f64 },
    #[error("invalid link parameter {name}: {value}")]
    InvalidParam { name: &'static str, value: f64 },
    #[error("no samples")]
    EmptySamples,
    #[error("trial count must be at least 1")]
    NoTrials,
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error(transparent)]
    Correlation(#[from] CorrelationError),
}

/// System constants of the LTE-like link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkParams {
    /// Hz.
    pub effective_bandwidth: f64,
    /// Fraction of resources spent on overhead.
    pub overhead_fraction: f64,
    /// Per-stream cap in bit/s/Hz.
    pub max_spectral_efficiency: f64,
    /// dBm/Hz.
    pub noise_density: f64,
}

impl Default for LinkParams {
    /// 1024-point FFT (8.4 MHz effective), 25.22 % overhead, 64-QAM rate 5/6,
    /// thermal noise at −174 dBm/Hz.
    fn default() -> Self {
        LinkParams {
            effective_bandwidth: 8.4e6,
            overhead_fraction: 0.2522,
            max_spectral_efficiency: 6.0 * 5.0 / 6.0,
            noise_density: -174.0,
        }
    }
}

impl LinkParams {
    pub fn validate(&self) -> Result<(), LinkError> {
        let bad = |name, value| Err(LinkError::InvalidParam { name, value });
        if !(self.effective_bandwidth.is_finite() && self.effective_bandwidth > 0.0) {
            return bad("effective_bandwidth", self.effective_bandwidth);
        }
        if !(0.0..1.0).contains(&self.overhead_fraction) {
            return bad("overhead_fraction", self.overhead_fraction);
        }
        if !(self.max_spectral_efficiency.is_finite() && self.max_spectral_efficiency > 0.0) {
            return bad("max_spectral_efficiency", self.max_spectral_efficiency);
        }
        if !self.noise_density.is_finite() {
            return bad("noise_density", self.noise_density);
        }
        Ok(())
    }

    /// Noise power over the effective bandwidth, in mW.
    pub fn noise_power_mw(&self) -> f64 {
        10f64.powf(self.noise_density / 10.0) * self.effective_bandwidth
    }

    /// Throughput with both streams at the spectral-efficiency cap.
    pub fn max_throughput(&self) -> f64 {
        self.effective_bandwidth * (1.0 - self.overhead_fraction) * 2.0 * self.max_spectral_efficiency
    }
}

/// ZF receiver: `W` with `Wᵀ = H⁻¹`.
pub fn zf_weights(h_eff: &Mat2) -> Result<Mat2, LinkError> {
    let condition = h_eff.condition_number();
    if !(condition <= MAX_CONDITION_NUMBER) {
        return Err(LinkError::RankDeficient { condition });
    }
    let inv = h_eff.inverse().ok_or(LinkError::RankDeficient { condition: f64::INFINITY })?;
    Ok(inv.transpose())
}

/// `SINR_i = 1 / (‖w_i‖²·p_n)` with `w_i` the i-th column of `W`, unit
/// (1 mW) transmit power per stream and `p_n` in mW.
pub fn sinr(w: &Mat2, params: &LinkParams) -> [f64; 2] {
    let pn = params.noise_power_mw();
    [0, 1].map(|i| {
        let norm: f64 = w.column(i).iter().map(|z| z.norm_sqr()).sum();
        1.0 / (norm * pn)
    })
}

/// `B·(1 − overhead)·Σ min(log₂(1 + SINR_i), SE_max)` in bit/s.
pub fn throughput(sinrs: &[f64], params: &LinkParams) -> f64 {
    let se: f64 = sinrs
        .iter()
        .map(|&s| (1.0 + s.max(0.0)).log2().min(params.max_spectral_efficiency))
        .sum();
    params.effective_bandwidth * (1.0 - params.overhead_fraction) * se
}

/// The four effective channel models compared by the simulator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Model {
    /// Full dual-polarized channel `H + G`.
    I,
    /// Analytic `D·R_dualpole^{1/2}` from the per-port XPDs.
    II,
    /// Multi-tap omnidirectional pair with spatial correlation `R_omni`.
    III,
    /// Analytic `H_omni·R_dualpole^{1/2}`.
    IV,
}

impl Model {
    pub const ALL: [Model; 4] = [Model::I, Model::II, Model::III, Model::IV];

    pub fn tag(self) -> &'static str {
        match self {
            Model::I => "i",
            Model::II => "ii",
            Model::III => "iii",
            Model::IV => "iv",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Model {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "i" | "1" => Ok(Model::I),
            "ii" | "2" => Ok(Model::II),
            "iii" | "3" => Ok(Model::III),
            "iv" | "4" => Ok(Model::IV),
            other => Err(format!("unknown model {other:?} (expected i, ii, iii or iv)")),
        }
    }
}

/// Outcome of one channel realization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkResult {
    pub sinr: [f64; 2],
    /// bit/s.
    pub throughput: f64,
    pub model: Model,
    /// The realization failed the condition-number guard and scored zero.
    pub rank_deficient: bool,
}

/// Everything needed to simulate one mobile under any of the four models.
#[derive(Debug, Clone, PartialEq)]
pub struct UserLink {
    /// Dual-polarized gains (models i, ii).
    pub gains: PropagationGains,
    /// Per-element gain of the omnidirectional pair (models iii, iv).
    pub omni_gain: f64,
    /// Power-delay profile (model iii).
    pub tap_powers: Vec<f64>,
    /// Departure-angle law for the omnidirectional pair (model iii).
    pub aod: AodDistribution,
    /// Element spacing of the omnidirectional pair in wavelengths (model iii).
    pub spacing: f64,
}

impl UserLink {
    /// `R_dualpole` from the XPDs implied by the dual-polarized gains.
    pub fn dualpole_correlation(&self) -> Result<CorrelationMatrix, CorrelationError> {
        dualpole_corr_exact(self.gains.xpd(Port::One), self.gains.xpd(Port::Two))
    }

    /// `R_omni` of the element pair.
    pub fn omni_correlation(&self) -> Result<CorrelationMatrix, CorrelationError> {
        CorrelationMatrix::new(spatial_corr(self.spacing, &self.aod, 1.0))
    }
}

fn score(h_eff: &Mat2, model: Model, params: &LinkParams) -> LinkResult {
    match zf_weights(h_eff) {
        Ok(w) => {
            let s = sinr(&w, params);
            LinkResult { sinr: s, throughput: throughput(&s, params), model, rank_deficient: false }
        }
        Err(_) => LinkResult { sinr: [0.0; 2], throughput: 0.0, model, rank_deficient: true },
    }
}

/// Runs `n_trials` independent realizations of `model` for one user through
/// ZF → SINR → throughput. Rank-deficient realizations are recorded as
/// zero-throughput samples.
///
/// Models i, ii and iv consume one fading draw per trial in the same order,
/// so they see common random numbers for a given generator state.
pub fn evaluate_user<R: Rng + ?Sized>(
    user: &UserLink,
    model: Model,
    rng: &mut R,
    n_trials: usize,
    params: &LinkParams,
) -> Result<Vec<LinkResult>, LinkError> {
    if n_trials == 0 {
        return Err(LinkError::NoTrials);
    }
    params.validate()?;
    let mut out = Vec::with_capacity(n_trials);
    match model {
        Model::I => {
            for _ in 0..n_trials {
                let c = build_effective(&user.gains, &draw_fading(rng));
                out.push(score(&c.h_eff, model, params));
            }
        }
        Model::II => {
            let r = user.dualpole_correlation()?;
            let alpha = [Port::One, Port::Two].map(|p| user.gains.column_power(p));
            for _ in 0..n_trials {
                let c = kronecker_effective(&draw_fading(rng), alpha, &r)?;
                out.push(score(&c.h_eff, model, params));
            }
        }
        Model::III => {
            check_tap_powers(&user.tap_powers)?;
            let r = user.omni_correlation()?;
            let alpha = [user.omni_gain; 2];
            let mut taps = Vec::with_capacity(user.tap_powers.len());
            for _ in 0..n_trials {
                taps.clear();
                taps.extend(
                    user.tap_powers.iter().map(|&power| Tap { power, fading: draw_fading(rng), correlation: r }),
                );
                let c = multitap_effective(&taps, alpha)?;
                out.push(score(&c.h_eff, model, params));
            }
        }
        Model::IV => {
            let r = user.dualpole_correlation()?;
            let alpha = [user.omni_gain; 2];
            for _ in 0..n_trials {
                let c = kronecker_effective(&draw_fading(rng), alpha, &r)?;
                out.push(score(&c.h_eff, model, params));
            }
        }
    }
    Ok(out)
}

/// Empirical CDF: samples sorted ascending with probabilities `i/N`.
pub fn cdf(samples: &[f64]) -> Result<Vec<(f64, f64)>, LinkError> {
    if samples.is_empty() {
        return Err(LinkError::EmptySamples);
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    Ok(sorted.into_iter().enumerate().map(|(i, x)| (x, (i + 1) as f64 / n)).collect())
}

pub fn mean_throughput(results: &[LinkResult]) -> f64 {
    if results.is_empty() {
        return 0.0;
    }
    results.iter().map(|r| r.throughput).sum::<f64>() / results.len() as f64
}
