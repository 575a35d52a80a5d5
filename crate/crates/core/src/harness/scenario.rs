//! Scenario configuration.
//!
//! Scenarios are TOML documents:
//!
//! ```toml
//! seed = 7
//! trials_per_user = 1000
//! # pattern_file = "pattern.csv"     # optional, relative to the config file
//! # pattern_reference_deg = 0.0
//!
//! [generator]                         # and/or explicit [[users]] entries
//! count = 100
//! distance_m = [3.0, 40.0]
//! path_loss_exponent = 3.0
//! reference_loss_db = 40.0
//! sector_deg = [-60.0, 60.0]
//! spread_deg = [26.0, 26.0]
//! taps = [1.0, 0.5, 0.25]
//!
//! [[users]]
//! id = "desk-1"
//! path_loss_db = 72.0
//! mean_aod_deg = 15.0
//! spread_deg = 26.0
//! taps = [1.0]
//!
//! [sweep]
//! xpd_db = [3, 5, 10, 20, 30]
//! spread_deg = 26.0                   # Laplacian spread for the spacing table
//!
//! [link]                              # optional; defaults shown
//! effective_bandwidth_hz = 8.4e6
//! overhead_fraction = 0.2522
//! max_spectral_efficiency = 5.0
//! noise_density_dbm_hz = -174.0
//! ```

use std::collections::HashSet;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use thiserror::Error;

use super::users::{generate_users, GeneratorBounds};
use crate::chanmodel::{check_tap_powers, substream};
use crate::link::LinkParams;
use crate::pattern::{PatternError, RadiationPattern};

/// Substream reserved for population generation; users take streams `0..n`.
pub const GENERATOR_STREAM: u64 = u64::MAX;

pub const DEFAULT_TRIALS_PER_USER: usize = 1000;
pub const DEFAULT_TABLE_SPREAD_DEG: f64 = 26.0;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("{0}")]
    Syntax(String),
    #[error("missing required {0}")]
    Missing(&'static str),
    #[error("{key}: {message}")]
    Range { key: String, message: String },
    #[error("duplicate user id {0:?}")]
    DuplicateUser(String),
    #[error("pattern file {path}: {source}")]
    Pattern { path: PathBuf, source: PatternError },
    #[error("pattern file {path}: {source}")]
    PatternIo { path: PathBuf, source: std::io::Error },
}

fn range(key: impl Into<String>, message: impl Into<String>) -> ScenarioError {
    ScenarioError::Range { key: key.into(), message: message.into() }
}

/// One mobile.
#[derive(Debug, Clone, PartialEq)]
pub struct User {
    pub id: String,
    pub path_loss_db: f64,
    /// Radians.
    pub mean_aod: f64,
    /// Laplacian angle spread, radians.
    pub spread: f64,
    pub taps: Vec<f64>,
}

impl User {
    pub fn validate(&self, key: &str) -> Result<(), ScenarioError> {
        if !(self.path_loss_db.is_finite() && self.path_loss_db >= 0.0) {
            return Err(range(format!("{key}.path_loss_db"), format!("{} must be finite and >= 0", self.path_loss_db)));
        }
        if !self.mean_aod.is_finite() {
            return Err(range(format!("{key}.mean_aod_deg"), "must be finite"));
        }
        if !(self.spread.is_finite() && self.spread > 0.0) {
            return Err(range(format!("{key}.spread_deg"), format!("{} must be positive", self.spread.to_degrees())));
        }
        check_tap_powers(&self.taps).map_err(|e| range(format!("{key}.taps"), e.to_string()))?;
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct Scenario {
    pub users: Vec<User>,
    pub xpd_sweep: Vec<f64>,
    pub pattern_file: Option<PathBuf>,
    pub pattern: Option<RadiationPattern>,
    /// Azimuth (radians) at which a loaded pattern is rescaled to each XPD.
    pub pattern_reference: f64,
    /// Laplacian law used for the spacing table and model iii.
    pub table_spread: f64,
    pub table_mean_aod: f64,
    pub link: LinkParams,
    pub seed: u64,
    pub trials_per_user: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    seed: Option<u64>,
    trials_per_user: Option<i64>,
    pattern_file: Option<String>,
    pattern_reference_deg: Option<f64>,
    generator: Option<RawGenerator>,
    users: Option<Vec<RawUser>>,
    sweep: Option<RawSweep>,
    link: Option<RawLink>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGenerator {
    count: i64,
    distance_m: Option<[f64; 2]>,
    path_loss_exponent: Option<f64>,
    reference_loss_db: Option<f64>,
    reference_distance_m: Option<f64>,
    sector_deg: Option<[f64; 2]>,
    spread_deg: Option<[f64; 2]>,
    taps: Option<Vec<f64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawUser {
    id: String,
    path_loss_db: f64,
    mean_aod_deg: Option<f64>,
    spread_deg: Option<f64>,
    taps: Option<Vec<f64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    xpd_db: Vec<f64>,
    spread_deg: Option<f64>,
    mean_aod_deg: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLink {
    effective_bandwidth_hz: Option<f64>,
    overhead_fraction: Option<f64>,
    max_spectral_efficiency: Option<f64>,
    noise_density_dbm_hz: Option<f64>,
}

/// Reads a scenario file; a relative `pattern_file` is resolved against the
/// file's directory.
pub fn load_scenario(path: &Path) -> Result<Scenario, ScenarioError> {
    let source = std::fs::read_to_string(path)
        .map_err(|e| ScenarioError::Syntax(format!("cannot read {}: {e}", path.display())))?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    parse_scenario(&source, base)
}

/// Parses and validates scenario text. `base_dir` anchors relative paths.
pub fn parse_scenario(source: &str, base_dir: &Path) -> Result<Scenario, ScenarioError> {
    let raw: RawConfig = toml::from_str(source).map_err(|e| ScenarioError::Syntax(e.to_string()))?;

    let seed = raw.seed.ok_or(ScenarioError::Missing("key `seed`"))?;
    let trials_per_user = match raw.trials_per_user {
        None => DEFAULT_TRIALS_PER_USER,
        Some(n) if n >= 1 => n as usize,
        Some(n) => return Err(range("trials_per_user", format!("{n} must be >= 1"))),
    };

    let link = parse_link(raw.link)?;

    let sweep = raw.sweep.ok_or(ScenarioError::Missing("section [sweep]"))?;
    if sweep.xpd_db.is_empty() {
        return Err(range("sweep.xpd_db", "at least one XPD value is required"));
    }
    for (i, &x) in sweep.xpd_db.iter().enumerate() {
        // +inf (no leakage) is allowed.
        if x.is_nan() || x == f64::NEG_INFINITY {
            return Err(range(format!("sweep.xpd_db[{i}]"), format!("{x} is not a valid XPD")));
        }
    }
    let table_spread_deg = sweep.spread_deg.unwrap_or(DEFAULT_TABLE_SPREAD_DEG);
    if !(table_spread_deg.is_finite() && table_spread_deg > 0.0) {
        return Err(range("sweep.spread_deg", format!("{table_spread_deg} must be positive")));
    }
    let table_mean_deg = sweep.mean_aod_deg.unwrap_or(0.0);
    if !table_mean_deg.is_finite() {
        return Err(range("sweep.mean_aod_deg", "must be finite"));
    }

    if raw.generator.is_none() && raw.users.is_none() {
        return Err(ScenarioError::Missing("section [generator] or [[users]]"));
    }
    let mut users = Vec::new();
    for (i, u) in raw.users.unwrap_or_default().into_iter().enumerate() {
        let user = User {
            id: u.id,
            path_loss_db: u.path_loss_db,
            mean_aod: u.mean_aod_deg.unwrap_or(0.0).to_radians(),
            spread: u.spread_deg.unwrap_or(DEFAULT_TABLE_SPREAD_DEG).to_radians(),
            taps: u.taps.unwrap_or_else(|| vec![1.0]),
        };
        user.validate(&format!("users[{i}]"))?;
        users.push(user);
    }
    if let Some(g) = raw.generator {
        if g.count < 1 {
            return Err(range("generator.count", format!("{} must be >= 1", g.count)));
        }
        let defaults = GeneratorBounds::default();
        let bounds = GeneratorBounds {
            distance_m: g.distance_m.unwrap_or(defaults.distance_m),
            path_loss_exponent: g.path_loss_exponent.unwrap_or(defaults.path_loss_exponent),
            reference_loss_db: g.reference_loss_db.unwrap_or(defaults.reference_loss_db),
            reference_distance_m: g.reference_distance_m.unwrap_or(defaults.reference_distance_m),
            sector_deg: g.sector_deg.unwrap_or(defaults.sector_deg),
            spread_deg: g.spread_deg.unwrap_or(defaults.spread_deg),
            taps: g.taps.unwrap_or(defaults.taps),
        };
        let mut rng = substream(seed, GENERATOR_STREAM);
        users.extend(generate_users(g.count as usize, &mut rng, &bounds)?);
    }
    if users.is_empty() {
        return Err(range("users", "at least one user is required"));
    }
    let mut seen = HashSet::new();
    for u in &users {
        if !seen.insert(u.id.as_str()) {
            return Err(ScenarioError::DuplicateUser(u.id.clone()));
        }
    }

    let pattern_reference_deg = raw.pattern_reference_deg.unwrap_or(0.0);
    if !pattern_reference_deg.is_finite() {
        return Err(range("pattern_reference_deg", "must be finite"));
    }
    let (pattern_file, pattern) = match raw.pattern_file {
        None => (None, None),
        Some(p) => {
            let path = base_dir.join(p);
            let text = std::fs::read_to_string(&path)
                .map_err(|source| ScenarioError::PatternIo { path: path.clone(), source })?;
            let pattern =
                RadiationPattern::parse(&text).map_err(|source| ScenarioError::Pattern { path: path.clone(), source })?;
            (Some(path), Some(pattern))
        }
    };

    Ok(Scenario {
        users,
        xpd_sweep: sweep.xpd_db,
        pattern_file,
        pattern,
        pattern_reference: pattern_reference_deg.to_radians(),
        table_spread: table_spread_deg.to_radians(),
        table_mean_aod: table_mean_deg.to_radians(),
        link,
        seed,
        trials_per_user,
    })
}

fn parse_link(raw: Option<RawLink>) -> Result<LinkParams, ScenarioError> {
    let d = LinkParams::default();
    let Some(raw) = raw else { return Ok(d) };
    let link = LinkParams {
        effective_bandwidth: raw.effective_bandwidth_hz.unwrap_or(d.effective_bandwidth),
        overhead_fraction: raw.overhead_fraction.unwrap_or(d.overhead_fraction),
        max_spectral_efficiency: raw.max_spectral_efficiency.unwrap_or(d.max_spectral_efficiency),
        noise_density: raw.noise_density_dbm_hz.unwrap_or(d.noise_density),
    };
    if !(link.effective_bandwidth.is_finite() && link.effective_bandwidth > 0.0) {
        return Err(range("link.effective_bandwidth_hz", format!("{} must be positive", link.effective_bandwidth)));
    }
    if !(0.0..1.0).contains(&link.overhead_fraction) {
        return Err(range("link.overhead_fraction", format!("{} outside [0, 1)", link.overhead_fraction)));
    }
    if !(link.max_spectral_efficiency.is_finite() && link.max_spectral_efficiency > 0.0) {
        return Err(range(
            "link.max_spectral_efficiency",
            format!("{} must be positive", link.max_spectral_efficiency),
        ));
    }
    if !link.noise_density.is_finite() {
        return Err(range("link.noise_density_dbm_hz", "must be finite"));
    }
    Ok(link)
}
