use rayon::prelude::*;

use super::scenario::{Scenario, User};
use super::HarnessError;
use crate::chanmodel::{substream, PropagationGains};
use crate::correlation::{
    dualpole_corr_approx, dualpole_corr_exact, equivalent_spacing, AodDistribution, SpacingQuery,
};
use crate::link::{cdf, evaluate_user, mean_throughput, LinkParams, Model, UserLink};
use crate::pattern::{db_to_linear, Polarization, Port, RadiationPattern};

/// One row of the XPD / correlation / equivalent-spacing table.
#[derive(Debug, Clone, PartialEq)]
pub struct Table1Row {
    pub xpd_db: f64,
    pub rho_exact: f64,
    pub rho_approx: f64,
    /// Isotropic equivalent spacing, wavelengths. `None` when `ρ = 0`.
    pub d_iso: Option<f64>,
    /// Laplacian equivalent spacing at `spread_deg`, wavelengths. `None` when
    /// the correlation is not reachable on the first branch.
    pub d_lap: Option<f64>,
    pub spread_deg: f64,
}

/// Correlation and equivalent spacings for each XPD (equal on both ports).
pub fn table1(xpds_db: &[f64], laplacian: &AodDistribution) -> Result<Vec<Table1Row>, HarnessError> {
    let spread_deg = match laplacian {
        AodDistribution::Laplacian { spread, .. } => spread.to_degrees(),
        AodDistribution::Isotropic => f64::NAN,
    };
    xpds_db
        .iter()
        .map(|&xpd_db| {
            let chi = db_to_linear(xpd_db);
            let numerical = |e: &dyn std::fmt::Display| HarnessError::Numerical {
                context: format!("XPD {xpd_db} dB"),
                message: e.to_string(),
            };
            let rho_exact = dualpole_corr_exact(chi, chi).map_err(|e| numerical(&e))?.rho().re;
            let rho_approx = dualpole_corr_approx(chi, chi).map_err(|e| numerical(&e))?.rho12;
            let spacing = |distribution: AodDistribution| {
                if rho_exact <= 0.0 {
                    return None;
                }
                equivalent_spacing(&SpacingQuery { target_rho: rho_exact, wavelength: 1.0, distribution }).ok()
            };
            Ok(Table1Row {
                xpd_db,
                rho_exact,
                rho_approx,
                d_iso: spacing(AodDistribution::Isotropic),
                d_lap: spacing(*laplacian),
                spread_deg,
            })
        })
        .collect()
}

/// Per-user ergodic throughput CDF of one model at one XPD.
#[derive(Debug, Clone, PartialEq)]
pub struct CdfSeries {
    pub model: Model,
    pub xpd_db: f64,
    /// `(throughput bit/s, cumulative probability)`, one point per user.
    pub points: Vec<(f64, f64)>,
    /// Mean over users of the per-user mean throughput.
    pub mean_throughput: f64,
    /// Share of all realizations that failed the ZF condition guard.
    pub rank_deficient_fraction: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunMetadata {
    pub seed: u64,
    pub version: &'static str,
    pub users: usize,
    pub trials_per_user: usize,
    pub models: Vec<Model>,
    pub pattern_file: Option<String>,
    pub started_unix: u64,
    pub finished_unix: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub series: Vec<CdfSeries>,
    pub table1: Vec<Table1Row>,
    pub metadata: RunMetadata,
}

fn unix_now() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

/// Builds a user's link description at one XPD.
///
/// Without a pattern the element is azimuth-flat with unit co + cross gain;
/// with one, the pattern (already rescaled to the XPD) is sampled at the
/// user's mean departure angle. The omnidirectional pair radiates the same
/// power as the dual-polarized element.
pub fn user_link(
    user: &User,
    xpd_db: f64,
    pattern: Option<&RadiationPattern>,
    spacing: f64,
) -> Result<UserLink, HarnessError> {
    let numerical = |e: &dyn std::fmt::Display| HarnessError::Numerical {
        context: format!("user {} at XPD {xpd_db} dB", user.id),
        message: e.to_string(),
    };
    let path_loss = db_to_linear(user.path_loss_db);
    let (gains, omni_gain) = match pattern {
        None => {
            let g = PropagationGains::equal_power(db_to_linear(xpd_db), path_loss).map_err(|e| numerical(&e))?;
            (g, 1.0 / path_loss)
        }
        Some(p) => {
            let mut alpha = [0.0; 2];
            let mut beta = [0.0; 2];
            for port in Port::BOTH {
                alpha[port.index()] = p.gain_at(user.mean_aod, port, Polarization::Co) / path_loss;
                beta[port.other().index()] = p.gain_at(user.mean_aod, port, Polarization::Cross) / path_loss;
            }
            let g = PropagationGains::new(alpha, beta, path_loss).map_err(|e| numerical(&e))?;
            let omni = (p.mean_total_gain(Port::One) + p.mean_total_gain(Port::Two)) / 2.0 / path_loss;
            (g, omni)
        }
    };
    let aod = AodDistribution::laplacian(user.mean_aod, user.spread).map_err(|e| numerical(&e))?;
    Ok(UserLink { gains, omni_gain, tap_powers: user.taps.clone(), aod, spacing })
}

struct UserOutcome {
    mean: f64,
    rank_deficient: usize,
}

fn evaluate_population(
    scenario: &Scenario,
    links: &[UserLink],
    model: Model,
    params: &LinkParams,
    xpd_db: f64,
) -> Result<Vec<UserOutcome>, HarnessError> {
    links
        .par_iter()
        .enumerate()
        .map(|(i, link)| {
            // Stream per user, shared across XPDs and models.
            let mut rng = substream(scenario.seed, i as u64);
            let results = evaluate_user(link, model, &mut rng, scenario.trials_per_user, params).map_err(|e| {
                HarnessError::Numerical {
                    context: format!("user {} model {model} at XPD {xpd_db} dB", scenario.users[i].id),
                    message: e.to_string(),
                }
            })?;
            Ok(UserOutcome {
                mean: mean_throughput(&results),
                rank_deficient: results.iter().filter(|r| r.rank_deficient).count(),
            })
        })
        .collect()
}

/// Runs every (XPD, model) pair over the whole population and assembles the
/// report. Results depend only on the scenario, not on thread count.
pub fn run(scenario: &Scenario, models: &[Model]) -> Result<RunReport, HarnessError> {
    let started_unix = unix_now();
    let laplacian = AodDistribution::laplacian(scenario.table_mean_aod, scenario.table_spread)
        .map_err(|e| HarnessError::Numerical { context: "spacing table".into(), message: e.to_string() })?;
    let table = table1(&scenario.xpd_sweep, &laplacian)?;

    let mut series = Vec::new();
    for (row, &xpd_db) in table.iter().zip(&scenario.xpd_sweep) {
        let scaled = match &scenario.pattern {
            None => None,
            Some(p) => Some(p.scale_to_xpd(xpd_db, scenario.pattern_reference).map_err(|e| {
                HarnessError::Numerical { context: format!("pattern at XPD {xpd_db} dB"), message: e.to_string() }
            })?),
        };
        let spacing = if models.contains(&Model::III) {
            row.d_lap.ok_or_else(|| HarnessError::Numerical {
                context: format!("model iii at XPD {xpd_db} dB"),
                message: format!(
                    "no Laplacian spacing (spread {:.3} deg) reaches rho = {}",
                    row.spread_deg, row.rho_exact
                ),
            })?
        } else {
            0.0
        };
        let links: Vec<UserLink> = scenario
            .users
            .iter()
            .map(|u| user_link(u, xpd_db, scaled.as_ref(), spacing))
            .collect::<Result<_, _>>()?;

        for &model in models {
            let outcomes = evaluate_population(scenario, &links, model, &scenario.link, xpd_db)?;
            let means: Vec<f64> = outcomes.iter().map(|o| o.mean).collect();
            let points = cdf(&means).map_err(|e| HarnessError::Numerical {
                context: format!("model {model} at XPD {xpd_db} dB"),
                message: e.to_string(),
            })?;
            let total_trials = (outcomes.len() * scenario.trials_per_user) as f64;
            series.push(CdfSeries {
                model,
                xpd_db,
                mean_throughput: means.iter().sum::<f64>() / means.len() as f64,
                rank_deficient_fraction: outcomes.iter().map(|o| o.rank_deficient).sum::<usize>() as f64 / total_trials,
                points,
            });
        }
    }

    Ok(RunReport {
        series,
        table1: table,
        metadata: RunMetadata {
            seed: scenario.seed,
            version: env!("CARGO_PKG_VERSION"),
            users: scenario.users.len(),
            trials_per_user: scenario.trials_per_user,
            models: models.to_vec(),
            pattern_file: scenario.pattern_file.as_ref().map(|p| p.display().to_string()),
            started_unix,
            finished_unix: unix_now(),
        },
    })
}
