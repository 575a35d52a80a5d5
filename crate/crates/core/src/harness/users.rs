//! Synthetic user populations.

use rand::Rng;

use super::scenario::{ScenarioError, User};

/// Ranges for [`generate_users`].
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorBounds {
    /// Uniform distance range in metres.
    pub distance_m: [f64; 2],
    pub path_loss_exponent: f64,
    /// Path loss at the reference distance, dB.
    pub reference_loss_db: f64,
    pub reference_distance_m: f64,
    /// Mean angle-of-departure sector in degrees.
    pub sector_deg: [f64; 2],
    /// Laplacian spread range in degrees; equal bounds give a fixed spread.
    pub spread_deg: [f64; 2],
    pub taps: Vec<f64>,
}

impl Default for GeneratorBounds {
    fn default() -> Self {
        GeneratorBounds {
            distance_m: [3.0, 40.0],
            path_loss_exponent: 3.0,
            reference_loss_db: 40.0,
            reference_distance_m: 1.0,
            sector_deg: [-60.0, 60.0],
            spread_deg: [26.0, 26.0],
            taps: vec![1.0],
        }
    }
}

impl GeneratorBounds {
    /// Log-distance path loss in dB.
    pub fn path_loss_db(&self, distance_m: f64) -> f64 {
        self.reference_loss_db + 10.0 * self.path_loss_exponent * (distance_m / self.reference_distance_m).log10()
    }

    fn validate(&self) -> Result<(), ScenarioError> {
        let err = |key: &str, message: String| ScenarioError::Range { key: format!("generator.{key}"), message };
        let ordered = |r: [f64; 2]| r[0].is_finite() && r[1].is_finite() && r[0] <= r[1];
        if !(ordered(self.distance_m) && self.distance_m[0] > 0.0) {
            return Err(err("distance_m", format!("{:?} must be positive and ordered", self.distance_m)));
        }
        if !(self.path_loss_exponent.is_finite() && self.path_loss_exponent >= 0.0) {
            return Err(err("path_loss_exponent", format!("{} must be >= 0", self.path_loss_exponent)));
        }
        if !self.reference_loss_db.is_finite() {
            return Err(err("reference_loss_db", "must be finite".into()));
        }
        if !(self.reference_distance_m.is_finite() && self.reference_distance_m > 0.0) {
            return Err(err("reference_distance_m", format!("{} must be positive", self.reference_distance_m)));
        }
        if !ordered(self.sector_deg) {
            return Err(err("sector_deg", format!("{:?} must be ordered", self.sector_deg)));
        }
        if !(ordered(self.spread_deg) && self.spread_deg[0] > 0.0) {
            return Err(err("spread_deg", format!("{:?} must be positive and ordered", self.spread_deg)));
        }
        let lowest = self.path_loss_db(self.distance_m[0]);
        if lowest < 0.0 {
            return Err(err("distance_m", format!("path loss {lowest} dB at the near bound is negative")));
        }
        Ok(())
    }
}

fn uniform<R: Rng + ?Sized>(rng: &mut R, range: [f64; 2]) -> f64 {
    let u: f64 = rng.random();
    range[0] + u * (range[1] - range[0])
}

/// Draws `count` users: distance uniform in range mapped through the
/// log-distance model, mean AoD uniform in the sector, spread uniform in its
/// range. Ids are `gen-0000`, `gen-0001`, ...
pub fn generate_users<R: Rng + ?Sized>(
    count: usize,
    rng: &mut R,
    bounds: &GeneratorBounds,
) -> Result<Vec<User>, ScenarioError> {
    if count == 0 {
        return Err(ScenarioError::Range { key: "generator.count".into(), message: "must be >= 1".into() });
    }
    bounds.validate()?;
    let mut users = Vec::with_capacity(count);
    for i in 0..count {
        let distance = uniform(rng, bounds.distance_m);
        let mean = uniform(rng, bounds.sector_deg);
        let spread = uniform(rng, bounds.spread_deg);
        let user = User {
            id: format!("gen-{i:04}"),
            path_loss_db: bounds.path_loss_db(distance),
            mean_aod: mean.to_radians(),
            spread: spread.to_radians(),
            taps: bounds.taps.clone(),
        };
        user.validate("generator")?;
        users.push(user);
    }
    Ok(users)
}
