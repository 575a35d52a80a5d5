//! Azimuth radiation patterns of a collocated dual-polarized port pair.
//!
//! A pattern file is plain-text CSV with one header line followed by rows
//!
//! ```text
//! azimuth_deg, port1_co_dBi, port1_cross_dBi, port2_co_dBi, port2_cross_dBi
//! ```
//!
//! Lines starting with `#` are comments. Angles are degrees, strictly
//! increasing and uniformly spaced over exactly one turn. Gains are stored
//! linearly; angles are wrapped into `[-π, π)`.

use std::f64::consts::PI;
use std::fmt;

use thiserror::Error;

/// Fewest azimuth samples accepted per port.
pub const MIN_SAMPLES: usize = 8;

/// Relative tolerance on the angular step when checking uniform sampling.
const STEP_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Error, PartialEq)]
pub enum PatternError {
    #[error("empty pattern file")]
    Empty,
    #[error("line {line}: malformed row: {reason}")]
    MalformedRow { line: usize, reason: String },
    #[error("line {line}: angle {angle_deg} deg is not greater than the previous angle")]
    NonMonotone { line: usize, angle_deg: f64 },
    #[error("line {line}: duplicate angle {angle_deg} deg")]
    DuplicateAngle { line: usize, angle_deg: f64 },
    #[error("too few samples: {found} (need at least {MIN_SAMPLES})")]
    TooFewSamples { found: usize },
    #[error("line {line}: angular step deviates from uniform spacing of {step_deg} deg")]
    NonUniform { line: usize, step_deg: f64 },
    #[error("samples span {span_deg} deg, expected exactly one full turn")]
    NotFullTurn { span_deg: f64 },
    #[error("invalid gain {value} for port {port} ({pol})")]
    InvalidGain { port: Port, pol: Polarization, value: f64 },
    #[error("infinite XPD: cross-polarization gain is zero for port {port} at {azimuth} rad")]
    InfiniteXpd { port: Port, azimuth: f64 },
    #[error("target XPD {target_db} dB unreachable for port {port} with nonnegative scale factors")]
    Unreachable { port: Port, target_db: f64 },
}

/// One of the two ports of the dual-polarized element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Port {
    One,
    Two,
}

impl Port {
    pub const BOTH: [Port; 2] = [Port::One, Port::Two];

    pub fn index(self) -> usize {
        match self {
            Port::One => 0,
            Port::Two => 1,
        }
    }

    /// The other port (`t′` for `t`).
    pub fn other(self) -> Port {
        match self {
            Port::One => Port::Two,
            Port::Two => Port::One,
        }
    }
}

impl fmt::Display for Port {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index() + 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarization {
    Co,
    Cross,
}

impl fmt::Display for Polarization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Polarization::Co => "co",
            Polarization::Cross => "cross",
        })
    }
}

/// Linear power gains of one port at one azimuth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PortGains {
    pub co: f64,
    pub cross: f64,
}

impl PortGains {
    fn get(&self, pol: Polarization) -> f64 {
        match pol {
            Polarization::Co => self.co,
            Polarization::Cross => self.cross,
        }
    }
}

/// Cross-polarization discrimination of one port in one direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Xpd {
    /// Linear co/cross power ratio.
    pub value: f64,
    pub port: Port,
    /// Radians.
    pub azimuth: f64,
}

impl Xpd {
    pub fn db(&self) -> f64 {
        10.0 * self.value.log10()
    }
}

/// Sampled azimuth cut of the co- and cross-polarized gains of both ports.
#[derive(Debug, Clone, PartialEq)]
pub struct RadiationPattern {
    azimuths: Vec<f64>,
    gains: Vec<[PortGains; 2]>,
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}

/// Wrap an angle in radians into `[-π, π)`.
pub fn wrap_angle(rad: f64) -> f64 {
    let w = (rad + PI).rem_euclid(2.0 * PI) - PI;
    // rem_euclid can round up to exactly 2π.
    if w >= PI {
        w - 2.0 * PI
    } else {
        w
    }
}

impl RadiationPattern {
    /// Builds a pattern from uniformly spaced samples starting at `start`
    /// (radians). `gains[i]` belongs to angle `start + i·2π/n`.
    pub fn from_uniform(start: f64, gains: Vec<[PortGains; 2]>) -> Result<Self, PatternError> {
        let n = gains.len();
        if n < MIN_SAMPLES {
            return Err(PatternError::TooFewSamples { found: n });
        }
        for g in &gains {
            for port in Port::BOTH {
                let pg = g[port.index()];
                for pol in [Polarization::Co, Polarization::Cross] {
                    let v = pg.get(pol);
                    if !v.is_finite() || v < 0.0 {
                        return Err(PatternError::InvalidGain { port, pol, value: v });
                    }
                }
            }
        }
        let step = 2.0 * PI / n as f64;
        let mut samples: Vec<(f64, [PortGains; 2])> = gains
            .into_iter()
            .enumerate()
            .map(|(i, g)| (wrap_angle(start + i as f64 * step), g))
            .collect();
        samples.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (azimuths, gains) = samples.into_iter().unzip();
        Ok(RadiationPattern { azimuths, gains })
    }

    /// A pattern that is constant in azimuth.
    pub fn omni(n: usize, port_gains: [PortGains; 2]) -> Result<Self, PatternError> {
        Self::from_uniform(-PI, vec![port_gains; n])
    }

    /// Parses pattern-file content (gains in dBi).
    pub fn parse(source: &str) -> Result<Self, PatternError> {
        let mut header_seen = false;
        let mut rows: Vec<(usize, f64, [PortGains; 2])> = Vec::new();
        for (idx, raw) in source.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if !header_seen {
                header_seen = true;
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != 5 {
                return Err(PatternError::MalformedRow {
                    line: line_no,
                    reason: format!("expected 5 columns, found {}", fields.len()),
                });
            }
            let mut vals = [0.0; 5];
            for (v, f) in vals.iter_mut().zip(&fields) {
                *v = f.parse::<f64>().map_err(|e| PatternError::MalformedRow {
                    line: line_no,
                    reason: format!("{f:?}: {e}"),
                })?;
                if !v.is_finite() {
                    return Err(PatternError::MalformedRow {
                        line: line_no,
                        reason: format!("non-finite value {f:?}"),
                    });
                }
            }
            if let Some(&(_, prev, _)) = rows.last() {
                if vals[0] == prev {
                    return Err(PatternError::DuplicateAngle { line: line_no, angle_deg: vals[0] });
                }
                if vals[0] < prev {
                    return Err(PatternError::NonMonotone { line: line_no, angle_deg: vals[0] });
                }
            }
            let gains = [
                PortGains { co: db_to_linear(vals[1]), cross: db_to_linear(vals[2]) },
                PortGains { co: db_to_linear(vals[3]), cross: db_to_linear(vals[4]) },
            ];
            rows.push((line_no, vals[0], gains));
        }
        if rows.is_empty() {
            return Err(PatternError::Empty);
        }
        if rows.len() < MIN_SAMPLES {
            return Err(PatternError::TooFewSamples { found: rows.len() });
        }

        let n = rows.len();
        let step = 360.0 / n as f64;
        for w in rows.windows(2) {
            if ((w[1].1 - w[0].1) - step).abs() > STEP_TOLERANCE * step {
                return Err(PatternError::NonUniform { line: w[1].0, step_deg: step });
            }
        }
        let span = rows[n - 1].1 - rows[0].1 + step;
        if (span - 360.0).abs() > STEP_TOLERANCE * 360.0 {
            return Err(PatternError::NotFullTurn { span_deg: span });
        }

        let start = rows[0].1.to_radians();
        Self::from_uniform(start, rows.into_iter().map(|r| r.2).collect())
    }

    pub fn len(&self) -> usize {
        self.azimuths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.azimuths.is_empty()
    }

    /// Sample angles in radians, ascending in `[-π, π)`.
    pub fn azimuths(&self) -> &[f64] {
        &self.azimuths
    }

    pub fn sample(&self, i: usize, port: Port) -> PortGains {
        self.gains[i][port.index()]
    }

    fn step(&self) -> f64 {
        2.0 * PI / self.len() as f64
    }

    /// Linear gain at an arbitrary azimuth, interpolated linearly in dB
    /// between the bracketing samples and periodic across ±π.
    pub fn gain_at(&self, azimuth: f64, port: Port, pol: Polarization) -> f64 {
        let n = self.len();
        let step = self.step();
        let offset = (azimuth - self.azimuths[0]).rem_euclid(2.0 * PI);
        let pos = offset / step;
        let lo = (pos.floor() as usize).min(n - 1);
        let t = pos - lo as f64;
        let g0 = self.gains[lo][port.index()].get(pol);
        if t <= 0.0 {
            return g0;
        }
        let g1 = self.gains[(lo + 1) % n][port.index()].get(pol);
        if g0 == g1 {
            return g0;
        }
        if g0 == 0.0 || g1 == 0.0 {
            // -inf dB on either side
            return 0.0;
        }
        let db = (1.0 - t) * linear_to_db(g0) + t * linear_to_db(g1);
        db_to_linear(db)
    }

    /// Co/cross gain ratio of `port` at `azimuth`.
    pub fn xpd_at(&self, azimuth: f64, port: Port) -> Result<Xpd, PatternError> {
        let cross = self.gain_at(azimuth, port, Polarization::Cross);
        if cross == 0.0 {
            return Err(PatternError::InfiniteXpd { port, azimuth });
        }
        let co = self.gain_at(azimuth, port, Polarization::Co);
        Ok(Xpd { value: co / cross, port, azimuth })
    }

    /// Periodic trapezoid integral over azimuth of one port's gain.
    pub fn integral(&self, port: Port, pol: Polarization) -> f64 {
        self.step() * self.gains.iter().map(|g| g[port.index()].get(pol)).sum::<f64>()
    }

    /// Total radiated power in the azimuth cut: co + cross, summed over ports.
    pub fn total_power(&self) -> f64 {
        Port::BOTH
            .iter()
            .map(|&p| self.integral(p, Polarization::Co) + self.integral(p, Polarization::Cross))
            .sum()
    }

    /// Azimuth-averaged co + cross gain of one port, i.e. the gain of an
    /// omnidirectional element radiating the same power.
    pub fn mean_total_gain(&self, port: Port) -> f64 {
        (self.integral(port, Polarization::Co) + self.integral(port, Polarization::Cross))
            / (2.0 * PI)
    }

    /// Rescales each port's co and cross gains by constants so that the XPD at
    /// `reference_azimuth` equals `target_db` while that port's radiated power
    /// (and therefore the total) is unchanged. Pattern shapes are preserved.
    pub fn scale_to_xpd(&self, target_db: f64, reference_azimuth: f64) -> Result<Self, PatternError> {
        let target = db_to_linear(target_db);
        let mut scales = [(1.0, 1.0); 2];
        for port in Port::BOTH {
            let co_ref = self.gain_at(reference_azimuth, port, Polarization::Co);
            let cross_ref = self.gain_at(reference_azimuth, port, Polarization::Cross);
            if !target_db.is_finite() || co_ref <= 0.0 || cross_ref <= 0.0 {
                return Err(PatternError::Unreachable { port, target_db });
            }
            let current = co_ref / cross_ref;
            let ratio = target / current;
            let co_int = self.integral(port, Polarization::Co);
            let cross_int = self.integral(port, Polarization::Cross);
            let cross_scale = (co_int + cross_int) / (ratio * co_int + cross_int);
            if !(cross_scale.is_finite() && cross_scale > 0.0) {
                return Err(PatternError::Unreachable { port, target_db });
            }
            scales[port.index()] = (ratio * cross_scale, cross_scale);
        }
        let gains = self
            .gains
            .iter()
            .map(|g| {
                [0, 1].map(|i| PortGains { co: g[i].co * scales[i].0, cross: g[i].cross * scales[i].1 })
            })
            .collect();
        Ok(RadiationPattern { azimuths: self.azimuths.clone(), gains })
    }
}
