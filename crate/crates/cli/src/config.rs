//! Run configuration: a TOML file whose defaults reproduce the reference
//! scenario (433 MHz, 1 kW, 6 dBi antennas, 80 m square, 5 m strips, 10 m/s).

use std::path::Path;

use serde::{Deserialize, Serialize};
use wpt_core::{AreaConfig, Edge, Placement, RfParams, Trajectory};

use crate::CliError;

/// Environment variable that overrides the configured seed.
pub const SEED_ENV: &str = "WPT_SEED";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub area: AreaSection,
    #[serde(default)]
    pub rf: RfSection,
    #[serde(default = "both_edges")]
    pub trajectories: Vec<Edge>,
    #[serde(default)]
    pub placements: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resolution_m: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AreaSection {
    pub side_length_m: f64,
    pub epsilon_m: f64,
    pub speed_mps: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RfSection {
    pub tx_power_w: f64,
    pub tx_gain_dbi: f64,
    pub rx_gain_dbi: f64,
    pub frequency_hz: f64,
    pub light_speed_mps: f64,
    pub efficiency: f64,
}

fn both_edges() -> Vec<Edge> {
    vec![Edge::Lower, Edge::Upper]
}

impl Default for AreaSection {
    fn default() -> Self {
        Self { side_length_m: 80.0, epsilon_m: 5.0, speed_mps: 10.0 }
    }
}

impl Default for RfSection {
    fn default() -> Self {
        Self {
            tx_power_w: 1000.0,
            tx_gain_dbi: 6.0,
            rx_gain_dbi: 6.0,
            frequency_hz: 433e6,
            light_speed_mps: wpt_core::propagation::SPEED_OF_LIGHT_MPS,
            efficiency: 1.0,
        }
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            area: AreaSection::default(),
            rf: RfSection::default(),
            trajectories: both_edges(),
            placements: Vec::new(),
            resolution_m: None,
            seed: None,
        }
    }
}

/// A config whose numeric fields have been checked against the core types.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub area: AreaConfig,
    pub rf: RfParams,
    pub trajectories: Vec<Trajectory>,
    pub placements: Vec<Placement>,
    pub resolution_m: Option<f64>,
    pub seed: Option<u64>,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(format!("malformed config: {}", e.message())))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Config(m) => CliError::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    /// Defaults when no path is given.
    pub fn load_or_default(path: Option<&Path>) -> Result<Self, CliError> {
        path.map_or_else(|| Ok(Self::default()), Self::load)
    }

    /// Fails only for values TOML cannot hold (seeds above `i64::MAX`).
    pub fn emit(&self) -> Result<String, CliError> {
        toml::to_string(self).map_err(|e| CliError::Config(format!("cannot serialize config: {e}")))
    }

    /// Seed from `WPT_SEED` if set and parseable, else the configured one.
    pub fn effective_seed(&self) -> Option<u64> {
        std::env::var(SEED_ENV).ok().and_then(|s| s.trim().parse().ok()).or(self.seed)
    }

    pub fn resolve(&self) -> Result<Resolved, CliError> {
        let a = &self.area;
        let area = AreaConfig::new(a.side_length_m, a.epsilon_m, a.speed_mps).map_err(|e| field_error("area", e))?;
        let r = &self.rf;
        let rf = RfParams::with_all(r.tx_power_w, r.tx_gain_dbi, r.rx_gain_dbi, r.frequency_hz, r.light_speed_mps, r.efficiency)
            .map_err(|e| field_error("rf", e))?;

        if self.trajectories.is_empty() {
            return Err(CliError::Config("trajectories: at least one edge is required".into()));
        }
        for (i, edge) in self.trajectories.iter().enumerate() {
            if self.trajectories[..i].contains(edge) {
                return Err(CliError::Config(format!("trajectories[{i}]: duplicate edge {edge:?}")));
            }
        }
        let trajectories = self.trajectories.iter().map(|&edge| Trajectory { edge }).collect();

        let placements = self
            .placements
            .iter()
            .enumerate()
            .map(|(i, &[a, b])| {
                if a.is_finite() && b.is_finite() {
                    Ok(Placement::new(a, b))
                } else {
                    Err(CliError::Config(format!("placements[{i}]: coordinates must be finite (got [{a}, {b}])")))
                }
            })
            .collect::<Result<_, _>>()?;

        if let Some(res) = self.resolution_m {
            if !(res.is_finite() && res > 0.0) {
                return Err(CliError::Config(format!("resolution_m: must be positive and finite (got {res})")));
            }
        }

        Ok(Resolved {
            area,
            rf,
            trajectories,
            placements,
            resolution_m: self.resolution_m,
            seed: self.effective_seed(),
        })
    }
}

fn field_error(section: &str, err: wpt_core::Error) -> CliError {
    match err {
        wpt_core::Error::InvalidParameter { field, reason } => CliError::Config(format!("{section}.{field}: {reason}")),
        other => CliError::Config(format!("{section}: {other}")),
    }
}
