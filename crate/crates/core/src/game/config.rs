use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameters of one episode. Deserializes from JSON with every field
/// optional; `max_ticks` defaults to four times `road_length`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawConfig")]
pub struct GameConfig {
    /// Rows from the start to the finish line.
    pub road_length: u64,
    /// Rows ahead of the robot watched by each sensor pair.
    pub detection_window: u64,
    /// Distance ahead of the robot at which obstacles appear.
    pub spawn_horizon: u64,
    /// Chance per track per tick that an obstacle appears.
    pub spawn_prob: f64,
    /// No spawn within this many rows of an obstacle on the same track.
    pub min_gap: u64,
    pub max_ticks: u64,
    pub seed: u64,
}

impl Default for GameConfig {
    fn default() -> Self {
        Self {
            road_length: 100,
            detection_window: 3,
            spawn_horizon: 10,
            spawn_prob: 0.15,
            min_gap: 2,
            max_ticks: 400,
            seed: 0,
        }
    }
}

impl GameConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        if self.road_length < 1 {
            return Err(Error::Config("road_length must be at least 1".into()));
        }
        // approaching obstacles close 2 rows per tick, so a shorter window misses them
        if self.detection_window < 2 {
            return Err(Error::Config("detection_window must be at least 2".into()));
        }
        if self.spawn_horizon <= self.detection_window {
            return Err(Error::Config("spawn_horizon must exceed detection_window".into()));
        }
        if !(0.0..=1.0).contains(&self.spawn_prob) {
            return Err(Error::Config(format!("spawn_prob {} is not in [0, 1]", self.spawn_prob)));
        }
        if self.max_ticks < 1 {
            return Err(Error::Config("max_ticks must be at least 1".into()));
        }
        if i64::try_from(self.road_length.max(self.spawn_horizon)).is_err() || self.max_ticks > i64::MAX as u64 / 4 {
            return Err(Error::Config("road dimensions out of range".into()));
        }
        Ok(())
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    road_length: Option<u64>,
    detection_window: Option<u64>,
    spawn_horizon: Option<u64>,
    spawn_prob: Option<f64>,
    min_gap: Option<u64>,
    max_ticks: Option<u64>,
    seed: Option<u64>,
}

impl TryFrom<RawConfig> for GameConfig {
    type Error = Error;

    fn try_from(raw: RawConfig) -> Result<Self> {
        let d = GameConfig::default();
        let road_length = raw.road_length.unwrap_or(d.road_length);
        let config = GameConfig {
            road_length,
            detection_window: raw.detection_window.unwrap_or(d.detection_window),
            spawn_horizon: raw.spawn_horizon.unwrap_or(d.spawn_horizon),
            spawn_prob: raw.spawn_prob.unwrap_or(d.spawn_prob),
            min_gap: raw.min_gap.unwrap_or(d.min_gap),
            max_ticks: raw.max_ticks.unwrap_or_else(|| road_length.saturating_mul(4)),
            seed: raw.seed.unwrap_or(d.seed),
        };
        config.validate()?;
        Ok(config)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        GameConfig::default().validate().unwrap();
        assert_eq!(GameConfig::from_json("{}").unwrap(), GameConfig::default());
    }

    #[test]
    fn max_ticks_follows_road_length() {
        let c = GameConfig::from_json(r#"{"road_length": 30, "spawn_prob": 0.0}"#).unwrap();
        assert_eq!(c.max_ticks, 120);
        assert_eq!(c.spawn_prob, 0.0);
        let c = GameConfig::from_json(r#"{"road_length": 30, "max_ticks": 31}"#).unwrap();
        assert_eq!(c.max_ticks, 31);
    }

    #[test]
    fn rejects_invalid() {
        for bad in [
            r#"{"detection_window": 1}"#,
            r#"{"detection_window": 5, "spawn_horizon": 5}"#,
            r#"{"spawn_prob": 1.5}"#,
            r#"{"road_length": 0}"#,
            r#"{"max_ticks": 0}"#,
            r#"{"colour": "red"}"#,
            r#"{"seed": -1}"#,
            "not json",
        ] {
            assert!(matches!(GameConfig::from_json(bad), Err(Error::Config(_))), "{bad}");
        }
    }

    #[test]
    fn serializes_all_fields() {
        let v = serde_json::to_value(GameConfig::default()).unwrap();
        for key in ["road_length", "detection_window", "spawn_horizon", "spawn_prob", "min_gap", "max_ticks", "seed"] {
            assert!(v.get(key).is_some(), "{key}");
        }
    }
}
