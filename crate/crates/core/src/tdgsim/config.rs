use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::{MetricConfig, MetricKind};

/// Closed rating interval `[lo, hi]` sampled uniformly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Band {
    pub lo: f64,
    pub hi: f64,
}

impl Band {
    pub const fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    fn validate(&self, name: &str) -> Result<()> {
        if !(-1.0 <= self.lo && self.lo <= self.hi && self.hi <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "{name} must satisfy -1 <= lo <= hi <= 1, got [{}, {}]",
                self.lo, self.hi
            )));
        }
        Ok(())
    }
}

/// Declarative description of one simulation run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub seed: u64,
    pub metric: MetricKind,
    pub metric_config: MetricConfig,
    pub initial_benevolent: usize,
    /// Egoistic agents present from tick 0. Zero in the default scenario.
    pub initial_egoistic: usize,
    pub attack_tick: u64,
    pub attacker_count: usize,
    pub total_ticks: u64,
    pub tasks_per_tick: usize,
    /// Tasks a single agent can work on per tick.
    pub agent_capacity: usize,
    /// Agents with reputation strictly below this receive no delegations.
    pub isolation_threshold: f64,
    pub adaptive_band: Band,
    pub egoistic_band: Band,
    /// Probability that an adaptive agent delivers a bad result anyway.
    pub adaptive_failure_rate: f64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            metric: MetricKind::Wses,
            metric_config: MetricConfig::default(),
            initial_benevolent: 20,
            initial_egoistic: 0,
            attack_tick: 2_000,
            attacker_count: 20,
            total_ticks: 6_000,
            tasks_per_tick: 30,
            agent_capacity: 1,
            isolation_threshold: 0.0,
            adaptive_band: Band::new(0.7, 1.0),
            egoistic_band: Band::new(-1.0, -0.5),
            adaptive_failure_rate: 0.0,
        }
    }
}

impl ScenarioConfig {
    /// 100 benevolent agents, 100 attackers joining at tick 50,000.
    pub fn full_scale() -> Self {
        Self {
            initial_benevolent: 100,
            attack_tick: 50_000,
            attacker_count: 100,
            total_ticks: 100_000,
            tasks_per_tick: 150,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.metric_config.validate()?;
        if self.attacker_count > 0 && self.attack_tick >= self.total_ticks {
            return Err(Error::InvalidConfig(format!(
                "attack_tick {} must be before total_ticks {}",
                self.attack_tick, self.total_ticks
            )));
        }
        if self.agent_capacity == 0 {
            return Err(Error::InvalidConfig(
                "agent_capacity must be at least 1".into(),
            ));
        }
        if !(-1.0..=1.0).contains(&self.isolation_threshold) {
            return Err(Error::InvalidConfig(
                "isolation_threshold must lie in [-1, 1]".into(),
            ));
        }
        if !(0.0..=1.0).contains(&self.adaptive_failure_rate) {
            return Err(Error::InvalidConfig(
                "adaptive_failure_rate must lie in [0, 1]".into(),
            ));
        }
        self.adaptive_band.validate("adaptive_band")?;
        self.egoistic_band.validate("egoistic_band")?;
        Ok(())
    }
}
