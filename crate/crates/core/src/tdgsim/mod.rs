//! Trusted desktop grid simulation.
//!
//! Agents submit tasks every tick and delegate them to the most reputable
//! eligible worker. Workers are rated by the quality of their result and the
//! rating is folded into their reputation with the configured metric. Agents
//! whose reputation drops below the isolation threshold receive no more work,
//! but keep submitting. At `attack_tick` a group of egoistic agents joins.
//!
//! The run is single-threaded and fully determined by the scenario seed.

mod config;
mod grid;

pub use config::{Band, ScenarioConfig};
pub use grid::{run_scenario, step, Agent, GridState, LogEntry, ScenarioResult, Summary, Task};

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Behavior {
    /// Benevolent worker producing good results.
    Adaptive,
    /// Malicious worker producing bad results.
    Egoistic,
}

impl Behavior {
    pub const ALL: [Behavior; 2] = [Behavior::Adaptive, Behavior::Egoistic];

    pub fn as_str(self) -> &'static str {
        match self {
            Behavior::Adaptive => "adaptive",
            Behavior::Egoistic => "egoistic",
        }
    }
}

impl fmt::Display for Behavior {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `tick,agent_type,mean_reputation,population` rows.
pub fn log_to_csv(log: &[LogEntry]) -> String {
    let mut out = String::from("tick,agent_type,mean_reputation,population\n");
    for e in log {
        out.push_str(&format!(
            "{},{},{},{}\n",
            e.tick, e.agent_type, e.mean_reputation, e.population
        ));
    }
    out
}
