use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{Band, Behavior, ScenarioConfig};
use crate::error::{Error, Result};
use crate::metrics::{MetricKind, MetricState, Rating, TrustValue};
use crate::rng::{self, SimRng};

#[derive(Debug, Clone, PartialEq)]
pub struct Agent {
    pub id: usize,
    pub behavior: Behavior,
    pub state: MetricState,
    pub joined_at: u64,
    /// Tasks delegated to this agent so far.
    pub delegated: u64,
}

/// A work unit created during one tick.
#[derive(Debug, Clone, PartialEq)]
pub struct Task {
    pub id: u64,
    pub submitter: usize,
    /// `None` when no eligible worker had capacity; the task expires.
    pub assignee: Option<usize>,
    pub rating: Option<Rating>,
}

/// Mean reputation of one agent type after `tick` completed ticks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogEntry {
    pub tick: u64,
    pub agent_type: Behavior,
    pub mean_reputation: f64,
    pub population: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub metric: MetricKind,
    #[serde(rename = "type")]
    pub agent_type: Behavior,
    pub mean_reputation_final: f64,
    pub mean_reputation_overall: f64,
    /// Ticks from the type's first appearance until its mean first reaches
    /// -0.5 or below.
    pub ticks_to_isolation: Option<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioResult {
    pub log: Vec<LogEntry>,
    pub summary: Vec<Summary>,
}

pub struct GridState {
    pub tick: u64,
    pub agents: Vec<Agent>,
    /// Reputation per agent id, refreshed after every rating.
    pub reputation: Vec<TrustValue>,
    /// Tasks of the most recent tick.
    pub last_tasks: Vec<Task>,
    pub log: Vec<LogEntry>,
    next_task: u64,
    rng: SimRng,
}

impl GridState {
    pub fn new(cfg: &ScenarioConfig) -> Result<Self> {
        cfg.validate()?;
        let mut state = Self {
            tick: 0,
            agents: Vec::new(),
            reputation: Vec::new(),
            last_tasks: Vec::new(),
            log: Vec::new(),
            next_task: 0,
            rng: rng::seeded(cfg.seed),
        };
        state.spawn(Behavior::Adaptive, cfg.initial_benevolent, cfg);
        state.spawn(Behavior::Egoistic, cfg.initial_egoistic, cfg);
        state.append_log();
        Ok(state)
    }

    fn spawn(&mut self, behavior: Behavior, count: usize, cfg: &ScenarioConfig) {
        for _ in 0..count {
            let id = self.agents.len();
            self.agents.push(Agent {
                id,
                behavior,
                state: MetricState::new(cfg.metric),
                joined_at: self.tick,
                delegated: 0,
            });
            self.reputation.push(cfg.metric_config.initial());
        }
    }

    pub fn population(&self, behavior: Behavior) -> usize {
        self.agents
            .iter()
            .filter(|a| a.behavior == behavior)
            .count()
    }

    pub fn is_isolated(&self, id: usize, cfg: &ScenarioConfig) -> bool {
        self.reputation[id].value() < cfg.isolation_threshold
    }

    fn append_log(&mut self) {
        for behavior in Behavior::ALL {
            let (sum, n) = self
                .agents
                .iter()
                .filter(|a| a.behavior == behavior)
                .fold((0.0, 0usize), |(s, n), a| {
                    (s + self.reputation[a.id].value(), n + 1)
                });
            if n > 0 {
                self.log.push(LogEntry {
                    tick: self.tick,
                    agent_type: behavior,
                    mean_reputation: sum / n as f64,
                    population: n,
                });
            }
        }
    }

    fn draw_rating(&mut self, behavior: Behavior, cfg: &ScenarioConfig) -> Rating {
        let band: Band = match behavior {
            Behavior::Adaptive if self.rng.gen_bool(cfg.adaptive_failure_rate) => cfg.egoistic_band,
            Behavior::Adaptive => cfg.adaptive_band,
            Behavior::Egoistic => cfg.egoistic_band,
        };
        Rating::new(self.rng.gen_range(band.lo..=band.hi)).expect("bands are validated")
    }

    /// Advances one tick.
    ///
    /// Attackers join at the start of `attack_tick`. Every task goes to the
    /// non-isolated agent (other than its submitter) with the highest
    /// reputation at the start of the tick and free capacity, lowest id
    /// first on ties. Results are then rated and folded in task order.
    pub fn step(&mut self, cfg: &ScenarioConfig) -> Result<()> {
        if self.tick >= cfg.total_ticks {
            return Err(Error::ScenarioComplete);
        }
        if cfg.attacker_count > 0 && self.tick == cfg.attack_tick {
            self.spawn(Behavior::Egoistic, cfg.attacker_count, cfg);
        }

        let n = self.agents.len();
        let mut tasks = Vec::with_capacity(cfg.tasks_per_tick);
        if n > 0 {
            let mut order: Vec<usize> = (0..n).filter(|&i| !self.is_isolated(i, cfg)).collect();
            order.sort_by(|&a, &b| {
                self.reputation[b]
                    .value()
                    .total_cmp(&self.reputation[a].value())
                    .then(a.cmp(&b))
            });
            let mut load = vec![0usize; n];
            let mut first_free = 0;
            for _ in 0..cfg.tasks_per_tick {
                let submitter = self.rng.gen_range(0..n);
                while first_free < order.len() && load[order[first_free]] >= cfg.agent_capacity {
                    first_free += 1;
                }
                let assignee = order[first_free..]
                    .iter()
                    .copied()
                    .find(|&i| i != submitter && load[i] < cfg.agent_capacity);
                if let Some(i) = assignee {
                    load[i] += 1;
                }
                tasks.push(Task {
                    id: self.next_task,
                    submitter,
                    assignee,
                    rating: None,
                });
                self.next_task += 1;
            }
        }

        for task in tasks.iter_mut() {
            let Some(worker) = task.assignee else {
                continue;
            };
            let behavior = self.agents[worker].behavior;
            let r = self.draw_rating(behavior, cfg);
            let agent = &mut self.agents[worker];
            agent.state.record(r, &cfg.metric_config);
            agent.delegated += 1;
            self.reputation[worker] = agent.state.trust(&cfg.metric_config);
            task.rating = Some(r);
        }

        self.last_tasks = tasks;
        self.tick += 1;
        self.append_log();
        Ok(())
    }

    pub fn is_complete(&self, cfg: &ScenarioConfig) -> bool {
        self.tick >= cfg.total_ticks
    }
}

/// Consumes a state and returns it advanced by one tick.
pub fn step(mut state: GridState, cfg: &ScenarioConfig) -> Result<GridState> {
    state.step(cfg)?;
    Ok(state)
}

fn summarize(log: &[LogEntry], cfg: &ScenarioConfig) -> Vec<Summary> {
    Behavior::ALL
        .iter()
        .filter_map(|&behavior| {
            let entries: Vec<&LogEntry> = log.iter().filter(|e| e.agent_type == behavior).collect();
            let last = entries.last()?;
            let overall =
                entries.iter().map(|e| e.mean_reputation).sum::<f64>() / entries.len() as f64;
            let first_tick = entries[0].tick;
            let ticks_to_isolation = entries
                .iter()
                .find(|e| e.mean_reputation <= -0.5)
                .map(|e| e.tick - first_tick);
            Some(Summary {
                metric: cfg.metric,
                agent_type: behavior,
                mean_reputation_final: last.mean_reputation,
                mean_reputation_overall: overall,
                ticks_to_isolation,
            })
        })
        .collect()
}

/// Runs all `total_ticks` ticks.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<ScenarioResult> {
    let mut state = GridState::new(cfg)?;
    while !state.is_complete(cfg) {
        state.step(cfg)?;
    }
    let summary = summarize(&state.log, cfg);
    Ok(ScenarioResult {
        log: state.log,
        summary,
    })
}
