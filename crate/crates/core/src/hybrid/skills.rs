use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::{wses_trust, wses_update, MetricConfig, Rating, RatingState, TrustValue};
use crate::rng;
use crate::tdgsim::Band;

/// Per-skill WSES reputation of one agent. Skills enter the map on the first
/// informative rating for that task type.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SkillProfile {
    pub agent: String,
    pub skills: BTreeMap<String, RatingState>,
}

impl SkillProfile {
    pub fn new(agent: &str) -> Self {
        Self {
            agent: agent.to_string(),
            skills: BTreeMap::new(),
        }
    }

    pub fn trust(&self, skill: &str, cfg: &MetricConfig) -> TrustValue {
        match self.skills.get(skill) {
            Some(s) => wses_trust(*s, cfg),
            None => cfg.initial(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TypedTask {
    pub id: u64,
    pub required_skill: String,
}

/// Agent with the highest trust for the task's skill; lowest agent id wins
/// ties. `None` only for an empty pool.
pub fn match_task<'a>(
    task: &TypedTask,
    agents: &'a [SkillProfile],
    cfg: &MetricConfig,
) -> Option<&'a SkillProfile> {
    agents.iter().min_by(|a, b| {
        let ta = a.trust(&task.required_skill, cfg).value();
        let tb = b.trust(&task.required_skill, cfg).value();
        tb.total_cmp(&ta).then_with(|| a.agent.cmp(&b.agent))
    })
}

/// Folds `r` into the named skill only.
pub fn record_outcome(
    profile: &SkillProfile,
    skill: &str,
    r: Rating,
    cfg: &MetricConfig,
) -> SkillProfile {
    let mut next = profile.clone();
    if r.value() != 0.0 {
        let state = next
            .skills
            .entry(skill.to_string())
            .or_insert(RatingState::EMPTY);
        *state = wses_update(*state, r, cfg);
    }
    next
}

/// An agent with a hidden success probability per skill.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgentSpec {
    pub id: String,
    pub competence: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SpecializationConfig {
    pub seed: u64,
    pub rounds: usize,
    /// Tasks of every skill created per round.
    pub tasks_per_skill: usize,
    pub skills: Vec<String>,
    pub agents: Vec<AgentSpec>,
    pub metric: MetricConfig,
    pub success_band: Band,
    pub failure_band: Band,
    /// Trailing rounds used for the routing share.
    pub window: usize,
}

impl SpecializationConfig {
    /// Two agents, each competent at exactly one of two skills.
    pub fn complementary() -> Self {
        let skills = ["integration", "matrix-multiplication"];
        let agent = |id: &str, good: usize| AgentSpec {
            id: id.to_string(),
            competence: skills
                .iter()
                .enumerate()
                .map(|(k, s)| (s.to_string(), if k == good { 0.95 } else { 0.05 }))
                .collect(),
        };
        Self {
            seed: 11,
            rounds: 500,
            tasks_per_skill: 1,
            skills: skills.iter().map(|s| s.to_string()).collect(),
            agents: vec![agent("u_i", 0), agent("u_j", 1)],
            metric: MetricConfig::default(),
            success_band: Band::new(0.7, 1.0),
            failure_band: Band::new(-1.0, -0.5),
            window: 100,
        }
    }
}

impl Default for SpecializationConfig {
    fn default() -> Self {
        Self::complementary()
    }
}

impl SpecializationConfig {
    pub fn validate(&self) -> Result<()> {
        self.metric.validate()?;
        if self.agents.is_empty() || self.skills.is_empty() {
            return Err(Error::InvalidConfig(
                "need at least one agent and one skill".into(),
            ));
        }
        for a in &self.agents {
            for (skill, p) in &a.competence {
                if !(0.0..=1.0).contains(p) {
                    return Err(Error::InvalidConfig(format!(
                        "competence of {} on {skill} must lie in [0, 1]",
                        a.id
                    )));
                }
            }
        }
        for (name, b) in [
            ("success_band", self.success_band),
            ("failure_band", self.failure_band),
        ] {
            if !(-1.0 <= b.lo && b.lo <= b.hi && b.hi <= 1.0) {
                return Err(Error::InvalidConfig(format!("{name} must lie in [-1, 1]")));
            }
        }
        Ok(())
    }
}

/// One line of the specialization series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpecializationRow {
    pub round: usize,
    pub agent: String,
    pub skill: String,
    pub tau: f64,
    /// Tasks of this skill delegated to the agent in this round.
    pub delegated: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpecializationResult {
    pub rows: Vec<SpecializationRow>,
    /// skill -> agent -> fraction of that skill's tasks over the final window.
    pub share: BTreeMap<String, BTreeMap<String, f64>>,
    pub profiles: Vec<SkillProfile>,
}

/// Closed loop of matching, simulated outcome and per-skill update.
///
/// Each round creates `tasks_per_skill` tasks for every skill (in skill
/// order). A task succeeds with the assignee's competence for that skill and
/// is rated from `success_band`, otherwise from `failure_band`.
pub fn specialization_run(cfg: &SpecializationConfig) -> Result<SpecializationResult> {
    cfg.validate()?;
    let mut rng = rng::seeded(cfg.seed);
    let mut profiles: Vec<SkillProfile> = cfg
        .agents
        .iter()
        .map(|a| SkillProfile::new(&a.id))
        .collect();
    let index: BTreeMap<&str, usize> = cfg
        .agents
        .iter()
        .enumerate()
        .map(|(i, a)| (a.id.as_str(), i))
        .collect();
    let window_start = cfg.rounds.saturating_sub(cfg.window);
    let mut counts: BTreeMap<String, BTreeMap<String, usize>> = BTreeMap::new();
    let mut rows = Vec::with_capacity(cfg.rounds * cfg.skills.len() * cfg.agents.len());
    let mut task_id = 0u64;

    for round in 0..cfg.rounds {
        let mut delegated = vec![vec![0usize; cfg.skills.len()]; cfg.agents.len()];
        for (k, skill) in cfg.skills.iter().enumerate() {
            for _ in 0..cfg.tasks_per_skill {
                let task = TypedTask {
                    id: task_id,
                    required_skill: skill.clone(),
                };
                task_id += 1;
                let chosen = match_task(&task, &profiles, &cfg.metric).expect("pool is non-empty");
                let a = index[chosen.agent.as_str()];
                let p = cfg.agents[a].competence.get(skill).copied().unwrap_or(0.0);
                let band = if rng.gen_bool(p) {
                    cfg.success_band
                } else {
                    cfg.failure_band
                };
                let r = Rating::new(rng.gen_range(band.lo..=band.hi)).expect("bands are validated");
                profiles[a] = record_outcome(&profiles[a], skill, r, &cfg.metric);
                delegated[a][k] += 1;
                if round >= window_start {
                    *counts
                        .entry(skill.clone())
                        .or_default()
                        .entry(cfg.agents[a].id.clone())
                        .or_insert(0) += 1;
                }
            }
        }
        for (a, profile) in profiles.iter().enumerate() {
            for (k, skill) in cfg.skills.iter().enumerate() {
                rows.push(SpecializationRow {
                    round,
                    agent: profile.agent.clone(),
                    skill: skill.clone(),
                    tau: profile.trust(skill, &cfg.metric).value(),
                    delegated: delegated[a][k],
                });
            }
        }
    }

    let share = cfg
        .skills
        .iter()
        .map(|skill| {
            let per_agent = counts.get(skill).cloned().unwrap_or_default();
            let total: usize = per_agent.values().sum();
            let fractions = cfg
                .agents
                .iter()
                .map(|a| {
                    let c = per_agent.get(&a.id).copied().unwrap_or(0);
                    let f = if total == 0 {
                        0.0
                    } else {
                        c as f64 / total as f64
                    };
                    (a.id.clone(), f)
                })
                .collect();
            (skill.clone(), fractions)
        })
        .collect();

    Ok(SpecializationResult {
        rows,
        share,
        profiles,
    })
}

/// `round,agent,skill,tau,delegated` rows.
pub fn specialization_to_csv(rows: &[SpecializationRow]) -> String {
    let mut out = String::from("round,agent,skill,tau,delegated\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.round, r.agent, r.skill, r.tau, r.delegated
        ));
    }
    out
}
