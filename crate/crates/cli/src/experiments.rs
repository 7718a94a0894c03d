use std::collections::{BTreeMap, BTreeSet};
use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::json;

use sostrust::hybrid::{
    audience_rating, specialization_run, specialization_to_csv, HybridConfig, LedgerRecord,
    SpecializationConfig, TaggedRating,
};
use sostrust::metrics::requirements::check_all;
use sostrust::metrics::MetricConfig;
use sostrust::simtrust::{
    eval_to_csv, evaluate_dataset, mean_f1, read_jsonl, synth_corpus, Algorithm, Corpus, Dataset,
    Item, ProfileRecord, SimTrustConfig, SynthConfig, UserProfile,
};
use sostrust::tdgsim::{log_to_csv, run_scenario, ScenarioConfig};

use crate::run::{write, write_json, Experiment, Status};

fn read_records<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    read_jsonl(BufReader::new(file)).with_context(|| format!("in {}", path.display()))
}

fn resolve(base: &Path, p: &mut PathBuf) {
    if p.is_relative() {
        *p = base.join(&*p);
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CheckConfig {
    pub seed: u64,
    /// Randomized checks per requirement and metric.
    pub trials: usize,
    pub metric: MetricConfig,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            trials: 100_000,
            metric: MetricConfig::default(),
        }
    }
}

pub struct CheckMetrics;

impl Experiment for CheckMetrics {
    type Config = CheckConfig;
    const NAME: &'static str = "check-metrics";
    const SEED_KEY: &'static str = "seed";

    fn run(cfg: &CheckConfig, out: &Path) -> Result<Status> {
        let reports = check_all(&cfg.metric, cfg.trials, cfg.seed)?;
        let mut summary = serde_json::Map::new();
        let mut status = Status::Ok;
        for r in &reports {
            println!(
                "{}: r1 {} ({} witnesses), r2 {} ({} witnesses), {} trials",
                r.metric,
                r.r1.status(),
                r.r1.witnesses,
                r.r2.status(),
                r.r2.witnesses,
                r.trials
            );
            if r.metric == "wses" && r.r1.witnesses + r.r2.witnesses > 0 {
                status = Status::Witness;
            }
            summary.insert(
                r.metric.clone(),
                json!({
                    "r1": r.r1.status(),
                    "r2": r.r2.status(),
                    "trials": r.trials,
                    "details": { "r1": r.r1, "r2": r.r2 },
                }),
            );
        }
        write_json(&out.join("report.json"), &summary)?;
        Ok(status)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EvalConfig {
    /// Recommendations per user.
    pub top_n: usize,
    pub simtrust: SimTrustConfig,
    /// Used when no item/profile files are given.
    pub synthetic: SynthConfig,
    /// JSON lines of items.
    pub items: Option<PathBuf>,
    /// JSON lines of profiles.
    pub profiles: Option<PathBuf>,
    /// Items per profile kept visible when reading files; the rest are withheld.
    pub held_per_user: usize,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            top_n: 10,
            simtrust: SimTrustConfig::default(),
            synthetic: SynthConfig::default(),
            items: None,
            profiles: None,
            held_per_user: 2,
        }
    }
}

impl EvalConfig {
    fn dataset(&self) -> Result<Dataset> {
        match (&self.items, &self.profiles) {
            (None, None) => Ok(synth_corpus(&self.synthetic)?),
            (Some(items), Some(profiles)) => {
                let items: Vec<Item> = read_records(items)?;
                let profiles: Vec<ProfileRecord> = read_records(profiles)?;
                Ok(Dataset::with_holdout(
                    Corpus::new(items)?,
                    profiles,
                    self.held_per_user,
                ))
            }
            _ => bail!("items and profiles must be given together"),
        }
    }
}

pub struct EvalSimTrust;

impl Experiment for EvalSimTrust {
    type Config = EvalConfig;
    const NAME: &'static str = "eval-simtrust";
    const SEED_KEY: &'static str = "synthetic.seed";

    fn resolve_paths(cfg: &mut EvalConfig, base: &Path) {
        for p in [&mut cfg.items, &mut cfg.profiles].into_iter().flatten() {
            resolve(base, p);
        }
    }

    fn inputs(cfg: &EvalConfig) -> Vec<PathBuf> {
        cfg.items.iter().chain(&cfg.profiles).cloned().collect()
    }

    fn run(cfg: &EvalConfig, out: &Path) -> Result<Status> {
        if cfg.top_n == 0 {
            bail!("top_n must be positive");
        }
        let ds = cfg.dataset()?;
        let rows = evaluate_dataset(&ds, &cfg.simtrust, cfg.top_n)?;
        write(&out.join("eval.csv"), eval_to_csv(&rows))?;
        let users = rows
            .iter()
            .map(|r| &r.user_id)
            .collect::<BTreeSet<_>>()
            .len();
        let (st, cf) = (
            mean_f1(&rows, Algorithm::SimTrust),
            mean_f1(&rows, Algorithm::JaccardCf),
        );
        println!("{users} users: simtrust mean F1 {st:.4}, jaccard-cf mean F1 {cf:.4}");
        write_json(
            &out.join("summary.json"),
            &json!({ "users": users, "simtrust_mean_f1": st, "jaccard_cf_mean_f1": cf }),
        )?;
        Ok(Status::Ok)
    }
}

pub struct RunTdg;

impl Experiment for RunTdg {
    type Config = ScenarioConfig;
    const NAME: &'static str = "run-tdg";
    const SEED_KEY: &'static str = "seed";

    fn run(cfg: &ScenarioConfig, out: &Path) -> Result<Status> {
        let res = run_scenario(cfg)?;
        write(&out.join("series.csv"), log_to_csv(&res.log))?;
        for s in &res.summary {
            println!(
                "{} {}: final mean {:.4}, overall mean {:.4}",
                s.metric,
                s.agent_type.as_str(),
                s.mean_reputation_final,
                s.mean_reputation_overall
            );
        }
        write_json(&out.join("summary.json"), &res.summary)?;
        Ok(Status::Ok)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AudienceConfig {
    /// JSON lines of tagged star ratings.
    pub ledger: PathBuf,
    /// JSON lines of viewer profiles.
    pub viewers: PathBuf,
    /// Profiles of raters whose ratings carry no tags.
    #[serde(default)]
    pub raters: Option<PathBuf>,
    #[serde(default)]
    pub trust: HybridConfig,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HybridRunConfig {
    pub specialization: SpecializationConfig,
    pub audience: Option<AudienceConfig>,
}

#[derive(Debug, Serialize)]
struct AudienceRow {
    viewer: String,
    item: String,
    trust: f64,
}

fn audience_rows(cfg: &AudienceConfig) -> Result<Vec<AudienceRow>> {
    let ledger: Vec<LedgerRecord> = read_records(&cfg.ledger)?;
    let ratings = ledger
        .into_iter()
        .map(TaggedRating::try_from)
        .collect::<sostrust::Result<Vec<_>>>()
        .with_context(|| format!("in {}", cfg.ledger.display()))?;
    let viewers: Vec<ProfileRecord> = read_records(&cfg.viewers)?;
    let raters: BTreeMap<String, UserProfile> = match &cfg.raters {
        Some(p) => read_records::<ProfileRecord>(p)?
            .iter()
            .map(|r| (r.user.clone(), UserProfile::from_record(r)))
            .collect(),
        None => BTreeMap::new(),
    };
    let items: BTreeSet<&str> = ratings.iter().map(|r| r.item.as_str()).collect();
    let mut rows = Vec::with_capacity(viewers.len() * items.len());
    for v in &viewers {
        let viewer = UserProfile::from_record(v);
        for item in &items {
            rows.push(AudienceRow {
                viewer: v.user.clone(),
                item: item.to_string(),
                trust: audience_rating(item, &ratings, &viewer, &raters, &cfg.trust).value(),
            });
        }
    }
    Ok(rows)
}

pub struct RunHybrid;

impl Experiment for RunHybrid {
    type Config = HybridRunConfig;
    const NAME: &'static str = "run-hybrid";
    const SEED_KEY: &'static str = "specialization.seed";

    fn resolve_paths(cfg: &mut HybridRunConfig, base: &Path) {
        if let Some(a) = &mut cfg.audience {
            resolve(base, &mut a.ledger);
            resolve(base, &mut a.viewers);
            if let Some(r) = &mut a.raters {
                resolve(base, r);
            }
        }
    }

    fn inputs(cfg: &HybridRunConfig) -> Vec<PathBuf> {
        match &cfg.audience {
            Some(a) => [Some(&a.ledger), Some(&a.viewers), a.raters.as_ref()]
                .into_iter()
                .flatten()
                .cloned()
                .collect(),
            None => Vec::new(),
        }
    }

    fn run(cfg: &HybridRunConfig, out: &Path) -> Result<Status> {
        let res = specialization_run(&cfg.specialization)?;
        write(
            &out.join("specialization.csv"),
            specialization_to_csv(&res.rows),
        )?;
        for (skill, shares) in &res.share {
            let parts: Vec<String> = shares
                .iter()
                .map(|(a, f)| format!("{a} {:.0}%", f * 100.0))
                .collect();
            println!("{skill}: {}", parts.join(", "));
        }
        write_json(
            &out.join("specialization.json"),
            &json!({ "share": res.share, "profiles": res.profiles }),
        )?;
        if let Some(a) = &cfg.audience {
            write_json(&out.join("audience.json"), &audience_rows(a)?)?;
        }
        Ok(Status::Ok)
    }
}
