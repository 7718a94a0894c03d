use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{
    derive_all, jaccard_cf_trust, recommend_with, user_trust, Dataset, RecommendationResult,
    SimTrustConfig,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Scores {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

/// Precision, recall and F1 of `rec` against the withheld `ground_truth`.
pub fn evaluate(rec: &RecommendationResult, ground_truth: &BTreeSet<String>) -> Result<Scores> {
    if ground_truth.is_empty() {
        return Err(Error::UndefinedRecall);
    }
    let predicted: BTreeSet<&String> = rec.items.iter().collect();
    let hits = predicted
        .iter()
        .filter(|i| ground_truth.contains(**i))
        .count() as f64;
    let precision = if predicted.is_empty() {
        0.0
    } else {
        hits / predicted.len() as f64
    };
    let recall = hits / ground_truth.len() as f64;
    let f1 = if precision + recall > 0.0 {
        2.0 * precision * recall / (precision + recall)
    } else {
        0.0
    };
    Ok(Scores {
        precision,
        recall,
        f1,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Algorithm {
    #[serde(rename = "simtrust")]
    SimTrust,
    #[serde(rename = "jaccard-cf")]
    JaccardCf,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::SimTrust => "simtrust",
            Algorithm::JaccardCf => "jaccard-cf",
        })
    }
}

/// One row of the evaluation report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalRow {
    pub user_id: String,
    pub algorithm: Algorithm,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

/// Scores tag-based and Jaccard recommendations for every user that has a
/// non-empty ground truth. Both use the same ranking and `theta_trust`.
pub fn evaluate_dataset(ds: &Dataset, cfg: &SimTrustConfig, n: usize) -> Result<Vec<EvalRow>> {
    let profiles = derive_all(&ds.profiles, &ds.corpus)?;
    let mut rows = Vec::with_capacity(profiles.len() * 2);
    for user in &profiles {
        let Some(truth) = ds.ground_truth.get(&user.user).filter(|t| !t.is_empty()) else {
            continue;
        };
        for alg in [Algorithm::SimTrust, Algorithm::JaccardCf] {
            let rec = match alg {
                Algorithm::SimTrust => {
                    recommend_with(user, &profiles, n, cfg.theta_trust, user_trust)
                }
                Algorithm::JaccardCf => {
                    recommend_with(user, &profiles, n, cfg.theta_trust, jaccard_cf_trust)
                }
            };
            let s = evaluate(&rec, truth)?;
            rows.push(EvalRow {
                user_id: user.user.clone(),
                algorithm: alg,
                precision: s.precision,
                recall: s.recall,
                f1: s.f1,
            });
        }
    }
    Ok(rows)
}

/// Mean F1 of one algorithm; 0 when it has no rows.
pub fn mean_f1(rows: &[EvalRow], alg: Algorithm) -> f64 {
    let (sum, n) = rows
        .iter()
        .filter(|r| r.algorithm == alg)
        .fold((0.0, 0usize), |(s, n), r| (s + r.f1, n + 1));
    if n == 0 {
        0.0
    } else {
        sum / n as f64
    }
}

/// `user_id,algorithm,precision,recall,f1` rows.
pub fn eval_to_csv(rows: &[EvalRow]) -> String {
    let mut out = String::from("user_id,algorithm,precision,recall,f1\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.user_id, r.algorithm, r.precision, r.recall, r.f1
        ));
    }
    out
}
