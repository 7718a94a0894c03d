//! Tag-based trust.
//!
//! Users describe themselves with free-form tags. Each tag gets a keyword
//! vector built from the tf-idf weights of the item descriptions the tag is
//! attached to; users whose aggregated keyword interest overlaps trust each
//! other, and items held by trusted users are recommended. A Jaccard
//! item-overlap baseline and precision/recall/F1 scoring are included for
//! comparison.

mod eval;
mod recommend;
mod semantics;
mod similarity;
mod synth;
mod tfidf;

use std::collections::{BTreeMap, BTreeSet};
use std::io::BufRead;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use eval::{eval_to_csv, evaluate, evaluate_dataset, mean_f1, Algorithm, EvalRow, Scores};
pub use recommend::{recommend, recommend_with, trusted_neighbors, RecommendationResult};
pub use semantics::{derive_all, derive_tag_semantics};
pub use similarity::{
    cosine, interest_vector, jaccard_cf_trust, tag_similarity, tags_similar, user_trust,
};
pub use synth::{synth_corpus, SynthConfig};
pub use tfidf::{tf_idf, tokenize, TfIdf};

/// Keyword to weight, ordered by keyword.
pub type KeywordVector = BTreeMap<String, f64>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Item {
    pub id: String,
    pub description: String,
    #[serde(default)]
    pub tags: Vec<String>,
}

/// Items keyed by id.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Corpus {
    items: BTreeMap<String, Item>,
}

impl Corpus {
    pub fn new(items: Vec<Item>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for item in items {
            if map.contains_key(&item.id) {
                return Err(Error::InvalidConfig(format!(
                    "duplicate item id {:?}",
                    item.id
                )));
            }
            map.insert(item.id.clone(), item);
        }
        Ok(Self { items: map })
    }

    pub fn get(&self, id: &str) -> Option<&Item> {
        self.items.get(id)
    }

    pub fn items(&self) -> impl Iterator<Item = &Item> {
        self.items.values()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

/// A tag label and the keywords that give it meaning.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TagSemantics {
    pub tag: String,
    pub keywords: KeywordVector,
}

impl TagSemantics {
    /// The label itself as the only keyword, used when no item describes the tag.
    pub fn from_label(tag: &str) -> Self {
        let mut keywords = KeywordVector::new();
        keywords.insert(tag.to_lowercase(), 1.0);
        Self {
            tag: tag.to_string(),
            keywords,
        }
    }
}

/// A user as seen by the trust computation: tags with semantics and the items
/// the user already holds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UserProfile {
    pub user: String,
    pub tags: Vec<TagSemantics>,
    pub items: BTreeSet<String>,
}

impl UserProfile {
    /// Profile with label-only tag semantics. Duplicate labels are dropped.
    pub fn new<S: AsRef<str>>(user: &str, tags: &[S], items: &[S]) -> Self {
        let mut seen = BTreeSet::new();
        let tags = tags
            .iter()
            .map(AsRef::as_ref)
            .filter(|t| seen.insert(t.to_string()))
            .map(TagSemantics::from_label)
            .collect();
        Self {
            user: user.to_string(),
            tags,
            items: items.iter().map(|i| i.as_ref().to_string()).collect(),
        }
    }

    pub fn from_record(rec: &ProfileRecord) -> Self {
        Self::new(&rec.user, &rec.tags, &rec.items)
    }

    pub fn tag_labels(&self) -> impl Iterator<Item = &str> {
        self.tags.iter().map(|t| t.tag.as_str())
    }
}

/// One line of a profile file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileRecord {
    pub user: String,
    #[serde(default)]
    pub tags: Vec<String>,
    #[serde(default)]
    pub items: Vec<String>,
}

/// Trust thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimTrustConfig {
    /// Cosine similarity at which two tags count as similar.
    pub theta_sim: f64,
    /// Minimum user trust for a neighbor's items to be considered.
    pub theta_trust: f64,
}

impl Default for SimTrustConfig {
    fn default() -> Self {
        Self {
            theta_sim: 0.5,
            theta_trust: 0.3,
        }
    }
}

/// Corpus, visible profiles and withheld preferences for an evaluation run.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub corpus: Corpus,
    pub profiles: Vec<ProfileRecord>,
    pub ground_truth: BTreeMap<String, BTreeSet<String>>,
}

impl Dataset {
    /// Splits every profile's items into the first `held` (in id order) that
    /// stay visible and the rest, which become the ground truth.
    pub fn with_holdout(corpus: Corpus, profiles: Vec<ProfileRecord>, held: usize) -> Self {
        let mut visible = Vec::with_capacity(profiles.len());
        let mut ground_truth = BTreeMap::new();
        for p in profiles {
            let items: BTreeSet<String> = p.items.iter().cloned().collect();
            let (keep, rest): (Vec<_>, Vec<_>) =
                items.into_iter().enumerate().partition(|(i, _)| *i < held);
            ground_truth.insert(p.user.clone(), rest.into_iter().map(|(_, id)| id).collect());
            visible.push(ProfileRecord {
                items: keep.into_iter().map(|(_, id)| id).collect(),
                ..p
            });
        }
        Self {
            corpus,
            profiles: visible,
            ground_truth,
        }
    }
}

/// Reads JSON lines, skipping blank lines. Errors carry 1-based line numbers.
pub fn read_jsonl<T: DeserializeOwned, R: BufRead>(reader: R) -> Result<Vec<T>> {
    let mut out = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::Parse {
            line: idx + 1,
            msg: e.to_string(),
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let value = serde_json::from_str(&line).map_err(|e| Error::Parse {
            line: idx + 1,
            msg: e.to_string(),
        })?;
        out.push(value);
    }
    Ok(out)
}

pub fn write_jsonl<T: Serialize>(values: &[T]) -> String {
    let mut s = String::new();
    for v in values {
        s.push_str(&serde_json::to_string(v).expect("plain data serializes"));
        s.push('\n');
    }
    s
}
