//! Synthetic interest-cluster corpora.
//!
//! Each cluster owns a topical vocabulary and a pool of tag labels. Items draw
//! description words from their cluster's vocabulary (or, with probability
//! `mixing`, from another cluster's) and carry tags from the cluster pool.
//! Users pick tags from their cluster pool and prefer cluster items, favouring
//! items that share their tags. Only the first `held_per_user` preferred items
//! stay visible; the rest become the ground truth.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{Corpus, Dataset, Item, ProfileRecord};
use crate::error::{Error, Result};
use crate::rng::{self, SimRng};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SynthConfig {
    pub seed: u64,
    pub clusters: usize,
    pub users_per_cluster: usize,
    pub items_per_cluster: usize,
    pub vocab_per_cluster: usize,
    pub words_per_description: usize,
    pub tags_per_cluster: usize,
    pub tags_per_item: usize,
    pub tags_per_user: usize,
    pub preferred_per_user: usize,
    pub held_per_user: usize,
    /// Probability that a description word comes from another cluster.
    pub mixing: f64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        Self {
            seed: 7,
            clusters: 4,
            users_per_cluster: 10,
            items_per_cluster: 30,
            vocab_per_cluster: 12,
            words_per_description: 15,
            tags_per_cluster: 6,
            tags_per_item: 2,
            tags_per_user: 3,
            preferred_per_user: 10,
            held_per_user: 2,
            mixing: 0.0,
        }
    }
}

impl SynthConfig {
    pub fn validate(&self) -> Result<()> {
        let counts = [
            ("clusters", self.clusters),
            ("users_per_cluster", self.users_per_cluster),
            ("items_per_cluster", self.items_per_cluster),
            ("vocab_per_cluster", self.vocab_per_cluster),
            ("words_per_description", self.words_per_description),
            ("tags_per_cluster", self.tags_per_cluster),
            ("tags_per_item", self.tags_per_item),
            ("tags_per_user", self.tags_per_user),
            ("preferred_per_user", self.preferred_per_user),
        ];
        for (name, v) in counts {
            if v == 0 {
                return Err(Error::InvalidConfig(format!("{name} must be at least 1")));
            }
        }
        if self.tags_per_item > self.tags_per_cluster || self.tags_per_user > self.tags_per_cluster
        {
            return Err(Error::InvalidConfig(
                "tags_per_item and tags_per_user must not exceed tags_per_cluster".into(),
            ));
        }
        if self.preferred_per_user > self.items_per_cluster {
            return Err(Error::InvalidConfig(
                "preferred_per_user must not exceed items_per_cluster".into(),
            ));
        }
        if self.held_per_user > self.preferred_per_user {
            return Err(Error::InvalidConfig(
                "held_per_user must not exceed preferred_per_user".into(),
            ));
        }
        if !(0.0..=1.0).contains(&self.mixing) {
            return Err(Error::InvalidConfig("mixing must lie in [0, 1]".into()));
        }
        Ok(())
    }
}

fn word(cluster: usize, k: usize) -> String {
    format!("topic{cluster}term{k}")
}

fn tag_label(cluster: usize, k: usize) -> String {
    format!("topic{cluster}tag{k}")
}

/// Weighted sampling without replacement; returns indices in draw order.
fn weighted_order(weights: &[f64], take: usize, rng: &mut SimRng) -> Vec<usize> {
    let mut remaining: Vec<(usize, f64)> = weights.iter().copied().enumerate().collect();
    let mut out = Vec::with_capacity(take);
    while out.len() < take && !remaining.is_empty() {
        let total: f64 = remaining.iter().map(|(_, w)| w).sum();
        let mut pick = rng.gen::<f64>() * total;
        let mut idx = remaining.len() - 1;
        for (j, (_, w)) in remaining.iter().enumerate() {
            if pick < *w {
                idx = j;
                break;
            }
            pick -= w;
        }
        out.push(remaining.remove(idx).0);
    }
    out
}

/// Builds a deterministic dataset from `cfg`.
pub fn synth_corpus(cfg: &SynthConfig) -> Result<Dataset> {
    cfg.validate()?;
    let mut rng = rng::seeded(cfg.seed);
    let tag_pool: Vec<usize> = (0..cfg.tags_per_cluster).collect();

    let mut items = Vec::new();
    let mut cluster_items: Vec<Vec<(String, BTreeSet<usize>)>> = Vec::new();
    for c in 0..cfg.clusters {
        let mut these = Vec::new();
        for k in 0..cfg.items_per_cluster {
            let words: Vec<String> = (0..cfg.words_per_description)
                .map(|_| {
                    let source = if cfg.clusters > 1 && rng.gen_bool(cfg.mixing) {
                        let other = rng.gen_range(0..cfg.clusters - 1);
                        if other >= c {
                            other + 1
                        } else {
                            other
                        }
                    } else {
                        c
                    };
                    word(source, rng.gen_range(0..cfg.vocab_per_cluster))
                })
                .collect();
            let tags: BTreeSet<usize> = tag_pool
                .choose_multiple(&mut rng, cfg.tags_per_item)
                .copied()
                .collect();
            let id = format!("item-{c:02}-{k:03}");
            items.push(Item {
                id: id.clone(),
                description: words.join(" "),
                tags: tags.iter().map(|&t| tag_label(c, t)).collect(),
            });
            these.push((id, tags));
        }
        cluster_items.push(these);
    }

    let mut profiles = Vec::new();
    let mut ground_truth = BTreeMap::new();
    for (c, these) in cluster_items.iter().enumerate() {
        for k in 0..cfg.users_per_cluster {
            let user = format!("user-{c:02}-{k:03}");
            let tags: BTreeSet<usize> = tag_pool
                .choose_multiple(&mut rng, cfg.tags_per_user)
                .copied()
                .collect();
            let weights: Vec<f64> = these
                .iter()
                .map(|(_, item_tags)| 1.0 + 3.0 * item_tags.intersection(&tags).count() as f64)
                .collect();
            let order = weighted_order(&weights, cfg.preferred_per_user, &mut rng);
            let held: Vec<String> = order[..cfg.held_per_user]
                .iter()
                .map(|&i| these[i].0.clone())
                .collect();
            let withheld: BTreeSet<String> = order[cfg.held_per_user..]
                .iter()
                .map(|&i| these[i].0.clone())
                .collect();
            profiles.push(ProfileRecord {
                user: user.clone(),
                tags: tags.iter().map(|&t| tag_label(c, t)).collect(),
                items: held,
            });
            ground_truth.insert(user, withheld);
        }
    }

    Ok(Dataset {
        corpus: Corpus::new(items)?,
        profiles,
        ground_truth,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let cfg = SynthConfig::default();
        assert_eq!(synth_corpus(&cfg).unwrap(), synth_corpus(&cfg).unwrap());
        let other = SynthConfig {
            seed: 8,
            ..cfg.clone()
        };
        assert_ne!(synth_corpus(&cfg).unwrap(), synth_corpus(&other).unwrap());
    }

    #[test]
    fn shape() {
        let cfg = SynthConfig::default();
        let ds = synth_corpus(&cfg).unwrap();
        assert_eq!(ds.corpus.len(), 4 * 30);
        assert_eq!(ds.profiles.len(), 40);
        for p in &ds.profiles {
            assert_eq!(p.items.len(), 2);
            assert_eq!(p.tags.len(), 3);
            let truth = &ds.ground_truth[&p.user];
            assert_eq!(truth.len(), 8);
            assert!(p.items.iter().all(|i| !truth.contains(i)));
        }
    }

    #[test]
    fn invalid_counts_rejected() {
        for cfg in [
            SynthConfig {
                clusters: 0,
                ..Default::default()
            },
            SynthConfig {
                users_per_cluster: 0,
                ..Default::default()
            },
            SynthConfig {
                held_per_user: 11,
                ..Default::default()
            },
            SynthConfig {
                mixing: 1.5,
                ..Default::default()
            },
        ] {
            assert!(synth_corpus(&cfg).is_err());
        }
    }

    #[test]
    fn weighted_order_takes_distinct() {
        let mut rng = rng::seeded(1);
        let order = weighted_order(&[1.0, 5.0, 1.0, 0.5], 4, &mut rng);
        let set: BTreeSet<usize> = order.iter().copied().collect();
        assert_eq!(set.len(), 4);
    }
}
