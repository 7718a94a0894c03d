use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::{wses_trust, wses_update, MetricConfig, Rating, RatingState, TrustValue};
use crate::simtrust::{user_trust, UserProfile};

/// Maps 1..=5 stars linearly onto `[-1, 1]`: `(stars - 3) / 2`.
pub fn star_to_rating(stars: i64) -> Result<Rating> {
    if !(1..=5).contains(&stars) {
        return Err(Error::StarsOutOfRange(stars));
    }
    Rating::new((stars - 3) as f64 / 2.0)
}

/// A rating together with the tags its rater carried when rating.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaggedRating {
    pub rater: String,
    pub item: String,
    pub rating: Rating,
    pub rater_tags: Vec<String>,
    /// Arrival order.
    pub seq: u64,
}

/// One line of a rating ledger file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LedgerRecord {
    pub rater: String,
    pub item: String,
    pub stars: i64,
    #[serde(default)]
    pub tags: Vec<String>,
    pub seq: u64,
}

impl TryFrom<LedgerRecord> for TaggedRating {
    type Error = Error;

    fn try_from(rec: LedgerRecord) -> Result<Self> {
        Ok(Self {
            rating: star_to_rating(rec.stars)?,
            rater: rec.rater,
            item: rec.item,
            rater_tags: rec.tags,
            seq: rec.seq,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HybridConfig {
    pub metric: MetricConfig,
    /// Minimum viewer-to-rater trust for a rating to count.
    pub theta_trust: f64,
}

impl Default for HybridConfig {
    fn default() -> Self {
        Self {
            metric: MetricConfig::default(),
            theta_trust: 0.3,
        }
    }
}

/// Item trust as seen by `viewer`.
///
/// A rating counts when the viewer trusts its rater at least `theta_trust`.
/// The rater is represented by the tags attached to the rating, or by their
/// entry in `raters` when the rating carries no tags. Counting ratings are
/// folded through WSES in `seq` order. With nothing to fold the configured
/// initial trust is returned.
pub fn audience_rating(
    item: &str,
    ratings: &[TaggedRating],
    viewer: &UserProfile,
    raters: &BTreeMap<String, UserProfile>,
    cfg: &HybridConfig,
) -> TrustValue {
    let mut counted: Vec<&TaggedRating> = ratings
        .iter()
        .filter(|r| r.item == item)
        .filter(|r| {
            let rater = if r.rater_tags.is_empty() {
                match raters.get(&r.rater) {
                    Some(p) => p.clone(),
                    None => return false,
                }
            } else {
                UserProfile::new(&r.rater, &r.rater_tags, &[])
            };
            user_trust(viewer, &rater) >= cfg.theta_trust
        })
        .collect();
    counted.sort_by_key(|r| r.seq);
    let state = counted.iter().fold(RatingState::EMPTY, |s, r| {
        wses_update(s, r.rating, &cfg.metric)
    });
    wses_trust(state, &cfg.metric)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::TrustMetric;
    use crate::metrics::Wses;

    fn football() -> Vec<TaggedRating> {
        vec![
            TaggedRating {
                rater: "A".into(),
                item: "P".into(),
                rating: star_to_rating(2).unwrap(),
                rater_tags: vec!["quality".into(), "haptic".into(), "material".into()],
                seq: 0,
            },
            TaggedRating {
                rater: "B".into(),
                item: "P".into(),
                rating: star_to_rating(5).unwrap(),
                rater_tags: vec!["look".into(), "beauty".into(), "appearance".into()],
                seq: 1,
            },
        ]
    }

    #[test]
    fn stars() {
        assert_eq!(star_to_rating(3).unwrap().value(), 0.0);
        assert_eq!(star_to_rating(5).unwrap().value(), 1.0);
        assert_eq!(star_to_rating(2).unwrap().value(), -0.5);
        assert_eq!(star_to_rating(0), Err(Error::StarsOutOfRange(0)));
        assert_eq!(star_to_rating(6), Err(Error::StarsOutOfRange(6)));
        let all: Vec<f64> = (1..=5)
            .map(|s| star_to_rating(s).unwrap().value())
            .collect();
        assert_eq!(all, [-1.0, -0.5, 0.0, 0.5, 1.0]);
    }

    #[test]
    fn football_audiences() {
        let cfg = HybridConfig::default();
        let none = BTreeMap::new();
        let looks = UserProfile::new("v1", &["look", "beauty", "appearance"], &[]);
        let feel = UserProfile::new("v2", &["quality", "haptic", "material"], &[]);
        let other = UserProfile::new("v3", &["price"], &[]);
        assert!(audience_rating("P", &football(), &looks, &none, &cfg).value() > 0.0);
        assert!(audience_rating("P", &football(), &feel, &none, &cfg).value() < 0.0);
        assert_eq!(
            audience_rating("P", &football(), &other, &none, &cfg).value(),
            0.0
        );
        assert_eq!(
            audience_rating("Q", &football(), &looks, &none, &cfg).value(),
            0.0
        );
    }

    #[test]
    fn zero_threshold_collapses_to_plain_wses() {
        let cfg = HybridConfig {
            theta_trust: 0.0,
            ..Default::default()
        };
        let other = UserProfile::new("v3", &["price"], &[]);
        let t = audience_rating("P", &football(), &other, &BTreeMap::new(), &cfg);
        let plain = Wses::new(cfg.metric);
        let s = plain.fold(football().iter().map(|r| r.rating));
        assert_eq!(t, plain.trust(&s));
    }

    #[test]
    fn untagged_rating_uses_rater_profile() {
        let mut ratings = football();
        ratings[1].rater_tags.clear();
        let viewer = UserProfile::new("v1", &["look", "beauty", "appearance"], &[]);
        let cfg = HybridConfig::default();
        assert_eq!(
            audience_rating("P", &ratings, &viewer, &BTreeMap::new(), &cfg).value(),
            0.0
        );
        let raters = BTreeMap::from([(
            "B".to_string(),
            UserProfile::new("B", &["look", "beauty"], &[]),
        )]);
        assert!(audience_rating("P", &ratings, &viewer, &raters, &cfg).value() > 0.0);
    }

    #[test]
    fn ledger_record_conversion() {
        let rec: LedgerRecord = serde_json::from_str(
            r#"{"rater":"A","item":"P","stars":2,"tags":["quality"],"seq":3}"#,
        )
        .unwrap();
        let t = TaggedRating::try_from(rec).unwrap();
        assert_eq!(t.rating.value(), -0.5);
        assert_eq!(t.seq, 3);
        let bad = LedgerRecord {
            rater: "A".into(),
            item: "P".into(),
            stars: 9,
            tags: vec![],
            seq: 0,
        };
        assert!(TaggedRating::try_from(bad).is_err());
    }
}
