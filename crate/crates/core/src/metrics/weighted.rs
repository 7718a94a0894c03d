use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{MetricConfig, Rating, RatingState, TrustMetric, TrustValue};

/// Signed rating mass plus the ratings currently held in storage.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct WeightedState {
    pub mass: RatingState,
    pub stored: VecDeque<Rating>,
}

impl WeightedState {
    pub fn len(&self) -> usize {
        self.stored.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stored.is_empty()
    }

    fn add(&mut self, r: Rating) {
        let v = r.value();
        if v > 0.0 {
            self.mass.p_pos += v;
        } else {
            self.mass.p_neg -= v;
        }
        self.stored.push_back(r);
    }

    fn evict_oldest(&mut self) {
        if let Some(old) = self.stored.pop_front() {
            let v = old.value();
            if v > 0.0 {
                self.mass.p_pos = (self.mass.p_pos - v).max(0.0);
            } else {
                self.mass.p_neg = (self.mass.p_neg + v).max(0.0);
            }
        }
    }
}

/// Adds `r`, first evicting the oldest stored rating once `storage_cap` is
/// reached.
pub fn weighted_update(state: &WeightedState, r: Rating, cfg: &MetricConfig) -> WeightedState {
    let mut next = state.clone();
    weighted_record(&mut next, r, cfg);
    next
}

/// In-place form of [`weighted_update`].
pub fn weighted_record(state: &mut WeightedState, r: Rating, cfg: &MetricConfig) {
    while state.stored.len() >= cfg.storage_cap.max(1) {
        state.evict_oldest();
    }
    state.add(r);
}

pub fn weighted_trust(state: &WeightedState, cfg: &MetricConfig) -> TrustValue {
    state
        .mass
        .balance()
        .map(TrustValue::new)
        .unwrap_or_else(|| cfg.initial())
}

/// Weighted metric with bounded per-entity storage.
#[derive(Debug, Clone, Copy, Default)]
pub struct Weighted {
    pub cfg: MetricConfig,
}

impl Weighted {
    pub fn new(cfg: MetricConfig) -> Self {
        Self { cfg }
    }
}

impl TrustMetric for Weighted {
    type State = WeightedState;

    fn name(&self) -> &'static str {
        "weighted"
    }

    fn initial_state(&self) -> WeightedState {
        WeightedState::default()
    }

    fn update(&self, state: &WeightedState, r: Rating) -> WeightedState {
        weighted_update(state, r, &self.cfg)
    }

    fn trust(&self, state: &WeightedState) -> TrustValue {
        weighted_trust(state, &self.cfg)
    }

    fn fold<I: IntoIterator<Item = Rating>>(&self, ratings: I) -> WeightedState {
        let mut state = WeightedState::default();
        for r in ratings {
            weighted_record(&mut state, r, &self.cfg);
        }
        state
    }

    fn at_capacity(&self, state: &WeightedState) -> bool {
        state.len() >= self.cfg.storage_cap
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn metric(cap: usize) -> Weighted {
        Weighted::new(MetricConfig {
            storage_cap: cap,
            ..Default::default()
        })
    }

    fn fold(m: &Weighted, values: &[f64]) -> WeightedState {
        m.fold(values.iter().map(|&v| Rating::new(v).unwrap()))
    }

    #[test]
    fn examples() {
        let m = metric(10);
        assert_eq!(m.trust(&fold(&m, &[1.0, 1.0])).value(), 1.0);
        assert_eq!(m.trust(&fold(&m, &[1.0, -1.0])).value(), 0.0);
        assert_eq!(m.trust(&fold(&m, &[])).value(), 0.0);
    }

    #[test]
    fn all_positive_stays_maximal_through_eviction() {
        let m = metric(3);
        let s = fold(&m, &[1.0, 1.0, 1.0, 0.5]);
        assert_eq!(s.len(), 3);
        assert!((s.mass.p_pos - 2.5).abs() < 1e-12);
        assert_eq!(m.trust(&s).value(), 1.0);
    }

    #[test]
    fn eviction_lowers_trust_after_positive_rating() {
        let m = metric(3);
        let before = fold(&m, &[1.0, -0.5, 1.0]);
        let after = m.update(&before, Rating::new(0.5).unwrap());
        let (tb, ta) = (m.trust(&before).value(), m.trust(&after).value());
        assert!((tb - 0.6).abs() < 1e-12);
        assert!((ta - 0.5).abs() < 1e-12);
        assert!(ta < tb);
    }

    #[test]
    fn below_cap_positive_rating_raises_trust() {
        let m = metric(5);
        let before = fold(&m, &[1.0, -0.5, 1.0]);
        let after = m.update(&before, Rating::new(0.5).unwrap());
        assert!(m.trust(&after).value() > m.trust(&before).value());
        assert!(!m.at_capacity(&before));
    }
}
