use super::{MetricConfig, Rating, RatingHistory, TrustMetric, TrustValue};

pub fn continuous_update(history: &RatingHistory, r: Rating) -> RatingHistory {
    let mut next = history.clone();
    next.push(r);
    next
}

/// Arithmetic mean of every rating received; initial trust when empty.
pub fn continuous_trust(history: &RatingHistory, cfg: &MetricConfig) -> TrustValue {
    if history.is_empty() {
        return cfg.initial();
    }
    TrustValue::new(history.sum() / history.len() as f64)
}

/// Running mean over the full history.
#[derive(Debug, Clone, Copy, Default)]
pub struct Continuous {
    pub cfg: MetricConfig,
}

impl Continuous {
    pub fn new(cfg: MetricConfig) -> Self {
        Self { cfg }
    }
}

impl TrustMetric for Continuous {
    type State = RatingHistory;

    fn name(&self) -> &'static str {
        "continuous"
    }

    fn initial_state(&self) -> RatingHistory {
        RatingHistory::new()
    }

    fn update(&self, state: &RatingHistory, r: Rating) -> RatingHistory {
        continuous_update(state, r)
    }

    fn trust(&self, state: &RatingHistory) -> TrustValue {
        continuous_trust(state, &self.cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trust_of(values: &[f64]) -> f64 {
        continuous_trust(
            &RatingHistory::from_values(values).unwrap(),
            &MetricConfig::default(),
        )
        .value()
    }

    #[test]
    fn examples() {
        assert_eq!(trust_of(&[1.0, 1.0]), 1.0);
        assert_eq!(trust_of(&[1.0, -1.0]), 0.0);
        assert_eq!(trust_of(&[]), 0.0);
    }

    #[test]
    fn positive_rating_can_lower_trust() {
        let h = RatingHistory::from_values(&[1.0, 1.0, 1.0]).unwrap();
        let cfg = MetricConfig::default();
        let after = continuous_update(&h, Rating::new(0.5).unwrap());
        assert_eq!(continuous_trust(&h, &cfg).value(), 1.0);
        assert_eq!(continuous_trust(&after, &cfg).value(), 0.875);
    }
}
