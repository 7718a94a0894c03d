use super::{MetricConfig, Rating, RatingState, TrustMetric, TrustValue};

/// Folds one rating into the smoothed weights.
///
/// A positive rating decays both weights by `alpha` and adds
/// `(1 - alpha) * r` to the positive weight; a negative rating does the same
/// on the negative side with `|r|`. A zero rating carries no information and
/// leaves the state untouched (no decay).
pub fn wses_update(state: RatingState, r: Rating, cfg: &MetricConfig) -> RatingState {
    let a = cfg.alpha;
    let r = r.value();
    if r > 0.0 {
        RatingState::new(state.p_pos * a + (1.0 - a) * r, state.p_neg * a)
    } else if r < 0.0 {
        RatingState::new(state.p_pos * a, state.p_neg * a - (1.0 - a) * r)
    } else {
        state
    }
}

/// `(p_pos - p_neg) / (p_pos + p_neg)`; the empty state reports the
/// configured initial trust.
pub fn wses_trust(state: RatingState, cfg: &MetricConfig) -> TrustValue {
    state
        .balance()
        .map(TrustValue::new)
        .unwrap_or_else(|| cfg.initial())
}

/// Weighted simple exponential smoothing. Keeps no rating history.
#[derive(Debug, Clone, Copy, Default)]
pub struct Wses {
    pub cfg: MetricConfig,
}

impl Wses {
    pub fn new(cfg: MetricConfig) -> Self {
        Self { cfg }
    }
}

impl TrustMetric for Wses {
    type State = RatingState;

    fn name(&self) -> &'static str {
        "wses"
    }

    fn initial_state(&self) -> RatingState {
        RatingState::EMPTY
    }

    fn update(&self, state: &RatingState, r: Rating) -> RatingState {
        wses_update(*state, r, &self.cfg)
    }

    fn trust(&self, state: &RatingState) -> TrustValue {
        wses_trust(*state, &self.cfg)
    }
}
