//! Explicit-rating trust metrics.
//!
//! A metric is a pair of functions: an update that folds a new [`Rating`] into
//! some state, and a trust function that maps the state to a [`TrustValue`]
//! in `[-1, 1]`. Three metrics are provided:
//!
//! * [`Continuous`]: arithmetic mean over the full rating history.
//! * [`Weighted`]: positive and negative rating mass with a bounded FIFO store.
//! * [`Wses`]: weighted simple exponential smoothing over two weights.
//!
//! [`requirements`] checks any [`TrustMetric`] against the two fairness
//! requirements (higher rating gives higher trust, positive rating raises
//! trust until it is maximal).

mod continuous;
pub mod requirements;
mod weighted;
mod wses;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use continuous::{continuous_trust, continuous_update, Continuous};
pub use weighted::{weighted_record, weighted_trust, weighted_update, Weighted, WeightedState};
pub use wses::{wses_trust, wses_update, Wses};

/// A single explicit rating in `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Rating(f64);

impl Rating {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && (-1.0..=1.0).contains(&value) {
            Ok(Self(value))
        } else {
            Err(Error::RatingOutOfRange(value))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0.0
    }
}

impl TryFrom<f64> for Rating {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Self::new(value)
    }
}

impl From<Rating> for f64 {
    fn from(r: Rating) -> f64 {
        r.0
    }
}

impl fmt::Display for Rating {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Positive and negative rating weight.
///
/// For WSES both weights stay in `[0, 1]`. The weighted metric stores rating
/// sums here, bounded by its storage capacity.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct RatingState {
    pub p_pos: f64,
    pub p_neg: f64,
}

impl RatingState {
    pub const EMPTY: RatingState = RatingState {
        p_pos: 0.0,
        p_neg: 0.0,
    };

    pub fn new(p_pos: f64, p_neg: f64) -> Self {
        Self { p_pos, p_neg }
    }

    /// `(p_pos - p_neg) / (p_pos + p_neg)`, or `None` when both are zero.
    pub fn balance(&self) -> Option<f64> {
        let total = self.p_pos + self.p_neg;
        if total > 0.0 {
            Some(((self.p_pos - self.p_neg) / total).clamp(-1.0, 1.0))
        } else {
            None
        }
    }
}

/// Reputation in `[-1, 1]`; 1 is the best and -1 the worst.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TrustValue(f64);

impl TrustValue {
    pub const MAX: TrustValue = TrustValue(1.0);
    pub const MIN: TrustValue = TrustValue(-1.0);
    pub const NEUTRAL: TrustValue = TrustValue(0.0);

    /// Clamps into `[-1, 1]`; NaN maps to neutral.
    pub fn new(tau: f64) -> Self {
        if tau.is_nan() {
            Self::NEUTRAL
        } else {
            Self(tau.clamp(-1.0, 1.0))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl fmt::Display for TrustValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MetricConfig {
    /// Smoothing factor, `0 < alpha < 1`. Larger values keep more history.
    pub alpha: f64,
    /// Ratings kept per entity by the weighted metric.
    pub storage_cap: usize,
    /// Trust reported before any informative rating exists.
    pub initial_trust: f64,
}

impl Default for MetricConfig {
    fn default() -> Self {
        Self {
            alpha: 0.9,
            storage_cap: 100,
            initial_trust: 0.0,
        }
    }
}

impl MetricConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "alpha must lie in (0, 1), got {}",
                self.alpha
            )));
        }
        if self.storage_cap == 0 {
            return Err(Error::InvalidConfig(
                "storage_cap must be at least 1".into(),
            ));
        }
        if !(-1.0..=1.0).contains(&self.initial_trust) {
            return Err(Error::InvalidConfig(format!(
                "initial_trust must lie in [-1, 1], got {}",
                self.initial_trust
            )));
        }
        Ok(())
    }

    pub fn initial(&self) -> TrustValue {
        TrustValue::new(self.initial_trust)
    }
}

/// Ratings in arrival order, with a running sum.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "Vec<Rating>", into = "Vec<Rating>")]
pub struct RatingHistory {
    ratings: Vec<Rating>,
    sum: f64,
}

impl RatingHistory {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_values(values: &[f64]) -> Result<Self> {
        values.iter().map(|&v| Rating::new(v)).collect()
    }

    pub fn push(&mut self, r: Rating) {
        self.sum += r.value();
        self.ratings.push(r);
    }

    pub fn ratings(&self) -> &[Rating] {
        &self.ratings
    }

    pub fn sum(&self) -> f64 {
        self.sum
    }

    pub fn len(&self) -> usize {
        self.ratings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ratings.is_empty()
    }
}

impl From<Vec<Rating>> for RatingHistory {
    fn from(ratings: Vec<Rating>) -> Self {
        ratings.into_iter().collect()
    }
}

impl From<RatingHistory> for Vec<Rating> {
    fn from(h: RatingHistory) -> Self {
        h.ratings
    }
}

impl FromIterator<Rating> for RatingHistory {
    fn from_iter<I: IntoIterator<Item = Rating>>(iter: I) -> Self {
        let mut h = Self::new();
        for r in iter {
            h.push(r);
        }
        h
    }
}

/// Plain normalized sum `Σ r_i / n` over an arbitrary scale.
///
/// Kept separate from the `[-1, 1]` metrics so the classic counterexample can
/// be evaluated on its own `[0, 1]` ratings.
pub fn normalized_average(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::NoRatings);
    }
    Ok(values.iter().sum::<f64>() / values.len() as f64)
}

/// An update function paired with a trust function.
pub trait TrustMetric {
    type State: Clone + fmt::Debug + Serialize;

    fn name(&self) -> &'static str;

    fn initial_state(&self) -> Self::State;

    fn update(&self, state: &Self::State, r: Rating) -> Self::State;

    fn trust(&self, state: &Self::State) -> TrustValue;

    /// Whether the next update has to discard stored information.
    fn at_capacity(&self, _state: &Self::State) -> bool {
        false
    }

    fn fold<I: IntoIterator<Item = Rating>>(&self, ratings: I) -> Self::State {
        ratings
            .into_iter()
            .fold(self.initial_state(), |s, r| self.update(&s, r))
    }
}

/// Metric selector used by configuration files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricKind {
    Continuous,
    Weighted,
    Wses,
}

impl MetricKind {
    pub const ALL: [MetricKind; 3] = [
        MetricKind::Continuous,
        MetricKind::Weighted,
        MetricKind::Wses,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MetricKind::Continuous => "continuous",
            MetricKind::Weighted => "weighted",
            MetricKind::Wses => "wses",
        }
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Per-entity state for whichever metric a simulation is configured with.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "metric", rename_all = "lowercase")]
pub enum MetricState {
    Continuous(RatingHistory),
    Weighted(WeightedState),
    Wses(RatingState),
}

impl MetricState {
    pub fn new(kind: MetricKind) -> Self {
        match kind {
            MetricKind::Continuous => MetricState::Continuous(RatingHistory::new()),
            MetricKind::Weighted => MetricState::Weighted(WeightedState::default()),
            MetricKind::Wses => MetricState::Wses(RatingState::EMPTY),
        }
    }

    pub fn kind(&self) -> MetricKind {
        match self {
            MetricState::Continuous(_) => MetricKind::Continuous,
            MetricState::Weighted(_) => MetricKind::Weighted,
            MetricState::Wses(_) => MetricKind::Wses,
        }
    }

    pub fn record(&mut self, r: Rating, cfg: &MetricConfig) {
        match self {
            MetricState::Continuous(h) => h.push(r),
            MetricState::Weighted(w) => weighted_record(w, r, cfg),
            MetricState::Wses(s) => *s = wses_update(*s, r, cfg),
        }
    }

    pub fn trust(&self, cfg: &MetricConfig) -> TrustValue {
        match self {
            MetricState::Continuous(h) => continuous_trust(h, cfg),
            MetricState::Weighted(w) => weighted_trust(w, cfg),
            MetricState::Wses(s) => wses_trust(*s, cfg),
        }
    }
}
