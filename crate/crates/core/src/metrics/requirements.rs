//! Executable fairness requirements for rating metrics.
//!
//! * R1: for positive `r1 > r2`, `T(U(R, r1)) > T(U(R, r2))` unless
//!   `T(U(R, r2)) = 1`.
//! * R2: for positive `r`, `T(U(R, r)) > T(R)` unless `T(R) = 1`.
//!
//! A failure is reported as a [`Witness`] value, not as an error. Strict
//! inequalities are checked with an absolute slack of [`SLACK`]: a witness is
//! only recorded when the inequality fails by at least that much.

use rand::Rng;
use serde::Serialize;

use super::{Continuous, MetricConfig, Rating, RatingState, TrustMetric, Weighted, Wses};
use crate::error::{Error, Result};
use crate::rng::{self, SimRng};

pub const SLACK: f64 = 1e-12;

/// Number of witnesses kept verbatim in a [`RequirementReport`].
const KEPT_EXAMPLES: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Requirement {
    R1,
    R2,
}

/// A concrete counterexample to R1 or R2.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub requirement: Requirement,
    /// The base state, serialized.
    pub base: serde_json::Value,
    /// The next update would evict stored ratings.
    pub at_capacity: bool,
    /// `[r1, r2]` for R1, `[r]` for R2.
    pub ratings: Vec<f64>,
    /// `[T(U(R, r1)), T(U(R, r2))]` for R1, `[T(R), T(U(R, r))]` for R2.
    pub trust: [f64; 2],
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Pass,
    Witness(Box<Witness>),
}

impl Outcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, Outcome::Pass)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Outcome::Pass => None,
            Outcome::Witness(w) => Some(w),
        }
    }
}

fn is_max(t: f64) -> bool {
    t >= 1.0 - SLACK
}

pub fn check_r1<M: TrustMetric>(
    metric: &M,
    base: &M::State,
    r1: Rating,
    r2: Rating,
) -> Result<Outcome> {
    if !(r1.is_positive() && r2.is_positive()) {
        return Err(Error::Precondition(format!(
            "R1 needs positive ratings, got {r1} and {r2}"
        )));
    }
    if r1 <= r2 {
        return Err(Error::Precondition(format!(
            "R1 needs r1 > r2, got {r1} <= {r2}"
        )));
    }
    let high = metric.trust(&metric.update(base, r1)).value();
    let low = metric.trust(&metric.update(base, r2)).value();
    if is_max(low) || high > low - SLACK {
        return Ok(Outcome::Pass);
    }
    Ok(Outcome::Witness(Box::new(Witness {
        requirement: Requirement::R1,
        base: serde_json::to_value(base).unwrap_or(serde_json::Value::Null),
        at_capacity: metric.at_capacity(base),
        ratings: vec![r1.value(), r2.value()],
        trust: [high, low],
    })))
}

pub fn check_r2<M: TrustMetric>(metric: &M, base: &M::State, r: Rating) -> Result<Outcome> {
    if !r.is_positive() {
        return Err(Error::Precondition(format!(
            "R2 needs a positive rating, got {r}"
        )));
    }
    let before = metric.trust(base).value();
    let after = metric.trust(&metric.update(base, r)).value();
    if is_max(before) || after > before - SLACK {
        return Ok(Outcome::Pass);
    }
    Ok(Outcome::Witness(Box::new(Witness {
        requirement: Requirement::R2,
        base: serde_json::to_value(base).unwrap_or(serde_json::Value::Null),
        at_capacity: metric.at_capacity(base),
        ratings: vec![r.value()],
        trust: [before, after],
    })))
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct RequirementReport {
    pub witnesses: usize,
    pub at_capacity: usize,
    pub below_capacity: usize,
    pub examples: Vec<Witness>,
}

impl RequirementReport {
    fn record(&mut self, outcome: Outcome) {
        if let Outcome::Witness(w) = outcome {
            self.witnesses += 1;
            if w.at_capacity {
                self.at_capacity += 1;
            } else {
                self.below_capacity += 1;
            }
            if self.examples.len() < KEPT_EXAMPLES {
                self.examples.push(*w);
            }
        }
    }

    pub fn status(&self) -> &'static str {
        if self.witnesses == 0 {
            "pass"
        } else {
            "witness"
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub metric: String,
    pub trials: usize,
    pub r1: RequirementReport,
    pub r2: RequirementReport,
}

/// A rating drawn uniformly from `(0, 1]`.
pub fn random_positive(rng: &mut SimRng) -> Rating {
    let u: f64 = rng.gen();
    Rating::new(1.0 - u).expect("1 - u lies in (0, 1]")
}

pub fn random_rating(rng: &mut SimRng) -> Rating {
    Rating::new(rng.gen_range(-1.0..=1.0)).expect("sampled inside [-1, 1]")
}

/// Two distinct positive ratings ordered so the first is larger.
pub fn random_ordered_pair(rng: &mut SimRng) -> (Rating, Rating) {
    loop {
        let a = random_positive(rng);
        let b = random_positive(rng);
        if a > b {
            return (a, b);
        }
        if b > a {
            return (b, a);
        }
    }
}

/// Runs `trials` randomized R1 and R2 checks from states produced by `gen`.
pub fn run_suite<M, G>(metric: &M, trials: usize, rng: &mut SimRng, mut gen: G) -> SuiteReport
where
    M: TrustMetric,
    G: FnMut(&mut SimRng) -> M::State,
{
    let mut report = SuiteReport {
        metric: metric.name().to_string(),
        trials,
        r1: RequirementReport::default(),
        r2: RequirementReport::default(),
    };
    for _ in 0..trials {
        let base = gen(rng);
        let (r1, r2) = random_ordered_pair(rng);
        report
            .r1
            .record(check_r1(metric, &base, r1, r2).expect("pair is ordered and positive"));
        let base = gen(rng);
        let r = random_positive(rng);
        report
            .r2
            .record(check_r2(metric, &base, r).expect("rating is positive"));
    }
    report
}

/// WSES states: mostly uniform on `[0, 1]^2`, with the empty state and the
/// two axes mixed in.
pub fn random_wses_state(rng: &mut SimRng) -> RatingState {
    let p: f64 = rng.gen();
    let n: f64 = rng.gen();
    match rng.gen_range(0..20u32) {
        0 => RatingState::EMPTY,
        1 => RatingState::new(p, 0.0),
        2 => RatingState::new(0.0, n),
        _ => RatingState::new(p, n),
    }
}

/// A metric state obtained by folding up to `max_len` random ratings.
pub fn random_folded<M: TrustMetric>(metric: &M, max_len: usize, rng: &mut SimRng) -> M::State {
    let len = rng.gen_range(0..=max_len);
    let ratings: Vec<Rating> = (0..len).map(|_| random_rating(rng)).collect();
    metric.fold(ratings)
}

/// Longest random history used for the continuous metric.
pub const CONTINUOUS_MAX_HISTORY: usize = 8;

/// Runs the randomized suite for all three metrics. Each metric gets its own
/// stream derived from `seed`.
pub fn check_all(cfg: &MetricConfig, trials: usize, seed: u64) -> Result<Vec<SuiteReport>> {
    cfg.validate()?;
    if trials == 0 {
        return Err(Error::InvalidConfig("trials must be positive".into()));
    }
    let continuous = Continuous::new(*cfg);
    let weighted = Weighted::new(*cfg);
    let wses = Wses::new(*cfg);
    let weighted_max = cfg.storage_cap.saturating_mul(2).max(2);

    let mut rng = rng::derive(seed, 0);
    let c = run_suite(&continuous, trials, &mut rng, |rng| {
        random_folded(&continuous, CONTINUOUS_MAX_HISTORY, rng)
    });
    let mut rng = rng::derive(seed, 1);
    let w = run_suite(&weighted, trials, &mut rng, |rng| {
        random_folded(&weighted, weighted_max, rng)
    });
    let mut rng = rng::derive(seed, 2);
    let s = run_suite(&wses, trials, &mut rng, random_wses_state);
    Ok(vec![c, w, s])
}
