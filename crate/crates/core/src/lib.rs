//! Trust establishment for self-organising systems.
//!
//! Two families of trust are provided side by side:
//!
//! * [`metrics`]: explicit-rating reputation metrics (continuous mean,
//!   weighted signed mass and weighted simple exponential smoothing) together
//!   with an executable harness for the two fairness requirements every
//!   rating metric should satisfy.
//! * [`simtrust`]: tag-based trust that derives keyword semantics for user
//!   tags via tf-idf and recommends items from similar users.
//!
//! [`tdgsim`] runs a deterministic desktop-grid simulation in which agents
//! delegate work based on reputation and malicious agents join mid-run.
//! [`hybrid`] combines both families: tag-filtered item ratings and per-skill
//! task routing.

pub mod error;
pub mod hybrid;
pub mod metrics;
pub mod rng;
pub mod simtrust;
pub mod tdgsim;

pub use error::{Error, Result};
