//! Tag-enriched ratings.
//!
//! Two ways of feeding tags into explicit WSES ratings:
//!
//! * [`audience_rating`]: an item's trust as seen by one viewer, folding only
//!   the ratings of raters whose tags make them similar to the viewer.
//! * [`match_task`] / [`record_outcome`]: per-skill WSES reputations that
//!   route typed tasks to the agents that did well on that task type.

mod audience;
mod skills;

pub use audience::{audience_rating, star_to_rating, HybridConfig, LedgerRecord, TaggedRating};
pub use skills::{
    match_task, record_outcome, specialization_run, specialization_to_csv, AgentSpec, SkillProfile,
    SpecializationConfig, SpecializationResult, SpecializationRow, TypedTask,
};
