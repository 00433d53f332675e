//! Searching for small almost complete subsets of the conic.

pub mod coverage;
pub mod exhaustive;
pub mod greedy;
pub mod pgl;
pub mod witness;

use serde::{Deserialize, Serialize};

pub use coverage::{is_ac_subset, is_minimal_ac, CoverageState};
pub use exhaustive::{exhaustive_min_ac, ExhaustiveConfig, ExhaustiveOutcome};
pub use greedy::{greedy_search, randomized_greedy, RandomizedConfig};
pub use witness::{format_witness, parse_witness};

/// One greedy step: `w` points were chosen before it, `delta` points became
/// covered, `uncovered` remain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub w: usize,
    pub delta: usize,
    pub uncovered: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub q: u64,
    pub size: usize,
    /// Parameters in the order they were chosen.
    pub witness: Vec<crate::geometry::Param>,
    pub is_ac: bool,
    /// Filled in on request, see [`SearchResult::check_minimal`].
    pub is_minimal: Option<bool>,
    pub seed: Option<u64>,
    pub restarts: u32,
    pub step_log: Vec<StepRecord>,
}

impl SearchResult {
    pub fn check_minimal(&mut self, model: &crate::geometry::ConicModel) -> bool {
        let minimal = self.is_ac && is_minimal_ac(model, &self.witness).unwrap_or(false);
        self.is_minimal = Some(minimal);
        minimal
    }
}
