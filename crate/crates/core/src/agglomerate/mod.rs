//! Agglomeration engines.
//!
//! [`cluster_variable_group`] merges every group of clusters connected by
//! shortest distances at once and yields a unique multivalued tree. The
//! pair-group engine ([`cluster_pair_group`], [`enumerate_pair_group`])
//! merges one pair per step and exists to cross-check it.

mod enumerate;
mod fusion;
mod pair_group;
mod reversal;
mod state;
mod trace;
mod variable_group;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linkage::LinkageError;

pub use enumerate::{enumerate_pair_group, DEFAULT_SOLUTION_LIMIT};
pub use fusion::{fusion_value, Fusion};
pub use pair_group::{cluster_pair_group, TieBreak};
pub use reversal::{detect_reversals, ReversalKind, ReversalReport};
pub use state::{tie_groups, ClusterRecord, ClusterState};
pub use trace::{Iteration, MergeRecord, MergeTrace};
pub use variable_group::cluster_variable_group;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClusterError {
    #[error("proximity matrix has no individuals")]
    EmptyInput,
    #[error("more than {limit} distinct pair-group trees")]
    TooManySolutions { limit: usize },
    #[error("the interval-only policy has no scalar fusion value")]
    PolicyUnavailable,
    #[error(transparent)]
    Linkage(#[from] LinkageError),
}

/// How a scalar height is picked inside a fusion interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FusionPolicy {
    /// Keep only the interval.
    Interval,
    /// The method's own aggregate of the within-group distances.
    Natural,
    /// Always the lower bound.
    Shortest,
}

impl FusionPolicy {
    pub fn name(&self) -> &'static str {
        match self {
            FusionPolicy::Interval => "interval",
            FusionPolicy::Natural => "natural",
            FusionPolicy::Shortest => "shortest",
        }
    }
}

impl fmt::Display for FusionPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FusionPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "interval" | "interval-only" | "interval_only" => Ok(FusionPolicy::Interval),
            "natural" => Ok(FusionPolicy::Natural),
            "shortest" => Ok(FusionPolicy::Shortest),
            other => Err(format!("unknown fusion policy `{other}`")),
        }
    }
}
