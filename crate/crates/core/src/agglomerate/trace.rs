use serde::{Deserialize, Serialize};

/// One supercluster formed from two or more clusters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MergeRecord {
    /// Tree node created for the supercluster.
    pub node: usize,
    /// Tree nodes of the merged clusters, ordered by smallest member.
    pub children: Vec<usize>,
    /// Individuals in the supercluster, ascending.
    pub members: Vec<usize>,
    pub lower: f64,
    pub upper: f64,
    pub fusion: Option<f64>,
    pub reversal: bool,
}

/// One pass of the agglomeration loop.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Iteration {
    pub d_lower: f64,
    /// Number of active cluster pairs sitting at the shortest distance.
    pub tied_pairs: usize,
    /// Partition of the active clusters (by tree node) into superclusters.
    pub groups: Vec<Vec<usize>>,
    pub merges: Vec<MergeRecord>,
    /// Shortest distance among the new superclusters; absent after the last merge.
    pub d_next: Option<f64>,
    pub reversal: bool,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct MergeTrace {
    pub iterations: Vec<Iteration>,
    pub warnings: Vec<String>,
}

impl MergeTrace {
    pub fn merges(&self) -> impl Iterator<Item = &MergeRecord> {
        self.iterations.iter().flat_map(|it| it.merges.iter())
    }

    /// True when no iteration saw more than one shortest pair.
    pub fn tie_free(&self) -> bool {
        self.iterations.iter().all(|it| it.tied_pairs <= 1)
    }

    pub fn has_reversals(&self) -> bool {
        self.iterations.iter().any(|it| it.reversal)
    }
}
