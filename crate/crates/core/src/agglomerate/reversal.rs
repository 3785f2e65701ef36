use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::trace::MergeTrace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReversalKind {
    /// The child's upper bound lies above the parent's lower bound.
    IntervalOverlap,
    /// The child's chosen fusion value lies above the parent's.
    FusionInversion,
}

/// A nested pair of merges whose heights invert.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReversalReport {
    pub child: usize,
    pub parent: usize,
    pub kind: ReversalKind,
    pub child_height: f64,
    pub parent_height: f64,
}

/// Every height inversion between a merge and the merge that absorbs it,
/// ordered by parent creation then child. The two kinds are reported
/// independently, so one nested pair may yield both.
pub fn detect_reversals(trace: &MergeTrace) -> Vec<ReversalReport> {
    let by_node: HashMap<usize, _> = trace.merges().map(|r| (r.node, r)).collect();
    let mut out = Vec::new();
    for parent in trace.merges() {
        for child in parent.children.iter().filter_map(|c| by_node.get(c)) {
            if child.upper > parent.lower {
                out.push(ReversalReport {
                    child: child.node,
                    parent: parent.node,
                    kind: ReversalKind::IntervalOverlap,
                    child_height: child.upper,
                    parent_height: parent.lower,
                });
            }
            if let (Some(cf), Some(pf)) = (child.fusion, parent.fusion) {
                if cf > pf {
                    out.push(ReversalReport {
                        child: child.node,
                        parent: parent.node,
                        kind: ReversalKind::FusionInversion,
                        child_height: cf,
                        parent_height: pf,
                    });
                }
            }
        }
    }
    out
}

/// Sets the reversal flag on every child merge named in a report and on
/// the iterations that created them.
pub(crate) fn mark_reversals(trace: &mut MergeTrace) {
    let flagged: Vec<usize> = detect_reversals(trace).iter().map(|r| r.child).collect();
    for it in &mut trace.iterations {
        for rec in &mut it.merges {
            rec.reversal = flagged.contains(&rec.node);
        }
        it.reversal = it.merges.iter().any(|r| r.reversal);
    }
}
