//! Versioned JSON document describing a clustering run.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{MultivaluedTree, Node, TreeError};
use crate::agglomerate::{FusionPolicy, MergeTrace};
use crate::linkage::Method;

pub const RECORD_FORMAT_VERSION: &str = "1";

/// One internal node. Node ids are dense: leaves are `0..n` by individual,
/// merges follow with children listed before parents.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MergeSummary {
    pub node: usize,
    pub children: Vec<usize>,
    pub members: Vec<String>,
    pub lower: f64,
    pub upper: f64,
    pub fusion: Option<f64>,
    pub reversal: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecordDocument {
    pub format_version: String,
    pub labels: Vec<String>,
    pub method: Option<String>,
    pub alpha: Option<f64>,
    pub policy: Option<FusionPolicy>,
    pub precision: Option<u32>,
    pub merges: Vec<MergeSummary>,
    pub trace: MergeTrace,
}

pub fn to_records(tree: &MultivaluedTree, trace: &MergeTrace) -> RecordDocument {
    let n = tree.leaf_count();
    let mut order: Vec<usize> = tree.internal_postorder();
    let mut by_id = order.clone();
    by_id.sort_unstable();
    let topological = by_id
        .iter()
        .all(|&id| tree.node(id).children().iter().all(|&c| c < id));
    if topological {
        order = by_id;
    }
    let mut dense: HashMap<usize, usize> = HashMap::new();
    for (id, node) in tree.nodes().iter().enumerate() {
        if let Node::Leaf { individual } = node {
            dense.insert(id, *individual);
        }
    }
    for (k, &id) in order.iter().enumerate() {
        dense.insert(id, n + k);
    }
    let flagged: HashMap<usize, bool> = trace.merges().map(|r| (r.node, r.reversal)).collect();
    let merges = order
        .iter()
        .map(|&id| {
            let node = tree.node(id);
            let (lower, upper) = node.interval();
            MergeSummary {
                node: dense[&id],
                children: node.children().iter().map(|c| dense[c]).collect(),
                members: tree
                    .members(id)
                    .into_iter()
                    .map(|i| tree.labels()[i].clone())
                    .collect(),
                lower,
                upper,
                fusion: node.fusion(),
                reversal: flagged.get(&id).copied().unwrap_or(false),
            }
        })
        .collect();
    RecordDocument {
        format_version: RECORD_FORMAT_VERSION.to_string(),
        labels: tree.labels().to_vec(),
        method: tree.method().map(|m| m.name().to_string()),
        alpha: tree.method().and_then(|m| m.alpha()),
        policy: tree.policy(),
        precision: tree.precision(),
        merges,
        trace: trace.clone(),
    }
}

impl RecordDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record documents always serialize")
    }

    pub fn from_json(text: &str) -> Result<RecordDocument, TreeError> {
        let doc: RecordDocument =
            serde_json::from_str(text).map_err(|e| TreeError::Records(e.to_string()))?;
        if doc.format_version != RECORD_FORMAT_VERSION {
            return Err(TreeError::Records(format!(
                "unsupported format version `{}`",
                doc.format_version
            )));
        }
        Ok(doc)
    }

    /// Rebuilds the tree the document describes.
    pub fn to_tree(&self) -> Result<MultivaluedTree, TreeError> {
        let n = self.labels.len();
        let mut nodes: Vec<Node> = (0..n).map(|i| Node::Leaf { individual: i }).collect();
        for (k, m) in self.merges.iter().enumerate() {
            if m.node != n + k {
                return Err(TreeError::Records(format!(
                    "merge {k} has node id {}",
                    m.node
                )));
            }
            nodes.push(Node::Internal {
                children: m.children.clone(),
                lower: m.lower,
                upper: m.upper,
                fusion: m.fusion,
            });
        }
        let method = match &self.method {
            Some(name) => Some(
                Method::from_name(name, self.alpha)
                    .map_err(|e| TreeError::Records(e.to_string()))?,
            ),
            None => None,
        };
        if n == 0 {
            return Err(TreeError::Records("no labels".into()));
        }
        let root = nodes.len() - 1;
        Ok(
            MultivaluedTree::from_parts(self.labels.clone(), nodes, root)?.with_tags(
                self.precision,
                method,
                self.policy,
            ),
        )
    }
}
