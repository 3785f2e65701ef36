//! Multivalued trees: n-trees whose internal nodes carry a fusion interval
//! `[h_l, h_u]` and, optionally, one chosen fusion height inside it.

mod cophenetic;
pub(crate) mod newick;
mod records;
mod validate;

use std::collections::BTreeMap;
use std::ops::Deref;

use thiserror::Error;

use crate::agglomerate::FusionPolicy;
use crate::linkage::Method;
use crate::proximity::ProximityError;

pub use cophenetic::cophenetic_matrix;
pub use newick::{parse_newick_extended, to_newick_extended};
pub use records::{to_records, MergeSummary, RecordDocument, RECORD_FORMAT_VERSION};
pub use validate::{validate, ValidationReport, Violation};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TreeError {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("node {0} has no scalar height; choose a fusion policy")]
    UnresolvedHeights(usize),
    #[error("malformed tree: {0}")]
    Malformed(String),
    #[error("tree is not a valued tree: node {0} has h_l != h_u")]
    NotValued(usize),
    #[error("records document: {0}")]
    Records(String),
    #[error(transparent)]
    Proximity(#[from] ProximityError),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Leaf {
        individual: usize,
    },
    Internal {
        children: Vec<usize>,
        lower: f64,
        upper: f64,
        fusion: Option<f64>,
    },
}

impl Node {
    pub fn is_leaf(&self) -> bool {
        matches!(self, Node::Leaf { .. })
    }

    pub fn children(&self) -> &[usize] {
        match self {
            Node::Leaf { .. } => &[],
            Node::Internal { children, .. } => children,
        }
    }

    /// `(h_l, h_u)`; leaves sit at `(0, 0)`.
    pub fn interval(&self) -> (f64, f64) {
        match *self {
            Node::Leaf { .. } => (0.0, 0.0),
            Node::Internal { lower, upper, .. } => (lower, upper),
        }
    }

    pub fn fusion(&self) -> Option<f64> {
        match *self {
            Node::Leaf { .. } => None,
            Node::Internal { fusion, .. } => fusion,
        }
    }
}

/// Arena-backed multivalued tree over labelled individuals.
#[derive(Debug, Clone, PartialEq)]
pub struct MultivaluedTree {
    labels: Vec<String>,
    nodes: Vec<Node>,
    root: usize,
    precision: Option<u32>,
    method: Option<Method>,
    policy: Option<FusionPolicy>,
}

/// Heights attached to one cluster, keyed elsewhere by its member labels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClusterHeights {
    pub lower: f64,
    pub upper: f64,
    pub fusion: Option<f64>,
}

impl MultivaluedTree {
    /// Assembles a tree, checking only that node references are in range
    /// and the structure is acyclic; axiom checks live in [`validate`].
    pub fn from_parts(
        labels: Vec<String>,
        nodes: Vec<Node>,
        root: usize,
    ) -> Result<MultivaluedTree, TreeError> {
        if root >= nodes.len() {
            return Err(TreeError::Malformed(format!("root {root} out of range")));
        }
        for (id, node) in nodes.iter().enumerate() {
            match node {
                Node::Leaf { individual } if *individual >= labels.len() => {
                    return Err(TreeError::Malformed(format!(
                        "leaf {id} refers to individual {individual} of {}",
                        labels.len()
                    )))
                }
                Node::Internal { children, .. } => {
                    if let Some(&c) = children.iter().find(|&&c| c >= nodes.len() || c == id) {
                        return Err(TreeError::Malformed(format!(
                            "node {id} has invalid child {c}"
                        )));
                    }
                }
                _ => {}
            }
        }
        let tree = MultivaluedTree {
            labels,
            nodes,
            root,
            precision: None,
            method: None,
            policy: None,
        };
        // Reject cycles before any recursive walk.
        let mut state = vec![0u8; tree.nodes.len()];
        let mut stack = vec![(tree.root, false)];
        while let Some((id, done)) = stack.pop() {
            if done {
                state[id] = 2;
                continue;
            }
            if state[id] == 1 {
                return Err(TreeError::Malformed(format!("cycle through node {id}")));
            }
            if state[id] == 2 {
                continue;
            }
            state[id] = 1;
            stack.push((id, true));
            for &c in tree.nodes[id].children() {
                if state[c] == 1 {
                    return Err(TreeError::Malformed(format!("cycle through node {c}")));
                }
                stack.push((c, false));
            }
        }
        Ok(tree)
    }

    pub fn single_leaf(label: String) -> MultivaluedTree {
        MultivaluedTree::from_parts(vec![label], vec![Node::Leaf { individual: 0 }], 0)
            .expect("one leaf is well formed")
    }

    pub fn with_tags(
        mut self,
        precision: Option<u32>,
        method: Option<Method>,
        policy: Option<FusionPolicy>,
    ) -> Self {
        self.precision = precision;
        self.method = method;
        self.policy = policy;
        self
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, id: usize) -> &Node {
        &self.nodes[id]
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn precision(&self) -> Option<u32> {
        self.precision
    }

    pub fn method(&self) -> Option<Method> {
        self.method
    }

    pub fn policy(&self) -> Option<FusionPolicy> {
        self.policy
    }

    pub fn leaf_count(&self) -> usize {
        self.labels.len()
    }

    /// Individuals below `id`, ascending.
    pub fn members(&self, id: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![id];
        while let Some(k) = stack.pop() {
            match &self.nodes[k] {
                Node::Leaf { individual } => out.push(*individual),
                Node::Internal { children, .. } => stack.extend(children.iter().copied()),
            }
        }
        out.sort_unstable();
        out
    }

    /// Internal nodes reachable from the root, children before parents.
    pub fn internal_postorder(&self) -> Vec<usize> {
        let mut order = Vec::new();
        let mut stack = vec![(self.root, false)];
        while let Some((id, expanded)) = stack.pop() {
            if self.nodes[id].is_leaf() {
                continue;
            }
            if expanded {
                order.push(id);
            } else {
                stack.push((id, true));
                for &c in self.nodes[id].children().iter().rev() {
                    stack.push((c, false));
                }
            }
        }
        order
    }

    /// Parent of every node reachable from the root.
    pub fn parents(&self) -> Vec<Option<usize>> {
        let mut parent = vec![None; self.nodes.len()];
        for id in self.internal_postorder() {
            for &c in self.nodes[id].children() {
                parent[c] = Some(id);
            }
        }
        parent
    }

    /// Scalar height of a node: the chosen fusion value, or the interval
    /// when it is degenerate. Leaves are at 0.
    pub fn scalar_height(&self, id: usize) -> Option<f64> {
        match self.nodes[id] {
            Node::Leaf { .. } => Some(0.0),
            Node::Internal {
                fusion: Some(f), ..
            } => Some(f),
            Node::Internal { lower, upper, .. } if lower == upper => Some(lower),
            Node::Internal { .. } => None,
        }
    }

    pub fn is_valued(&self) -> bool {
        self.nodes.iter().all(|n| match *n {
            Node::Leaf { .. } => true,
            Node::Internal { lower, upper, .. } => lower == upper,
        })
    }

    /// Copy with every child list ordered by smallest member index.
    pub fn canonicalized(&self) -> MultivaluedTree {
        let mut out = self.clone();
        let min_member: Vec<usize> = (0..self.nodes.len())
            .map(|id| self.members(id).first().copied().unwrap_or(usize::MAX))
            .collect();
        for node in &mut out.nodes {
            if let Node::Internal { children, .. } = node {
                children.sort_by_key(|&c| min_member[c]);
            }
        }
        out
    }

    /// Every internal cluster reachable from the root, keyed by its sorted
    /// member labels.
    pub fn clusters(&self) -> BTreeMap<Vec<String>, ClusterHeights> {
        let mut out = BTreeMap::new();
        for id in self.internal_postorder() {
            let mut key: Vec<String> = self
                .members(id)
                .into_iter()
                .map(|i| self.labels[i].clone())
                .collect();
            key.sort();
            let (lower, upper) = self.nodes[id].interval();
            out.insert(
                key,
                ClusterHeights {
                    lower,
                    upper,
                    fusion: self.nodes[id].fusion(),
                },
            );
        }
        out
    }

    /// Order-independent key identifying the tree exactly: clusters by
    /// label set, heights by bit pattern.
    pub fn canonical_key(&self) -> String {
        use std::fmt::Write;
        let mut leaves: Vec<&String> = self.labels.iter().collect();
        leaves.sort();
        let mut s = format!("{leaves:?}");
        for (members, h) in self.clusters() {
            let _ = write!(
                s,
                "|{}:{:016x}:{:016x}:{}",
                members.join(","),
                h.lower.to_bits(),
                h.upper.to_bits(),
                h.fusion
                    .map_or("-".to_string(), |f| format!("{:016x}", f.to_bits()))
            );
        }
        s
    }
}

/// Same nesting structure over the same labels, with every `h_l` and `h_u`
/// within `tolerance`. Child order and node numbering are ignored.
pub fn tree_equal(a: &MultivaluedTree, b: &MultivaluedTree, tolerance: f64) -> bool {
    let mut la: Vec<&String> = a.labels.iter().collect();
    let mut lb: Vec<&String> = b.labels.iter().collect();
    la.sort();
    lb.sort();
    if la != lb {
        return false;
    }
    let (ca, cb) = (a.clusters(), b.clusters());
    ca.len() == cb.len()
        && ca.iter().zip(cb.iter()).all(|((ka, ha), (kb, hb))| {
            ka == kb
                && (ha.lower - hb.lower).abs() <= tolerance
                && (ha.upper - hb.upper).abs() <= tolerance
        })
}

pub const DEFAULT_TREE_TOLERANCE: f64 = 1e-9;

/// A multivalued tree whose intervals are all degenerate, as produced by
/// pair-group clustering.
#[derive(Debug, Clone, PartialEq)]
pub struct ValuedTree(MultivaluedTree);

impl ValuedTree {
    pub fn new(tree: MultivaluedTree) -> Result<ValuedTree, TreeError> {
        for (id, node) in tree.nodes.iter().enumerate() {
            if let Node::Internal { lower, upper, .. } = *node {
                if lower != upper {
                    return Err(TreeError::NotValued(id));
                }
            }
        }
        Ok(ValuedTree(tree))
    }

    pub fn height(&self, id: usize) -> f64 {
        self.0.nodes[id].interval().0
    }

    pub fn into_inner(self) -> MultivaluedTree {
        self.0
    }
}

impl Deref for ValuedTree {
    type Target = MultivaluedTree;

    fn deref(&self) -> &MultivaluedTree {
        &self.0
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// The toy multidendrogram: `((x1,x2,x3)[2,4],x4)[5,5]`.
    pub fn toy_multidendrogram(fusion: Option<f64>) -> MultivaluedTree {
        let labels = (1..=4).map(|k| format!("x{k}")).collect();
        let mut nodes: Vec<Node> = (0..4).map(|i| Node::Leaf { individual: i }).collect();
        nodes.push(Node::Internal {
            children: vec![0, 1, 2],
            lower: 2.0,
            upper: 4.0,
            fusion,
        });
        nodes.push(Node::Internal {
            children: vec![4, 3],
            lower: 5.0,
            upper: 5.0,
            fusion: fusion.map(|_| 5.0),
        });
        MultivaluedTree::from_parts(labels, nodes, 5)
            .unwrap()
            .with_tags(Some(0), Some(Method::UnweightedAverage), None)
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::toy_multidendrogram;
    use super::*;

    #[test]
    fn members_and_parents() {
        let t = toy_multidendrogram(None);
        assert_eq!(t.members(4), vec![0, 1, 2]);
        assert_eq!(t.members(5), vec![0, 1, 2, 3]);
        assert_eq!(t.parents()[4], Some(5));
        assert_eq!(t.internal_postorder(), vec![4, 5]);
        assert_eq!(t.scalar_height(4), None);
        assert_eq!(t.scalar_height(5), Some(5.0));
    }

    #[test]
    fn equality_ignores_child_order() {
        let t = toy_multidendrogram(None);
        assert!(tree_equal(&t, &t, DEFAULT_TREE_TOLERANCE));
        let mut nodes = t.nodes().to_vec();
        if let Node::Internal { children, .. } = &mut nodes[4] {
            children.reverse();
        }
        if let Node::Internal { children, .. } = &mut nodes[5] {
            children.reverse();
        }
        let shuffled = MultivaluedTree::from_parts(t.labels().to_vec(), nodes, 5).unwrap();
        assert!(tree_equal(&t, &shuffled, DEFAULT_TREE_TOLERANCE));
        assert_eq!(t.canonical_key(), shuffled.canonical_key());
        assert_eq!(shuffled.canonicalized().nodes(), t.nodes());
    }

    #[test]
    fn malformed_parts_rejected() {
        let labels = vec!["a".to_string(), "b".to_string()];
        let cyclic = vec![
            Node::Internal {
                children: vec![1],
                lower: 1.0,
                upper: 1.0,
                fusion: None,
            },
            Node::Internal {
                children: vec![0],
                lower: 1.0,
                upper: 1.0,
                fusion: None,
            },
        ];
        assert!(MultivaluedTree::from_parts(labels.clone(), cyclic, 0).is_err());
        assert!(
            MultivaluedTree::from_parts(labels, vec![Node::Leaf { individual: 5 }], 0).is_err()
        );
    }

    #[test]
    fn valued_tree_requires_degenerate_intervals() {
        assert_eq!(
            ValuedTree::new(toy_multidendrogram(None)),
            Err(TreeError::NotValued(4))
        );
    }
}
