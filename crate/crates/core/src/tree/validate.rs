use std::fmt;

use super::{MultivaluedTree, Node};

/// A failed axiom. n-tree axioms are numbered (i)–(iv); multivalued-tree
/// axioms are (i)–(iii) with the same numbering scheme.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// n-tree (i): the root does not cover every individual.
    RootIncomplete { missing: Vec<usize> },
    /// n-tree (ii): an internal node with no children.
    EmptyNode { node: usize },
    /// n-tree (iii): an individual with no leaf, or more than one.
    Singleton { individual: usize, leaves: usize },
    /// n-tree (iv): a node reached through two parents, so clusters overlap
    /// without nesting.
    NotNested { node: usize },
    /// Multivalued (i): `0 <= h_l <= h_u` fails.
    IntervalOrder { node: usize, lower: f64, upper: f64 },
    /// Multivalued (ii): an internal node with a zero bound.
    ZeroHeight { node: usize, lower: f64, upper: f64 },
    /// Multivalued (iii), reported as a reversal: `h_l(child) >= h_l(parent)`.
    Reversal {
        child: usize,
        parent: usize,
        child_lower: f64,
        parent_lower: f64,
    },
    /// A chosen fusion value outside its node's interval.
    FusionOutsideInterval { node: usize, fusion: f64 },
}

impl Violation {
    pub fn is_reversal(&self) -> bool {
        matches!(self, Violation::Reversal { .. })
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::RootIncomplete { missing } => {
                write!(f, "n-tree (i): root misses individuals {missing:?}")
            }
            Violation::EmptyNode { node } => write!(f, "n-tree (ii): node {node} is empty"),
            Violation::Singleton { individual, leaves } => write!(
                f,
                "n-tree (iii): individual {individual} appears in {leaves} leaves"
            ),
            Violation::NotNested { node } => {
                write!(f, "n-tree (iv): node {node} belongs to two clusters")
            }
            Violation::IntervalOrder { node, lower, upper } => write!(
                f,
                "multivalued (i): node {node} has interval [{lower}, {upper}]"
            ),
            Violation::ZeroHeight { node, lower, upper } => write!(
                f,
                "multivalued (ii): internal node {node} has interval [{lower}, {upper}]"
            ),
            Violation::Reversal {
                child,
                parent,
                child_lower,
                parent_lower,
            } => write!(
                f,
                "reversal: node {child} (h_l={child_lower}) is not below its parent {parent} (h_l={parent_lower})"
            ),
            Violation::FusionOutsideInterval { node, fusion } => {
                write!(f, "node {node} has fusion value {fusion} outside its interval")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    /// No violations other than reversals.
    pub fn passed(&self) -> bool {
        self.violations.iter().all(Violation::is_reversal)
    }

    pub fn reversals(&self) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(|v| v.is_reversal())
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every axiom independently.
pub fn validate(tree: &MultivaluedTree) -> ValidationReport {
    let mut violations = Vec::new();
    let n = tree.leaf_count();
    let mut visits = vec![0usize; tree.nodes().len()];
    let mut leaf_count = vec![0usize; n];
    let mut stack = vec![tree.root()];
    while let Some(id) = stack.pop() {
        visits[id] += 1;
        if visits[id] > 1 {
            violations.push(Violation::NotNested { node: id });
            continue;
        }
        match &tree.nodes()[id] {
            Node::Leaf { individual } => leaf_count[*individual] += 1,
            Node::Internal { children, .. } => {
                if children.is_empty() {
                    violations.push(Violation::EmptyNode { node: id });
                }
                stack.extend(children.iter().copied());
            }
        }
    }
    let missing: Vec<usize> = (0..n).filter(|&i| leaf_count[i] == 0).collect();
    if !missing.is_empty() {
        violations.push(Violation::RootIncomplete { missing });
    }
    for (individual, &leaves) in leaf_count.iter().enumerate() {
        if leaves > 1 {
            violations.push(Violation::Singleton { individual, leaves });
        }
    }

    let parents = tree.parents();
    for id in tree.internal_postorder() {
        let (lower, upper) = tree.node(id).interval();
        if !(lower >= 0.0 && lower <= upper) {
            violations.push(Violation::IntervalOrder {
                node: id,
                lower,
                upper,
            });
        }
        if lower == 0.0 || upper == 0.0 {
            violations.push(Violation::ZeroHeight {
                node: id,
                lower,
                upper,
            });
        }
        if let Some(fusion) = tree.node(id).fusion() {
            if !(lower <= fusion && fusion <= upper) {
                violations.push(Violation::FusionOutsideInterval { node: id, fusion });
            }
        }
        if let Some(parent) = parents[id] {
            let (parent_lower, _) = tree.node(parent).interval();
            if lower >= parent_lower {
                violations.push(Violation::Reversal {
                    child: id,
                    parent,
                    child_lower: lower,
                    parent_lower,
                });
            }
        }
    }
    ValidationReport { violations }
}
