use std::collections::{BTreeMap, HashSet};
use std::fmt::Write;

use super::pair_group::PairRun;
use super::ClusterError;
use crate::linkage::Method;
use crate::proximity::ProximityMatrix;
use crate::tree::{to_newick_extended, tree_equal, Node, ValuedTree, DEFAULT_TREE_TOLERANCE};

pub const DEFAULT_SOLUTION_LIMIT: usize = 1000;

/// Exact key of a search state: each active cluster's subtree (topology
/// and height bits) followed by the bits of every active distance.
fn state_key(run: &PairRun) -> String {
    fn subtree(nodes: &[Node], id: usize, out: &mut String) {
        match &nodes[id] {
            Node::Leaf { individual } => write!(out, "{individual}").unwrap(),
            Node::Internal {
                children, lower, ..
            } => {
                let mut parts: Vec<String> = children
                    .iter()
                    .map(|&c| {
                        let mut s = String::new();
                        subtree(nodes, c, &mut s);
                        s
                    })
                    .collect();
                parts.sort();
                write!(out, "({}){:x}", parts.join(","), lower.to_bits()).unwrap();
            }
        }
    }
    let mut key = String::new();
    for c in run.state.clusters() {
        subtree(&run.nodes, c.node, &mut key);
        key.push(';');
    }
    let k = run.state.len();
    for a in 0..k {
        for b in a + 1..k {
            write!(key, "{:x},", run.state.distance(a, b).to_bits()).unwrap();
        }
    }
    key
}

struct Search<'a> {
    m: &'a ProximityMatrix,
    method: Method,
    limit: usize,
    seen: HashSet<String>,
    /// Distinct trees bucketed by topology.
    found: BTreeMap<Vec<Vec<usize>>, Vec<ValuedTree>>,
    count: usize,
}

impl Search<'_> {
    fn visit(&mut self, run: PairRun) -> Result<(), ClusterError> {
        let candidates = run.candidates();
        if candidates.is_empty() {
            let (tree, _) = run.finish(self.m, self.method);
            return self.record(tree);
        }
        if !self.seen.insert(state_key(&run)) {
            return Ok(());
        }
        for &(a, b) in &candidates {
            let mut next = run.clone();
            next.merge(self.method, a, b, candidates.len())?;
            self.visit(next)?;
        }
        Ok(())
    }

    fn record(&mut self, tree: ValuedTree) -> Result<(), ClusterError> {
        let mut topology: Vec<Vec<usize>> = tree
            .internal_postorder()
            .iter()
            .map(|&id| tree.members(id))
            .collect();
        topology.sort();
        let bucket = self.found.entry(topology).or_default();
        if bucket
            .iter()
            .any(|t| tree_equal(t, &tree, DEFAULT_TREE_TOLERANCE))
        {
            return Ok(());
        }
        self.count += 1;
        if self.count > self.limit {
            return Err(ClusterError::TooManySolutions { limit: self.limit });
        }
        bucket.push(tree);
        Ok(())
    }
}

/// Every distinct valued tree the pair-group algorithm can produce under
/// some resolution of ties among shortest pairs, in canonical form and
/// sorted by extended Newick string.
pub fn enumerate_pair_group(
    m: &ProximityMatrix,
    method: Method,
    limit: usize,
) -> Result<Vec<ValuedTree>, ClusterError> {
    method.validate()?;
    if m.is_empty() {
        return Err(ClusterError::EmptyInput);
    }
    let mut search = Search {
        m,
        method,
        limit,
        seen: HashSet::new(),
        found: BTreeMap::new(),
        count: 0,
    };
    search.visit(PairRun::new(m))?;
    let mut trees: Vec<(String, ValuedTree)> = search
        .found
        .into_values()
        .flatten()
        .map(|t| {
            let canon = ValuedTree::new(t.canonicalized()).expect("canonical form keeps heights");
            (to_newick_extended(&canon), canon)
        })
        .collect();
    trees.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(trees.into_iter().map(|(_, t)| t).collect())
}
