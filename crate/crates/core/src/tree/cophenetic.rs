use super::{MultivaluedTree, TreeError};
use crate::proximity::{condensed_index, ProximityMatrix};

/// Matrix of lowest-common-ancestor heights. Every internal node needs a
/// scalar height: a chosen fusion value or a degenerate interval.
pub fn cophenetic_matrix(tree: &MultivaluedTree) -> Result<ProximityMatrix, TreeError> {
    let n = tree.leaf_count();
    let mut values = vec![0.0; n * n.saturating_sub(1) / 2];
    for id in tree.internal_postorder() {
        let h = tree
            .scalar_height(id)
            .ok_or(TreeError::UnresolvedHeights(id))?;
        let blocks: Vec<Vec<usize>> = tree
            .node(id)
            .children()
            .iter()
            .map(|&c| tree.members(c))
            .collect();
        for (k, left) in blocks.iter().enumerate() {
            for right in &blocks[k + 1..] {
                for &i in left {
                    for &j in right {
                        values[condensed_index(n, i.min(j), i.max(j))] = h;
                    }
                }
            }
        }
    }
    Ok(ProximityMatrix::new(tree.labels().to_vec(), values)?.with_precision(tree.precision()))
}
