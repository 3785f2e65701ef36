//! Agglomerative hierarchical clustering that stays unique in the presence
//! of tied proximities.
//!
//! Whenever several pairs of clusters sit at the shortest distance, the
//! variable-group algorithm merges every connected group of them at once
//! and records a fusion interval instead of a single height. The result is
//! a multidendrogram ([`MultivaluedTree`]).
//!
//! ```
//! use multidendrogram::{cluster_variable_group, to_newick_extended, FusionPolicy, Method};
//! use multidendrogram::{MatrixFormat, ProximityMatrix};
//!
//! let m = ProximityMatrix::parse("0 2 4 7\n2 0 2 5\n4 2 0 3\n7 5 3 0\n", MatrixFormat::Square)?;
//! let (tree, _trace) = cluster_variable_group(&m, Method::UnweightedAverage, FusionPolicy::Interval)?;
//! assert_eq!(to_newick_extended(&tree), "((x1,x2,x3)[2.000,4.000],x4)[5.000,5.000];");
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod agglomerate;
pub mod cli;
pub mod linkage;
pub mod proximity;
pub mod render;
pub mod tree;
mod union_find;

pub use agglomerate::{
    cluster_pair_group, cluster_variable_group, detect_reversals, enumerate_pair_group,
    ClusterError, FusionPolicy, MergeTrace, TieBreak,
};
pub use linkage::{pg_distance, vg_distance, Method};
pub use proximity::{MatrixFormat, ProximityMatrix};
pub use tree::{
    cophenetic_matrix, parse_newick_extended, to_newick_extended, tree_equal, MultivaluedTree,
    ValuedTree,
};
