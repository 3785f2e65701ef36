use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::reversal::mark_reversals;
use super::state::{ClusterRecord, ClusterState};
use super::trace::{Iteration, MergeRecord, MergeTrace};
use super::ClusterError;
use crate::linkage::{pg_distance, Method};
use crate::proximity::ProximityMatrix;
use crate::tree::{MultivaluedTree, Node, ValuedTree};

/// Which of several pairs tied at the shortest distance is merged.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TieBreak {
    /// Lexicographically smallest pair of clusters (by smallest member).
    FirstPair,
    /// Lexicographically largest pair.
    LastPair,
    /// Uniform choice from a ChaCha8 stream seeded with the given value.
    SeededRandom(u64),
}

impl fmt::Display for TieBreak {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TieBreak::FirstPair => f.write_str("first"),
            TieBreak::LastPair => f.write_str("last"),
            TieBreak::SeededRandom(seed) => write!(f, "random(seed={seed})"),
        }
    }
}

impl FromStr for TieBreak {
    type Err = String;

    /// Parses `first`, `last` or `random`; `random` uses seed 0.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "first" | "first-pair" | "first_pair" => Ok(TieBreak::FirstPair),
            "last" | "last-pair" | "last_pair" => Ok(TieBreak::LastPair),
            "random" | "seeded-random" | "seeded_random" => Ok(TieBreak::SeededRandom(0)),
            other => Err(format!("unknown tie-break policy `{other}`")),
        }
    }
}

/// Pair-group search state: active clusters plus the nodes built so far.
#[derive(Debug, Clone)]
pub(crate) struct PairRun {
    pub state: ClusterState,
    pub nodes: Vec<Node>,
    pub trace: MergeTrace,
}

impl PairRun {
    pub fn new(m: &ProximityMatrix) -> PairRun {
        PairRun {
            state: ClusterState::initial(m),
            nodes: (0..m.len()).map(|i| Node::Leaf { individual: i }).collect(),
            trace: MergeTrace::default(),
        }
    }

    /// Pairs of cluster indices tied at the shortest distance, ascending.
    pub fn candidates(&self) -> Vec<(usize, usize)> {
        match self.state.shortest() {
            Some((key, _)) => self.state.pairs_at(key),
            None => Vec::new(),
        }
    }

    /// Merges clusters `a < b` and updates distances by the pair-group
    /// recurrence.
    pub fn merge(
        &mut self,
        method: Method,
        a: usize,
        b: usize,
        tied_pairs: usize,
    ) -> Result<(), ClusterError> {
        let state = &self.state;
        let (ca, cb) = (&state.clusters()[a], &state.clusters()[b]);
        let h = state.distance(a, b);
        let node = self.nodes.len();
        let mut members: Vec<usize> = ca.members.iter().chain(&cb.members).copied().collect();
        members.sort_unstable();
        let merged = ClusterRecord {
            node,
            members: members.clone(),
        };

        let k = state.len();
        let mut clusters = Vec::with_capacity(k - 1);
        let mut origin = Vec::with_capacity(k - 1);
        for c in 0..k {
            if c == a {
                clusters.push(merged.clone());
            } else if c != b {
                clusters.push(state.clusters()[c].clone());
            }
            if c != b {
                origin.push(c);
            }
        }
        let updated = |c: usize| -> Result<f64, ClusterError> {
            let sizes = (ca.size(), cb.size(), state.clusters()[c].size());
            Ok(pg_distance(
                method,
                sizes,
                h,
                state.distance(a, c),
                state.distance(b, c),
            )?)
        };
        let mut dist = Vec::with_capacity((k - 1) * (k - 2) / 2);
        for x in 0..k - 1 {
            for y in x + 1..k - 1 {
                let (ox, oy) = (origin[x], origin[y]);
                dist.push(if ox == a {
                    updated(oy)?
                } else if oy == a {
                    updated(ox)?
                } else {
                    state.distance(ox, oy)
                });
            }
        }

        let children = vec![ca.node, cb.node];
        let groups = (0..k)
            .filter(|&c| c != b)
            .map(|c| {
                if c == a {
                    children.clone()
                } else {
                    vec![state.clusters()[c].node]
                }
            })
            .collect();
        self.nodes.push(Node::Internal {
            children: children.clone(),
            lower: h,
            upper: h,
            fusion: Some(h),
        });
        let record = MergeRecord {
            node,
            children,
            members,
            lower: h,
            upper: h,
            fusion: Some(h),
            reversal: false,
        };
        self.state.advance(clusters, dist);
        self.trace.iterations.push(Iteration {
            d_lower: h,
            tied_pairs,
            groups,
            merges: vec![record],
            d_next: self.state.shortest().map(|(_, d)| d),
            reversal: false,
        });
        Ok(())
    }

    pub fn finish(mut self, m: &ProximityMatrix, method: Method) -> (ValuedTree, MergeTrace) {
        mark_reversals(&mut self.trace);
        let root = self.nodes.len() - 1;
        let tree = MultivaluedTree::from_parts(m.labels().to_vec(), self.nodes, root)
            .expect("agglomeration builds a well-formed tree")
            .with_tags(m.precision(), Some(method), None);
        let tree = ValuedTree::new(tree).expect("pair-group nodes have h_l == h_u");
        (tree, self.trace)
    }
}

/// Classical pair-group agglomeration: one pair merges per iteration, ties
/// among shortest pairs resolved by `tiebreak`.
pub fn cluster_pair_group(
    m: &ProximityMatrix,
    method: Method,
    tiebreak: TieBreak,
) -> Result<(ValuedTree, MergeTrace), ClusterError> {
    method.validate()?;
    if m.is_empty() {
        return Err(ClusterError::EmptyInput);
    }
    let mut rng = match tiebreak {
        TieBreak::SeededRandom(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let mut run = PairRun::new(m);
    loop {
        let candidates = run.candidates();
        let Some(&first) = candidates.first() else {
            break;
        };
        let (a, b) = match (&tiebreak, rng.as_mut()) {
            (TieBreak::LastPair, _) => *candidates.last().unwrap(),
            (TieBreak::SeededRandom(_), Some(rng)) => {
                candidates[rng.gen_range(0..candidates.len())]
            }
            _ => first,
        };
        run.merge(method, a, b, candidates.len())?;
    }
    Ok(run.finish(m, method))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proximity::MatrixFormat;
    use crate::tree::{cophenetic_matrix, to_newick_extended};

    fn toy() -> ProximityMatrix {
        ProximityMatrix::parse("0 2 4 7\n2 0 2 5\n4 2 0 3\n7 5 3 0\n", MatrixFormat::Square)
            .unwrap()
    }

    #[test]
    fn toy_first_pair() {
        let (tree, trace) =
            cluster_pair_group(&toy(), Method::UnweightedAverage, TieBreak::FirstPair).unwrap();
        let heights: Vec<f64> = trace.merges().map(|r| r.lower).collect();
        assert_eq!(heights, vec![2.0, 3.0, 5.0]);
        assert_eq!(trace.merges().next().unwrap().members, vec![0, 1]);
        assert_eq!(
            to_newick_extended(&tree),
            "(((x1,x2)[2.000,2.000],x3)[3.000,3.000],x4)[5.000,5.000];"
        );
        assert_eq!(trace.iterations[0].tied_pairs, 2);
    }

    #[test]
    fn toy_last_pair() {
        let (_, trace) =
            cluster_pair_group(&toy(), Method::UnweightedAverage, TieBreak::LastPair).unwrap();
        assert_eq!(trace.merges().next().unwrap().members, vec![1, 2]);
    }

    #[test]
    fn single_linkage_tiebreak_invariant() {
        let base = cophenetic_matrix(
            &cluster_pair_group(&toy(), Method::Single, TieBreak::FirstPair)
                .unwrap()
                .0,
        )
        .unwrap();
        for tb in [
            TieBreak::LastPair,
            TieBreak::SeededRandom(1),
            TieBreak::SeededRandom(99),
        ] {
            let c = cophenetic_matrix(&cluster_pair_group(&toy(), Method::Single, tb).unwrap().0)
                .unwrap();
            assert_eq!(c.values(), base.values());
        }
    }

    #[test]
    fn two_individuals() {
        let m = ProximityMatrix::from_fn(2, |_, _| 1.5).unwrap();
        let (tree, trace) = cluster_pair_group(&m, Method::Complete, TieBreak::FirstPair).unwrap();
        assert_eq!(tree.height(tree.root()), 1.5);
        assert_eq!(trace.iterations.len(), 1);
    }

    #[test]
    fn seeded_random_is_reproducible() {
        let m = ProximityMatrix::from_fn(7, |i, j| ((i + j) % 3) as f64 + 1.0).unwrap();
        let run = |seed| {
            to_newick_extended(
                &cluster_pair_group(&m, Method::UnweightedAverage, TieBreak::SeededRandom(seed))
                    .unwrap()
                    .0,
            )
        };
        assert_eq!(run(5), run(5));
    }

    #[test]
    fn centroid_reversal() {
        // Near-equilateral triangle: the midpoint of the first pair is closer
        // to the third point than the pair's own distance.
        let pts: [(f64, f64); 3] = [(0.0, 0.0), (1.0, 0.0), (0.5, 0.9)];
        let m = ProximityMatrix::from_fn(3, |i, j| {
            let (a, b) = (pts[i], pts[j]);
            (a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)
        })
        .unwrap();
        let (tree, trace) =
            cluster_pair_group(&m, Method::UnweightedCentroid, TieBreak::FirstPair).unwrap();
        assert!(trace.has_reversals());
        assert!(tree.height(tree.root()) < tree.height(3));
    }

    #[test]
    fn tiebreak_names() {
        assert_eq!("first".parse::<TieBreak>(), Ok(TieBreak::FirstPair));
        assert_eq!("last".parse::<TieBreak>(), Ok(TieBreak::LastPair));
        assert_eq!("random".parse::<TieBreak>(), Ok(TieBreak::SeededRandom(0)));
        assert!("middle".parse::<TieBreak>().is_err());
    }
}
