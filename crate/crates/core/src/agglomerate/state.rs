use crate::proximity::{condensed_index, tie_key, ProximityMatrix};
use crate::union_find::UnionFind;

/// An active cluster: the tree node that represents it and its individuals.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterRecord {
    pub node: usize,
    /// Ascending; never empty.
    pub members: Vec<usize>,
}

impl ClusterRecord {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub(crate) fn first(&self) -> usize {
        self.members[0]
    }
}

/// Active clusters of one iteration with their pairwise distances.
///
/// Clusters are kept in order of their smallest member. Each distance is
/// stored with its tie key (the value rounded to the matrix precision).
#[derive(Debug, Clone)]
pub struct ClusterState {
    clusters: Vec<ClusterRecord>,
    dist: Vec<f64>,
    keys: Vec<f64>,
    precision: Option<u32>,
    iteration: usize,
}

impl ClusterState {
    /// One singleton cluster per individual; node ids equal individual indices.
    pub fn initial(m: &ProximityMatrix) -> ClusterState {
        let clusters = (0..m.len())
            .map(|i| ClusterRecord {
                node: i,
                members: vec![i],
            })
            .collect();
        ClusterState::new(clusters, m.values().to_vec(), m.precision())
    }

    /// `dist` is condensed over `clusters`, which must be ordered by their
    /// smallest member.
    pub fn new(
        clusters: Vec<ClusterRecord>,
        dist: Vec<f64>,
        precision: Option<u32>,
    ) -> ClusterState {
        let k = clusters.len();
        assert_eq!(
            dist.len(),
            k * k.saturating_sub(1) / 2,
            "condensed length mismatch"
        );
        assert!(
            clusters.windows(2).all(|w| w[0].first() < w[1].first()),
            "clusters must be ordered by smallest member"
        );
        let keys = dist.iter().map(|&d| tie_key(d, precision)).collect();
        ClusterState {
            clusters,
            dist,
            keys,
            precision,
            iteration: 0,
        }
    }

    pub(crate) fn advance(&mut self, clusters: Vec<ClusterRecord>, dist: Vec<f64>) {
        let next = ClusterState::new(clusters, dist, self.precision);
        self.iteration += 1;
        self.clusters = next.clusters;
        self.dist = next.dist;
        self.keys = next.keys;
    }

    pub fn clusters(&self) -> &[ClusterRecord] {
        &self.clusters
    }

    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    pub fn iteration(&self) -> usize {
        self.iteration
    }

    pub fn precision(&self) -> Option<u32> {
        self.precision
    }

    pub fn distance(&self, a: usize, b: usize) -> f64 {
        let (a, b) = (a.min(b), a.max(b));
        self.dist[condensed_index(self.len(), a, b)]
    }

    fn key(&self, a: usize, b: usize) -> f64 {
        let (a, b) = (a.min(b), a.max(b));
        self.keys[condensed_index(self.len(), a, b)]
    }

    /// Smallest tie key among active pairs and the smallest stored distance
    /// carrying it, or `None` with fewer than two clusters.
    pub fn shortest(&self) -> Option<(f64, f64)> {
        let mut best: Option<(f64, f64)> = None;
        for (&key, &d) in self.keys.iter().zip(&self.dist) {
            best = match best {
                None => Some((key, d)),
                Some((bk, bd)) if key < bk || (key == bk && d < bd) => Some((key, d)),
                keep => keep,
            };
        }
        best
    }

    /// Active pairs `(a, b)`, `a < b`, whose tie key equals `key`.
    pub fn pairs_at(&self, key: f64) -> Vec<(usize, usize)> {
        let k = self.len();
        let mut out = Vec::new();
        for a in 0..k {
            for b in a + 1..k {
                if self.key(a, b) == key {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

/// Connected components of the graph whose edges join clusters at
/// distance `d_lower` (compared by tie key). Clusters with no such edge
/// form singleton groups. Groups and their members are listed by cluster
/// index, which is also smallest-member order.
pub fn tie_groups(state: &ClusterState, d_lower: f64) -> Vec<Vec<usize>> {
    let key = tie_key(d_lower, state.precision());
    let mut uf = UnionFind::new(state.len());
    for (a, b) in state.pairs_at(key) {
        uf.union(a, b);
    }
    uf.groups()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proximity::MatrixFormat;

    #[test]
    fn toy_first_iteration() {
        let m =
            ProximityMatrix::parse("0 2 4 7\n2 0 2 5\n4 2 0 3\n7 5 3 0\n", MatrixFormat::Square)
                .unwrap();
        let s = ClusterState::initial(&m);
        assert_eq!(s.shortest(), Some((2.0, 2.0)));
        assert_eq!(tie_groups(&s, 2.0), vec![vec![0, 1, 2], vec![3]]);
    }

    #[test]
    fn nine_cluster_configuration() {
        // Shortest edges X2-X3, X4-X5, X5-X6, X7-X8, X7-X9, X8-X9.
        let edges = [(1, 2), (3, 4), (4, 5), (6, 7), (6, 8), (7, 8)];
        let m = ProximityMatrix::from_fn(9, |i, j| {
            if edges.contains(&(i, j)) {
                1.0
            } else {
                2.0 + (i + j) as f64
            }
        })
        .unwrap();
        let s = ClusterState::initial(&m);
        assert_eq!(
            tie_groups(&s, 1.0),
            vec![vec![0], vec![1, 2], vec![3, 4, 5], vec![6, 7, 8]]
        );
    }

    #[test]
    fn unique_shortest_pair() {
        let m = ProximityMatrix::from_fn(5, |i, j| (i * 7 + j * 3) as f64 + 1.0).unwrap();
        let s = ClusterState::initial(&m);
        let (_, d) = s.shortest().unwrap();
        let groups = tie_groups(&s, d);
        assert_eq!(groups.iter().filter(|g| g.len() == 2).count(), 1);
        assert_eq!(groups.iter().filter(|g| g.len() == 1).count(), 3);
    }

    #[test]
    fn precision_creates_ties() {
        let m = ProximityMatrix::from_fn(3, |i, j| match (i, j) {
            (0, 1) => 0.273,
            (1, 2) => 0.268,
            _ => 0.9,
        })
        .unwrap();
        let exact = ClusterState::initial(&m);
        let (_, d) = exact.shortest().unwrap();
        assert_eq!(tie_groups(&exact, d), vec![vec![0], vec![1, 2]]);
        let rounded = ClusterState::initial(&m.round_to_precision(2));
        let (_, d) = rounded.shortest().unwrap();
        assert_eq!(tie_groups(&rounded, d), vec![vec![0, 1, 2]]);
    }
}
