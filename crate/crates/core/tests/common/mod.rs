#![allow(dead_code)]

use multidendrogram::linkage::{vg_distance, Block, BlockView};
use multidendrogram::{Method, ProximityMatrix};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const TOY: &str = "0 2 4 7\n2 0 2 5\n4 2 0 3\n7 5 3 0\n";

pub fn toy() -> ProximityMatrix {
    ProximityMatrix::parse(TOY, multidendrogram::MatrixFormat::Square).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    a == b || (a - b).abs() <= tol * a.abs().max(b.abs())
}

pub fn random_points(rng: &mut ChaCha8Rng, n: usize, dim: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| (0..dim).map(|_| rng.gen_range(-10.0..10.0)).collect())
        .collect()
}

pub fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// One stage of a random merge history.
#[derive(Debug, Clone)]
pub struct Level {
    /// Individuals of each active cluster.
    pub members: Vec<Vec<usize>>,
    /// Indices into the previous level's clusters merged into each cluster.
    pub parts: Vec<Vec<usize>>,
    /// Full symmetric distance matrix over the active clusters.
    pub dist: Vec<Vec<f64>>,
}

/// Random partition of `0..k` into at least two groups, at least one of
/// which has two or more elements.
pub fn random_partition(rng: &mut ChaCha8Rng, k: usize) -> Vec<Vec<usize>> {
    loop {
        let mut idx: Vec<usize> = (0..k).collect();
        idx.shuffle(rng);
        let groups_wanted = rng.gen_range(2..k.max(3));
        let mut groups: Vec<Vec<usize>> = vec![Vec::new(); groups_wanted];
        for (pos, i) in idx.into_iter().enumerate() {
            let g = if pos < groups_wanted {
                pos
            } else {
                rng.gen_range(0..groups_wanted)
            };
            groups[g].push(i);
        }
        groups.retain(|g| !g.is_empty());
        if groups.len() >= 2 && groups.iter().any(|g| g.len() >= 2) {
            for g in &mut groups {
                g.sort_unstable();
            }
            groups.sort();
            return groups;
        }
    }
}

/// Merges random groups of clusters, updating distances with the block
/// recurrence, until two clusters remain.
pub fn random_history(
    rng: &mut ChaCha8Rng,
    method: Method,
    n: usize,
    d: impl Fn(usize, usize) -> f64,
) -> Vec<Level> {
    let mut levels = vec![Level {
        members: (0..n).map(|i| vec![i]).collect(),
        parts: (0..n).map(|i| vec![i]).collect(),
        dist: (0..n)
            .map(|i| (0..n).map(|j| if i == j { 0.0 } else { d(i, j) }).collect())
            .collect(),
    }];
    while levels.last().unwrap().members.len() > 2 {
        let prev = levels.last().unwrap();
        let k = prev.members.len();
        let groups = random_partition(rng, k);
        let block = |g: &[usize]| {
            let sizes = g.iter().map(|&c| prev.members[c].len()).collect();
            let mut within = Vec::new();
            for (x, &a) in g.iter().enumerate() {
                for &b in &g[x + 1..] {
                    within.push(prev.dist[a][b]);
                }
            }
            Block::new(sizes, within)
        };
        let m = groups.len();
        let mut dist = vec![vec![0.0; m]; m];
        for a in 0..m {
            for b in a + 1..m {
                let cross = groups[a]
                    .iter()
                    .flat_map(|&x| groups[b].iter().map(move |&y| (x, y)))
                    .map(|(x, y)| prev.dist[x][y])
                    .collect();
                let view = BlockView::new(block(&groups[a]), block(&groups[b]), cross);
                let v = vg_distance(method, &view).unwrap();
                dist[a][b] = v;
                dist[b][a] = v;
            }
        }
        let members = groups
            .iter()
            .map(|g| {
                let mut all: Vec<usize> = g
                    .iter()
                    .flat_map(|&c| prev.members[c].iter().copied())
                    .collect();
                all.sort_unstable();
                all
            })
            .collect();
        levels.push(Level {
            members,
            parts: groups,
            dist,
        });
    }
    levels
}

/// Random matrix with integer values in `1..=max`, so ties are common.
pub fn integer_matrix(rng: &mut ChaCha8Rng, n: usize, max: u32) -> ProximityMatrix {
    ProximityMatrix::from_fn(n, |_, _| rng.gen_range(1..=max) as f64)
        .unwrap()
        .with_precision(Some(0))
}

/// Random matrix of continuous values in `(0.5, 100)`.
pub fn continuous_matrix(rng: &mut ChaCha8Rng, n: usize) -> ProximityMatrix {
    ProximityMatrix::from_fn(n, |_, _| rng.gen_range(0.5..100.0)).unwrap()
}

pub fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}
