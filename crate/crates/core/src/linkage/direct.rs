//! Non-recursive evaluations used to check the recurrence.

use super::{ordered_sum, LinkageError, Method};
use crate::proximity::ProximityMatrix;

/// Distance between the individuals in `left` and those in `right`,
/// computed straight from the individual-level matrix.
///
/// For joint between-within the matrix must hold `‖x − y‖^α`. Weighted
/// strategies depend on merge history and centroids need coordinates, so
/// those kinds are rejected.
pub fn direct_distance(
    method: Method,
    matrix: &ProximityMatrix,
    left: &[usize],
    right: &[usize],
) -> Result<f64, LinkageError> {
    method.validate()?;
    if left.is_empty() || right.is_empty() {
        return Err(LinkageError::EmptyBlock);
    }
    let cross = || {
        left.iter()
            .flat_map(move |&x| right.iter().map(move |&y| matrix.get(x, y)))
    };
    match method {
        Method::Single => Ok(cross().fold(f64::INFINITY, f64::min)),
        Method::Complete => Ok(cross().fold(f64::NEG_INFINITY, f64::max)),
        Method::UnweightedAverage => {
            Ok(ordered_sum(cross().collect()) / (left.len() * right.len()) as f64)
        }
        Method::JointBetweenWithin { .. } => {
            let (ni, nj) = (left.len() as f64, right.len() as f64);
            let within = |side: &[usize]| {
                let mut terms = Vec::new();
                for (k, &a) in side.iter().enumerate() {
                    for &b in &side[k + 1..] {
                        terms.push(matrix.get(a, b));
                    }
                }
                // Ordered pairs count each unordered pair twice.
                2.0 * ordered_sum(terms)
            };
            let between = ordered_sum(cross().collect());
            Ok(ni * nj / (ni + nj)
                * (2.0 / (ni * nj) * between
                    - within(left) / (ni * ni)
                    - within(right) / (nj * nj)))
        }
        other => Err(LinkageError::UnsupportedMethod(other)),
    }
}

/// How a supercluster's center is formed from its constituent clusters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CentroidWeighting {
    /// Mean of all member points.
    Unweighted,
    /// Mean of the constituent clusters' centroids, each cluster counting once.
    Weighted,
}

fn dimension(clusters: &[Vec<Vec<f64>>]) -> Option<usize> {
    clusters.iter().flatten().map(Vec::len).next()
}

fn mean(points: &[&[f64]], dim: usize) -> Vec<f64> {
    let mut c = vec![0.0; dim];
    for p in points {
        for (acc, x) in c.iter_mut().zip(p.iter()) {
            *acc += x;
        }
    }
    c.iter_mut().for_each(|x| *x /= points.len() as f64);
    c
}

fn center(clusters: &[Vec<Vec<f64>>], dim: usize, weighting: CentroidWeighting) -> Vec<f64> {
    match weighting {
        CentroidWeighting::Unweighted => {
            let all: Vec<&[f64]> = clusters.iter().flatten().map(Vec::as_slice).collect();
            mean(&all, dim)
        }
        CentroidWeighting::Weighted => {
            let centers: Vec<Vec<f64>> = clusters
                .iter()
                .map(|c| mean(&c.iter().map(Vec::as_slice).collect::<Vec<_>>(), dim))
                .collect();
            mean(&centers.iter().map(Vec::as_slice).collect::<Vec<_>>(), dim)
        }
    }
}

fn check_points(clusters: &[Vec<Vec<f64>>], dim: usize) -> Result<(), LinkageError> {
    if clusters.is_empty() || clusters.iter().any(Vec::is_empty) {
        return Err(LinkageError::EmptyBlock);
    }
    for p in clusters.iter().flatten() {
        if p.len() != dim {
            return Err(LinkageError::DimensionMismatch {
                expected: dim,
                actual: p.len(),
            });
        }
    }
    Ok(())
}

/// Squared Euclidean distance between the centers of two superclusters,
/// each given as a list of constituent clusters of points.
pub fn centroid_oracle(
    left: &[Vec<Vec<f64>>],
    right: &[Vec<Vec<f64>>],
    weighting: CentroidWeighting,
) -> Result<f64, LinkageError> {
    let dim = dimension(left).ok_or(LinkageError::EmptyBlock)?;
    check_points(left, dim)?;
    check_points(right, dim)?;
    let (a, b) = (center(left, dim, weighting), center(right, dim, weighting));
    Ok(a.iter().zip(&b).map(|(x, y)| (x - y) * (x - y)).sum())
}

fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Joint between-within distance between two point sets, evaluated from
/// the mean powered distances between and within the sets.
pub fn jbw_oracle(left: &[Vec<f64>], right: &[Vec<f64>], alpha: f64) -> Result<f64, LinkageError> {
    if !(alpha > 0.0 && alpha <= 2.0) {
        return Err(LinkageError::InvalidAlpha(alpha));
    }
    if left.is_empty() || right.is_empty() {
        return Err(LinkageError::EmptyBlock);
    }
    let dim = left[0].len();
    for p in left.iter().chain(right) {
        if p.len() != dim {
            return Err(LinkageError::DimensionMismatch {
                expected: dim,
                actual: p.len(),
            });
        }
    }
    let theta = |xs: &[Vec<f64>], ys: &[Vec<f64>]| {
        let total: f64 = xs
            .iter()
            .flat_map(|x| ys.iter().map(move |y| euclidean(x, y).powf(alpha)))
            .sum();
        total / (xs.len() * ys.len()) as f64
    };
    let (ni, nj) = (left.len() as f64, right.len() as f64);
    Ok(ni * nj / (ni + nj) * (2.0 * theta(left, right) - theta(left, left) - theta(right, right)))
}
