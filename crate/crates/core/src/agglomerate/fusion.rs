use super::{ClusterError, FusionPolicy};
use crate::linkage::{Block, Method};

/// A scalar height chosen inside a fusion interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fusion {
    pub value: f64,
    /// Set when the natural policy has no definition for the method and
    /// the shortest distance was used instead.
    pub fell_back: bool,
}

/// Fusion value for a supercluster whose constituents are described by
/// `group` (sizes plus within-group distances), formed at `d_lower`.
pub fn fusion_value(
    method: Method,
    policy: FusionPolicy,
    d_lower: f64,
    group: &Block,
) -> Result<Fusion, ClusterError> {
    let shortest = Fusion {
        value: d_lower,
        fell_back: false,
    };
    match policy {
        FusionPolicy::Interval => return Err(ClusterError::PolicyUnavailable),
        FusionPolicy::Shortest => return Ok(shortest),
        FusionPolicy::Natural => {}
    }
    let k = group.len();
    let pairs = || (0..k).flat_map(move |a| (a + 1..k).map(move |b| (a, b)));
    let value = match method {
        Method::Single => pairs()
            .map(|(a, b)| group.within(a, b))
            .fold(f64::INFINITY, f64::min),
        Method::Complete => pairs()
            .map(|(a, b)| group.within(a, b))
            .fold(f64::NEG_INFINITY, f64::max),
        Method::UnweightedAverage => {
            let (mut weights, mut terms) = (0usize, Vec::new());
            for (a, b) in pairs() {
                let w = group.sizes[a] * group.sizes[b];
                weights += w;
                terms.push(w as f64 * group.within(a, b));
            }
            crate::linkage::ordered_sum(terms) / weights as f64
        }
        Method::WeightedAverage => {
            let terms: Vec<f64> = pairs().map(|(a, b)| group.within(a, b)).collect();
            let count = terms.len();
            crate::linkage::ordered_sum(terms) / count as f64
        }
        Method::UnweightedCentroid
        | Method::WeightedCentroid
        | Method::JointBetweenWithin { .. } => {
            return Ok(Fusion {
                value: d_lower,
                fell_back: true,
            })
        }
    };
    // A mean of the group's distances; clamping only absorbs rounding.
    let upper = pairs()
        .map(|(a, b)| group.within(a, b))
        .fold(d_lower, f64::max);
    Ok(Fusion {
        value: value.clamp(d_lower, upper),
        fell_back: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy_group() -> Block {
        Block::new(vec![1, 1, 1], vec![2.0, 4.0, 2.0])
    }

    #[test]
    fn toy_natural_values() {
        let g = toy_group();
        let natural = |m| {
            fusion_value(m, FusionPolicy::Natural, 2.0, &g)
                .unwrap()
                .value
        };
        assert!((natural(Method::UnweightedAverage) - 8.0 / 3.0).abs() < 1e-12);
        assert_eq!(format!("{:.1}", natural(Method::UnweightedAverage)), "2.7");
        assert_eq!(natural(Method::Single), 2.0);
        assert_eq!(natural(Method::Complete), 4.0);
        assert!((natural(Method::WeightedAverage) - 8.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn size_weighted_mean() {
        // Sizes 2 and 1 at distance 3, with a third of size 1: weights 2, 2, 1.
        let g = Block::new(vec![2, 1, 1], vec![3.0, 6.0, 3.0]);
        let v = fusion_value(Method::UnweightedAverage, FusionPolicy::Natural, 3.0, &g).unwrap();
        assert_eq!(v.value, (2.0 * 3.0 + 2.0 * 6.0 + 3.0) / 5.0);
    }

    #[test]
    fn shortest_and_interval_policies() {
        let g = toy_group();
        for m in Method::ALL {
            let f = fusion_value(m, FusionPolicy::Shortest, 2.0, &g).unwrap();
            assert_eq!(
                f,
                Fusion {
                    value: 2.0,
                    fell_back: false
                }
            );
            assert_eq!(
                fusion_value(m, FusionPolicy::Interval, 2.0, &g),
                Err(ClusterError::PolicyUnavailable)
            );
        }
        let f = fusion_value(Method::WeightedCentroid, FusionPolicy::Natural, 2.0, &g).unwrap();
        assert!(f.fell_back);
        assert_eq!(f.value, 2.0);
    }
}
