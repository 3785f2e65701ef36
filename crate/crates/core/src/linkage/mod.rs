//! Linkage strategies and inter-cluster distance updates.
//!
//! The production path is [`vg_distance`], the block recurrence that
//! computes the distance between two superclusters from the distances
//! between their constituent clusters. [`pg_distance`] is the classical
//! two-cluster update; it only backs the pair-group reference engine.
//! [`direct_distance`] and the point oracles evaluate the same quantities
//! without recursion so the two routes can be compared.

mod direct;
mod params;
mod recurrence;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use direct::{centroid_oracle, direct_distance, jbw_oracle, CentroidWeighting};
pub use params::{PgParams, VgParams};
pub use recurrence::{pg_distance, vg_distance, Block, BlockView};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinkageError {
    #[error("block view is incomplete: {0}")]
    MissingDistance(String),
    #[error("alpha must lie in (0, 2], got {0}")]
    InvalidAlpha(f64),
    #[error("{0} has no direct individual-level form")]
    UnsupportedMethod(Method),
    #[error("points have mismatched dimensions ({expected} vs {actual})")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("empty cluster block")]
    EmptyBlock,
    #[error("cluster sizes must be at least 1")]
    ZeroSize,
    #[error("unknown linkage method `{0}`")]
    UnknownMethod(String),
}

/// One of the seven supported linkage strategies.
///
/// `JointBetweenWithin` carries the exponent applied to Euclidean distances
/// in the input; it does not enter the update coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Method {
    Single,
    Complete,
    UnweightedAverage,
    WeightedAverage,
    UnweightedCentroid,
    WeightedCentroid,
    JointBetweenWithin { alpha: f64 },
}

pub const DEFAULT_JBW_ALPHA: f64 = 1.0;

impl Method {
    /// All seven strategies, with the default exponent for joint between-within.
    pub const ALL: [Method; 7] = [
        Method::Single,
        Method::Complete,
        Method::UnweightedAverage,
        Method::WeightedAverage,
        Method::UnweightedCentroid,
        Method::WeightedCentroid,
        Method::JointBetweenWithin {
            alpha: DEFAULT_JBW_ALPHA,
        },
    ];

    pub fn joint_between_within(alpha: f64) -> Result<Method, LinkageError> {
        let m = Method::JointBetweenWithin { alpha };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<(), LinkageError> {
        match *self {
            Method::JointBetweenWithin { alpha } if !(alpha > 0.0 && alpha <= 2.0) => {
                Err(LinkageError::InvalidAlpha(alpha))
            }
            _ => Ok(()),
        }
    }

    pub fn alpha(&self) -> Option<f64> {
        match *self {
            Method::JointBetweenWithin { alpha } => Some(alpha),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Method::Single => "single",
            Method::Complete => "complete",
            Method::UnweightedAverage => "unweighted_average",
            Method::WeightedAverage => "weighted_average",
            Method::UnweightedCentroid => "unweighted_centroid",
            Method::WeightedCentroid => "weighted_centroid",
            Method::JointBetweenWithin { .. } => "joint_between_within",
        }
    }

    /// Looks a method up by name; `alpha` is only accepted for joint
    /// between-within, which defaults to [`DEFAULT_JBW_ALPHA`].
    pub fn from_name(name: &str, alpha: Option<f64>) -> Result<Method, LinkageError> {
        let base: Method = name.parse()?;
        match (base, alpha) {
            (Method::JointBetweenWithin { .. }, Some(a)) => Method::joint_between_within(a),
            (_, None) => Ok(base),
            (other, Some(_)) => Err(LinkageError::UnknownMethod(format!(
                "{} does not take an alpha exponent",
                other.name()
            ))),
        }
    }

    /// Centroid and joint between-within strategies assume Euclidean
    /// geometry and may produce reversals.
    pub fn is_geometric(&self) -> bool {
        matches!(
            self,
            Method::UnweightedCentroid
                | Method::WeightedCentroid
                | Method::JointBetweenWithin { .. }
        )
    }
}

impl FromStr for Method {
    type Err = LinkageError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.to_ascii_lowercase().replace('-', "_");
        Ok(match key.as_str() {
            "single" | "single_linkage" | "nearest_neighbor" => Method::Single,
            "complete" | "complete_linkage" | "furthest_neighbor" => Method::Complete,
            "unweighted_average" | "average" | "upgma" | "uvgma" => Method::UnweightedAverage,
            "weighted_average" | "wpgma" | "wvgma" => Method::WeightedAverage,
            "unweighted_centroid" | "centroid" | "upgmc" | "uvgmc" => Method::UnweightedCentroid,
            "weighted_centroid" | "median" | "wpgmc" | "wvgmc" => Method::WeightedCentroid,
            "joint_between_within" | "jbw" => Method::JointBetweenWithin {
                alpha: DEFAULT_JBW_ALPHA,
            },
            _ => return Err(LinkageError::UnknownMethod(s.to_string())),
        })
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::JointBetweenWithin { alpha } => {
                write!(f, "joint_between_within(alpha={alpha})")
            }
            other => f.write_str(other.name()),
        }
    }
}

/// Sums terms in a fixed order so the result does not depend on the order
/// in which clusters were listed.
pub(crate) fn ordered_sum(mut terms: Vec<f64>) -> f64 {
    terms.sort_by(f64::total_cmp);
    terms.iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert_eq!(
            "median".parse::<Method>().unwrap(),
            Method::WeightedCentroid
        );
        assert!("ward".parse::<Method>().is_err());
    }

    #[test]
    fn alpha_rules() {
        assert!(Method::joint_between_within(2.0).is_ok());
        assert_eq!(
            Method::joint_between_within(0.0),
            Err(LinkageError::InvalidAlpha(0.0))
        );
        assert!(Method::joint_between_within(2.5).is_err());
        assert!(Method::joint_between_within(f64::NAN).is_err());
        assert!(Method::from_name("single", Some(1.0)).is_err());
        assert_eq!(
            Method::from_name("jbw", None).unwrap().alpha(),
            Some(DEFAULT_JBW_ALPHA)
        );
    }
}
