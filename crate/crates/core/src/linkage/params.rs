use num_rational::Ratio;

use super::Method;

/// Update coefficients are rational functions of cluster sizes; keeping them
/// exact lets single and complete linkage reproduce min/max bit-for-bit.
pub type Coef = Ratio<i128>;

pub(crate) fn coef_f64(c: Coef) -> f64 {
    *c.numer() as f64 / *c.denom() as f64
}

fn r(num: i128, den: i128) -> Coef {
    Ratio::new(num, den)
}

fn zero() -> Coef {
    Ratio::from_integer(0)
}

/// Coefficients of the block recurrence for one pair of superclusters.
///
/// `left` and `right` hold the sizes `|X_i|` of the constituent clusters on
/// each side.
#[derive(Debug, Clone)]
pub struct VgParams<'a> {
    method: Method,
    left: &'a [usize],
    right: &'a [usize],
    left_total: i128,
    right_total: i128,
}

impl<'a> VgParams<'a> {
    pub fn new(method: Method, left: &'a [usize], right: &'a [usize]) -> Self {
        VgParams {
            method,
            left,
            right,
            left_total: left.iter().map(|&s| s as i128).sum(),
            right_total: right.iter().map(|&s| s as i128).sum(),
        }
    }

    fn counts(&self) -> (i128, i128) {
        (self.left.len() as i128, self.right.len() as i128)
    }

    /// Weight of the cross distance `D(X_i, X_j)`.
    pub fn alpha(&self, i: usize, j: usize) -> Coef {
        let (ni, nj) = (self.left[i] as i128, self.right[j] as i128);
        let (p, q) = self.counts();
        match self.method {
            Method::Single
            | Method::Complete
            | Method::WeightedAverage
            | Method::WeightedCentroid => r(1, p * q),
            Method::UnweightedAverage | Method::UnweightedCentroid => {
                r(ni * nj, self.left_total * self.right_total)
            }
            Method::JointBetweenWithin { .. } => r(ni + nj, self.left_total + self.right_total),
        }
    }

    /// Weight of the within-left distance `D(X_i, X_i')`.
    pub fn beta_left(&self, i: usize, i2: usize) -> Coef {
        let (a, b) = (self.left[i] as i128, self.left[i2] as i128);
        self.beta(
            a,
            b,
            self.left.len() as i128,
            self.left_total,
            self.right_total,
        )
    }

    /// Weight of the within-right distance `D(X_j, X_j')`.
    pub fn beta_right(&self, j: usize, j2: usize) -> Coef {
        let (a, b) = (self.right[j] as i128, self.right[j2] as i128);
        self.beta(
            a,
            b,
            self.right.len() as i128,
            self.right_total,
            self.left_total,
        )
    }

    fn beta(&self, a: i128, b: i128, count: i128, own_total: i128, other_total: i128) -> Coef {
        match self.method {
            Method::UnweightedCentroid => -r(a * b, own_total * own_total),
            Method::WeightedCentroid => -r(1, count * count),
            Method::JointBetweenWithin { .. } => {
                -r(other_total * (a + b), own_total * (own_total + other_total))
            }
            _ => zero(),
        }
    }

    pub fn gamma(&self, _i: usize, _j: usize) -> Coef {
        let (p, q) = self.counts();
        match self.method {
            Method::Single | Method::Complete => r(1, p * q),
            _ => zero(),
        }
    }

    /// `Some(false)` selects the minimum form, `Some(true)` the maximum form;
    /// `None` where the method has no extremal term.
    pub fn delta(&self) -> Option<bool> {
        match self.method {
            Method::Single => Some(false),
            Method::Complete => Some(true),
            _ => None,
        }
    }
}

/// Classical two-cluster coefficients for merging `X_i` and `X_i'` and
/// measuring the result against `X_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct PgParams {
    pub alpha_i: Coef,
    pub alpha_i2: Coef,
    pub beta: Coef,
    pub gamma: Coef,
}

impl PgParams {
    pub fn new(method: Method, (ni, ni2, nj): (usize, usize, usize)) -> Self {
        let (ni, ni2, nj) = (ni as i128, ni2 as i128, nj as i128);
        let half = r(1, 2);
        let merged = ni + ni2;
        let (alpha_i, alpha_i2, beta, gamma) = match method {
            Method::Single => (half, half, zero(), -half),
            Method::Complete => (half, half, zero(), half),
            Method::UnweightedAverage => (r(ni, merged), r(ni2, merged), zero(), zero()),
            Method::WeightedAverage => (half, half, zero(), zero()),
            Method::UnweightedCentroid => (
                r(ni, merged),
                r(ni2, merged),
                -r(ni * ni2, merged * merged),
                zero(),
            ),
            Method::WeightedCentroid => (half, half, -r(1, 4), zero()),
            Method::JointBetweenWithin { .. } => {
                let total = merged + nj;
                (r(ni + nj, total), r(ni2 + nj, total), -r(nj, total), zero())
            }
        };
        PgParams {
            alpha_i,
            alpha_i2,
            beta,
            gamma,
        }
    }
}
