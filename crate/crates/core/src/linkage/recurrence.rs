use super::params::{coef_f64, Coef, PgParams, VgParams};
use super::{ordered_sum, LinkageError, Method};

/// One side of a supercluster pair: the sizes of its constituent clusters
/// and the distances between them (condensed, row-major).
#[derive(Debug, Clone, PartialEq)]
pub struct Block {
    pub sizes: Vec<usize>,
    pub within: Vec<f64>,
}

impl Block {
    pub fn new(sizes: Vec<usize>, within: Vec<f64>) -> Self {
        Block { sizes, within }
    }

    pub fn singleton(size: usize) -> Self {
        Block {
            sizes: vec![size],
            within: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    pub fn total(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn within(&self, a: usize, b: usize) -> f64 {
        let (a, b) = (a.min(b), a.max(b));
        self.within[crate::proximity::condensed_index(self.len(), a, b)]
    }

    fn check(&self, side: &str) -> Result<(), LinkageError> {
        if self.sizes.is_empty() {
            return Err(LinkageError::EmptyBlock);
        }
        if self.sizes.contains(&0) {
            return Err(LinkageError::ZeroSize);
        }
        let k = self.len();
        if self.within.len() != k * (k - 1) / 2 {
            return Err(LinkageError::MissingDistance(format!(
                "{side} block has {} constituents but {} within distances",
                k,
                self.within.len()
            )));
        }
        if self.within.iter().any(|d| !d.is_finite()) {
            return Err(LinkageError::MissingDistance(format!(
                "{side} block has a non-finite within distance"
            )));
        }
        Ok(())
    }
}

/// Everything the block recurrence needs about two superclusters `X_I`
/// (left) and `X_J` (right).
#[derive(Debug, Clone, PartialEq)]
pub struct BlockView {
    pub left: Block,
    pub right: Block,
    /// `D(X_i, X_j)` for every left `i` and right `j`, row-major by `i`.
    pub cross: Vec<f64>,
}

impl BlockView {
    pub fn new(left: Block, right: Block, cross: Vec<f64>) -> Self {
        BlockView { left, right, cross }
    }

    pub fn cross(&self, i: usize, j: usize) -> f64 {
        self.cross[i * self.right.len() + j]
    }

    /// The same pair seen from the other side.
    pub fn swapped(&self) -> BlockView {
        let (p, q) = (self.left.len(), self.right.len());
        let mut cross = Vec::with_capacity(p * q);
        for j in 0..q {
            for i in 0..p {
                cross.push(self.cross(i, j));
            }
        }
        BlockView {
            left: self.right.clone(),
            right: self.left.clone(),
            cross,
        }
    }

    fn check(&self) -> Result<(), LinkageError> {
        self.left.check("left")?;
        self.right.check("right")?;
        let expected = self.left.len() * self.right.len();
        if self.cross.len() != expected {
            return Err(LinkageError::MissingDistance(format!(
                "expected {expected} cross distances, got {}",
                self.cross.len()
            )));
        }
        if self.cross.iter().any(|d| !d.is_finite()) {
            return Err(LinkageError::MissingDistance(
                "non-finite cross distance".into(),
            ));
        }
        Ok(())
    }
}

/// Linear combination `Σ c_k d_k` with rational weights.
///
/// Weights are brought to their least common denominator `L`, so the sum is
/// `(Σ (c_k L) d_k) / L` with integer multipliers; small-integer data stays
/// exact and terms are added in a fixed order.
#[derive(Default)]
struct Combination {
    terms: Vec<(Coef, f64)>,
}

impl Combination {
    fn push(&mut self, c: Coef, d: f64) {
        if *c.numer() != 0 {
            self.terms.push((c, d));
        }
    }

    fn value(self) -> f64 {
        let lcd = self
            .terms
            .iter()
            .fold(1i128, |acc, (c, _)| lcm(acc, *c.denom()));
        if lcd > 1i128 << 53 {
            return ordered_sum(self.terms.iter().map(|&(c, d)| coef_f64(c) * d).collect());
        }
        let scaled = self
            .terms
            .iter()
            .map(|&(c, d)| (c.numer() * (lcd / c.denom())) as f64 * d)
            .collect();
        ordered_sum(scaled) / lcd as f64
    }
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

fn lcm(a: i128, b: i128) -> i128 {
    a / gcd(a, b) * b
}

/// Distance between two superclusters by the generalized Lance–Williams
/// recurrence.
///
/// The extremal part of the recurrence,
/// `δ Σ γ_ij [D_max − D_ij] − (1 − δ) Σ γ_ij [D_ij − D_min]`, is regrouped
/// into `−Σ γ_ij D_ij + (Σ γ_ij) · (δ ? D_max : D_min)` with exact rational
/// coefficients, so for single and complete linkage every cross term
/// cancels exactly and the result is the bare extremum.
pub fn vg_distance(method: Method, view: &BlockView) -> Result<f64, LinkageError> {
    method.validate()?;
    view.check()?;
    let params = VgParams::new(method, &view.left.sizes, &view.right.sizes);
    let (p, q) = (view.left.len(), view.right.len());
    let mut terms = Combination::default();
    let mut gamma_total = Coef::from_integer(0);
    let (mut d_min, mut d_max) = (f64::INFINITY, f64::NEG_INFINITY);
    for i in 0..p {
        for j in 0..q {
            let d = view.cross(i, j);
            let gamma = params.gamma(i, j);
            terms.push(params.alpha(i, j) - gamma, d);
            gamma_total += gamma;
            d_min = d_min.min(d);
            d_max = d_max.max(d);
        }
    }
    for a in 0..p {
        for b in a + 1..p {
            terms.push(params.beta_left(a, b), view.left.within(a, b));
        }
    }
    for a in 0..q {
        for b in a + 1..q {
            terms.push(params.beta_right(a, b), view.right.within(a, b));
        }
    }
    if let Some(use_max) = params.delta() {
        terms.push(gamma_total, if use_max { d_max } else { d_min });
    }
    Ok(terms.value())
}

/// Classical update `D(X_i ∪ X_i', X_j)` from the three pre-merge distances.
pub fn pg_distance(
    method: Method,
    sizes: (usize, usize, usize),
    d_ii2: f64,
    d_ij: f64,
    d_i2j: f64,
) -> Result<f64, LinkageError> {
    method.validate()?;
    if sizes.0 == 0 || sizes.1 == 0 || sizes.2 == 0 {
        return Err(LinkageError::ZeroSize);
    }
    if ![d_ii2, d_ij, d_i2j].iter().all(|d| d.is_finite()) {
        return Err(LinkageError::MissingDistance(
            "non-finite input distance".into(),
        ));
    }
    let params = PgParams::new(method, sizes);
    let mut terms = Combination::default();
    terms.push(params.alpha_i, d_ij);
    terms.push(params.alpha_i2, d_i2j);
    terms.push(params.beta, d_ii2);
    terms.push(params.gamma, (d_ij - d_i2j).abs());
    Ok(terms.value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn toy_blocks() -> BlockView {
        // {x1,x2,x3} against {x4} with the toy distances.
        BlockView::new(
            Block::new(vec![1, 1, 1], vec![2.0, 4.0, 2.0]),
            Block::singleton(1),
            vec![7.0, 5.0, 3.0],
        )
    }

    #[test]
    fn toy_supercluster_distances() {
        let v = toy_blocks();
        assert_eq!(vg_distance(Method::UnweightedAverage, &v).unwrap(), 5.0);
        assert_eq!(vg_distance(Method::WeightedAverage, &v).unwrap(), 5.0);
        assert_eq!(vg_distance(Method::Single, &v).unwrap(), 3.0);
        assert_eq!(vg_distance(Method::Complete, &v).unwrap(), 7.0);
    }

    #[test]
    fn pair_group_examples() {
        assert_eq!(
            pg_distance(Method::UnweightedAverage, (1, 1, 1), 9.0, 4.0, 2.0).unwrap(),
            3.0
        );
        for d in [0.0, 1.0, 100.0] {
            assert_eq!(
                pg_distance(Method::Single, (3, 1, 7), d, 4.0, 2.0).unwrap(),
                2.0
            );
            assert_eq!(
                pg_distance(Method::Complete, (3, 1, 7), d, 4.0, 2.0).unwrap(),
                4.0
            );
        }
        assert_eq!(
            pg_distance(Method::UnweightedCentroid, (1, 1, 1), 2.0, 7.0, 5.0).unwrap(),
            5.5
        );
    }

    #[test]
    fn incomplete_views_rejected() {
        let mut v = toy_blocks();
        v.cross.pop();
        assert!(matches!(
            vg_distance(Method::Single, &v),
            Err(LinkageError::MissingDistance(_))
        ));
        let mut v = toy_blocks();
        v.left.within.pop();
        assert!(matches!(
            vg_distance(Method::Single, &v),
            Err(LinkageError::MissingDistance(_))
        ));
        assert_eq!(
            vg_distance(Method::JointBetweenWithin { alpha: 3.0 }, &toy_blocks()),
            Err(LinkageError::InvalidAlpha(3.0))
        );
    }

    fn arb_method() -> impl Strategy<Value = Method> {
        prop_oneof![
            Just(Method::Single),
            Just(Method::Complete),
            Just(Method::UnweightedAverage),
            Just(Method::WeightedAverage),
            Just(Method::UnweightedCentroid),
            Just(Method::WeightedCentroid),
            (0.05f64..=2.0).prop_map(|alpha| Method::JointBetweenWithin { alpha }),
        ]
    }

    fn arb_view(max_side: usize) -> impl Strategy<Value = BlockView> {
        (1..=max_side, 1..=max_side).prop_flat_map(|(p, q)| {
            (
                prop::collection::vec(1usize..20, p),
                prop::collection::vec(0.0f64..100.0, p * (p - 1) / 2),
                prop::collection::vec(1usize..20, q),
                prop::collection::vec(0.0f64..100.0, q * (q - 1) / 2),
                prop::collection::vec(0.0f64..100.0, p * q),
            )
                .prop_map(|(ls, lw, rs, rw, cross)| {
                    BlockView::new(Block::new(ls, lw), Block::new(rs, rw), cross)
                })
        })
    }

    fn rel_close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
    }

    proptest! {
        #[test]
        fn reduces_to_two_cluster_update(
            method in arb_method(),
            sizes in (1usize..50, 1usize..50, 1usize..50),
            d in (0.0f64..100.0, 0.0f64..100.0, 0.0f64..100.0),
        ) {
            let view = BlockView::new(
                Block::new(vec![sizes.0, sizes.1], vec![d.0]),
                Block::singleton(sizes.2),
                vec![d.1, d.2],
            );
            let vg = vg_distance(method, &view).unwrap();
            let pg = pg_distance(method, sizes, d.0, d.1, d.2).unwrap();
            prop_assert!(rel_close(vg, pg, 1e-9), "{method}: {vg} vs {pg}");
        }

        #[test]
        fn singleton_blocks_return_cross_distance(
            method in arb_method(),
            sizes in (1usize..50, 1usize..50),
            d in 0.0f64..1e6,
        ) {
            let view = BlockView::new(Block::singleton(sizes.0), Block::singleton(sizes.1), vec![d]);
            prop_assert_eq!(vg_distance(method, &view).unwrap(), d);
        }

        #[test]
        fn invariant_under_reordering_and_swap(
            method in arb_method(),
            view in arb_view(5),
            seed in any::<u64>(),
        ) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let (p, q) = (view.left.len(), view.right.len());
            let mut pi: Vec<usize> = (0..p).collect();
            let mut pj: Vec<usize> = (0..q).collect();
            pi.shuffle(&mut rng);
            pj.shuffle(&mut rng);
            let reorder = |b: &Block, perm: &[usize]| {
                let k = b.len();
                let mut within = Vec::new();
                for a in 0..k {
                    for c in a + 1..k {
                        within.push(b.within(perm[a], perm[c]));
                    }
                }
                Block::new(perm.iter().map(|&x| b.sizes[x]).collect(), within)
            };
            let mut cross = Vec::new();
            for &i in &pi {
                for &j in &pj {
                    cross.push(view.cross(i, j));
                }
            }
            let shuffled = BlockView::new(reorder(&view.left, &pi), reorder(&view.right, &pj), cross);
            let base = vg_distance(method, &view).unwrap();
            prop_assert_eq!(vg_distance(method, &shuffled).unwrap(), base);
            prop_assert_eq!(vg_distance(method, &view.swapped()).unwrap(), base);
        }

        #[test]
        fn weighted_equals_unweighted_on_singletons(
            p in 1usize..6,
            q in 1usize..6,
            seed in any::<u64>(),
        ) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut draw = |k: usize| (0..k).map(|_| rng.gen_range(0.0..50.0)).collect::<Vec<f64>>();
            let view = BlockView::new(
                Block::new(vec![1; p], draw(p * (p - 1) / 2)),
                Block::new(vec![1; q], draw(q * (q - 1) / 2)),
                draw(p * q),
            );
            prop_assert_eq!(
                vg_distance(Method::WeightedAverage, &view).unwrap(),
                vg_distance(Method::UnweightedAverage, &view).unwrap()
            );
            prop_assert_eq!(
                vg_distance(Method::WeightedCentroid, &view).unwrap(),
                vg_distance(Method::UnweightedCentroid, &view).unwrap()
            );
        }

        #[test]
        fn single_and_complete_are_exact_extrema(view in arb_view(6)) {
            let lo = view.cross.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = view.cross.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            prop_assert_eq!(vg_distance(Method::Single, &view).unwrap(), lo);
            prop_assert_eq!(vg_distance(Method::Complete, &view).unwrap(), hi);
        }
    }
}
