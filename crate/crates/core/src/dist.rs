//! Finite weighted distributions on the real line, with exact 1-Wasserstein
//! and Kolmogorov distances computed on the merged support.

use crate::error::{Error, Result};

const NORMALIZATION_TOL: f64 = 1e-12;

/// A finite distribution: strictly increasing support, positive weights
/// summing to one within 1e-12.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteDistribution {
    support: Vec<f64>,
    weights: Vec<f64>,
}

impl DiscreteDistribution {
    /// Builds from (value, weight) pairs; sorts and merges equal values.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        let mut pairs: Vec<(f64, f64)> = pairs.into_iter().filter(|&(_, w)| w != 0.0).collect();
        if pairs.iter().any(|&(v, w)| !v.is_finite() || w < 0.0) {
            return Err(Error::Parameter(
                "distribution atoms must be finite with nonnegative weights".into(),
            ));
        }
        pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let mut support = Vec::with_capacity(pairs.len());
        let mut weights: Vec<f64> = Vec::with_capacity(pairs.len());
        for (v, w) in pairs {
            if support.last() == Some(&v) {
                *weights.last_mut().unwrap() += w;
            } else {
                support.push(v);
                weights.push(w);
            }
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::Parameter(format!(
                "weights sum to {total}, expected 1 within {NORMALIZATION_TOL}"
            )));
        }
        Ok(DiscreteDistribution { support, weights })
    }

    pub fn point_mass(v: f64) -> Self {
        DiscreteDistribution {
            support: vec![v],
            weights: vec![1.0],
        }
    }

    pub fn support(&self) -> &[f64] {
        &self.support
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn mean(&self) -> f64 {
        self.support
            .iter()
            .zip(&self.weights)
            .map(|(v, w)| v * w)
            .sum()
    }

    /// Expectation of an arbitrary function under the law.
    pub fn expect(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.support
            .iter()
            .zip(&self.weights)
            .map(|(&v, &w)| w * f(v))
            .sum()
    }

    /// Pushes every atom through `x -> s*x`.
    pub fn scale(&self, s: f64) -> Result<Self> {
        Self::from_pairs(
            self.support
                .iter()
                .zip(&self.weights)
                .map(|(&v, &w)| (s * v, w)),
        )
    }

    pub fn min(&self) -> f64 {
        *self.support.first().unwrap_or(&0.0)
    }

    pub fn max(&self) -> f64 {
        *self.support.last().unwrap_or(&0.0)
    }
}

/// Walks the merged support of two laws, yielding at each support point the
/// CDF gap [F_A - F_B](z) and the point z itself, in increasing order.
fn merged_cdf_gaps(a: &DiscreteDistribution, b: &DiscreteDistribution) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(a.support.len() + b.support.len());
    let (mut i, mut j) = (0usize, 0usize);
    let (mut fa, mut fb) = (0.0f64, 0.0f64);
    while i < a.support.len() || j < b.support.len() {
        let next_a = a.support.get(i).copied().unwrap_or(f64::INFINITY);
        let next_b = b.support.get(j).copied().unwrap_or(f64::INFINITY);
        let z = next_a.min(next_b);
        if next_a == z {
            fa += a.weights[i];
            i += 1;
        }
        if next_b == z {
            fb += b.weights[j];
            j += 1;
        }
        out.push((z, fa - fb));
    }
    out
}

/// Exact 1-Wasserstein distance: the integral of |F_A - F_B| over the line.
/// By Kantorovich-Rubinstein duality this equals the supremum over
/// 1-Lipschitz test functions of the expectation gap.
pub fn wasserstein1(a: &DiscreteDistribution, b: &DiscreteDistribution) -> f64 {
    let gaps = merged_cdf_gaps(a, b);
    let mut total = 0.0;
    for k in 0..gaps.len().saturating_sub(1) {
        let (z, gap) = gaps[k];
        let (z_next, _) = gaps[k + 1];
        total += gap.abs() * (z_next - z);
    }
    total
}

/// Exact Kolmogorov distance: sup over the merged support of |F_A - F_B|.
pub fn kolmogorov(a: &DiscreteDistribution, b: &DiscreteDistribution) -> f64 {
    merged_cdf_gaps(a, b)
        .into_iter()
        .map(|(_, gap)| gap.abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn uniform_on(values: &[f64]) -> DiscreteDistribution {
        let w = 1.0 / values.len() as f64;
        DiscreteDistribution::from_pairs(values.iter().map(|&v| (v, w))).unwrap()
    }

    #[test]
    fn identical_laws_are_at_distance_zero() {
        let a = uniform_on(&[-1.0, 1.0]);
        assert_eq!(wasserstein1(&a, &a), 0.0);
        assert_eq!(kolmogorov(&a, &a), 0.0);
    }

    #[test]
    fn point_masses() {
        let a = DiscreteDistribution::point_mass(0.0);
        let b = DiscreteDistribution::point_mass(1.0);
        assert_relative_eq!(wasserstein1(&a, &b), 1.0);
        assert_relative_eq!(kolmogorov(&a, &b), 1.0);
    }

    #[test]
    fn uniform_pm1_vs_point_mass_at_zero() {
        // CDF area: 1/2 on [-1,0] plus 1/2 on [0,1] = 1
        let a = uniform_on(&[-1.0, 1.0]);
        let b = DiscreteDistribution::point_mass(0.0);
        assert_relative_eq!(wasserstein1(&a, &b), 1.0);
    }

    #[test]
    fn kolmogorov_hand_example() {
        // uniform{-1,1} vs uniform{-1,0,1}: CDFs differ by 1/6 at -1, 1/3 at 0
        let a = uniform_on(&[-1.0, 1.0]);
        let b = uniform_on(&[-1.0, 0.0, 1.0]);
        assert_relative_eq!(kolmogorov(&a, &b), 1.0 / 3.0, max_relative = 1e-12);
    }

    #[test]
    fn rejects_unnormalized() {
        assert!(DiscreteDistribution::from_pairs([(0.0, 0.5), (1.0, 0.6)]).is_err());
        assert!(DiscreteDistribution::from_pairs([(f64::NAN, 1.0)]).is_err());
    }

    #[test]
    fn merges_duplicate_atoms() {
        let d = DiscreteDistribution::from_pairs([(1.0, 0.25), (1.0, 0.25), (0.0, 0.5)]).unwrap();
        assert_eq!(d.support(), &[0.0, 1.0]);
        assert_eq!(d.weights(), &[0.5, 0.5]);
    }

    #[test]
    fn scaling_scales_w1_linearly() {
        let a = uniform_on(&[-1.0, 1.0]);
        let b = uniform_on(&[-2.0, 0.0, 2.0]);
        let w = wasserstein1(&a, &b);
        let w_half = wasserstein1(&a.scale(0.5).unwrap(), &b.scale(0.5).unwrap());
        assert_relative_eq!(w_half, 0.5 * w, max_relative = 1e-12);
    }

    fn arb_dist() -> impl Strategy<Value = DiscreteDistribution> {
        proptest::collection::vec((-8i32..8, 1u32..5), 1..6).prop_map(|atoms| {
            let total: f64 = atoms.iter().map(|&(_, w)| w as f64).sum();
            DiscreteDistribution::from_pairs(
                atoms
                    .iter()
                    .map(|&(v, w)| (v as f64 * 0.5, w as f64 / total)),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn metric_properties(a in arb_dist(), b in arb_dist(), c in arb_dist()) {
            // symmetry
            prop_assert!((wasserstein1(&a, &b) - wasserstein1(&b, &a)).abs() < 1e-12);
            prop_assert!((kolmogorov(&a, &b) - kolmogorov(&b, &a)).abs() < 1e-12);
            // identity of indiscernibles (zero iff equal support/weights)
            prop_assert_eq!(wasserstein1(&a, &a), 0.0);
            let w_ab = wasserstein1(&a, &b);
            if a != b {
                prop_assert!(w_ab > 0.0);
            }
            // triangle inequalities
            prop_assert!(w_ab <= wasserstein1(&a, &c) + wasserstein1(&c, &b) + 1e-12);
            prop_assert!(kolmogorov(&a, &b) <= kolmogorov(&a, &c) + kolmogorov(&c, &b) + 1e-12);
            // range bounds
            prop_assert!(kolmogorov(&a, &b) <= 1.0 + 1e-12);
            let diameter = a.max().max(b.max()) - a.min().min(b.min());
            prop_assert!(w_ab <= diameter + 1e-12);
        }
    }
}
