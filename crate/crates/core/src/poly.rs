//! Sparse multilinear polynomials over the sign cube {1,-1}^n.
//!
//! Terms are kept in a sorted map from monomial index sets to real
//! coefficients; zero coefficients are never stored. The l2 norm is the
//! Parseval norm `sqrt(sum a_I^2)`, which equals `E[P(x)^2]^(1/2)` under the
//! uniform cube measure.

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Canonical monomial key: variables as a bitmask (bit j = variable j+1),
/// ordered lexicographically by sorted variable list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VarSet(pub u64);

impl VarSet {
    pub fn degree(&self) -> usize {
        self.0.count_ones() as usize
    }

    /// 1-indexed sorted variable list.
    pub fn vars(&self) -> Vec<usize> {
        (0..64).filter(|j| (self.0 >> j) & 1 == 1).map(|j| j + 1).collect()
    }

    pub fn from_vars(vars: &[usize]) -> Result<Self> {
        let mut mask = 0u64;
        for &v in vars {
            if v == 0 || v > 64 {
                return Err(Error::Parameter(format!(
                    "variable index {v} out of range 1..=64"
                )));
            }
            let bit = 1u64 << (v - 1);
            if mask & bit != 0 {
                return Err(Error::Parameter(format!("repeated variable {v}")));
            }
            mask |= bit;
        }
        Ok(VarSet(mask))
    }

    /// Sign of the monomial at a cube point given as a bit pattern where a
    /// set bit means that coordinate is -1.
    #[inline]
    pub fn sign_at(&self, pattern: u64) -> f64 {
        if (self.0 & pattern).count_ones() % 2 == 1 {
            -1.0
        } else {
            1.0
        }
    }
}

impl PartialOrd for VarSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for VarSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.vars().cmp(&other.vars())
    }
}

/// A sparse multilinear polynomial `sum_I a_I prod_{i in I} x_i`.
#[derive(Debug, Clone, Default)]
pub struct MultilinearPolynomial {
    terms: BTreeMap<VarSet, f64>,
}

impl MultilinearPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms<I: IntoIterator<Item = (VarSet, f64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c` to the coefficient of `m`, dropping it if it becomes zero.
    pub fn add_term(&mut self, m: VarSet, c: f64) {
        let entry = self.terms.entry(m).or_insert(0.0);
        *entry += c;
        if *entry == 0.0 {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&VarSet, &f64)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// Largest 1-indexed variable appearing, or 0 for a constant.
    pub fn max_var(&self) -> usize {
        self.terms
            .keys()
            .filter_map(|m| m.vars().last().copied())
            .max()
            .unwrap_or(0)
    }

    /// Evaluates at a cube point given as a sign pattern (set bit = -1).
    pub fn evaluate_pattern(&self, pattern: u64) -> f64 {
        self.terms
            .iter()
            .map(|(m, &c)| c * m.sign_at(pattern))
            .sum()
    }

    /// Evaluates at an explicit ±1 assignment. Errors if a term references a
    /// coordinate beyond the assignment.
    pub fn evaluate(&self, signs: &[f64]) -> Result<f64> {
        if self.max_var() > signs.len() {
            return Err(Error::Parameter(format!(
                "polynomial references variable {}, input has length {}",
                self.max_var(),
                signs.len()
            )));
        }
        let mut pattern = 0u64;
        for (j, &s) in signs.iter().enumerate().take(64) {
            if s < 0.0 {
                pattern |= 1 << j;
            }
        }
        Ok(self.evaluate_pattern(pattern))
    }

    /// Parseval norm `sqrt(sum a_I^2)`.
    pub fn l2_norm(&self) -> f64 {
        self.terms.values().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// Scales every coefficient.
    pub fn scale(&self, s: f64) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (*m, c * s)))
    }

    /// Deletes every h-bad monomial: one that places two or more of its
    /// variables in a single bucket of `h` (1-indexed variable `v` has bucket
    /// `h[v-1]`). The result is affine within each bucket.
    pub fn prune_h_bad(&self, h: &[usize]) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| !is_h_bad(m, h))
                .map(|(m, c)| (*m, *c)),
        )
    }

    /// Total squared coefficient weight of the h-bad monomials.
    pub fn bad_weight(&self, h: &[usize]) -> f64 {
        self.terms
            .iter()
            .filter(|(m, _)| is_h_bad(m, h))
            .map(|(_, c)| c * c)
            .sum()
    }
}

fn is_h_bad(m: &VarSet, h: &[usize]) -> bool {
    let vars = m.vars();
    let mut seen: Vec<usize> = Vec::with_capacity(vars.len());
    for v in vars {
        assert!(v <= h.len(), "hash not defined on variable {v}");
        let bucket = h[v - 1];
        if seen.contains(&bucket) {
            return true;
        }
        seen.push(bucket);
    }
    false
}

/// Random sparse polynomial: `num_terms` distinct monomials of degree <=
/// `degree` (at least one of full degree), standard normal coefficients.
pub fn random_sparse<R: Rng>(
    n: usize,
    degree: usize,
    num_terms: usize,
    rng: &mut R,
) -> MultilinearPolynomial {
    assert!(degree <= n && n <= 64);
    let mut p = MultilinearPolynomial::zero();
    let random_monomial = |rng: &mut R, deg: usize| -> VarSet {
        let mut mask = 0u64;
        while (mask.count_ones() as usize) < deg {
            mask |= 1 << rng.gen_range(0..n);
        }
        VarSet(mask)
    };
    // Pin one monomial at the full degree so the polynomial's degree is known.
    if degree > 0 && num_terms > 0 {
        p.add_term(random_monomial(rng, degree), standard_normal(rng));
    }
    while p.num_terms() < num_terms {
        let deg = rng.gen_range(0..=degree);
        let m = random_monomial(rng, deg);
        let c = standard_normal(rng);
        if p.terms.contains_key(&m) {
            continue;
        }
        p.add_term(m, c);
    }
    p
}

/// Normalizes to unit Parseval norm; returns the original norm.
pub fn normalize(p: &MultilinearPolynomial) -> (MultilinearPolynomial, f64) {
    let norm = p.l2_norm();
    if norm == 0.0 {
        return (p.clone(), 0.0);
    }
    (p.scale(1.0 / norm), norm)
}

fn standard_normal<R: Rng>(rng: &mut R) -> f64 {
    // Box-Muller; adequate for generating test coefficients.
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// JSON form per the external interface: variables are 1-indexed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermJson {
    pub vars: Vec<usize>,
    pub coef: f64,
}

impl PolynomialJson {
    pub fn from_polynomial(p: &MultilinearPolynomial) -> Self {
        PolynomialJson {
            terms: p
                .terms()
                .map(|(m, &c)| TermJson {
                    vars: m.vars(),
                    coef: c,
                })
                .collect(),
        }
    }

    pub fn to_polynomial(&self) -> Result<MultilinearPolynomial> {
        let mut p = MultilinearPolynomial::zero();
        for t in &self.terms {
            p.add_term(VarSet::from_vars(&t.vars)?, t.coef);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn x(vars: &[usize]) -> VarSet {
        VarSet::from_vars(vars).unwrap()
    }

    #[test]
    fn evaluate_simple() {
        let p = MultilinearPolynomial::from_terms([(x(&[1, 2]), 1.0)]);
        assert_eq!(p.evaluate(&[1.0, 1.0]).unwrap(), 1.0);
        assert_eq!(p.evaluate(&[1.0, -1.0]).unwrap(), -1.0);
        assert!(p.evaluate(&[1.0]).is_err());
    }

    #[test]
    fn evaluate_matches_term_by_term_oracle() {
        let mut rng = ChaCha20Rng::seed_from_u64(42);
        let n = 10;
        for _ in 0..20 {
            let p = random_sparse(n, 3, 8, &mut rng);
            let signs: Vec<f64> = (0..n)
                .map(|_| if rng.gen::<bool>() { 1.0 } else { -1.0 })
                .collect();
            // Oracle: recompute each term with explicit products.
            let mut expect = 0.0;
            for (m, &c) in p.terms() {
                let mut t = c;
                for v in m.vars() {
                    t *= signs[v - 1];
                }
                expect += t;
            }
            assert_relative_eq!(p.evaluate(&signs).unwrap(), expect, max_relative = 1e-12);
        }
    }

    #[test]
    fn l2_norm_examples() {
        let p = MultilinearPolynomial::from_terms([(x(&[1, 2]), 3.0)]);
        assert_eq!(p.l2_norm(), 3.0);
        let q = MultilinearPolynomial::from_terms([
            (x(&[1]), 1.0 / 2f64.sqrt()),
            (x(&[2]), 1.0 / 2f64.sqrt()),
        ]);
        assert_relative_eq!(q.l2_norm(), 1.0, max_relative = 1e-15);
    }

    #[test]
    fn l2_norm_matches_brute_force_mean_square() {
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        let n = 8;
        for _ in 0..10 {
            let p = random_sparse(n, 3, 10, &mut rng);
            let mut mean_sq = 0.0;
            for pattern in 0..(1u64 << n) {
                let v = p.evaluate_pattern(pattern);
                mean_sq += v * v;
            }
            mean_sq /= (1u64 << n) as f64;
            assert_relative_eq!(p.l2_norm(), mean_sq.sqrt(), max_relative = 1e-12);
        }
    }

    #[test]
    fn pruning_examples() {
        let p = MultilinearPolynomial::from_terms([(x(&[1, 2]), 1.0)]);
        // constant hash: both variables share a bucket
        assert_eq!(p.prune_h_bad(&[0, 0]).num_terms(), 0);
        // injective hash: unchanged
        let q = p.prune_h_bad(&[0, 1]);
        assert_eq!(q.num_terms(), 1);

        // P = x1 x2 + x1 x3, h(1)=h(2)=0, h(3)=1 -> only x1 x3 survives
        let p = MultilinearPolynomial::from_terms([(x(&[1, 2]), 1.0), (x(&[1, 3]), 2.0)]);
        let pruned = p.prune_h_bad(&[0, 0, 1]);
        assert_eq!(pruned.num_terms(), 1);
        assert_eq!(*pruned.terms().next().unwrap().0, x(&[1, 3]));
    }

    #[test]
    fn pruning_is_idempotent_and_contractive() {
        let mut rng = ChaCha20Rng::seed_from_u64(2);
        for _ in 0..20 {
            let p = random_sparse(8, 3, 10, &mut rng);
            let h: Vec<usize> = (0..8).map(|_| rng.gen_range(0..3)).collect();
            let once = p.prune_h_bad(&h);
            let twice = once.prune_h_bad(&h);
            assert_eq!(once.num_terms(), twice.num_terms());
            assert!(once.l2_norm() <= p.l2_norm() + 1e-15);
            // bad_weight complements the kept weight
            assert_relative_eq!(
                p.bad_weight(&h),
                p.l2_norm().powi(2) - once.l2_norm().powi(2),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn bad_weight_extremes() {
        let p = MultilinearPolynomial::from_terms([(x(&[1, 2]), 2.0), (x(&[2, 3]), 1.0)]);
        // injective -> 0
        assert_eq!(p.bad_weight(&[0, 1, 2]), 0.0);
        // constant hash, all monomials degree >= 2 -> everything bad
        assert_relative_eq!(p.bad_weight(&[0, 0, 0]), p.l2_norm().powi(2));
    }

    #[test]
    fn json_round_trip() {
        let p = MultilinearPolynomial::from_terms([(x(&[1, 3]), 0.5), (x(&[]), -1.25)]);
        let json = PolynomialJson::from_polynomial(&p);
        let text = serde_json::to_string(&json).unwrap();
        let back: PolynomialJson = serde_json::from_str(&text).unwrap();
        let q = back.to_polynomial().unwrap();
        assert_eq!(p.num_terms(), q.num_terms());
        for ((m1, c1), (m2, c2)) in p.terms().zip(q.terms()) {
            assert_eq!(m1, m2);
            assert_eq!(c1, c2);
        }
    }
}
