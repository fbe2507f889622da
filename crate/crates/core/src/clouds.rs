//! Cloud systems over folded short-code graphs and the lifted SDP-feasible
//! Gram matrix, all in inner-product space; the tensor-power vectors are
//! never materialized.
//!
//! A cloud is the multiset of third tensor powers of an orbit's members
//! (scaled to unit norm). All quantities reduce to shifted inner products of
//! base codewords: the cloud-sum inner product is
//! `S_uv = sum_sigma (<u, sigma(v)>/N)^(3t)` and the normalized Gram entry
//! is `S_uv / sqrt(S_uu S_vv)`. The lifted solution mixes the normalized
//! cloud sums with mutually orthogonal unit vectors at weight
//! `delta = 10 R^2 exp(-t/(16R))`; desk-scale (t, R) push that formula past
//! one, where the vector form forces a clamp at 1 (the raw value is kept
//! for reporting).

use nalgebra::DMatrix;
use rand::Rng;
use serde::Serialize;

use crate::bits::BitVector;
use crate::error::{Error, Result};
use crate::graph::{affine_shift, balanced_separator_opt, FoldedGraph, SeparatorResult, ShortCodeGraph};

/// Near-orthogonality of a codeword's orbit: every nonidentity shift
/// correlates at most N^(2/3)/2 with the original.
#[derive(Debug, Clone, Serialize)]
pub struct NearOrthReport {
    pub ok: bool,
    pub max_corr: f64,
    pub threshold: f64,
}

pub fn near_orthogonality(v: &BitVector) -> NearOrthReport {
    let n_points = v.len();
    let threshold = (n_points as f64).powf(2.0 / 3.0) / 2.0;
    let mut max_corr = 0.0f64;
    for b in 1..n_points {
        let corr = v.sign_inner_product(&affine_shift(v, b)).abs() as f64;
        max_corr = max_corr.max(corr);
    }
    NearOrthReport {
        ok: max_corr <= threshold,
        max_corr,
        threshold,
    }
}

/// Largest eigenvalue of the cloud's member Gram
/// `M(v)[a][b] = (<pi_a(v), pi_b(v)> / N)^3`. Only claimed (and only
/// computed) for nearly-orthogonal clouds, where it is at most 9/8 by
/// Gershgorin, hence below the 3/2 requirement.
pub fn cloud_gram_eigen_bound(v: &BitVector) -> Result<f64> {
    let report = near_orthogonality(v);
    if !report.ok {
        return Err(Error::Parameter(format!(
            "cloud is not nearly-orthogonal (max correlation {} > {}); bound not claimed",
            report.max_corr, report.threshold
        )));
    }
    let n_points = v.len();
    // Entry depends on a xor b only.
    let profile: Vec<f64> = (0..n_points)
        .map(|c| {
            let r = v.sign_inner_product(&affine_shift(v, c)) as f64 / n_points as f64;
            r.powi(3)
        })
        .collect();
    let mut m = DMatrix::zeros(n_points, n_points);
    for a in 0..n_points {
        for b in 0..n_points {
            m[(a, b)] = profile[a ^ b];
        }
    }
    let eigen = nalgebra::SymmetricEigen::new(m);
    Ok(eigen.eigenvalues.iter().cloned().fold(f64::MIN, f64::max))
}

/// Gershgorin estimate for the same matrix: 1 + sum of off-diagonal
/// magnitudes in a row. Used as an independent upper bound in tests.
pub fn cloud_gram_gershgorin(v: &BitVector) -> f64 {
    let n_points = v.len();
    1.0 + (1..n_points)
        .map(|c| {
            let r = v.sign_inner_product(&affine_shift(v, c)) as f64 / n_points as f64;
            r.powi(3).abs()
        })
        .sum::<f64>()
}

/// Verifies the matching property between the clouds of u and v: the shifted
/// best pair realizes the argmax of |<a, .>| for every member a, with ties
/// broken by the smallest shift index.
pub fn matching_audit(u: &BitVector, v: &BitVector) -> bool {
    let n_points = u.len();
    // best relative shift
    let mut best_c = 0usize;
    let mut best_val = i64::MIN;
    for c in 0..n_points {
        let val = u.sign_inner_product(&affine_shift(v, c)).abs();
        if val > best_val {
            best_val = val;
            best_c = c;
        }
    }
    for r in 0..n_points {
        let a = affine_shift(u, r);
        let matched = affine_shift(v, r ^ best_c);
        let got = a.sign_inner_product(&matched).abs();
        let max = (0..n_points)
            .map(|b| a.sign_inner_product(&affine_shift(v, b)).abs())
            .max()
            .unwrap();
        if got != max {
            return false;
        }
    }
    true
}

/// Normalized inner product of the cloud-sum vectors of u and v at tensor
/// power `3 * t_tensor` (t_tensor odd): `S_uv / sqrt(S_uu S_vv)` with
/// `S_xy = sum_sigma (<x, sigma(y)>/N)^(3t)`. No tensors are materialized.
pub fn cloud_inner_product(u: &BitVector, v: &BitVector, t_tensor: usize) -> Result<f64> {
    if t_tensor % 2 == 0 {
        return Err(Error::Parameter("t_tensor must be odd".into()));
    }
    let s_uv = cloud_sum(u, v, t_tensor);
    let s_uu = cloud_sum(u, u, t_tensor);
    let s_vv = cloud_sum(v, v, t_tensor);
    if s_uu <= 0.0 || s_vv <= 0.0 {
        return Err(Error::Construction(format!(
            "cloud sum has nonpositive norm (S_uu = {s_uu}, S_vv = {s_vv})"
        )));
    }
    Ok(s_uv / (s_uu * s_vv).sqrt())
}

fn cloud_sum(u: &BitVector, v: &BitVector, t_tensor: usize) -> f64 {
    let n_points = u.len();
    let power = 3 * t_tensor as i32;
    (0..n_points)
        .map(|sigma| {
            let r = u.sign_inner_product(&affine_shift(v, sigma)) as f64 / n_points as f64;
            r.powi(power)
        })
        .sum()
}

/// The lifted SDP-feasible solution: a Gram over the clouds of a folded
/// graph with the perturbation of the rounds/tensor schedule.
#[derive(Debug, Clone)]
pub struct LiftedSolution {
    pub t_tensor: usize,
    pub rounds: usize,
    /// The schedule value 10 R^2 exp(-t/(16R)); may exceed 1 at desk scale.
    pub delta_raw: f64,
    /// The perturbation actually used, clamped into [0, 1].
    pub delta: f64,
    /// Representative cloud per orbit: itself, or the fallback cloud for
    /// orbits that are not nearly-orthogonal.
    pub rep_cloud: Vec<usize>,
    pub near_orthogonal: Vec<bool>,
    pub gram: DMatrix<f64>,
    pub min_eigenvalue: f64,
}

/// Tolerance for the PSD eigencheck.
pub const PSD_TOL: f64 = 1e-8;

pub fn lifted_gram(
    graph: &ShortCodeGraph,
    folded: &FoldedGraph,
    t_tensor: usize,
    rounds: usize,
) -> Result<LiftedSolution> {
    lifted_gram_with_delta(graph, folded, t_tensor, rounds, None)
}

/// Variant with a forced perturbation (e.g. 0 for the raw cloud Gram).
pub fn lifted_gram_with_delta(
    graph: &ShortCodeGraph,
    folded: &FoldedGraph,
    t_tensor: usize,
    rounds: usize,
    forced_delta: Option<f64>,
) -> Result<LiftedSolution> {
    if t_tensor % 2 == 0 {
        return Err(Error::Parameter("t_tensor must be odd".into()));
    }
    if rounds == 0 {
        return Err(Error::Parameter("rounds must be positive".into()));
    }
    let v = folded.vertex_count();
    let reps: Vec<&BitVector> = folded
        .orbit_reps
        .iter()
        .map(|&m| &graph.codewords()[m as usize])
        .collect();
    let near: Vec<bool> = reps.iter().map(|w| near_orthogonality(w).ok).collect();
    let fallback = near
        .iter()
        .position(|&ok| ok)
        .ok_or_else(|| Error::Construction("no nearly-orthogonal cloud to fall back on".into()))?;
    let rep_cloud: Vec<usize> = (0..v)
        .map(|o| if near[o] { o } else { fallback })
        .collect();

    let delta_raw = 10.0 * (rounds * rounds) as f64 * (-(t_tensor as f64) / (16.0 * rounds as f64)).exp();
    let delta = forced_delta.unwrap_or(delta_raw.min(1.0));
    if !(0.0..=1.0).contains(&delta) {
        return Err(Error::Parameter("delta must lie in [0,1]".into()));
    }

    // Pairwise cloud inner products between representative clouds.
    let mut cip = DMatrix::zeros(v, v);
    for a in 0..v {
        for b in a..v {
            let val = if rep_cloud[a] == rep_cloud[b] {
                1.0
            } else {
                cloud_inner_product(reps[rep_cloud[a]], reps[rep_cloud[b]], t_tensor)?
            };
            cip[(a, b)] = val;
            cip[(b, a)] = val;
        }
    }
    let mut gram = DMatrix::zeros(v, v);
    for a in 0..v {
        for b in 0..v {
            gram[(a, b)] = if rep_cloud[a] == rep_cloud[b] {
                if a == b {
                    1.0
                } else {
                    // identical realized vectors
                    1.0
                }
            } else {
                (1.0 - delta) * cip[(a, b)]
            };
        }
    }
    let eigen = nalgebra::SymmetricEigen::new(gram.clone());
    let min_eigenvalue = eigen.eigenvalues.iter().cloned().fold(f64::MAX, f64::min);
    if min_eigenvalue < -PSD_TOL {
        return Err(Error::Construction(format!(
            "lifted Gram is not PSD: min eigenvalue {min_eigenvalue}"
        )));
    }
    Ok(LiftedSolution {
        t_tensor,
        rounds,
        delta_raw,
        delta,
        rep_cloud,
        near_orthogonal: near,
        gram,
        min_eigenvalue,
    })
}

impl LiftedSolution {
    /// Explicit vectors realizing the Gram (rows), via the symmetric
    /// eigendecomposition with negative dust clamped to zero.
    pub fn realize_vectors(&self) -> Vec<Vec<f64>> {
        let v = self.gram.nrows();
        let eigen = nalgebra::SymmetricEigen::new(self.gram.clone());
        let mut out = vec![vec![0.0; v]; v];
        for (j, &lam) in eigen.eigenvalues.iter().enumerate() {
            let s = lam.max(0.0).sqrt();
            for i in 0..v {
                out[i][j] = s * eigen.eigenvectors[(i, j)];
            }
        }
        out
    }
}

/// Balance of the solution: `E_{B,B' ~ rho x rho} ||v_B - v_B'||^2 / 4`,
/// computed from the Gram.
pub fn balance_value(sol: &LiftedSolution, folded: &FoldedGraph) -> f64 {
    let rho = &folded.walk.stationary;
    let v = folded.vertex_count();
    let mut acc = 0.0;
    for a in 0..v {
        for b in 0..v {
            acc += rho[a] * rho[b] * (2.0 - 2.0 * sol.gram[(a, b)]) / 4.0;
        }
    }
    acc
}

/// SDP objective: the edge-weighted average of `||v_B - v_B'||^2 / 4`.
pub fn sdp_objective(sol: &LiftedSolution, folded: &FoldedGraph) -> f64 {
    let v = folded.vertex_count();
    let mut acc = 0.0;
    for a in 0..v {
        for b in 0..v {
            acc += folded.walk.joint[a][b] * (2.0 - 2.0 * sol.gram[(a, b)]) / 4.0;
        }
    }
    acc
}

// ---------------------------------------------------------------------------
// End-to-end gap report
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct CloudClaims {
    /// Fraction of codewords whose cloud is nearly-orthogonal.
    pub near_orth_fraction: f64,
    /// Largest member-Gram eigenvalue over nearly-orthogonal clouds.
    pub max_cloud_eigen: f64,
    /// Fraction of sampled cloud pairs passing the matching audit.
    pub matching_pass_fraction: f64,
    pub matching_pairs_sampled: usize,
    pub delta_raw: f64,
    pub delta_effective: f64,
    pub min_gram_eigenvalue: f64,
    pub balance: f64,
    pub balance_threshold: f64,
    pub objective: f64,
    /// Edge-average of (2 - 2 cip)/4 with no perturbation: the cloud-level
    /// objective before the lifting schedule.
    pub cloud_objective: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GapReport {
    pub n: usize,
    pub d: usize,
    pub eps: f64,
    pub b: f64,
    pub rounds: usize,
    pub t_tensor: usize,
    pub folded_vertices: usize,
    pub integral: SeparatorResult,
    pub sdp: f64,
    pub feasible: bool,
    pub gap: Option<f64>,
    pub claims: CloudClaims,
}

pub fn gap_report<R: Rng>(
    graph: &ShortCodeGraph,
    folded: &FoldedGraph,
    b: f64,
    rounds: usize,
    t_tensor: usize,
    cut_cap: usize,
    rng: &mut R,
) -> Result<GapReport> {
    let sol = lifted_gram(graph, folded, t_tensor, rounds)?;
    let raw = lifted_gram_with_delta(graph, folded, t_tensor, rounds, Some(0.0))?;

    // Near-orthogonality fraction over codewords (orbit-invariant, weighted
    // by orbit size).
    let total = graph.vertex_count() as f64;
    let mut near_mass = 0.0;
    for (o, &ok) in sol.near_orthogonal.iter().enumerate() {
        if ok {
            near_mass += folded.orbit_sizes[o] as f64;
        }
    }
    let near_orth_fraction = near_mass / total;

    let mut max_cloud_eigen = f64::MIN;
    for (o, &ok) in sol.near_orthogonal.iter().enumerate() {
        if ok {
            let rep = &graph.codewords()[folded.orbit_reps[o] as usize];
            max_cloud_eigen = max_cloud_eigen.max(cloud_gram_eigen_bound(rep)?);
        }
    }

    let pairs = 100usize;
    let mut pass = 0usize;
    for _ in 0..pairs {
        let u = &graph.codewords()[rng.gen_range(0..graph.vertex_count())];
        let w = &graph.codewords()[rng.gen_range(0..graph.vertex_count())];
        if matching_audit(u, w) {
            pass += 1;
        }
    }

    let balance = balance_value(&sol, folded);
    let balance_threshold = 2.0 * b * (1.0 - b);
    let feasible = balance >= balance_threshold - 1e-12;
    let sdp = sdp_objective(&sol, folded);
    let cloud_objective = sdp_objective(&raw, folded);
    let integral = balanced_separator_opt(&folded.walk, b, cut_cap)?;
    let gap = if feasible && sdp > 0.0 {
        Some(integral.phi / sdp)
    } else {
        None
    };
    Ok(GapReport {
        n: graph.code().n(),
        d: graph.code().d(),
        eps: graph.eps,
        b,
        rounds,
        t_tensor,
        folded_vertices: folded.vertex_count(),
        integral,
        sdp,
        feasible,
        gap,
        claims: CloudClaims {
            near_orth_fraction,
            max_cloud_eigen,
            matching_pass_fraction: pass as f64 / pairs as f64,
            matching_pairs_sampled: pairs,
            delta_raw: sol.delta_raw,
            delta_effective: sol.delta,
            min_gram_eigenvalue: sol.min_eigenvalue,
            balance,
            balance_threshold,
            objective: sdp,
            cloud_objective,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rm::RmCode;
    use approx::assert_relative_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn constants_are_not_nearly_orthogonal() {
        let v = BitVector::ones(16);
        let r = near_orthogonality(&v);
        assert!(!r.ok);
        assert_relative_eq!(r.max_corr, 16.0);
    }

    #[test]
    fn quadratic_inner_products_are_zero_or_full_at_4_2() {
        // Derivatives of degree-2 polynomials are affine, so nonidentity
        // correlations are 0 or ±16 exactly.
        let code = RmCode::new(4, 2).unwrap();
        for w in code.enumerate_codewords(None).unwrap().iter().take(200) {
            for b in 1..16 {
                let corr = w.sign_inner_product(&affine_shift(w, b)).abs();
                assert!(corr == 0 || corr == 16, "corr {corr}");
            }
        }
    }

    #[test]
    fn near_orth_fraction_at_4_2_is_seven_sixteenths() {
        // Structural fact for d = 2: the orbit is nearly-orthogonal exactly
        // when the quadratic part's alternating form is nondegenerate;
        // over F_2^4 that is 28 of the 64 quadratic parts.
        let code = RmCode::new(4, 2).unwrap();
        let words = code.enumerate_codewords(None).unwrap();
        let near = words.iter().filter(|w| near_orthogonality(w).ok).count();
        assert_eq!(near * 16, words.len() * 7, "fraction != 7/16");
    }

    #[test]
    fn eigen_bound_for_nearly_orthogonal_clouds() {
        let code = RmCode::new(4, 2).unwrap();
        let words = code.enumerate_codewords(None).unwrap();
        let mut checked = 0;
        for w in &words {
            if near_orthogonality(w).ok {
                let eig = cloud_gram_eigen_bound(w).unwrap();
                assert!(eig <= 9.0 / 8.0 + 1e-9, "eigenvalue {eig}");
                assert!(eig <= cloud_gram_gershgorin(w) + 1e-9);
                checked += 1;
                if checked > 50 {
                    break;
                }
            }
        }
        assert!(checked > 0);
        // refused on a non-nearly-orthogonal cloud
        assert!(cloud_gram_eigen_bound(&BitVector::ones(16)).is_err());
    }

    #[test]
    fn singleton_orbit_eigenvalue_is_orbit_size() {
        // For the all-zeros word every shift fixes it, so the profile is
        // identically 1 and the Gram is all-ones with top eigenvalue N.
        // It is not nearly-orthogonal, so compute the profile directly.
        let v = BitVector::zeros(8);
        let g = cloud_gram_gershgorin(&v);
        assert_relative_eq!(g, 8.0);
    }

    #[test]
    fn matching_audit_cases() {
        let code = RmCode::new(3, 1).unwrap();
        let words = code.enumerate_codewords(None).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(6);
        // u = v passes
        assert!(matching_audit(&words[5], &words[5]));
        // constant u: all inner products equal, any matching passes
        assert!(matching_audit(&BitVector::zeros(8), &words[7]));
        // random pairs pass (exhaustive argmax verification)
        for _ in 0..50 {
            let u = &words[rng.gen_range(0..words.len())];
            let v = &words[rng.gen_range(0..words.len())];
            assert!(matching_audit(u, v));
        }
    }

    #[test]
    fn cloud_inner_product_basic() {
        // antipodal singleton-orbit pair: constants 0 and 1 give -1 at any
        // odd power... the all-ones and all-zeros words are fixed by every
        // shift, so S_uv = N * (-1)^(3t) / ... normalized to -1.
        let zero = BitVector::zeros(8);
        let ones = BitVector::ones(8);
        let cip = cloud_inner_product(&zero, &ones, 1).unwrap();
        assert_relative_eq!(cip, -1.0, epsilon = 1e-12);
        let cip = cloud_inner_product(&zero, &zero, 3).unwrap();
        assert_relative_eq!(cip, 1.0, epsilon = 1e-12);
        assert!(cloud_inner_product(&zero, &ones, 2).is_err());
    }

    #[test]
    fn cloud_inner_product_symmetric_orbit_invariant_and_bounded() {
        let code = RmCode::new(3, 1).unwrap();
        let words = code.enumerate_codewords(None).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(14);
        for _ in 0..30 {
            let u = &words[rng.gen_range(0..words.len())];
            let v = &words[rng.gen_range(0..words.len())];
            let uv = cloud_inner_product(u, v, 1);
            let vu = cloud_inner_product(v, u, 1);
            match (uv, vu) {
                (Ok(a), Ok(b)) => {
                    assert_relative_eq!(a, b, epsilon = 1e-12);
                    assert!(a.abs() <= 1.0 + 1e-12);
                    // invariance under shifting u
                    for bshift in 0..8 {
                        if let Ok(c) = cloud_inner_product(&affine_shift(u, bshift), v, 1) {
                            assert_relative_eq!(a, c, epsilon = 1e-12);
                        }
                    }
                }
                (Err(_), Err(_)) => {}
                _ => panic!("symmetry of error behavior violated"),
            }
        }
    }

    #[test]
    fn materialized_tensor_oracle_small() {
        // N = 4 (RM(2,1)), t_tensor = 1: materialize the 64-dimensional
        // third tensor powers and compare all pairwise normalized cloud-sum
        // inner products, to 1e-10.
        let code = RmCode::new(2, 1).unwrap();
        let words = code.enumerate_codewords(None).unwrap();
        let n_points = 4usize;
        let tensor3 = |w: &BitVector| -> Vec<f64> {
            let signs: Vec<f64> = (0..n_points).map(|i| w.sign(i) / 2.0).collect(); // v/sqrt(N)
            let mut t = Vec::with_capacity(64);
            for a in 0..n_points {
                for b in 0..n_points {
                    for c in 0..n_points {
                        t.push(signs[a] * signs[b] * signs[c]);
                    }
                }
            }
            t
        };
        let cloud_sum_vec = |w: &BitVector| -> Vec<f64> {
            let mut acc = vec![0.0; 64];
            for b in 0..n_points {
                let t = tensor3(&affine_shift(w, b));
                for (a, x) in acc.iter_mut().zip(&t) {
                    *a += x;
                }
            }
            acc
        };
        let dot = |x: &[f64], y: &[f64]| -> f64 { x.iter().zip(y).map(|(a, b)| a * b).sum() };
        for u in &words {
            for v in &words {
                let su = cloud_sum_vec(u);
                let sv = cloud_sum_vec(v);
                let nu = dot(&su, &su);
                let nv = dot(&sv, &sv);
                if nu < 1e-9 || nv < 1e-9 {
                    assert!(cloud_inner_product(u, v, 1).is_err() || nu * nv > 0.0);
                    continue;
                }
                let expect = dot(&su, &sv) / (nu * nv).sqrt();
                let got = cloud_inner_product(u, v, 1).unwrap();
                assert!(
                    (got - expect).abs() < 1e-10,
                    "tensor oracle mismatch: {got} vs {expect}"
                );
            }
        }
    }

    fn instance() -> (ShortCodeGraph, FoldedGraph) {
        let g = ShortCodeGraph::build(3, 1, 0.1).unwrap();
        let f = g.fold();
        (g, f)
    }

    #[test]
    fn lifted_gram_psd_and_delta_schedule() {
        let (g, f) = instance();
        let sol = lifted_gram(&g, &f, 3, 2).unwrap();
        assert!(sol.min_eigenvalue >= -PSD_TOL);
        assert_relative_eq!(sol.delta_raw, 40.0 * (-3.0f64 / 32.0).exp(), epsilon = 1e-12);
        assert_eq!(sol.delta, 1.0, "desk-scale schedule clamps at 1");
        // raw delta strictly decreases in t_tensor at fixed R
        let sol5 = lifted_gram(&g, &f, 5, 2).unwrap();
        assert!(sol5.delta_raw < sol.delta_raw);
        // unit diagonal
        for i in 0..f.vertex_count() {
            assert_eq!(sol.gram[(i, i)], 1.0);
        }
    }

    #[test]
    fn lifted_gram_unclamped_regime() {
        // R = 1, t = 81 gives delta ~ 0.063 < 1: a genuinely mixed Gram.
        let (g, f) = instance();
        let sol = lifted_gram(&g, &f, 81, 1).unwrap();
        assert!(sol.delta < 1.0 && sol.delta > 0.0);
        assert!(sol.min_eigenvalue >= -PSD_TOL);
    }

    #[test]
    fn forced_zero_delta_reproduces_cloud_gram() {
        let (g, f) = instance();
        let sol = lifted_gram_with_delta(&g, &f, 1, 2, Some(0.0)).unwrap();
        // off-diagonal entries are raw cloud inner products for distinct reps
        for a in 0..f.vertex_count() {
            for b in 0..f.vertex_count() {
                if sol.rep_cloud[a] != sol.rep_cloud[b] {
                    let u = &g.codewords()[f.orbit_reps[sol.rep_cloud[a]] as usize];
                    let v = &g.codewords()[f.orbit_reps[sol.rep_cloud[b]] as usize];
                    assert_relative_eq!(
                        sol.gram[(a, b)],
                        cloud_inner_product(u, v, 1).unwrap(),
                        epsilon = 1e-12
                    );
                }
            }
        }
    }

    #[test]
    fn balance_and_objective_from_vectors_match_gram() {
        let (g, f) = instance();
        let sol = lifted_gram(&g, &f, 3, 2).unwrap();
        let vecs = sol.realize_vectors();
        let v = f.vertex_count();
        let dist2 = |a: usize, b: usize| -> f64 {
            vecs[a]
                .iter()
                .zip(&vecs[b])
                .map(|(x, y)| (x - y) * (x - y))
                .sum()
        };
        let mut balance = 0.0;
        let mut objective = 0.0;
        for a in 0..v {
            for b in 0..v {
                balance += f.walk.stationary[a] * f.walk.stationary[b] * dist2(a, b) / 4.0;
                objective += f.walk.joint[a][b] * dist2(a, b) / 4.0;
            }
        }
        assert!((balance - balance_value(&sol, &f)).abs() < 1e-8);
        assert!((objective - sdp_objective(&sol, &f)).abs() < 1e-8);
    }

    #[test]
    fn degenerate_balance_of_identical_clouds() {
        // All gram entries 1 (single cloud repeated) would give balance 0;
        // emulate with forced delta 0 on a graph whose orbits all collapse
        // is not available, so check the formula directly on a 1x1 case is
        // trivial. Instead: balance with delta=1 equals (1 - sum rho^2)/2.
        let (g, f) = instance();
        let sol = lifted_gram_with_delta(&g, &f, 1, 2, Some(1.0)).unwrap();
        let sum_sq: f64 = f.walk.stationary.iter().map(|r| r * r).sum();
        assert_relative_eq!(
            balance_value(&sol, &f),
            (1.0 - sum_sq) / 2.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn gap_report_runs_end_to_end() {
        let (g, f) = instance();
        let mut rng = ChaCha20Rng::seed_from_u64(99);
        let r = gap_report(&g, &f, 1.0 / 3.0, 2, 3, 24, &mut rng).unwrap();
        assert!(r.feasible, "balance {} below threshold", r.claims.balance);
        assert!(r.gap.is_some());
        assert!(r.claims.matching_pass_fraction == 1.0);
        assert!(r.claims.near_orth_fraction > 0.0);
        assert!(r.integral.optimal);
    }
}
