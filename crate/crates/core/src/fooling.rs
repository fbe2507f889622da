//! Measurement of fooling errors.
//!
//! The headline quantity is the Lipschitz fooling error of a generator on a
//! degree-l polynomial P with unit Parseval norm: the supremum over
//! 1-Lipschitz tests of the expectation gap, which for laws on the real line
//! equals the 1-Wasserstein distance between the pushforward of P under the
//! uniform cube and under the generator's seed space. Both laws are computed
//! exactly whenever enumerable.
//!
//! The error decomposes along the analysis of the hashing generator:
//! deleting h-bad monomials costs at most `l/sqrt(t)` on each side (averaged
//! over the pairwise hash family), and swapping buckets one at a time
//! against the inner source costs at most `4*sqrt(t*delta)` in W1 per hash,
//! where `delta` bounds the per-step CDF gap. Both sides of each inequality
//! are measured here; `delta_observed` is the largest per-step Kolmogorov
//! gap actually seen, not the schedule target.

use rand::Rng;

use crate::dist::{kolmogorov, wasserstein1, DiscreteDistribution};
use crate::error::{Error, Result};
use crate::poly::{normalize, MultilinearPolynomial};
use crate::prg::{cube_pushforward, HashingGenerator, KWiseSource, PatternLaw};
use crate::rm::RmCode;

/// Decomposition of the fooling error, all terms measured exactly.
#[derive(Debug, Clone, serde::Serialize)]
pub struct Decomposition {
    /// E_h of W1 between the laws of P and P_h under the uniform cube.
    pub pruning_uniform: f64,
    /// E_h of W1 between the laws of P and P_h under the generator.
    pub pruning_generator: f64,
    /// Claimed per-side pruning bound l/sqrt(t).
    pub pruning_bound: f64,
    /// Largest over h of W1 between P_h under uniform and under the generator.
    pub hybrid_max: f64,
    /// E_h of the same.
    pub hybrid_mean: f64,
    /// Largest per-step Kolmogorov gap across all hashes and bucket swaps.
    pub delta_observed: f64,
    /// Claimed hybrid bound 4*sqrt(t*delta_observed).
    pub hybrid_bound: f64,
    /// E_h [pruning_u(h) + hybrid(h) + pruning_g(h)], an upper bound for w1.
    pub triangle_total: f64,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct FoolingReport {
    pub w1: f64,
    pub exact: bool,
    pub eps_target: f64,
    /// Parseval norm of the input polynomial before internal normalization.
    pub scale: f64,
    pub schedule_label: String,
    pub decomposition: Decomposition,
}

/// Exact Lipschitz fooling error of the generator on P, with the full
/// pruning/hybrid decomposition. P is normalized internally; the reported
/// W1 refers to the normalized polynomial, and `scale` records the norm.
pub fn lipschitz_fooling_error(
    p: &MultilinearPolynomial,
    gen: &HashingGenerator,
) -> Result<FoolingReport> {
    if p.degree() > gen.ell {
        return Err(Error::Parameter(format!(
            "polynomial degree {} exceeds the generator's bound {}",
            p.degree(),
            gen.ell
        )));
    }
    if p.max_var() > gen.n {
        return Err(Error::Parameter(
            "polynomial has variables beyond the generator's n".into(),
        ));
    }
    let (p, scale) = normalize(p);
    let n = gen.n;
    let t = gen.t() as f64;

    let uniform_law_of_p = cube_pushforward(&p, n, None)?;
    let mask = gen.mask_law()?;
    let partitions = gen.partition_weights()?;

    let mut pruning_uniform = 0.0f64;
    let mut pruning_generator = 0.0f64;
    let mut hybrid_max = 0.0f64;
    let mut hybrid_mean = 0.0f64;
    let mut delta_observed = 0.0f64;
    let mut triangle_total = 0.0f64;
    let mut mix: Vec<(f64, DiscreteDistribution)> = Vec::with_capacity(partitions.len());

    for pw in &partitions {
        let h = pw.as_hash_vec(n);
        let p_h = p.prune_h_bad(&h);

        // Laws of P and P_h under this hash's generator output.
        let pre = gen.premask_law(&pw.blocks, 0)?;
        let out = pre.xor_convolve(&mask);
        let gen_law_p = out.pushforward(&p)?;
        let gen_law_ph = out.pushforward(&p_h)?;
        let uni_law_ph = cube_pushforward(&p_h, n, None)?;

        let pr_u = wasserstein1(&uniform_law_of_p, &uni_law_ph);
        let pr_g = wasserstein1(&gen_law_p, &gen_law_ph);
        let hybrid = wasserstein1(&uni_law_ph, &gen_law_ph);
        pruning_uniform += pw.weight * pr_u;
        pruning_generator += pw.weight * pr_g;
        hybrid_mean += pw.weight * hybrid;
        hybrid_max = hybrid_max.max(hybrid);
        triangle_total += pw.weight * (pr_u + hybrid + pr_g);

        // Per-step CDF gaps along the bucket-swap ladder.
        let mut prev = gen_law_ph.clone();
        for prefix in 1..=pw.blocks.len() {
            let law = gen
                .premask_law(&pw.blocks, prefix)?
                .xor_convolve(&mask)
                .pushforward(&p_h)?;
            delta_observed = delta_observed.max(kolmogorov(&prev, &law));
            prev = law;
        }

        mix.push((pw.weight, gen_law_p));
    }

    // Full generator law of P: mixture of the per-partition laws.
    let generator_law = DiscreteDistribution::from_pairs(mix.iter().flat_map(|(w, d)| {
        d.support()
            .iter()
            .zip(d.weights())
            .map(move |(&v, &q)| (v, w * q))
            .collect::<Vec<_>>()
    }))?;

    let w1 = wasserstein1(&uniform_law_of_p, &generator_law);
    Ok(FoolingReport {
        w1,
        exact: true,
        eps_target: gen.eps,
        scale,
        schedule_label: gen.schedule_label().to_string(),
        decomposition: Decomposition {
            pruning_uniform,
            pruning_generator,
            pruning_bound: gen.ell as f64 / t.sqrt(),
            hybrid_max,
            hybrid_mean,
            delta_observed,
            hybrid_bound: 4.0 * (t * delta_observed).sqrt(),
            triangle_total,
        },
    })
}

/// Monte Carlo fooling error for generators whose seed space cannot be
/// enumerated: W1 between the exact cube law and the empirical law over
/// `samples` random seeds, with a conservative distribution-free 99%
/// confidence half-width from the Kolmogorov-Smirnov deviation bound
/// scaled by the support diameter.
#[derive(Debug, Clone, serde::Serialize)]
pub struct MonteCarloW1 {
    pub w1: f64,
    pub samples: usize,
    pub ci99_half_width: f64,
}

pub fn lipschitz_fooling_error_mc<R: Rng>(
    p: &MultilinearPolynomial,
    gen: &HashingGenerator,
    samples: usize,
    rng: &mut R,
) -> Result<MonteCarloW1> {
    if p.degree() > gen.ell {
        return Err(Error::Parameter("degree exceeds generator bound".into()));
    }
    if samples == 0 {
        return Err(Error::Parameter("sample count must be positive".into()));
    }
    let (p, _) = normalize(p);
    let uniform = cube_pushforward(&p, gen.n, None)?;
    let bits = gen.seed_bits_total();
    let w = 1.0 / samples as f64;
    let mut atoms = Vec::with_capacity(samples);
    for _ in 0..samples {
        let mut seed = crate::bits::BitVector::zeros(bits);
        for i in 0..bits {
            seed.set(i, rng.gen());
        }
        let signs = gen.sample(&seed)?;
        atoms.push((p.evaluate(&signs)?, w));
    }
    let empirical = DiscreteDistribution::from_pairs(atoms)?;
    let w1 = wasserstein1(&uniform, &empirical);
    let diameter =
        (uniform.max().max(empirical.max()) - uniform.min().min(empirical.min())).abs();
    let ks = ((2.0f64 / 0.01).ln() / (2.0 * samples as f64)).sqrt();
    Ok(MonteCarloW1 {
        w1,
        samples,
        ci99_half_width: diameter * ks,
    })
}

/// Tail-bound audit for k-wise independent sums: the exact seed-space
/// probability of `|sum_i X_i| >= t*sqrt(N)` against the bound
/// `k^(k/2) / t^k`.
#[derive(Debug, Clone, serde::Serialize)]
pub struct TailBoundReport {
    pub k: usize,
    pub n: usize,
    pub threshold: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub ok: bool,
}

pub fn tail_bound_audit(k: usize, n: usize, threshold: f64) -> Result<TailBoundReport> {
    if k % 2 != 0 || k == 0 {
        return Err(Error::Parameter(format!("k = {k} must be even and positive")));
    }
    if threshold <= 0.0 {
        return Err(Error::Parameter("threshold must be positive".into()));
    }
    let src = KWiseSource::new(n, k)?;
    let seeds = 1u64 << src.seed_bits();
    if src.seed_bits() > crate::prg::MAX_COMPONENT_SEED_BITS {
        return Err(Error::CapExceeded("tail audit seed space too large".into()));
    }
    let cut = threshold * (n as f64).sqrt();
    let mut hits = 0u64;
    for seed in 0..seeds {
        let pattern = src.pattern(seed, n);
        let sum = n as i64 - 2 * pattern.count_ones() as i64;
        if (sum.abs() as f64) >= cut {
            hits += 1;
        }
    }
    let lhs = hits as f64 / seeds as f64;
    let rhs = (k as f64).powf(k as f64 / 2.0) / threshold.powi(k as i32);
    Ok(TailBoundReport {
        k,
        n,
        threshold,
        lhs,
        rhs,
        ok: lhs <= rhs,
    })
}

/// Squared distance of x to the unit interval: 0 on [0,1], x^2 below,
/// (1-x)^2 above.
#[inline]
pub fn zeta(x: f64) -> f64 {
    let m = x.min(1.0 - x).min(0.0);
    m * m
}

/// Gap of E[zeta(P(.))] between the uniform cube on N = 2^n_rm coordinates
/// and the uniform Reed-Muller code RM(n_rm, d), both exact.
#[derive(Debug, Clone, serde::Serialize)]
pub struct InvarianceReport {
    pub gap: f64,
    pub cube_side: f64,
    pub code_side: f64,
    pub cube_exact: bool,
    pub cube_samples: Option<usize>,
}

pub fn invariance_gap(
    p: &MultilinearPolynomial,
    n_rm: usize,
    d: usize,
    cap_bits: Option<u32>,
) -> Result<InvarianceReport> {
    let big_n = 1usize << n_rm;
    let cap = cap_bits.unwrap_or(crate::rm::DEFAULT_ENUMERATION_CAP_BITS);
    if big_n as u32 > cap {
        return Err(Error::CapExceeded(format!(
            "cube on 2^{big_n} points exceeds cap; use the sampled variant"
        )));
    }
    if p.max_var() > big_n {
        return Err(Error::Parameter(
            "polynomial has more variables than the code length".into(),
        ));
    }
    let cube_side = expect_zeta_cube(p, big_n);
    let code_side = expect_zeta_code(p, n_rm, d)?;
    Ok(InvarianceReport {
        gap: (cube_side - code_side).abs(),
        cube_side,
        code_side,
        cube_exact: true,
        cube_samples: None,
    })
}

/// Sampled-cube variant for code lengths beyond the exhaustive cap.
pub fn invariance_gap_sampled<R: Rng>(
    p: &MultilinearPolynomial,
    n_rm: usize,
    d: usize,
    samples: usize,
    rng: &mut R,
) -> Result<InvarianceReport> {
    let big_n = 1usize << n_rm;
    if samples == 0 {
        return Err(Error::Parameter("sample count must be positive".into()));
    }
    let mut acc = 0.0;
    for _ in 0..samples {
        let mut pattern = 0u64;
        for i in 0..big_n.min(64) {
            if rng.gen::<bool>() {
                pattern |= 1 << i;
            }
        }
        acc += zeta(p.evaluate_pattern(pattern));
    }
    let cube_side = acc / samples as f64;
    let code_side = expect_zeta_code(p, n_rm, d)?;
    Ok(InvarianceReport {
        gap: (cube_side - code_side).abs(),
        cube_side,
        code_side,
        cube_exact: false,
        cube_samples: Some(samples),
    })
}

fn expect_zeta_cube(p: &MultilinearPolynomial, big_n: usize) -> f64 {
    let total = 1u64 << big_n;
    let mut acc = 0.0;
    for pattern in 0..total {
        acc += zeta(p.evaluate_pattern(pattern));
    }
    acc / total as f64
}

fn expect_zeta_code(p: &MultilinearPolynomial, n_rm: usize, d: usize) -> Result<f64> {
    let code = RmCode::new(n_rm, d)?;
    let words = code.enumerate_codewords(None)?;
    let mut acc = 0.0;
    for w in &words {
        // codeword bit i = 1 means coordinate i is -1, matching the sign view
        let pattern = w.words()[0];
        acc += zeta(p.evaluate_pattern(pattern));
    }
    Ok(acc / words.len() as f64)
}

/// Law of P over an explicit list of equally likely sign patterns given as
/// bit vectors (used for code-side pushforwards).
pub fn words_pushforward(
    p: &MultilinearPolynomial,
    words: &[crate::bits::BitVector],
) -> Result<DiscreteDistribution> {
    let w = 1.0 / words.len() as f64;
    DiscreteDistribution::from_pairs(
        words
            .iter()
            .map(|word| (p.evaluate_pattern(word.words()[0]), w)),
    )
}

/// Convenience: exact uniform-law pushforward re-exported for the CLI.
pub fn pushforward_uniform(
    p: &MultilinearPolynomial,
    n: usize,
    cap_bits: Option<u32>,
) -> Result<DiscreteDistribution> {
    cube_pushforward(p, n, cap_bits)
}

/// Exact pushforward through a pattern law (generator output law).
pub fn pushforward_law(
    p: &MultilinearPolynomial,
    law: &PatternLaw,
) -> Result<DiscreteDistribution> {
    law.pushforward(p)
}
