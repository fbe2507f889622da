//! Pairwise-independent hash families, k-wise independent sign sources, the
//! bounded-independence halfspace fooler and the composed hashing generator
//! built from them.
//!
//! The generator partitions coordinates into `t` buckets with a pairwise
//! hash, fills each bucket from an independent copy of the inner source, and
//! multiplies componentwise by an independent `2*ell`-wise independent mask.
//! Its seed is the fixed big-endian concatenation
//! `hash || inner_1 || ... || inner_t || mask`.
//!
//! Besides literal seed-by-seed sampling, this module computes the *exact*
//! law of the output over the full seed space by composing component laws:
//! the seed space is a product of independent parts, so the output law is a
//! mixture over hash functions of per-bucket product laws convolved with the
//! mask law. Per-hash quantities depend on the hash only through the induced
//! partition of the coordinates, so hashes are grouped by partition.

use std::collections::HashMap;

use rand::Rng;
use serde::Serialize;

use crate::bits::BitVector;
use crate::dist::DiscreteDistribution;
use crate::error::{Error, Result};
use crate::gf2p::Gf2p;
use crate::poly::MultilinearPolynomial;

/// Largest n for dense pattern-law computations (2^n f64 weights).
pub const MAX_LAW_VARS: usize = 20;

/// Largest seed space a single component may enumerate exhaustively.
pub const MAX_COMPONENT_SEED_BITS: u32 = 26;

// ---------------------------------------------------------------------------
// Pairwise independent hash family
// ---------------------------------------------------------------------------

/// The Carter-Wegman family of affine maps over GF(2^w) truncated to the low
/// log2(t) bits: `h_{a,b}(i) = (a * i + b) mod t`. For distinct i, j the pair
/// `(h(i), h(j))` is exactly uniform on `[t]^2` over a uniform seed `(a, b)`.
#[derive(Debug, Clone)]
pub struct PairwiseHashFamily {
    n: usize,
    t: usize,
    field: Gf2p,
}

impl PairwiseHashFamily {
    pub fn new(n: usize, t: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parameter("hash domain must be nonempty".into()));
        }
        if !t.is_power_of_two() {
            return Err(Error::Parameter(format!(
                "bucket count t = {t} must be a power of two"
            )));
        }
        let field = Gf2p::covering(n.max(t));
        Ok(PairwiseHashFamily { n, t, field })
    }

    pub fn domain(&self) -> usize {
        self.n
    }

    pub fn buckets(&self) -> usize {
        self.t
    }

    pub fn seed_bits(&self) -> u32 {
        2 * self.field.width()
    }

    /// Number of family members, 2^seed_bits.
    pub fn family_size(&self) -> u64 {
        1u64 << self.seed_bits()
    }

    /// The hash function for one seed, as the vector `h(0), ..., h(n-1)`.
    pub fn assignment(&self, seed: u64) -> Vec<usize> {
        let w = self.field.width();
        let a = (seed >> w) as u32 & ((1u32 << w) - 1);
        let b = seed as u32 & ((1u32 << w) - 1);
        (0..self.n)
            .map(|i| (self.field.add(self.field.mul(a, i as u32), b) as usize) & (self.t - 1))
            .collect()
    }

    /// Same, from a seed given as packed bits (big-endian: `a` first).
    pub fn assignment_from_bits(&self, seed: &BitVector) -> Result<Vec<usize>> {
        if seed.len() != self.seed_bits() as usize {
            return Err(Error::Parameter(format!(
                "hash seed has {} bits, expected {}",
                seed.len(),
                self.seed_bits()
            )));
        }
        Ok(self.assignment(bits_to_u64(seed, 0, seed.len())))
    }
}

// ---------------------------------------------------------------------------
// k-wise independent sign source
// ---------------------------------------------------------------------------

/// A k-wise independent distribution on {1,-1}^n: evaluate a random
/// polynomial of degree k-1 over GF(2^w) (2^w >= n) at the point indexed by
/// each coordinate and keep the low bit, mapped to a sign. Any k evaluations
/// at distinct points are jointly uniform (Vandermonde), so any k output
/// coordinates are exactly uniform. Seed cost is k*w = O(k log n) bits.
#[derive(Debug, Clone)]
pub struct KWiseSource {
    n: usize,
    k: usize,
    field: Gf2p,
}

impl KWiseSource {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n == 0 || k == 0 {
            return Err(Error::Parameter(
                "k-wise source needs n >= 1 and k >= 1".into(),
            ));
        }
        Ok(KWiseSource {
            n,
            k,
            field: Gf2p::covering(n),
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn order(&self) -> usize {
        self.k
    }

    pub fn seed_bits(&self) -> u32 {
        self.k as u32 * self.field.width()
    }

    fn coeffs_from_seed(&self, seed: u64) -> Vec<u32> {
        let w = self.field.width();
        (0..self.k)
            .map(|j| (seed >> (w as usize * (self.k - 1 - j))) as u32 & ((1u32 << w) - 1))
            .collect()
    }

    /// Output pattern for one seed; bit i set means coordinate i is -1.
    /// Coordinates beyond `len` are ignored by callers; only `prefix` many
    /// are produced here to keep bucket evaluations cheap.
    pub fn pattern(&self, seed: u64, prefix: usize) -> u64 {
        debug_assert!(prefix <= self.n && prefix <= 64);
        let coeffs = self.coeffs_from_seed(seed);
        let mut pattern = 0u64;
        for i in 0..prefix {
            if self.field.poly_eval(&coeffs, i as u32) & 1 == 1 {
                pattern |= 1 << i;
            }
        }
        pattern
    }

    /// Full-length sample as ±1 signs from packed seed bits (big-endian).
    pub fn sample_from_bits(&self, seed: &BitVector) -> Result<Vec<f64>> {
        if seed.len() != self.seed_bits() as usize {
            return Err(Error::Parameter(format!(
                "source seed has {} bits, expected {}",
                seed.len(),
                self.seed_bits()
            )));
        }
        let pattern = self.pattern(bits_to_u64(seed, 0, seed.len()), self.n.min(64));
        Ok((0..self.n)
            .map(|i| if (pattern >> i) & 1 == 1 { -1.0 } else { 1.0 })
            .collect())
    }

    /// Exact output law over the full seed space, restricted to the first
    /// `prefix` coordinates.
    pub fn law(&self, prefix: usize) -> Result<PatternLaw> {
        if self.seed_bits() > MAX_COMPONENT_SEED_BITS {
            return Err(Error::CapExceeded(format!(
                "k-wise source seed space 2^{} exceeds 2^{MAX_COMPONENT_SEED_BITS}",
                self.seed_bits()
            )));
        }
        let seeds = 1u64 << self.seed_bits();
        let mut weights = vec![0.0f64; 1 << prefix];
        for seed in 0..seeds {
            weights[self.pattern(seed, prefix) as usize] += 1.0;
        }
        let total = seeds as f64;
        for w in &mut weights {
            *w /= total;
        }
        Ok(PatternLaw {
            n: prefix,
            weights,
        })
    }
}

// ---------------------------------------------------------------------------
// Halfspace fooler
// ---------------------------------------------------------------------------

/// Bounded-independence halfspace fooler: a k-wise source whose order meets
/// `k >= c * ln^2(1/delta) / delta^2` for the target error `delta`. The
/// claimed error is a contract to be audited, never assumed exact.
#[derive(Debug, Clone)]
pub struct HalfspaceFooler {
    pub source: KWiseSource,
    pub target_error: f64,
}

impl HalfspaceFooler {
    /// The schedule order for a target error, with configurable constant c.
    pub fn schedule_order(delta: f64, c: f64) -> u64 {
        let l = (1.0 / delta).ln();
        (c * l * l / (delta * delta)).ceil() as u64
    }

    /// Measured halfspace error: max over `trials` random halfspaces
    /// `sign(<w, x> - theta)` of the acceptance-probability gap between the
    /// source law and the uniform law, both computed exactly.
    pub fn measured_error<R: Rng>(&self, trials: usize, rng: &mut R) -> Result<f64> {
        let n = self.source.len().min(64);
        let law = self.source.law(n)?;
        let uniform = PatternLaw::uniform(n);
        let mut worst = 0.0f64;
        for _ in 0..trials {
            let w: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let theta: f64 = rng.gen_range(-2.0..2.0);
            let accept = |law: &PatternLaw| -> f64 {
                law.iter()
                    .map(|(p, wt)| {
                        let s: f64 = (0..n)
                            .map(|i| if (p >> i) & 1 == 1 { -w[i] } else { w[i] })
                            .sum();
                        if s <= theta {
                            wt
                        } else {
                            0.0
                        }
                    })
                    .sum()
            };
            worst = worst.max((accept(&law) - accept(&uniform)).abs());
        }
        Ok(worst)
    }
}

// ---------------------------------------------------------------------------
// Pattern laws
// ---------------------------------------------------------------------------

/// Exact distribution over sign patterns of {1,-1}^n; bit i of a pattern set
/// means coordinate i equals -1. Dense storage, so n is capped.
#[derive(Debug, Clone)]
pub struct PatternLaw {
    n: usize,
    weights: Vec<f64>,
}

impl PatternLaw {
    pub fn uniform(n: usize) -> Self {
        assert!(n <= MAX_LAW_VARS);
        let size = 1usize << n;
        PatternLaw {
            n,
            weights: vec![1.0 / size as f64; size],
        }
    }

    /// Point mass at the all-(+1) pattern.
    pub fn delta(n: usize) -> Self {
        assert!(n <= MAX_LAW_VARS);
        let mut weights = vec![0.0; 1 << n];
        weights[0] = 1.0;
        PatternLaw { n, weights }
    }

    pub fn vars(&self) -> usize {
        self.n
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, &w)| w != 0.0)
            .map(|(p, &w)| (p as u64, w))
    }

    pub fn weight(&self, pattern: u64) -> f64 {
        self.weights[pattern as usize]
    }

    /// Mixes `other` into `self` with the given weight.
    pub fn accumulate(&mut self, other: &PatternLaw, weight: f64) {
        assert_eq!(self.n, other.n);
        for (w, o) in self.weights.iter_mut().zip(&other.weights) {
            *w += weight * o;
        }
    }

    /// Product with an independent law supported on a disjoint coordinate
    /// set, given as sparse (pattern, weight) atoms over the global indices.
    pub fn product_with(&self, block_atoms: &[(u64, f64)]) -> PatternLaw {
        let mut out = vec![0.0f64; self.weights.len()];
        for (p, &wp) in self.weights.iter().enumerate() {
            if wp == 0.0 {
                continue;
            }
            for &(q, wq) in block_atoms {
                debug_assert_eq!(p as u64 & q, 0, "block overlaps assigned coordinates");
                out[p | q as usize] += wp * wq;
            }
        }
        PatternLaw {
            n: self.n,
            weights: out,
        }
    }

    /// XOR convolution: the law of the componentwise product of independent
    /// draws from `self` and `other`.
    pub fn xor_convolve(&self, other: &PatternLaw) -> PatternLaw {
        assert_eq!(self.n, other.n);
        let size = self.weights.len();
        let mut out = vec![0.0f64; size];
        for (p, &wp) in self.weights.iter().enumerate() {
            if wp == 0.0 {
                continue;
            }
            for (q, &wq) in other.weights.iter().enumerate() {
                if wq != 0.0 {
                    out[p ^ q] += wp * wq;
                }
            }
        }
        PatternLaw {
            n: self.n,
            weights: out,
        }
    }

    /// Largest deviation of any joint sub-pattern probability on the given
    /// coordinate subset from the uniform value 2^-|S|.
    pub fn marginal_uniformity_gap(&self, subset: u64) -> f64 {
        let k = subset.count_ones() as usize;
        let target = 1.0 / (1u64 << k) as f64;
        let mut counts: HashMap<u64, f64> = HashMap::new();
        for (p, w) in self.iter() {
            *counts.entry(p & subset).or_insert(0.0) += w;
        }
        let mut worst = 0.0f64;
        for sub in 0..(1u64 << k) {
            // spread the k bits of `sub` onto the subset positions
            let mut pattern = 0u64;
            let mut bit = 0;
            for i in 0..64 {
                if (subset >> i) & 1 == 1 {
                    if (sub >> bit) & 1 == 1 {
                        pattern |= 1 << i;
                    }
                    bit += 1;
                }
            }
            let got = counts.get(&pattern).copied().unwrap_or(0.0);
            worst = worst.max((got - target).abs());
        }
        worst
    }

    /// Exact law of P(x) for x drawn from this pattern law.
    pub fn pushforward(&self, p: &MultilinearPolynomial) -> Result<DiscreteDistribution> {
        if p.max_var() > self.n {
            return Err(Error::Parameter(format!(
                "polynomial uses variable {}, law has {} coordinates",
                p.max_var(),
                self.n
            )));
        }
        DiscreteDistribution::from_pairs(
            self.iter()
                .map(|(pattern, w)| (p.evaluate_pattern(pattern), w)),
        )
    }
}

/// Exact law of P(x) under the uniform cube on n coordinates; enumerates all
/// 2^n points, so n is capped by the caller's patience and `cap_bits`.
pub fn cube_pushforward(
    p: &MultilinearPolynomial,
    n: usize,
    cap_bits: Option<u32>,
) -> Result<DiscreteDistribution> {
    let cap = cap_bits.unwrap_or(crate::rm::DEFAULT_ENUMERATION_CAP_BITS);
    if n as u32 > cap {
        return Err(Error::CapExceeded(format!(
            "cube enumeration over 2^{n} points exceeds cap 2^{cap}"
        )));
    }
    if p.max_var() > n {
        return Err(Error::Parameter("polynomial has variables beyond n".into()));
    }
    let total = (1u64 << n) as f64;
    DiscreteDistribution::from_pairs(
        (0..(1u64 << n)).map(|pattern| (p.evaluate_pattern(pattern), 1.0 / total)),
    )
}

// ---------------------------------------------------------------------------
// Generator parameter schedule
// ---------------------------------------------------------------------------

/// The parameter schedule: `t = ceil(16 l^2 / eps^2)` buckets, inner
/// halfspace error `delta = eps^4 / (64 l^2)`, inner independence
/// `k_h = ceil(c ln^2(1/delta) / delta^2)` and mask independence `2 l`.
#[derive(Debug, Clone, Serialize)]
pub struct GeneratorParameters {
    pub n: usize,
    pub ell: usize,
    pub eps: f64,
    pub t: u64,
    pub delta: f64,
    pub k_h: u64,
    pub k_mask: u64,
    pub c: f64,
    pub seed_bits_hash: u64,
    pub seed_bits_inner_each: u64,
    pub seed_bits_mask: u64,
    pub seed_bits_total: u64,
}

pub fn generator_parameters(n: usize, ell: usize, eps: f64, c: f64) -> Result<GeneratorParameters> {
    if ell == 0 {
        return Err(Error::Parameter("degree bound ell must be >= 1".into()));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Parameter(format!(
            "eps = {eps} out of the open interval (0, 1)"
        )));
    }
    let t_real = 16.0 * (ell * ell) as f64 / (eps * eps);
    let t = (t_real.ceil() as u64).next_power_of_two();
    let delta = eps.powi(4) / (64.0 * (ell * ell) as f64);
    let k_h = HalfspaceFooler::schedule_order(delta, c);
    let k_mask = 2 * ell as u64;
    let w_hash = Gf2p::covering(n.max(t as usize)).width() as u64;
    let w = Gf2p::covering(n).width() as u64;
    let seed_bits_hash = 2 * w_hash;
    let seed_bits_inner_each = k_h * w;
    let seed_bits_mask = k_mask * w;
    Ok(GeneratorParameters {
        n,
        ell,
        eps,
        t,
        delta,
        k_h,
        k_mask,
        c,
        seed_bits_hash,
        seed_bits_inner_each,
        seed_bits_mask,
        seed_bits_total: seed_bits_hash + t * seed_bits_inner_each + seed_bits_mask,
    })
}

// ---------------------------------------------------------------------------
// The hashing generator
// ---------------------------------------------------------------------------

/// Overrides for desk-scale experiments; any parameter set below the
/// schedule marks the run as overridden.
#[derive(Debug, Clone, Copy, Default)]
pub struct GeneratorOverrides {
    pub t: Option<usize>,
    pub k_h: Option<usize>,
    pub k_mask: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct HashingGenerator {
    pub n: usize,
    pub ell: usize,
    pub eps: f64,
    /// Target inner halfspace error from the schedule.
    pub delta_target: f64,
    pub schedule: GeneratorParameters,
    pub on_schedule: bool,
    pub hash: PairwiseHashFamily,
    pub inner: KWiseSource,
    pub mask: KWiseSource,
}

impl HashingGenerator {
    pub fn build(
        n: usize,
        ell: usize,
        eps: f64,
        c: f64,
        overrides: GeneratorOverrides,
    ) -> Result<Self> {
        if n == 0 || n > 64 {
            return Err(Error::Parameter(format!("n = {n} out of range 1..=64")));
        }
        let schedule = generator_parameters(n, ell, eps, c)?;
        let t = overrides.t.unwrap_or_else(|| {
            usize::try_from(schedule.t).unwrap_or(usize::MAX)
        });
        if !t.is_power_of_two() || t > (1 << 16) {
            return Err(Error::Parameter(format!(
                "bucket count t = {t} must be a power of two at most 2^16; pass an override"
            )));
        }
        let k_h = match overrides.k_h {
            Some(k) => k,
            None => usize::try_from(schedule.k_h).map_err(|_| {
                Error::Parameter("on-schedule k_h overflows; supply an override".into())
            })?,
        };
        let w = Gf2p::covering(n).width();
        if k_h as u32 * w > 512 {
            return Err(Error::Parameter(format!(
                "inner seed of {} bits is not realizable here; override k_h",
                k_h as u32 * w
            )));
        }
        let k_mask = overrides.k_mask.unwrap_or(2 * ell);
        let on_schedule = t as u64 >= schedule.t && k_h as u64 >= schedule.k_h
            && k_mask as u64 >= schedule.k_mask;
        Ok(HashingGenerator {
            n,
            ell,
            eps,
            delta_target: schedule.delta,
            schedule,
            on_schedule,
            hash: PairwiseHashFamily::new(n, t)?,
            inner: KWiseSource::new(n, k_h)?,
            mask: KWiseSource::new(n, k_mask)?,
        })
    }

    pub fn t(&self) -> usize {
        self.hash.buckets()
    }

    /// Label for reports.
    pub fn schedule_label(&self) -> &'static str {
        if self.on_schedule {
            "on-schedule"
        } else {
            "overridden"
        }
    }

    pub fn seed_bits_total(&self) -> usize {
        self.hash.seed_bits() as usize
            + self.t() * self.inner.seed_bits() as usize
            + self.mask.seed_bits() as usize
    }

    /// Literal sample for one seed, as ±1 signs. The seed splits big-endian
    /// into hash, t inner seeds, and mask.
    pub fn sample(&self, seed: &BitVector) -> Result<Vec<f64>> {
        if seed.len() != self.seed_bits_total() {
            return Err(Error::Parameter(format!(
                "seed has {} bits, generator needs {}",
                seed.len(),
                self.seed_bits_total()
            )));
        }
        let mut offset = 0usize;
        let hash_seed = bits_to_u64(seed, offset, self.hash.seed_bits() as usize);
        offset += self.hash.seed_bits() as usize;
        let mut inner_seeds = Vec::with_capacity(self.t());
        for _ in 0..self.t() {
            inner_seeds.push(bits_to_u64(seed, offset, self.inner.seed_bits() as usize));
            offset += self.inner.seed_bits() as usize;
        }
        let mask_seed = bits_to_u64(seed, offset, self.mask.seed_bits() as usize);

        let h = self.hash.assignment(hash_seed);
        let mask_pattern = self.mask.pattern(mask_seed, self.n);
        let mut rank = vec![0usize; self.t()];
        let mut out = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let bucket = h[i];
            let pos = rank[bucket];
            rank[bucket] += 1;
            let inner_bit = (self.inner.pattern(inner_seeds[bucket], pos + 1) >> pos) & 1;
            let mask_bit = (mask_pattern >> i) & 1;
            out.push(if inner_bit ^ mask_bit == 1 { -1.0 } else { 1.0 });
        }
        Ok(out)
    }

    /// Groups the hash family by the partition of coordinates it induces,
    /// with exact family weights. Blocks are sorted coordinate lists,
    /// ordered by smallest member; every coordinate appears in exactly one
    /// block (singletons included).
    pub fn partition_weights(&self) -> Result<Vec<PartitionWeight>> {
        if self.hash.seed_bits() > MAX_COMPONENT_SEED_BITS {
            return Err(Error::CapExceeded(format!(
                "hash family of 2^{} members is too large to enumerate",
                self.hash.seed_bits()
            )));
        }
        let mut groups: HashMap<Vec<Vec<usize>>, u64> = HashMap::new();
        for seed in 0..self.hash.family_size() {
            let h = self.hash.assignment(seed);
            *groups.entry(partition_of(&h, self.t())).or_insert(0) += 1;
        }
        let total = self.hash.family_size() as f64;
        let mut out: Vec<PartitionWeight> = groups
            .into_iter()
            .map(|(blocks, count)| PartitionWeight {
                blocks,
                weight: count as f64 / total,
            })
            .collect();
        out.sort_by(|a, b| a.blocks.cmp(&b.blocks));
        Ok(out)
    }

    /// Law of the pre-mask bucket assembly for one partition, with the first
    /// `uniform_prefix` blocks replaced by truly uniform fill (the hybrid
    /// ladder of the bucket-by-bucket argument; prefix 0 is the generator
    /// side, prefix = #blocks is the uniform side).
    pub fn premask_law(&self, blocks: &[Vec<usize>], uniform_prefix: usize) -> Result<PatternLaw> {
        if self.n > MAX_LAW_VARS {
            return Err(Error::CapExceeded(format!(
                "dense laws need n <= {MAX_LAW_VARS}, got {}",
                self.n
            )));
        }
        if self.inner.seed_bits() > MAX_COMPONENT_SEED_BITS {
            return Err(Error::CapExceeded(
                "inner seed space too large to enumerate".into(),
            ));
        }
        let mut law = PatternLaw::delta(self.n);
        for (b, block) in blocks.iter().enumerate() {
            let atoms = if b < uniform_prefix {
                uniform_block_atoms(block)
            } else {
                self.inner_block_atoms(block)
            };
            law = law.product_with(&atoms);
        }
        Ok(law)
    }

    /// Exact law of the mask over the full coordinate set.
    pub fn mask_law(&self) -> Result<PatternLaw> {
        self.mask.law(self.n)
    }

    /// Exact output law over the entire seed space: a mixture over hash
    /// partitions of the per-partition product laws, convolved with the mask.
    pub fn output_law(&self) -> Result<PatternLaw> {
        let mask = self.mask_law()?;
        let mut out = PatternLaw {
            n: self.n,
            weights: vec![0.0; 1 << self.n],
        };
        for pw in self.partition_weights()? {
            let pre = self.premask_law(&pw.blocks, 0)?;
            out.accumulate(&pre.xor_convolve(&mask), pw.weight);
        }
        Ok(out)
    }

    /// Sparse atoms of one bucket's law over its global coordinates:
    /// coordinate `block[r]` reads the inner source at position `r`.
    fn inner_block_atoms(&self, block: &[usize]) -> Vec<(u64, f64)> {
        let seeds = 1u64 << self.inner.seed_bits();
        let mut counts: HashMap<u64, u64> = HashMap::new();
        for seed in 0..seeds {
            let local = self.inner.pattern(seed, block.len());
            let mut global = 0u64;
            for (r, &i) in block.iter().enumerate() {
                if (local >> r) & 1 == 1 {
                    global |= 1 << i;
                }
            }
            *counts.entry(global).or_insert(0) += 1;
        }
        let total = seeds as f64;
        let mut atoms: Vec<(u64, f64)> = counts
            .into_iter()
            .map(|(p, c)| (p, c as f64 / total))
            .collect();
        atoms.sort_by_key(|&(p, _)| p);
        atoms
    }
}

/// Exactly uniform atoms on a block's global coordinates.
fn uniform_block_atoms(block: &[usize]) -> Vec<(u64, f64)> {
    let size = 1u64 << block.len();
    let w = 1.0 / size as f64;
    (0..size)
        .map(|local| {
            let mut global = 0u64;
            for (r, &i) in block.iter().enumerate() {
                if (local >> r) & 1 == 1 {
                    global |= 1 << i;
                }
            }
            (global, w)
        })
        .collect()
}

/// A partition of the coordinates with its exact weight under the hash
/// family.
#[derive(Debug, Clone)]
pub struct PartitionWeight {
    pub blocks: Vec<Vec<usize>>,
    pub weight: f64,
}

impl PartitionWeight {
    /// Bucket assignment vector compatible with
    /// [`MultilinearPolynomial::prune_h_bad`]: 1-indexed variable v maps to
    /// the index of its block.
    pub fn as_hash_vec(&self, n: usize) -> Vec<usize> {
        let mut h = vec![0usize; n];
        for (b, block) in self.blocks.iter().enumerate() {
            for &i in block {
                h[i] = b;
            }
        }
        h
    }
}

fn partition_of(h: &[usize], t: usize) -> Vec<Vec<usize>> {
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); t];
    for (i, &b) in h.iter().enumerate() {
        buckets[b].push(i);
    }
    let mut blocks: Vec<Vec<usize>> = buckets.into_iter().filter(|b| !b.is_empty()).collect();
    blocks.sort_by_key(|b| b[0]);
    blocks
}

/// Reads `len` bits starting at `offset` as a big-endian integer.
fn bits_to_u64(bits: &BitVector, offset: usize, len: usize) -> u64 {
    debug_assert!(len <= 64);
    let mut v = 0u64;
    for i in 0..len {
        v = (v << 1) | (bits.get(offset + i) as u64);
    }
    v
}
