//! Reed-Muller codes RM(n, d) over GF(2): generator matrices, codeword
//! enumeration, duality, character coset degrees and min-weight samplers.
//!
//! Conventions, fixed once and used everywhere:
//! * Points of `F_2^n` are indexed `0..2^n` lexicographically with `x1` the
//!   most significant bit (see [`crate::bits::point_bit`]).
//! * Generator rows are monomials of degree <= d sorted lexicographically by
//!   their sorted variable-index lists (so `[] < [1] < [1,2] < [2]`).
//! * Messages are integers `0..2^dim`; bit `i` (least significant first)
//!   multiplies generator row `i`. "Message-lexicographic" enumeration walks
//!   messages in increasing integer order.

use std::collections::HashMap;

use rand::Rng;

use crate::bits::{point_bit, BitVector};
use crate::error::{Error, Result};

/// Hard cap on the message-space size for exhaustive codeword enumeration.
pub const DEFAULT_ENUMERATION_CAP_BITS: u32 = 24;

/// Cap on n for generator-matrix construction; 2^n columns must stay sane.
pub const MAX_VARS: usize = 16;

/// A monomial over variables `1..=n`, stored as a sorted list of 1-indexed
/// variables. The empty list is the constant monomial.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<usize>);

impl Monomial {
    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Evaluation vector over all `2^n` points.
    pub fn evaluate_all(&self, n: usize) -> BitVector {
        let mut v = BitVector::zeros(1 << n);
        for p in 0..(1 << n) {
            let val = self.0.iter().all(|&j| point_bit(p, n, j));
            v.set(p, val);
        }
        v
    }
}

/// Enumerates all monomials of degree <= d over n variables in the canonical
/// lexicographic order (compare sorted variable lists).
pub fn monomials_up_to_degree(n: usize, d: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = vec![vec![]];
    while let Some(m) = stack.pop() {
        out.push(Monomial(m.clone()));
        if m.len() < d {
            let lo = m.last().map_or(1, |&v| v + 1);
            // push in reverse so the smallest extension pops first
            for v in (lo..=n).rev() {
                let mut next = m.clone();
                next.push(v);
                stack.push(next);
            }
        }
    }
    out.sort();
    out
}

/// The Reed-Muller code RM(n, d): evaluation vectors of all polynomials of
/// degree at most d in n variables.
#[derive(Debug, Clone)]
pub struct RmCode {
    n: usize,
    d: usize,
    monomials: Vec<Monomial>,
    rows: Vec<BitVector>,
}

impl RmCode {
    /// Builds the generator matrix, one row per monomial of degree <= d.
    pub fn new(n: usize, d: usize) -> Result<Self> {
        if n == 0 || n > MAX_VARS {
            return Err(Error::Parameter(format!(
                "n = {n} out of supported range 1..={MAX_VARS}"
            )));
        }
        if d > n {
            return Err(Error::Parameter(format!("degree d = {d} exceeds n = {n}")));
        }
        let monomials = monomials_up_to_degree(n, d);
        let rows = monomials.iter().map(|m| m.evaluate_all(n)).collect();
        Ok(RmCode {
            n,
            d,
            monomials,
            rows,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Code length 2^n.
    pub fn len(&self) -> usize {
        1 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Dimension = sum of C(n, i) for i <= d.
    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    /// Encodes a message: XOR of the rows selected by the message bits.
    pub fn encode_message(&self, message: u64) -> BitVector {
        assert!(
            self.dimension() >= 64 || message < (1u64 << self.dimension()),
            "message out of range"
        );
        let mut v = BitVector::zeros(self.len());
        for (i, row) in self.rows.iter().enumerate() {
            if (message >> i) & 1 == 1 {
                v.xor_assign(row);
            }
        }
        v
    }

    /// All 2^dim codewords in message-lexicographic order.
    ///
    /// Refuses when the message space exceeds `cap_bits` (default 24),
    /// reporting the size it would have produced.
    pub fn enumerate_codewords(&self, cap_bits: Option<u32>) -> Result<Vec<BitVector>> {
        let cap = cap_bits.unwrap_or(DEFAULT_ENUMERATION_CAP_BITS);
        let dim = self.dimension();
        if dim as u32 > cap {
            return Err(Error::CapExceeded(format!(
                "RM({}, {}) has 2^{dim} codewords, beyond the 2^{cap} enumeration cap",
                self.n, self.d
            )));
        }
        // Gray-code walk: consecutive messages differ in one row.
        let mut words = Vec::with_capacity(1 << dim);
        let mut cur = BitVector::zeros(self.len());
        let mut prev_gray = 0u64;
        for m in 0..(1u64 << dim) {
            let gray = m ^ (m >> 1);
            let diff = gray ^ prev_gray;
            if diff != 0 {
                cur.xor_assign(&self.rows[diff.trailing_zeros() as usize]);
            }
            prev_gray = gray;
            words.push(cur.clone());
        }
        // Reorder from Gray to message order.
        let mut out = vec![BitVector::zeros(0); words.len()];
        for (m, w) in words.into_iter().enumerate() {
            let gray = (m as u64) ^ ((m as u64) >> 1);
            out[gray as usize] = w;
        }
        Ok(out)
    }

    /// Lookup table codeword -> message index, for enumerable codes.
    pub fn message_index(&self, cap_bits: Option<u32>) -> Result<HashMap<BitVector, u64>> {
        let words = self.enumerate_codewords(cap_bits)?;
        Ok(words
            .into_iter()
            .enumerate()
            .map(|(m, w)| (w, m as u64))
            .collect())
    }

    /// The dual code RM(n, n-d-1); `None` when d = n (dual is the zero code).
    pub fn dual(&self) -> Result<Option<RmCode>> {
        if self.d == self.n {
            return Ok(None);
        }
        Ok(Some(RmCode::new(self.n, self.n - self.d - 1)?))
    }

    /// Syndrome of `alpha` against this code's generator rows: bit `i` is the
    /// GF(2) inner product with row `i`. Characters `chi_alpha` restricted to
    /// the code coincide exactly when syndromes agree.
    pub fn syndrome(&self, alpha: &BitVector) -> u64 {
        let mut s = 0u64;
        for (i, row) in self.rows.iter().enumerate() {
            if alpha.dot_parity(row) {
                s |= 1 << i;
            }
        }
        s
    }

    /// Value of the character `chi_alpha` at the codeword with message `m`,
    /// given `syndrome = self.syndrome(alpha)`: `(-1)^{<syndrome, m>}`.
    #[inline]
    pub fn character_value(syndrome: u64, message: u64) -> f64 {
        if (syndrome & message).count_ones() % 2 == 1 {
            -1.0
        } else {
            1.0
        }
    }

    /// All codewords of minimum weight 2^(n-d), by filtering the enumeration.
    pub fn min_weight_codewords(&self, cap_bits: Option<u32>) -> Result<Vec<BitVector>> {
        let target = 1usize << (self.n - self.d);
        Ok(self
            .enumerate_codewords(cap_bits)?
            .into_iter()
            .filter(|w| w.weight() == target)
            .collect())
    }
}

/// Evaluation vector of the polynomial with the given monomial -> coefficient
/// map (coefficients in GF(2); absent or `false` entries are zero).
pub fn encode_polynomial(coeffs: &[(Monomial, bool)], n: usize) -> Result<BitVector> {
    if n == 0 || n > MAX_VARS {
        return Err(Error::Parameter(format!(
            "n = {n} out of supported range 1..={MAX_VARS}"
        )));
    }
    let mut v = BitVector::zeros(1 << n);
    for (m, c) in coeffs {
        if let Some(&bad) = m.0.iter().find(|&&j| j == 0 || j > n) {
            return Err(Error::Parameter(format!(
                "monomial references variable {bad}, valid range is 1..={n}"
            )));
        }
        if *c {
            v.xor_assign(&m.evaluate_all(n));
        }
    }
    Ok(v)
}

/// Checks Reed-Muller duality: RM(n, d) and RM(n, n-d-1) are orthogonal and
/// their dimensions sum to 2^n. Orthogonality is checked on generator rows,
/// which is equivalent to all codeword pairs by bilinearity.
pub fn verify_duality(n: usize, d: usize) -> Result<bool> {
    let code = RmCode::new(n, d)?;
    let dual = match code.dual()? {
        // d = n: the dual is the zero code, orthogonality is vacuous.
        None => return Ok(code.dimension() == 1 << n),
        Some(c) => c,
    };
    if code.dimension() + dual.dimension() != 1 << n {
        return Ok(false);
    }
    for a in code.rows() {
        for b in dual.rows() {
            if a.dot_parity(b) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A character index: a coset of RM(n, n-d-1) in `F_2^N`, canonicalized.
///
/// `lex_rep` is the lexicographically smallest coset member (the canonical
/// identifier); `min_weight_rep` is the minimum-weight member with lex
/// tie-break (the pattern whose bits drive the `alpha_i = 1` tests of
/// degree-influence computations); `degree` is that minimum weight.
#[derive(Debug, Clone)]
pub struct CharacterIndex {
    pub lex_rep: BitVector,
    pub min_weight_rep: BitVector,
    pub degree: usize,
}

/// Exact coset reduction of `alpha` modulo RM(n, n-d-1) by enumerating the
/// dual code. Requires the dual to be enumerable.
pub fn character_index(alpha: &BitVector, n: usize, d: usize) -> Result<CharacterIndex> {
    let code = RmCode::new(n, d)?;
    if alpha.len() != code.len() {
        return Err(Error::Parameter(format!(
            "alpha has length {}, expected {}",
            alpha.len(),
            code.len()
        )));
    }
    let members: Vec<BitVector> = match code.dual()? {
        None => vec![alpha.clone()],
        Some(dual) => dual
            .enumerate_codewords(None)?
            .iter()
            .map(|y| alpha.xor(y))
            .collect(),
    };
    let lex_rep = members
        .iter()
        .min_by(|a, b| a.lex_cmp(b))
        .expect("coset is nonempty")
        .clone();
    let min_weight_rep = members
        .iter()
        .min_by(|a, b| a.weight().cmp(&b.weight()).then_with(|| a.lex_cmp(b)))
        .expect("coset is nonempty")
        .clone();
    let degree = min_weight_rep.weight();
    Ok(CharacterIndex {
        lex_rep,
        min_weight_rep,
        degree,
    })
}

/// deg(chi_alpha) = min weight over the coset alpha + RM(n, n-d-1), exact.
pub fn coset_degree(alpha: &BitVector, n: usize, d: usize) -> Result<usize> {
    Ok(character_index(alpha, n, d)?.degree)
}

/// Sampled estimate of the coset degree for codes too large to enumerate:
/// the minimum of `wt(alpha + y)` over `budget` random dual codewords. The
/// estimate can only overshoot the true degree, so it is an upper bound and
/// is flagged as approximate.
pub struct ApproximateDegree {
    pub value: usize,
    pub exact: bool,
    pub samples: usize,
}

pub fn coset_degree_sampled<R: Rng>(
    alpha: &BitVector,
    n: usize,
    d: usize,
    budget: usize,
    rng: &mut R,
) -> Result<ApproximateDegree> {
    let code = RmCode::new(n, d)?;
    if alpha.len() != code.len() {
        return Err(Error::Parameter("alpha length mismatch".into()));
    }
    if budget == 0 {
        return Err(Error::Parameter("sampling budget must be positive".into()));
    }
    let dual = match code.dual()? {
        None => {
            return Ok(ApproximateDegree {
                value: alpha.weight(),
                exact: true,
                samples: 0,
            })
        }
        Some(c) => c,
    };
    let dim = dual.dimension();
    let mut best = alpha.weight();
    for _ in 0..budget {
        let message: u64 = if dim >= 64 {
            rng.gen()
        } else {
            rng.gen_range(0..(1u64 << dim))
        };
        let w = alpha.xor(&dual.encode_message(message)).weight();
        best = best.min(w);
    }
    Ok(ApproximateDegree {
        value: best,
        exact: false,
        samples: budget,
    })
}

const MIN_WEIGHT_RETRY_CAP: usize = 1_000_000;

/// Samples a uniformly random minimum-weight codeword of RM(n, d): the
/// evaluation vector of a product of d independent uniformly random
/// non-constant affine forms whose linear parts are linearly independent.
/// The result always has weight exactly 2^(n-d).
pub fn sample_min_weight_codeword<R: Rng>(n: usize, d: usize, rng: &mut R) -> Result<BitVector> {
    if d == 0 || d > n || n > MAX_VARS {
        return Err(Error::Parameter(format!(
            "min-weight sampler needs 1 <= d <= n <= {MAX_VARS}, got n = {n}, d = {d}"
        )));
    }
    for _ in 0..MIN_WEIGHT_RETRY_CAP {
        // Affine form j: x -> <a_j, x> + c_j with a_j != 0.
        let forms: Vec<(usize, bool)> = (0..d)
            .map(|_| (rng.gen_range(1..(1usize << n)), rng.gen::<bool>()))
            .collect();
        if !linearly_independent(forms.iter().map(|&(a, _)| a), n) {
            continue;
        }
        let mut v = BitVector::zeros(1 << n);
        for p in 0..(1usize << n) {
            let val = forms
                .iter()
                .all(|&(a, c)| ((a & p).count_ones() % 2 == 1) ^ c);
            v.set(p, val);
        }
        debug_assert_eq!(v.weight(), 1 << (n - d));
        return Ok(v);
    }
    Err(Error::RetriesExhausted(
        "min-weight codeword sampler exceeded its retry cap".into(),
    ))
}

/// Rank check over GF(2) for vectors given as bitmasks.
fn linearly_independent<I: Iterator<Item = usize>>(vecs: I, n: usize) -> bool {
    let mut basis: Vec<usize> = Vec::with_capacity(n);
    for mut v in vecs {
        for &b in &basis {
            let pivot = 1usize << (usize::BITS - 1 - b.leading_zeros()) as usize;
            if v & pivot != 0 {
                v ^= b;
            }
        }
        if v == 0 {
            return false;
        }
        basis.push(v);
    }
    true
}

/// JSON export of a codeword set per the external interface:
/// `{"n":…, "d":…, "words":[hex,…]}` with MSB = point 0…0.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct CodewordSetJson {
    pub n: usize,
    pub d: usize,
    pub words: Vec<String>,
}

impl CodewordSetJson {
    pub fn from_words(n: usize, d: usize, words: &[BitVector]) -> Self {
        CodewordSetJson {
            n,
            d,
            words: words.iter().map(|w| w.to_hex()).collect(),
        }
    }

    pub fn to_words(&self) -> Result<Vec<BitVector>> {
        self.words
            .iter()
            .map(|h| BitVector::from_hex(h, 1 << self.n))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn dimensions_match_binomial_sums() {
        // (3,1) -> 1 + 3 = 4 rows of length 8
        let c = RmCode::new(3, 1).unwrap();
        assert_eq!(c.dimension(), 4);
        assert_eq!(c.len(), 8);
        // (4,2) -> 1 + 4 + 6 = 11
        assert_eq!(RmCode::new(4, 2).unwrap().dimension(), 11);
        // (n,n) -> whole space
        assert_eq!(RmCode::new(3, 3).unwrap().dimension(), 8);
    }

    #[test]
    fn monomial_order_is_lex_on_variable_lists() {
        let ms = monomials_up_to_degree(3, 2);
        let expect: Vec<Vec<usize>> = vec![
            vec![],
            vec![1],
            vec![1, 2],
            vec![1, 3],
            vec![2],
            vec![2, 3],
            vec![3],
        ];
        assert_eq!(ms.iter().map(|m| m.0.clone()).collect::<Vec<_>>(), expect);
    }

    #[test]
    fn encode_polynomial_examples() {
        // P = x1 over n=2, points 00,01,10,11 -> 0011
        let v = encode_polynomial(&[(Monomial(vec![1]), true)], 2).unwrap();
        assert_eq!(v, BitVector::from_bit_str("0011"));
        // P = 1 -> all ones
        let v = encode_polynomial(&[(Monomial(vec![]), true)], 2).unwrap();
        assert_eq!(v, BitVector::from_bit_str("1111"));
        // P = x1 x2 -> 0001
        let v = encode_polynomial(&[(Monomial(vec![1, 2]), true)], 2).unwrap();
        assert_eq!(v, BitVector::from_bit_str("0001"));
        // variable out of range
        assert!(encode_polynomial(&[(Monomial(vec![3]), true)], 2).is_err());
    }

    #[test]
    fn encode_polynomial_is_linear() {
        let mut rng = ChaCha20Rng::seed_from_u64(7);
        let n = 4;
        let all = monomials_up_to_degree(n, n);
        for _ in 0..20 {
            let pick = |rng: &mut ChaCha20Rng| -> Vec<(Monomial, bool)> {
                all.iter()
                    .map(|m| (m.clone(), rng.gen::<bool>()))
                    .collect()
            };
            let a = pick(&mut rng);
            let b = pick(&mut rng);
            let sum: Vec<(Monomial, bool)> = all
                .iter()
                .enumerate()
                .map(|(i, m)| (m.clone(), a[i].1 ^ b[i].1))
                .collect();
            let ea = encode_polynomial(&a, n).unwrap();
            let eb = encode_polynomial(&b, n).unwrap();
            let es = encode_polynomial(&sum, n).unwrap();
            assert_eq!(ea.xor(&eb), es);
        }
    }

    #[test]
    fn enumeration_counts_and_weights() {
        // RM(2,1): 8 codewords of length 4
        let words = RmCode::new(2, 1).unwrap().enumerate_codewords(None).unwrap();
        assert_eq!(words.len(), 8);
        assert!(words.iter().all(|w| w.len() == 4));

        // RM(3,0): the two constants
        let words = RmCode::new(3, 0).unwrap().enumerate_codewords(None).unwrap();
        assert_eq!(words.len(), 2);
        let weights: Vec<usize> = words.iter().map(|w| w.weight()).collect();
        assert!(weights.contains(&0) && weights.contains(&8));

        // RM(3,1): 16 codewords, weights in {0, 4, 8}
        let words = RmCode::new(3, 1).unwrap().enumerate_codewords(None).unwrap();
        assert_eq!(words.len(), 16);
        for w in &words {
            assert!(matches!(w.weight(), 0 | 4 | 8), "weight {}", w.weight());
        }
    }

    #[test]
    fn enumeration_is_message_order_and_capped() {
        let code = RmCode::new(3, 2).unwrap();
        let words = code.enumerate_codewords(None).unwrap();
        for (m, w) in words.iter().enumerate() {
            assert_eq!(*w, code.encode_message(m as u64));
        }
        let big = RmCode::new(5, 5).unwrap();
        assert!(matches!(
            big.enumerate_codewords(None),
            Err(Error::CapExceeded(_))
        ));
    }

    #[test]
    fn duality_brute_force_oracle_small() {
        // Independent oracle: enumerate all codeword pairs and check parities.
        for (n, d) in [(2usize, 0usize), (3, 1), (4, 1)] {
            let code = RmCode::new(n, d).unwrap();
            let dual = code.dual().unwrap().unwrap();
            for a in code.enumerate_codewords(None).unwrap() {
                for b in dual.enumerate_codewords(None).unwrap() {
                    assert!(!a.dot_parity(&b), "odd intersection at ({n},{d})");
                }
            }
            assert!(verify_duality(n, d).unwrap());
        }
    }

    #[test]
    fn coset_degree_examples() {
        let n = 3;
        let d = 1;
        // alpha = 0 -> 0
        let zero = BitVector::zeros(8);
        assert_eq!(coset_degree(&zero, n, d).unwrap(), 0);
        // alpha in the dual itself -> 0
        let dual = RmCode::new(3, 1).unwrap(); // RM(3,1) is self-dual
        for w in dual.enumerate_codewords(None).unwrap() {
            assert_eq!(coset_degree(&w, n, d).unwrap(), 0);
        }
        // alpha = e1: brute-force minimum over the 16 dual words
        let mut e1 = BitVector::zeros(8);
        e1.set(0, true);
        let brute = dual
            .enumerate_codewords(None)
            .unwrap()
            .iter()
            .map(|y| e1.xor(y).weight())
            .min()
            .unwrap();
        assert_eq!(coset_degree(&e1, n, d).unwrap(), brute);
        assert_eq!(brute, 1);
    }

    #[test]
    fn coset_degree_invariant_under_dual_shifts() {
        let mut rng = ChaCha20Rng::seed_from_u64(11);
        let code = RmCode::new(4, 2).unwrap();
        let dual = code.dual().unwrap().unwrap();
        let dual_words = dual.enumerate_codewords(None).unwrap();
        for _ in 0..10 {
            let mut alpha = BitVector::zeros(16);
            for i in 0..16 {
                alpha.set(i, rng.gen());
            }
            let base = coset_degree(&alpha, 4, 2).unwrap();
            for y in dual_words.iter().take(8) {
                assert_eq!(coset_degree(&alpha.xor(y), 4, 2).unwrap(), base);
            }
        }
    }

    #[test]
    fn sampled_degree_upper_bounds_exact() {
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        let mut alpha = BitVector::zeros(16);
        for i in [0usize, 3, 7, 9] {
            alpha.set(i, true);
        }
        let exact = coset_degree(&alpha, 4, 2).unwrap();
        let approx = coset_degree_sampled(&alpha, 4, 2, 200, &mut rng).unwrap();
        assert!(!approx.exact);
        assert!(approx.value >= exact);
    }

    #[test]
    fn min_weight_sampler_contract() {
        let mut rng = ChaCha20Rng::seed_from_u64(5);
        let code = RmCode::new(3, 1).unwrap();
        let index = code.message_index(None).unwrap();
        for _ in 0..50 {
            let w = sample_min_weight_codeword(3, 1, &mut rng).unwrap();
            assert_eq!(w.weight(), 4);
            assert!(index.contains_key(&w), "sampler output not in RM(3,1)");
        }
        // d=2 in n=4: weight 2^(4-2) = 4
        for _ in 0..20 {
            let w = sample_min_weight_codeword(4, 2, &mut rng).unwrap();
            assert_eq!(w.weight(), 4);
        }
        assert!(sample_min_weight_codeword(3, 0, &mut rng).is_err());
    }

    #[test]
    fn min_weight_enumeration_matches_sampler_support() {
        let code = RmCode::new(3, 1).unwrap();
        let mw = code.min_weight_codewords(None).unwrap();
        // 16 affine functions minus 2 constants
        assert_eq!(mw.len(), 14);
        let mut rng = ChaCha20Rng::seed_from_u64(9);
        for _ in 0..30 {
            let w = sample_min_weight_codeword(3, 1, &mut rng).unwrap();
            assert!(mw.contains(&w));
        }
    }

    #[test]
    fn codeword_json_round_trip() {
        let code = RmCode::new(3, 1).unwrap();
        let words = code.enumerate_codewords(None).unwrap();
        let json = CodewordSetJson::from_words(3, 1, &words);
        let back = json.to_words().unwrap();
        assert_eq!(words, back);
        let text = serde_json::to_string(&json).unwrap();
        assert!(text.contains("\"words\""));
    }

    #[test]
    fn syndrome_identifies_characters() {
        let code = RmCode::new(3, 1).unwrap();
        let dual = code.dual().unwrap().unwrap();
        let mut alpha = BitVector::zeros(8);
        alpha.set(2, true);
        alpha.set(5, true);
        let s = code.syndrome(&alpha);
        // Shifting alpha by a dual word leaves the syndrome unchanged.
        for y in dual.enumerate_codewords(None).unwrap() {
            assert_eq!(code.syndrome(&alpha.xor(&y)), s);
        }
        // Character values match the explicit (-1)^<alpha, c> on codewords.
        for (m, c) in code.enumerate_codewords(None).unwrap().iter().enumerate() {
            let direct = if alpha.dot_parity(c) { -1.0 } else { 1.0 };
            assert_eq!(RmCode::character_value(s, m as u64), direct);
        }
    }
}
