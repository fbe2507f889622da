//! The short-code Cayley graph on RM(n, d), its exact character spectrum,
//! affine-shift automorphisms, orbit folding, and balanced-separator search.
//!
//! Construction of the step law: a step is the XOR of M independent
//! uniformly random minimum-weight codewords, with M a Poisson variable of
//! mean `eps * 2^(d-1)` truncated at `ceil(16 * eps * 2^d)`. That mean makes
//! degree-1 characters land exactly on `rho = e^-eps` in the untruncated
//! limit, and low-degree characters track `rho^k`. When the minimum-weight
//! step itself keeps adjacent inner products above `3N/4` (that is, when
//! `2^(n-d) < N/8`, i.e. d >= 4), compound steps violating that floor are
//! rejected and the law renormalized; at smaller d the Poisson truncation is
//! the only cutoff, since the floor would reject even single steps.
//!
//! Convolutions sum their addends in sorted order, which makes the step law
//! bit-for-bit invariant under every affine shift (the addend multisets
//! coincide), so automorphism checks can demand exact equality.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::bits::BitVector;
use crate::error::{Error, Result};
use crate::rm::RmCode;

/// Caps the code dimension for graph construction (step law is dense 2^dim).
pub const MAX_GRAPH_DIM: usize = 20;

/// Default brute-force cap (vertex count) for balanced separator search.
pub const DEFAULT_CUT_CAP: usize = 24;

// ---------------------------------------------------------------------------
// Affine shifts
// ---------------------------------------------------------------------------

/// The affine-shift permutation: coordinate at point x takes the old value
/// at x + b. An involution; maps RM(n, d) to itself.
pub fn affine_shift(v: &BitVector, b: usize) -> BitVector {
    let n_points = v.len();
    let mut out = BitVector::zeros(n_points);
    for x in 0..n_points {
        out.set(x, v.get(x ^ b));
    }
    out
}

// ---------------------------------------------------------------------------
// Character table
// ---------------------------------------------------------------------------

/// One character coset of the dual code, canonicalized.
#[derive(Debug, Clone)]
pub struct CharEntry {
    /// Coset id: the syndrome of any member against the code's generators.
    pub syndrome: u64,
    /// Lexicographically least coset member.
    pub lex_rep: BitVector,
    /// Minimum-weight member, ties broken lexicographically; its bits drive
    /// the `alpha_i = 1` tests in influence computations.
    pub min_weight_rep: BitVector,
    /// Coset degree: the minimum weight.
    pub degree: usize,
}

/// Canonicalized table of all characters of RM(n, d), indexed by syndrome.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    entries: Vec<CharEntry>,
}

impl CharacterTable {
    pub fn new(code: &RmCode) -> Result<Self> {
        let dim = code.dimension();
        if dim > MAX_GRAPH_DIM {
            return Err(Error::CapExceeded(format!(
                "character table needs dimension <= {MAX_GRAPH_DIM}, got {dim}"
            )));
        }
        let n_points = code.len();
        // Solve for one representative per syndrome using unit vectors:
        // the syndrome of e_x is column x of the generator matrix.
        let mut basis: Vec<(u64, Vec<usize>)> = Vec::with_capacity(dim);
        for x in 0..n_points {
            let mut e = BitVector::zeros(n_points);
            e.set(x, true);
            let mut s = code.syndrome(&e);
            let mut points = vec![x];
            for (bs, bp) in &basis {
                let pivot = 63 - bs.leading_zeros() as usize;
                if (s >> pivot) & 1 == 1 {
                    s ^= bs;
                    points.extend_from_slice(bp);
                }
            }
            if s != 0 {
                basis.push((s, points));
            }
            if basis.len() == dim {
                break;
            }
        }
        if basis.len() != dim {
            return Err(Error::Construction(
                "generator matrix columns do not span the syndrome space".into(),
            ));
        }
        let dual_words: Vec<BitVector> = match code.dual()? {
            None => vec![BitVector::zeros(n_points)],
            Some(dual) => dual.enumerate_codewords(None)?,
        };
        let mut entries = Vec::with_capacity(1 << dim);
        for syndrome in 0..(1u64 << dim) {
            // representative from the elimination basis
            let mut rep = BitVector::zeros(n_points);
            let mut s = syndrome;
            for (bs, bp) in &basis {
                let pivot = 63 - bs.leading_zeros() as usize;
                if (s >> pivot) & 1 == 1 {
                    s ^= bs;
                    for &x in bp {
                        rep.set(x, !rep.get(x));
                    }
                }
            }
            debug_assert_eq!(s, 0);
            debug_assert_eq!(code.syndrome(&rep), syndrome);
            let mut lex_rep = rep.clone();
            let mut min_weight_rep = rep.clone();
            for y in &dual_words {
                let cand = rep.xor(y);
                if cand.lex_cmp(&lex_rep).is_lt() {
                    lex_rep = cand.clone();
                }
                let better = cand.weight().cmp(&min_weight_rep.weight()).then_with(|| {
                    cand.lex_cmp(&min_weight_rep)
                });
                if better.is_lt() {
                    min_weight_rep = cand;
                }
            }
            let degree = min_weight_rep.weight();
            entries.push(CharEntry {
                syndrome,
                lex_rep,
                min_weight_rep,
                degree,
            });
        }
        Ok(CharacterTable { entries })
    }

    pub fn entries(&self) -> &[CharEntry] {
        &self.entries
    }

    pub fn entry(&self, syndrome: u64) -> &CharEntry {
        &self.entries[syndrome as usize]
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

// ---------------------------------------------------------------------------
// The short-code graph
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct ShortCodeGraph {
    code: RmCode,
    codewords: Vec<BitVector>,
    index: HashMap<BitVector, u64>,
    pub eps: f64,
    pub rho: f64,
    /// Poisson mean eps * 2^(d-1).
    pub step_mean: f64,
    /// Poisson truncation ceil(16 * eps * 2^d).
    pub m_max: usize,
    /// Whether the 3N/4 adjacency floor is enforced by weight rejection.
    pub floor_enforced: bool,
    /// Truncated, renormalized Poisson weights, length m_max + 1.
    poisson: Vec<f64>,
    /// Step distribution over messages, dense of length 2^dim.
    step_weights: Vec<f64>,
    min_weight_messages: Vec<u64>,
    /// shift_msg[b][m] = message of the shift-by-b image of codeword m.
    shift_msg: Vec<Vec<u64>>,
    characters: CharacterTable,
    /// lambda indexed by syndrome.
    lambda: Vec<f64>,
}

impl ShortCodeGraph {
    pub fn build(n: usize, d: usize, eps: f64) -> Result<Self> {
        if !(0.0 < eps && eps < 0.125) {
            return Err(Error::Parameter(format!(
                "eps = {eps} outside the open interval (0, 1/8)"
            )));
        }
        if d == 0 {
            return Err(Error::Parameter("short-code graph needs d >= 1".into()));
        }
        let code = RmCode::new(n, d)?;
        if code.dimension() > MAX_GRAPH_DIM {
            return Err(Error::CapExceeded(format!(
                "RM({n},{d}) has dimension {} > {MAX_GRAPH_DIM}",
                code.dimension()
            )));
        }
        let codewords = code.enumerate_codewords(None)?;
        let index: HashMap<BitVector, u64> = codewords
            .iter()
            .cloned()
            .enumerate()
            .map(|(m, w)| (w, m as u64))
            .collect();
        let n_points = code.len();
        let dim = code.dimension();

        let min_weight_messages: Vec<u64> = codewords
            .iter()
            .enumerate()
            .filter(|(_, w)| w.weight() == 1 << (n - d))
            .map(|(m, _)| m as u64)
            .collect();
        if min_weight_messages.is_empty() {
            return Err(Error::Construction("no minimum-weight codewords".into()));
        }

        let step_mean = eps * (1 << (d - 1)) as f64;
        let m_max = (16.0 * eps * (1 << d) as f64).ceil() as usize;
        let poisson = truncated_poisson(step_mean, m_max);

        // Convolution powers of the uniform min-weight step, sorted sums.
        let size = 1usize << dim;
        let mut step_weights = vec![0.0f64; size];
        let mut current = vec![0.0f64; size];
        current[0] = 1.0;
        accumulate_sorted(&mut step_weights, &current, poisson[0]);
        let inv = 1.0 / min_weight_messages.len() as f64;
        let mut addends = vec![0.0f64; min_weight_messages.len()];
        for &w_m in poisson.iter().skip(1) {
            let mut next = vec![0.0f64; size];
            for (c, slot) in next.iter_mut().enumerate() {
                for (j, &z) in min_weight_messages.iter().enumerate() {
                    addends[j] = current[c ^ z as usize];
                }
                addends.sort_by(|a, b| a.partial_cmp(b).unwrap());
                *slot = addends.iter().sum::<f64>() * inv;
            }
            current = next;
            accumulate_sorted(&mut step_weights, &current, w_m);
        }

        // Enforce the adjacency floor only when single steps satisfy it.
        let floor_enforced = (1usize << (n - d)) < n_points / 8;
        if floor_enforced {
            let cap = n_points / 8;
            for (m, w) in step_weights.iter_mut().enumerate() {
                if codewords[m].weight() >= cap {
                    *w = 0.0;
                }
            }
            let total: f64 = step_weights.iter().sum();
            if total <= 0.0 {
                return Err(Error::Construction(
                    "adjacency floor rejected the entire step law".into(),
                ));
            }
            for w in &mut step_weights {
                *w /= total;
            }
        }

        // Shift action on messages.
        let mut shift_msg = Vec::with_capacity(n_points);
        for b in 0..n_points {
            let row: Vec<u64> = codewords
                .iter()
                .map(|w| index[&affine_shift(w, b)])
                .collect();
            shift_msg.push(row);
        }

        let characters = CharacterTable::new(&code)?;
        // lambda(s) = sum_m step[m] * (-1)^<s, m>: a Walsh-Hadamard transform.
        let mut lambda = step_weights.clone();
        walsh_hadamard(&mut lambda);

        Ok(ShortCodeGraph {
            code,
            codewords,
            index,
            eps,
            rho: (-eps).exp(),
            step_mean,
            m_max,
            floor_enforced,
            poisson,
            step_weights,
            min_weight_messages,
            shift_msg,
            characters,
            lambda,
        })
    }

    pub fn code(&self) -> &RmCode {
        &self.code
    }

    pub fn codewords(&self) -> &[BitVector] {
        &self.codewords
    }

    pub fn message_of(&self, w: &BitVector) -> Option<u64> {
        self.index.get(w).copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.codewords.len()
    }

    pub fn step_weights(&self) -> &[f64] {
        &self.step_weights
    }

    pub fn poisson_weights(&self) -> &[f64] {
        &self.poisson
    }

    pub fn min_weight_messages(&self) -> &[u64] {
        &self.min_weight_messages
    }

    pub fn characters(&self) -> &CharacterTable {
        &self.characters
    }

    pub fn shift_message(&self, b: usize, m: u64) -> u64 {
        self.shift_msg[b][m as usize]
    }

    /// Eigenvalue of the character with the given syndrome.
    pub fn lambda_by_syndrome(&self, syndrome: u64) -> f64 {
        self.lambda[syndrome as usize]
    }

    /// Eigenvalue of chi_alpha for an arbitrary coset member alpha.
    pub fn eigenvalue(&self, alpha: &BitVector) -> Result<f64> {
        if alpha.len() != self.code.len() {
            return Err(Error::Parameter("alpha length mismatch".into()));
        }
        Ok(self.lambda_by_syndrome(self.code.syndrome(alpha)))
    }

    /// Expected single-character value over one uniform min-weight step,
    /// the moment `q_alpha`; the untruncated eigenvalue closed form is
    /// `exp(step_mean * (q_alpha - 1))`.
    pub fn single_step_moment(&self, syndrome: u64) -> f64 {
        let mut acc = 0.0;
        for &z in &self.min_weight_messages {
            acc += RmCode::character_value(syndrome, z);
        }
        acc / self.min_weight_messages.len() as f64
    }

    /// Orbit partition of the codewords under all affine shifts.
    pub fn orbits(&self) -> Orbits {
        let size = self.vertex_count();
        let mut orbit_of = vec![usize::MAX; size];
        let mut orbits: Vec<Vec<u64>> = Vec::new();
        for m in 0..size as u64 {
            if orbit_of[m as usize] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut members: Vec<u64> = (0..self.code.len())
                .map(|b| self.shift_msg[b][m as usize])
                .collect();
            members.sort_unstable();
            members.dedup();
            for &member in &members {
                orbit_of[member as usize] = id;
            }
            orbits.push(members);
        }
        Orbits { orbit_of, orbits }
    }

    /// Folds the graph along the orbit partition, summing edge weights.
    pub fn fold(&self) -> FoldedGraph {
        let orbits = self.orbits();
        let v = orbits.orbits.len();
        let size = self.vertex_count();
        let mut joint = vec![vec![0.0f64; v]; v];
        let vertex_mass = 1.0 / size as f64;
        for u in 0..size {
            let ou = orbits.orbit_of[u];
            for (z, &w) in self.step_weights.iter().enumerate() {
                if w != 0.0 {
                    let ov = orbits.orbit_of[u ^ z];
                    joint[ou][ov] += vertex_mass * w;
                }
            }
        }
        let stationary: Vec<f64> = orbits
            .orbits
            .iter()
            .map(|o| o.len() as f64 / size as f64)
            .collect();
        FoldedGraph {
            orbit_of: orbits.orbit_of,
            orbit_reps: orbits.orbits.iter().map(|o| o[0]).collect(),
            orbit_sizes: orbits.orbits.iter().map(|o| o.len()).collect(),
            walk: WalkGraph { joint, stationary },
        }
    }

    /// Conductance of a set of messages under the stationary walk.
    pub fn conductance(&self, in_set: &[bool]) -> Result<f64> {
        if in_set.len() != self.vertex_count() {
            return Err(Error::Parameter("set size mismatch".into()));
        }
        let members = in_set.iter().filter(|&&b| b).count();
        if members == 0 || members == in_set.len() {
            return Err(Error::Parameter("set must be nonempty and proper".into()));
        }
        let mut cut = 0.0;
        for (u, &inside) in in_set.iter().enumerate() {
            if !inside {
                continue;
            }
            for (z, &w) in self.step_weights.iter().enumerate() {
                if w != 0.0 && !in_set[u ^ z] {
                    cut += w;
                }
            }
        }
        let mass = members as f64 / self.vertex_count() as f64;
        Ok(cut / self.vertex_count() as f64 / mass)
    }
}

fn truncated_poisson(mean: f64, m_max: usize) -> Vec<f64> {
    let mut w = Vec::with_capacity(m_max + 1);
    let mut term = (-mean).exp();
    for m in 0..=m_max {
        if m > 0 {
            term *= mean / m as f64;
        }
        w.push(term);
    }
    let total: f64 = w.iter().sum();
    for x in &mut w {
        *x /= total;
    }
    w
}

/// acc += weight * source, keeping per-slot determinism.
fn accumulate_sorted(acc: &mut [f64], source: &[f64], weight: f64) {
    for (a, &s) in acc.iter_mut().zip(source) {
        *a += weight * s;
    }
}

/// In-place Walsh-Hadamard transform (unnormalized).
pub fn walsh_hadamard(v: &mut [f64]) {
    debug_assert!(v.len().is_power_of_two());
    let mut len = 1;
    while len < v.len() {
        let step = len << 1;
        for i in (0..v.len()).step_by(step) {
            for j in 0..len {
                let a = v[i + j];
                let b = v[i + j + len];
                v[i + j] = a + b;
                v[i + j + len] = a - b;
            }
        }
        len = step;
    }
}

// ---------------------------------------------------------------------------
// Orbits and the folded graph
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct Orbits {
    /// orbit id per message.
    pub orbit_of: Vec<usize>,
    /// members per orbit, sorted; orbit order is by least member.
    pub orbits: Vec<Vec<u64>>,
}

#[derive(Debug, Clone)]
pub struct FoldedGraph {
    pub orbit_of: Vec<usize>,
    /// Least message of each orbit.
    pub orbit_reps: Vec<u64>,
    pub orbit_sizes: Vec<usize>,
    pub walk: WalkGraph,
}

impl FoldedGraph {
    pub fn vertex_count(&self) -> usize {
        self.orbit_reps.len()
    }
}

// ---------------------------------------------------------------------------
// Generic stationary walks: conductance and balanced separator
// ---------------------------------------------------------------------------

/// A reversible stationary walk given by its symmetric joint edge measure
/// J[u][v] = P[first vertex u, second vertex v]; total mass 1. The
/// stationary law is the row-sum vector.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WalkGraph {
    pub joint: Vec<Vec<f64>>,
    pub stationary: Vec<f64>,
}

impl WalkGraph {
    pub fn from_joint(joint: Vec<Vec<f64>>) -> Result<Self> {
        let v = joint.len();
        let mut total = 0.0;
        for (i, row) in joint.iter().enumerate() {
            if row.len() != v {
                return Err(Error::Parameter("joint measure must be square".into()));
            }
            for (j, &w) in row.iter().enumerate() {
                if w < 0.0 {
                    return Err(Error::Parameter("negative edge mass".into()));
                }
                if (w - joint[j][i]).abs() > 1e-9 {
                    return Err(Error::Parameter("joint measure must be symmetric".into()));
                }
                total += w;
            }
        }
        if (total - 1.0).abs() > 1e-6 {
            return Err(Error::Parameter(format!(
                "joint measure has total {total}, expected 1"
            )));
        }
        let stationary = joint.iter().map(|row| row.iter().sum()).collect();
        Ok(WalkGraph { joint, stationary })
    }

    /// Unweighted-style constructor from undirected edges (u, v, weight);
    /// u = v makes a self-loop. Normalizes to a probability measure.
    pub fn from_edges(v: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        let mut joint = vec![vec![0.0f64; v]; v];
        for &(a, b, w) in edges {
            if a >= v || b >= v || w < 0.0 {
                return Err(Error::Parameter("bad edge".into()));
            }
            if a == b {
                joint[a][a] += w;
            } else {
                joint[a][b] += w;
                joint[b][a] += w;
            }
        }
        let total: f64 = joint.iter().flatten().sum();
        if total <= 0.0 {
            return Err(Error::Parameter("graph has no edge mass".into()));
        }
        for row in &mut joint {
            for w in row.iter_mut() {
                *w /= total;
            }
        }
        Self::from_joint(joint)
    }

    pub fn vertex_count(&self) -> usize {
        self.stationary.len()
    }

    pub fn set_mass(&self, in_set: &[bool]) -> f64 {
        in_set
            .iter()
            .zip(&self.stationary)
            .filter(|(&b, _)| b)
            .map(|(_, &m)| m)
            .sum()
    }

    fn cut_mass(&self, in_set: &[bool]) -> f64 {
        let mut cut = 0.0;
        for (u, row) in self.joint.iter().enumerate() {
            if !in_set[u] {
                continue;
            }
            for (v, &w) in row.iter().enumerate() {
                if !in_set[v] {
                    cut += w;
                }
            }
        }
        cut
    }

    /// Conductance: the probability a stationary-start edge from S exits S.
    pub fn conductance(&self, in_set: &[bool]) -> Result<f64> {
        if in_set.len() != self.vertex_count() {
            return Err(Error::Parameter("set size mismatch".into()));
        }
        let members = in_set.iter().filter(|&&b| b).count();
        if members == 0 || members == in_set.len() {
            return Err(Error::Parameter("set must be nonempty and proper".into()));
        }
        Ok(self.cut_mass(in_set) / self.set_mass(in_set))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SeparatorResult {
    pub phi: f64,
    pub witness: Vec<usize>,
    /// Exact over all feasible sets, or best-found from the heuristic.
    pub optimal: bool,
}

/// Minimum conductance over sets of stationary mass in [b, 1-b].
///
/// Exhaustive (Gray-code incremental) below `cap` vertices; above it, a
/// deterministic spectral sweep with local-move refinement, flagged
/// non-optimal.
pub fn balanced_separator_opt(g: &WalkGraph, b: f64, cap: usize) -> Result<SeparatorResult> {
    if !(0.0 < b && b < 0.5) {
        return Err(Error::Parameter(format!("b = {b} outside (0, 1/2)")));
    }
    let v = g.vertex_count();
    if v < 2 {
        return Err(Error::Parameter("graph too small".into()));
    }
    if v <= cap {
        exhaustive_separator(g, b)
    } else {
        heuristic_separator(g, b)
    }
}

fn feasible(mass: f64, b: f64) -> bool {
    // tolerate f64 dust at the window edges
    mass >= b - 1e-12 && mass <= 1.0 - b + 1e-12
}

fn exhaustive_separator(g: &WalkGraph, b: f64) -> Result<SeparatorResult> {
    let v = g.vertex_count();
    let mut in_set = vec![false; v];
    // Gray-code walk over subsets of vertices 1..v with vertex 0 pinned
    // inside; each subset and its complement are evaluated together.
    in_set[0] = true;
    let mut mass = g.stationary[0];
    let mut cut: f64 = g.joint[0].iter().enumerate().map(|(j, w)| if j != 0 { w } else { &0.0 }).sum();
    // link[u] = sum over v in S of J[u][v]
    let mut link: Vec<f64> = (0..v).map(|u| g.joint[u][0]).collect();
    let mut best: Option<(f64, Vec<bool>)> = None;

    let consider = |cut: f64, mass: f64, in_set: &Vec<bool>, best: &mut Option<(f64, Vec<bool>)>| {
        for (m, set) in [(mass, true), (1.0 - mass, false)] {
            if feasible(m, b) && m > 0.0 {
                let phi = cut / m;
                let better = match best {
                    None => true,
                    Some((bp, _)) => phi < *bp - 1e-15,
                };
                if better {
                    let chosen: Vec<bool> = if set {
                        in_set.clone()
                    } else {
                        in_set.iter().map(|&x| !x).collect()
                    };
                    *best = Some((phi, chosen));
                }
            }
        }
    };

    consider(cut, mass, &in_set, &mut best);
    let free = v - 1;
    let mut prev_gray = 0u64;
    for iter in 1..(1u64 << free) {
        let gray = iter ^ (iter >> 1);
        let toggled = (gray ^ prev_gray).trailing_zeros() as usize + 1;
        prev_gray = gray;
        let entering = !in_set[toggled];
        let row_total: f64 = g.joint[toggled].iter().sum();
        let self_loop = g.joint[toggled][toggled];
        if entering {
            cut += row_total - self_loop - 2.0 * (link[toggled] - if in_set[toggled] { self_loop } else { 0.0 });
            mass += g.stationary[toggled];
            in_set[toggled] = true;
            for (u, l) in link.iter_mut().enumerate() {
                *l += g.joint[u][toggled];
            }
        } else {
            in_set[toggled] = false;
            for (u, l) in link.iter_mut().enumerate() {
                *l -= g.joint[u][toggled];
            }
            cut -= row_total - self_loop - 2.0 * link[toggled];
            mass -= g.stationary[toggled];
        }
        consider(cut, mass, &in_set, &mut best);
    }

    match best {
        Some((phi, set)) => Ok(SeparatorResult {
            phi,
            witness: set
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(i, _)| i)
                .collect(),
            optimal: true,
        }),
        None => Err(Error::Infeasible(format!(
            "no vertex set has stationary mass within [{b}, {}]",
            1.0 - b
        ))),
    }
}

/// Deterministic heuristic: spectral sweep plus single-vertex local moves.
fn heuristic_separator(g: &WalkGraph, b: f64) -> Result<SeparatorResult> {
    let mut best: Option<(f64, Vec<bool>)> = None;
    for cand in separator_candidates(g, b) {
        let mass = g.set_mass(&cand);
        if !feasible(mass, b) {
            continue;
        }
        let phi = g.conductance(&cand)?;
        if best.as_ref().is_none_or(|(bp, _)| phi < *bp - 1e-15) {
            best = Some((phi, cand));
        }
    }
    match best {
        Some((phi, set)) => Ok(SeparatorResult {
            phi,
            witness: set
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(i, _)| i)
                .collect(),
            optimal: false,
        }),
        None => Err(Error::Infeasible(
            "heuristic found no feasible balanced set".into(),
        )),
    }
}

/// Candidate cuts for the heuristic: all feasible spectral-sweep prefixes,
/// each refined by local moves. Deterministic.
pub fn separator_candidates(g: &WalkGraph, b: f64) -> Vec<Vec<bool>> {
    let v = g.vertex_count();
    let order = spectral_order(g);
    let mut candidates = Vec::new();
    let mut in_set = vec![false; v];
    let mut mass = 0.0;
    for &u in &order {
        in_set[u] = true;
        mass += g.stationary[u];
        if feasible(mass, b) {
            candidates.push(local_refine(g, in_set.clone(), b));
            candidates.push(in_set.clone());
        }
        if mass > 1.0 - b {
            break;
        }
    }
    candidates
}

fn local_refine(g: &WalkGraph, mut in_set: Vec<bool>, b: f64) -> Vec<bool> {
    let v = g.vertex_count();
    let mut phi = match g.conductance(&in_set) {
        Ok(p) => p,
        Err(_) => return in_set,
    };
    for _pass in 0..50 {
        let mut improved = false;
        for u in 0..v {
            in_set[u] = !in_set[u];
            let mass = g.set_mass(&in_set);
            let members = in_set.iter().filter(|&&x| x).count();
            if members > 0 && members < v && feasible(mass, b) {
                let cand = g.conductance(&in_set).unwrap();
                if cand < phi - 1e-15 {
                    phi = cand;
                    improved = true;
                    continue;
                }
            }
            in_set[u] = !in_set[u];
        }
        if !improved {
            break;
        }
    }
    in_set
}

/// Vertices ordered by the second eigenvector of the normalized walk,
/// deterministic tie-breaking by index.
fn spectral_order(g: &WalkGraph) -> Vec<usize> {
    use nalgebra::DMatrix;
    let v = g.vertex_count();
    let mut m = DMatrix::zeros(v, v);
    for i in 0..v {
        for j in 0..v {
            let denom = (g.stationary[i] * g.stationary[j]).sqrt();
            if denom > 0.0 {
                m[(i, j)] = g.joint[i][j] / denom;
            }
        }
    }
    // enforce exact symmetry against f64 dust
    for i in 0..v {
        for j in (i + 1)..v {
            let avg = 0.5 * (m[(i, j)] + m[(j, i)]);
            m[(i, j)] = avg;
            m[(j, i)] = avg;
        }
    }
    let eigen = nalgebra::SymmetricEigen::new(m);
    let mut idx: Vec<usize> = (0..v).collect();
    idx.sort_by(|&a, &b| {
        eigen.eigenvalues[b]
            .partial_cmp(&eigen.eigenvalues[a])
            .unwrap()
            .then(a.cmp(&b))
    });
    let second = idx[1];
    let mut fiedler: Vec<f64> = (0..v)
        .map(|i| eigen.eigenvectors[(i, second)] / g.stationary[i].max(1e-300).sqrt())
        .collect();
    if let Some(first) = fiedler.iter().find(|x| x.abs() > 1e-12) {
        if *first < 0.0 {
            for x in &mut fiedler {
                *x = -*x;
            }
        }
    }
    let mut order: Vec<usize> = (0..v).collect();
    order.sort_by(|&a, &b| fiedler[a].partial_cmp(&fiedler[b]).unwrap().then(a.cmp(&b)));
    order
}

// ---------------------------------------------------------------------------
// Lemma-style spectrum audit
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumRow {
    pub rep_hex: String,
    pub degree: usize,
    pub lambda: f64,
    pub rho_pow_k: f64,
    pub gap: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumAudit {
    pub delta: f64,
    pub rows: Vec<SpectrumRow>,
    /// Rows with degree below delta^2 * 2^(d+1) whose gap exceeds delta.
    pub low_degree_violations: usize,
    /// Max |lambda - rho^k| per degree actually present.
    pub max_gap_by_degree: Vec<(usize, f64)>,
    pub expected_adjacent_inner: f64,
    pub expected_adjacent_bound: f64,
    pub expected_adjacent_ok: bool,
    pub min_adjacent_inner: f64,
    pub floor_three_quarters: f64,
    pub floor_enforced: bool,
    pub floor_ok: Option<bool>,
    /// Fitted mu0 from the high-degree eigenvalue branch, when defined.
    pub fitted_mu0: Option<f64>,
    pub all_lambda_bounded: bool,
}

impl ShortCodeGraph {
    pub fn lemma38_audit(&self, delta: f64) -> SpectrumAudit {
        let n_points = self.code.len() as f64;
        let d = self.code.d();
        let mut rows = Vec::with_capacity(self.lambda.len());
        let mut by_degree: HashMap<usize, f64> = HashMap::new();
        let mut violations = 0usize;
        let window = delta * delta * (1u64 << (d + 1)) as f64;
        let mut fitted_mu0: Option<f64> = None;
        let mut all_bounded = true;
        for entry in self.characters.entries() {
            let lambda = self.lambda[entry.syndrome as usize];
            let k = entry.degree;
            let rho_pow_k = self.rho.powi(k as i32);
            let gap = (lambda - rho_pow_k).abs();
            if lambda.abs() > 1.0 + 1e-9 {
                all_bounded = false;
            }
            let slot = by_degree.entry(k).or_insert(0.0);
            *slot = slot.max(gap);
            if (k as f64) < window && gap > delta {
                violations += 1;
            }
            if entry.syndrome != 0 {
                let half_branch = self.rho.powf(k as f64 / 2.0);
                if lambda > half_branch && lambda > 0.0 {
                    let mu0 = (1.0 / lambda).ln() / ((1u64 << d) as f64 * self.eps);
                    fitted_mu0 = Some(match fitted_mu0 {
                        None => mu0,
                        Some(cur) => cur.min(mu0),
                    });
                }
            }
            rows.push(SpectrumRow {
                rep_hex: entry.min_weight_rep.to_hex(),
                degree: k,
                lambda,
                rho_pow_k,
                gap,
            });
        }
        let mut max_gap_by_degree: Vec<(usize, f64)> = by_degree.into_iter().collect();
        max_gap_by_degree.sort_by_key(|&(k, _)| k);

        let mut expected_inner = 0.0;
        let mut min_inner = f64::INFINITY;
        for (m, &w) in self.step_weights.iter().enumerate() {
            if w != 0.0 {
                let inner = n_points - 2.0 * self.codewords[m].weight() as f64;
                expected_inner += w * inner;
                min_inner = min_inner.min(inner);
            }
        }
        let floor = 0.75 * n_points;
        SpectrumAudit {
            delta,
            rows,
            low_degree_violations: violations,
            max_gap_by_degree,
            expected_adjacent_inner: expected_inner,
            expected_adjacent_bound: (1.0 - self.eps) * n_points,
            expected_adjacent_ok: expected_inner >= (1.0 - self.eps) * n_points - 1e-12,
            min_adjacent_inner: min_inner,
            floor_three_quarters: floor,
            floor_enforced: self.floor_enforced,
            floor_ok: if self.floor_enforced {
                Some(min_inner > floor)
            } else {
                None
            },
            fitted_mu0,
            all_lambda_bounded: all_bounded,
        }
    }
}
