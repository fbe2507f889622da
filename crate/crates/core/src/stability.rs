//! Fourier analysis of real functions on RM(n, d): coefficients over
//! character cosets, degree-bounded influences, noise stability under a
//! short-code graph, and the cube-side noise stability oracle.

use crate::error::{Error, Result};
use crate::gaussian::gaussian_stability;
use crate::graph::{walsh_hadamard, CharacterTable, ShortCodeGraph};

/// A real-valued function on the codewords of RM(n, d), stored by message
/// index, with its Fourier coefficients over the character cosets.
#[derive(Debug, Clone)]
pub struct CodeFunction {
    values: Vec<f64>,
    fourier: Vec<f64>,
}

impl CodeFunction {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if !values.len().is_power_of_two() {
            return Err(Error::Parameter(
                "code function needs 2^dim values (one per message)".into(),
            ));
        }
        let mut fourier = values.clone();
        walsh_hadamard(&mut fourier);
        let scale = 1.0 / values.len() as f64;
        for c in &mut fourier {
            *c *= scale;
        }
        Ok(CodeFunction { values, fourier })
    }

    /// Lift of a function on folded-graph orbits: constant on each orbit.
    pub fn lift_from_orbits(orbit_of: &[usize], orbit_values: &[f64]) -> Result<Self> {
        let values = orbit_of.iter().map(|&o| orbit_values[o]).collect();
        Self::new(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Fourier coefficient of the character coset with the given syndrome:
    /// `E_{x ~ RM}[f(x) chi(x)]`.
    pub fn fourier(&self, syndrome: u64) -> f64 {
        self.fourier[syndrome as usize]
    }

    pub fn fourier_all(&self) -> &[f64] {
        &self.fourier
    }

    pub fn mean(&self) -> f64 {
        self.fourier[0]
    }

    pub fn mean_square(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>() / self.values.len() as f64
    }

    /// Parseval defect |sum f_hat^2 - E f^2|; zero up to rounding.
    pub fn parseval_defect(&self) -> f64 {
        let sum: f64 = self.fourier.iter().map(|c| c * c).sum();
        (sum - self.mean_square()).abs()
    }
}

/// Degree-bounded influence of coordinate `i` (0-indexed point): the Fourier
/// weight on cosets of degree <= ell whose minimum-weight representative has
/// bit i set.
pub fn influence(f: &CodeFunction, chars: &CharacterTable, i: usize, ell: usize) -> f64 {
    chars
        .entries()
        .iter()
        .filter(|e| e.degree <= ell && e.degree > 0 && e.min_weight_rep.get(i))
        .map(|e| {
            let c = f.fourier(e.syndrome);
            c * c
        })
        .sum()
}

/// All coordinate influences at once.
pub fn influences(f: &CodeFunction, chars: &CharacterTable, n_points: usize, ell: usize) -> Vec<f64> {
    let mut out = vec![0.0; n_points];
    for e in chars.entries() {
        if e.degree == 0 || e.degree > ell {
            continue;
        }
        let c = f.fourier(e.syndrome);
        let c2 = c * c;
        for (i, slot) in out.iter_mut().enumerate() {
            if e.min_weight_rep.get(i) {
                *slot += c2;
            }
        }
    }
    out
}

/// Spectral noise stability `<f, Gf> = sum_alpha lambda_alpha f_hat(alpha)^2`.
pub fn noise_stability(f: &CodeFunction, graph: &ShortCodeGraph) -> f64 {
    f.fourier_all()
        .iter()
        .enumerate()
        .map(|(s, c)| graph.lambda_by_syndrome(s as u64) * c * c)
        .sum()
}

/// Direct two-point route: `E_{x ~ RM, z ~ step}[f(x) f(x + z)]`.
pub fn noise_stability_direct(f: &CodeFunction, graph: &ShortCodeGraph) -> f64 {
    let size = graph.vertex_count();
    let steps = graph.step_weights();
    let mut acc = 0.0;
    for u in 0..size {
        let fu = f.values()[u];
        if fu == 0.0 {
            continue;
        }
        let mut inner = 0.0;
        for (z, &w) in steps.iter().enumerate() {
            if w != 0.0 {
                inner += w * f.values()[u ^ z];
            }
        }
        acc += fu * inner;
    }
    acc / size as f64
}

/// Noise stability of a cube function under the standard noise operator
/// with per-coordinate correlation rho: `sum_S rho^|S| f_hat(S)^2`.
/// `values` is indexed by sign pattern (bit = coordinate is -1), length 2^m.
pub fn boolean_noise_stability(values: &[f64], rho: f64) -> Result<f64> {
    if !values.len().is_power_of_two() || values.len() > (1 << 20) {
        return Err(Error::Parameter(
            "cube function needs 2^m values, m <= 20".into(),
        ));
    }
    let mut fourier = values.to_vec();
    walsh_hadamard(&mut fourier);
    let scale = 1.0 / values.len() as f64;
    Ok(fourier
        .iter()
        .enumerate()
        .map(|(s, c)| {
            let coeff = c * scale;
            rho.powi(s.count_ones() as i32) * coeff * coeff
        })
        .sum())
}

/// Comparison of measured noise stability against the Gaussian curve; the
/// sharpness constant of the error term is unspecified, so only the slack
/// is reported, never asserted.
#[derive(Debug, Clone, serde::Serialize)]
pub struct StablestAudit {
    pub hypothesis_met: bool,
    pub tau: f64,
    pub influence_degree: usize,
    pub max_influence: f64,
    pub mu: f64,
    pub lhs: f64,
    pub rhs_main: f64,
    pub slack: f64,
}

pub fn mis_audit(f: &CodeFunction, graph: &ShortCodeGraph, tau: f64) -> Result<StablestAudit> {
    if !(0.0 < tau && tau < 1.0) {
        return Err(Error::Parameter("tau must lie in (0,1)".into()));
    }
    if f.values().iter().any(|&v| !(0.0..=1.0).contains(&v)) {
        return Err(Error::Parameter("f must map into [0,1]".into()));
    }
    let ell = (1.0 / tau).log2().ceil().max(1.0) as usize;
    let infl = influences(f, graph.characters(), graph.code().len(), ell);
    let max_influence = infl.iter().cloned().fold(0.0, f64::max);
    let hypothesis_met = max_influence <= tau + 1e-15;
    let mu = f.mean();
    let lhs = noise_stability(f, graph);
    let rhs_main = gaussian_stability(graph.rho, mu.clamp(0.0, 1.0))?.value;
    Ok(StablestAudit {
        hypothesis_met,
        tau,
        influence_degree: ell,
        max_influence,
        mu,
        lhs,
        rhs_main,
        slack: lhs - rhs_main,
    })
}
