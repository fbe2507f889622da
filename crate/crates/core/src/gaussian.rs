//! The Gaussian noise stability curve Gamma_rho(mu): the probability that
//! two rho-correlated standard Gaussians both fall below the mu-quantile.
//!
//! Computed from the derivative identity for the bivariate normal CDF
//! (d/d rho of P[X<=h, Y<=h] is the bivariate density at (h,h)), which after
//! the substitution r = sin(theta) gives the smooth integral
//!
//!   Gamma_rho(mu) = mu^2 + (1/2pi) * int_0^{asin rho} exp(-h^2/(1+sin t)) dt
//!
//! with h the standard normal quantile of mu. The integrand is analytic on
//! the closed interval, so panel-doubling Gauss-Legendre quadrature
//! converges fast; the tolerance is 1e-8 absolute.

use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};

const ABS_TOL: f64 = 1e-8;

/// 8-point Gauss-Legendre nodes and weights on [-1, 1].
const GL_NODES: [f64; 8] = [
    -0.9602898564975363,
    -0.7966664774136267,
    -0.5255324099163290,
    -0.1834346424956498,
    0.1834346424956498,
    0.5255324099163290,
    0.7966664774136267,
    0.9602898564975363,
];
const GL_WEIGHTS: [f64; 8] = [
    0.1012285362903763,
    0.2223810344533745,
    0.3137066458778873,
    0.3626837833783620,
    0.3626837833783620,
    0.3137066458778873,
    0.2223810344533745,
    0.1012285362903763,
];

#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct GaussianStability {
    pub value: f64,
    /// Set when mu is 0 or 1 and the quantile degenerates.
    pub degenerate: bool,
}

/// P[X <= t(mu), Y <= t(mu)] for standard Gaussians with correlation rho.
///
/// `rho = 0` returns exactly mu^2 and `rho = 1` exactly mu (the integral
/// identities are closed-form there); interior rho goes through quadrature.
pub fn gaussian_stability(rho: f64, mu: f64) -> Result<GaussianStability> {
    if !(0.0..=1.0).contains(&rho) {
        return Err(Error::Parameter(format!("rho = {rho} outside [0, 1]")));
    }
    if !(0.0..=1.0).contains(&mu) {
        return Err(Error::Parameter(format!("mu = {mu} outside [0, 1]")));
    }
    if mu == 0.0 {
        return Ok(GaussianStability {
            value: 0.0,
            degenerate: true,
        });
    }
    if mu == 1.0 {
        return Ok(GaussianStability {
            value: 1.0,
            degenerate: true,
        });
    }
    if rho == 0.0 {
        return Ok(GaussianStability {
            value: mu * mu,
            degenerate: false,
        });
    }
    if rho == 1.0 {
        return Ok(GaussianStability {
            value: mu,
            degenerate: false,
        });
    }
    let normal = Normal::new(0.0, 1.0).expect("unit normal");
    let h = normal.inverse_cdf(mu);
    let upper = rho.asin();
    let integrand = |theta: f64| (-h * h / (1.0 + theta.sin())).exp();

    let mut panels = 1usize;
    let mut prev = gauss_legendre(&integrand, 0.0, upper, panels);
    loop {
        panels *= 2;
        let next = gauss_legendre(&integrand, 0.0, upper, panels);
        if (next - prev).abs() < ABS_TOL / 2.0 || panels >= 1 << 14 {
            let value = mu * mu + next / (2.0 * std::f64::consts::PI);
            return Ok(GaussianStability {
                value,
                degenerate: false,
            });
        }
        prev = next;
    }
}

fn gauss_legendre(f: &dyn Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    let mut acc = 0.0;
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * h;
        let half = h / 2.0;
        for (x, w) in GL_NODES.iter().zip(GL_WEIGHTS.iter()) {
            acc += w * f(mid + half * x);
        }
    }
    acc * (b - a) / (2.0 * panels as f64)
}
