//! Walker probability distributions, variance growth, and the classical
//! random-walk comparator.

use serde::{Deserialize, Serialize};

use crate::error::{HeWalkError, Result};
use crate::state::CoinLatticeState;

/// Per-site probability of finding the walker, plus the bookkeeping
/// needed to measure spread: the step count and the starting site that
/// displacements are signed against.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Distribution {
    pub probs: Vec<f64>,
    pub t: usize,
    pub origin: usize,
}

impl Distribution {
    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }
}

/// P(n,t) = |ψ₀,ₙ|² + |ψ₁,ₙ|².
pub fn walk_distribution(s: &CoinLatticeState, t: usize, origin: usize) -> Distribution {
    let probs = s
        .comp0()
        .amps()
        .iter()
        .zip(s.comp1().amps())
        .map(|(a, b)| a.norm_sqr() + b.norm_sqr())
        .collect();
    Distribution { probs, t, origin }
}

/// Variance of the signed displacement from the origin site.
pub fn variance(d: &Distribution) -> f64 {
    let mut mean = 0.0;
    let mut second = 0.0;
    for (site, &p) in d.probs.iter().enumerate() {
        let n = site as f64 - d.origin as f64;
        mean += n * p;
        second += n * n * p;
    }
    second - mean * mean
}

/// Exact ±1-step random walk after t steps: P(origin + 2k − t) =
/// C(t,k)/2ᵗ, evaluated by the multiplicative recurrence so no binomial
/// coefficient ever overflows.
pub fn classical_distribution(t: usize, n_sites: usize) -> Result<Distribution> {
    let origin = n_sites / 2;
    if t > origin || origin + t >= n_sites {
        return Err(HeWalkError::SupportExceedsLattice {
            support: 2 * t + 1,
            n_sites,
        });
    }
    let mut probs = vec![0.0; n_sites];
    let mut w = 0.5f64.powi(t as i32);
    for k in 0..=t {
        probs[origin + 2 * k - t] = w;
        if k < t {
            w *= (t - k) as f64 / (k + 1) as f64;
        }
    }
    Ok(Distribution { probs, t, origin })
}

/// Least-squares slope of ln(y) against ln(x).
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(x, y) in points {
        let (lx, ly) = (x.ln(), y.ln());
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}
