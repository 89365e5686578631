//! Complex state vectors for the coin ⊗ lattice Hilbert space.
//!
//! A `LatticeState` is a dense complex vector over `N` sites, indexed
//! internally from 0 to N-1 (Fock convention: site index = excitation
//! number). Published site labels are 1-based; the I/O layer converts.
//! A `CoinLatticeState` pairs the two lattice branches attached to the
//! coin basis states |0⟩ and |1⟩.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{HeWalkError, Result};

/// Tolerance for normalization checks.
pub const NORM_TOL: f64 = 1e-10;

/// One lattice branch: `N` complex amplitudes indexed by site.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeState {
    amps: Vec<Complex64>,
}

impl LatticeState {
    /// All-zero state over `n_sites` sites.
    pub fn zero(n_sites: usize) -> Self {
        LatticeState {
            amps: vec![Complex64::ZERO; n_sites],
        }
    }

    /// Unit basis vector at `site`.
    pub fn basis(n_sites: usize, site: usize) -> Result<Self> {
        if site >= n_sites {
            return Err(HeWalkError::IndexOutOfRange { site, n_sites });
        }
        let mut s = Self::zero(n_sites);
        s.amps[site] = Complex64::ONE;
        Ok(s)
    }

    /// Build from raw amplitudes, rejecting NaN/Inf entries.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        for (site, a) in amps.iter().enumerate() {
            if !a.re.is_finite() || !a.im.is_finite() {
                return Err(HeWalkError::NonFiniteAmplitude { site });
            }
        }
        Ok(LatticeState { amps })
    }

    pub fn n_sites(&self) -> usize {
        self.amps.len()
    }

    pub fn amp(&self, site: usize) -> Result<Complex64> {
        self.amps
            .get(site)
            .copied()
            .ok_or(HeWalkError::IndexOutOfRange {
                site,
                n_sites: self.amps.len(),
            })
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub(crate) fn amps_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() < NORM_TOL
    }

    /// Return a unit-norm copy. Normalization is always explicit so that
    /// projection probabilities stay inspectable.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(HeWalkError::InvalidConfig(
                "cannot normalize the zero state".into(),
            ));
        }
        let amps = self.amps.iter().map(|a| a / n).collect();
        Ok(LatticeState { amps })
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        LatticeState {
            amps: self.amps.iter().map(|a| a * factor).collect(),
        }
    }
}

/// ⟨a|b⟩ = Σⱼ conj(a[j])·b[j].
pub fn inner_product(a: &LatticeState, b: &LatticeState) -> Result<Complex64> {
    if a.n_sites() != b.n_sites() {
        return Err(HeWalkError::DimensionMismatch {
            left: a.n_sites(),
            right: b.n_sites(),
        });
    }
    Ok(a.amps
        .iter()
        .zip(&b.amps)
        .map(|(x, y)| x.conj() * y)
        .sum())
}

/// Full pure state of the coin-lattice system: the two lattice branches
/// paired with coin |0⟩ and |1⟩.
#[derive(Debug, Clone, PartialEq)]
pub struct CoinLatticeState {
    comp0: LatticeState,
    comp1: LatticeState,
}

impl CoinLatticeState {
    pub fn new(comp0: LatticeState, comp1: LatticeState) -> Result<Self> {
        if comp0.n_sites() != comp1.n_sites() {
            return Err(HeWalkError::DimensionMismatch {
                left: comp0.n_sites(),
                right: comp1.n_sites(),
            });
        }
        Ok(CoinLatticeState { comp0, comp1 })
    }

    /// Basis state |coin⟩ ⊗ |site⟩.
    pub fn basis(n_sites: usize, coin: u8, site: usize) -> Result<Self> {
        let populated = LatticeState::basis(n_sites, site)?;
        let empty = LatticeState::zero(n_sites);
        match coin {
            0 => Self::new(populated, empty),
            _ => Self::new(empty, populated),
        }
    }

    pub fn n_sites(&self) -> usize {
        self.comp0.n_sites()
    }

    pub fn comp0(&self) -> &LatticeState {
        &self.comp0
    }

    pub fn comp1(&self) -> &LatticeState {
        &self.comp1
    }

    pub(crate) fn parts_mut(&mut self) -> (&mut [Complex64], &mut [Complex64]) {
        (self.comp0.amps_mut(), self.comp1.amps_mut())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.comp0.norm_sqr() + self.comp1.norm_sqr()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// |ψ₀,ⱼ|² + |ψ₁,ⱼ|² — probability of finding the walker at `site`.
    pub fn probability_at(&self, site: usize) -> Result<f64> {
        let a0 = self.comp0.amp(site)?;
        let a1 = self.comp1.amp(site)?;
        Ok(a0.norm_sqr() + a1.norm_sqr())
    }
}

/// Coin rotation axis selector (the unit vector **n** picks one Pauli axis).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

/// Lattice edge handling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundaryKind {
    #[serde(rename = "cyclic")]
    Cyclic,
    #[serde(rename = "hard-wall")]
    HardWall,
}

/// All free parameters of one walk run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WalkConfig {
    pub n_sites: usize,
    pub alpha0: f64,
    /// Relative phase δ of the initial coin state (|0⟩ + e^{iδ}|1⟩)/√2.
    pub delta: f64,
    pub theta1: f64,
    pub theta2: f64,
    pub axis: Axis,
    pub steps: usize,
    pub boundary: BoundaryKind,
    pub leakage_tol: f64,
}

impl Default for WalkConfig {
    fn default() -> Self {
        WalkConfig {
            n_sites: 200,
            alpha0: 10.0,
            delta: 0.0,
            theta1: 0.0,
            theta2: -std::f64::consts::FRAC_PI_2,
            axis: Axis::Y,
            steps: 20,
            boundary: BoundaryKind::Cyclic,
            leakage_tol: 1e-8,
        }
    }
}

impl WalkConfig {
    pub fn validate(&self) -> Result<()> {
        use std::f64::consts::PI;
        if self.n_sites < 2 {
            return Err(HeWalkError::InvalidConfig(format!(
                "n_sites must be >= 2, got {}",
                self.n_sites
            )));
        }
        if !self.alpha0.is_finite() || self.alpha0 < 0.0 {
            return Err(HeWalkError::InvalidConfig(format!(
                "alpha0 must be a finite non-negative number, got {}",
                self.alpha0
            )));
        }
        for (name, v) in [("theta1", self.theta1), ("theta2", self.theta2)] {
            if !v.is_finite() || !(-2.0 * PI..=2.0 * PI).contains(&v) {
                return Err(HeWalkError::InvalidConfig(format!(
                    "{name} must lie in [-2pi, 2pi], got {v}"
                )));
            }
        }
        if !self.delta.is_finite() {
            return Err(HeWalkError::InvalidConfig("delta must be finite".into()));
        }
        if !(self.leakage_tol > 0.0) {
            return Err(HeWalkError::InvalidConfig(format!(
                "leakage_tol must be > 0, got {}",
                self.leakage_tol
            )));
        }
        Ok(())
    }

    /// δ outside the symmetry-preserving range [0, π/2] is permitted but
    /// does not yield the intended symmetric states.
    pub fn delta_outside_recommended_range(&self) -> bool {
        !(0.0..=std::f64::consts::FRAC_PI_2 + 1e-12).contains(&self.delta)
    }
}
