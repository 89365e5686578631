//! State preparation and characterization: coherent lattice states,
//! conditional-branch extraction, local amplitude estimation with
//! peak-window averaging, phase-behavior classification, and the trace
//! fidelity against a pair of target coherent states.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{HeWalkError, Result};
use crate::state::{CoinLatticeState, LatticeState, WalkConfig};

/// Sites with |C_j| below this are skipped by the estimator: the ratio
/// C_{j+1}/C_j there is dominated by round-off.
pub const RELIABILITY_FLOOR: f64 = 1e-8;

/// Default width of the averaging window around the peak site.
pub const DEFAULT_WINDOW: usize = 40;

/// Maximum truncation tail weight tolerated when building a coherent
/// state on a finite lattice.
pub const TRUNCATION_TOL: f64 = 1e-10;

/// ln(j!) for j = 0..n-1, by cumulative summation.
fn ln_factorials(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n);
    let mut acc = 0.0f64;
    for j in 0..n {
        if j > 0 {
            acc += (j as f64).ln();
        }
        out.push(acc);
    }
    out
}

/// Truncated coherent state with real amplitude `alpha0`: amps[j] ∝
/// α₀ʲ/√(j!), unit-normalized. Coefficients are computed in log space
/// so large α₀ neither overflows α₀ʲ nor underflows 1/√(j!).
pub fn coherent_lattice_state(alpha0: f64, n_sites: usize) -> Result<LatticeState> {
    if !(alpha0 >= 0.0) || !alpha0.is_finite() {
        return Err(HeWalkError::InvalidConfig(format!(
            "coherent amplitude must be finite and >= 0, got {alpha0}"
        )));
    }
    if alpha0 == 0.0 {
        return LatticeState::basis(n_sites, 0);
    }
    let lnf = ln_factorials(n_sites);
    let ln_alpha = alpha0.ln();
    let logs: Vec<f64> = (0..n_sites)
        .map(|j| j as f64 * ln_alpha - 0.5 * lnf[j])
        .collect();
    let peak = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);

    // Tail weight of the discarded sites, from the Poisson weights
    // |c_j|² = e^{−α²} α^{2j}/j! of the untruncated state.
    let mean = alpha0 * alpha0;
    let kept: f64 = logs
        .iter()
        .map(|&l| (2.0 * l - mean).exp())
        .sum();
    let tail = (1.0 - kept).max(0.0);
    if tail > TRUNCATION_TOL {
        return Err(HeWalkError::Truncation {
            alpha0,
            n_sites,
            tail,
        });
    }

    let mut amps: Vec<f64> = logs.iter().map(|&l| (l - peak).exp()).collect();
    let norm = amps.iter().map(|a| a * a).sum::<f64>().sqrt();
    for a in &mut amps {
        *a /= norm;
    }
    LatticeState::from_amplitudes(amps.into_iter().map(|a| Complex64::new(a, 0.0)).collect())
}

/// Coin amplitudes of (|0⟩ + e^{iδ}|1⟩)/√2.
pub fn coin_state(delta: f64) -> (Complex64, Complex64) {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    (
        Complex64::new(r, 0.0),
        Complex64::from_polar(r, delta),
    )
}

/// Product initial state: superposed coin ⊗ coherent lattice.
pub fn make_initial(config: &WalkConfig) -> Result<CoinLatticeState> {
    config.validate()?;
    let lattice = coherent_lattice_state(config.alpha0, config.n_sites)?;
    let (c0, c1) = coin_state(config.delta);
    CoinLatticeState::new(lattice.scaled(c0), lattice.scaled(c1))
}

/// One lattice branch after projecting the coin, in canonical form: the
/// normalized state carries a real-positive amplitude at its peak site,
/// and the phase divided out is kept in `raw_phase`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalState {
    pub branch: u8,
    pub state: LatticeState,
    pub prob: f64,
    pub raw_phase: Complex64,
}

impl ConditionalState {
    /// The branch with its global phase restored (still unit norm).
    pub fn with_raw_phase(&self) -> LatticeState {
        self.state.scaled(self.raw_phase)
    }
}

fn extract_branch(comp: &LatticeState, branch: u8) -> Result<ConditionalState> {
    let prob = comp.norm_sqr();
    if prob < 1e-12 {
        return Err(HeWalkError::DegenerateBranch { branch, prob });
    }
    let normalized = comp.scaled(Complex64::new(1.0 / prob.sqrt(), 0.0));
    let peak = peak_site(&normalized);
    let peak_amp = normalized.amp(peak)?;
    let raw_phase = if peak_amp.norm() > 0.0 {
        peak_amp / peak_amp.norm()
    } else {
        Complex64::ONE
    };
    Ok(ConditionalState {
        branch,
        state: normalized.scaled(raw_phase.conj()),
        prob,
        raw_phase,
    })
}

/// Project the coin onto |0⟩ and |1⟩ and return both normalized lattice
/// branches with their projection probabilities.
pub fn extract_conditional(s: &CoinLatticeState) -> Result<(ConditionalState, ConditionalState)> {
    Ok((extract_branch(s.comp0(), 0)?, extract_branch(s.comp1(), 1)?))
}

/// Site of maximum |amplitude|; ties go to the lower index.
pub fn peak_site(state: &LatticeState) -> usize {
    let mut best = 0usize;
    let mut best_mag = f64::NEG_INFINITY;
    for (j, a) in state.amps().iter().enumerate() {
        let m = a.norm_sqr();
        if m > best_mag {
            best_mag = m;
            best = j;
        }
    }
    best
}

/// Local coherent-amplitude estimate α = √(j+1)·C_{j+1}/C_j. Exact on
/// coherent states; elsewhere it probes how coherent the state looks at
/// site j.
pub fn local_alpha(state: &LatticeState, j: usize) -> Result<Complex64> {
    let n = state.n_sites();
    if j + 1 >= n {
        return Err(HeWalkError::IndexOutOfRange { site: j + 1, n_sites: n });
    }
    let cj = state.amp(j)?;
    let mag = cj.norm();
    if mag <= RELIABILITY_FLOOR {
        return Err(HeWalkError::UnreliableSite {
            site: j,
            magnitude: mag,
            floor: RELIABILITY_FLOOR,
        });
    }
    Ok(((j + 1) as f64).sqrt() * state.amp(j + 1)? / cj)
}

/// Window-averaged amplitude estimate around the peak site.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AmplitudeEstimate {
    pub peak_site: usize,
    pub window: Vec<usize>,
    pub local_alphas: Vec<Complex64>,
    pub alpha_bar: Complex64,
}

/// Average local_alpha over `window_size` consecutive sites centered on
/// the peak. The window clips at the lattice edges and skips unreliable
/// sites instead of shifting its center.
pub fn estimate_alpha_bar(state: &LatticeState, window_size: usize) -> Result<AmplitudeEstimate> {
    if window_size < 2 {
        return Err(HeWalkError::InvalidConfig(format!(
            "window_size must be >= 2, got {window_size}"
        )));
    }
    let n = state.n_sites();
    let peak = peak_site(state);
    let half = window_size / 2;
    let lo = peak.saturating_sub(half);
    let hi = (lo + window_size - 1).min(n.saturating_sub(2));

    // Keep the contiguous run of reliable sites around the peak: once a
    // side hits an unreliable site the window stops there, so noise-floor
    // sites beyond a dead gap cannot pollute the average.
    let mut window = Vec::new();
    let mut local_alphas = Vec::new();
    let anchor = peak.min(hi);
    for j in (lo..=anchor).rev() {
        match local_alpha(state, j) {
            Ok(a) => {
                window.insert(0, j);
                local_alphas.insert(0, a);
            }
            Err(HeWalkError::UnreliableSite { .. }) => break,
            Err(e) => return Err(e),
        }
    }
    for j in anchor + 1..=hi {
        match local_alpha(state, j) {
            Ok(a) => {
                window.push(j);
                local_alphas.push(a);
            }
            Err(HeWalkError::UnreliableSite { .. }) => break,
            Err(e) => return Err(e),
        }
    }
    if window.len() < 2 {
        return Err(HeWalkError::EstimationWindow {
            reliable: window.len(),
        });
    }
    let sum: Complex64 = local_alphas.iter().sum();
    let alpha_bar = sum / local_alphas.len() as f64;
    Ok(AmplitudeEstimate {
        peak_site: peak,
        window,
        local_alphas,
        alpha_bar,
    })
}

/// The four phase behaviors of the conditional-state pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PhaseLabel {
    /// Both branches real with positive coefficients.
    Be1,
    /// Both branches real with negative coefficients.
    Be2,
    /// Both branches purely imaginary, opposite signs.
    Be3,
    /// General complex coefficients.
    Be4,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseClass {
    pub label: PhaseLabel,
    /// Relative phase between the branches, snapped to {0, π/2, π}.
    pub phi: f64,
    /// Overall phase of branch 0, snapped to {1, i, −1, −i}.
    pub global_sign: Complex64,
}

/// Relative tolerance for "this coefficient is real (imaginary)".
const PHASE_DUST: f64 = 1e-6;

#[derive(PartialEq, Eq, Clone, Copy)]
enum BranchKind {
    RealPos,
    RealNeg,
    ImagPos,
    ImagNeg,
    Complex,
}

fn branch_kind(amps: &[Complex64]) -> BranchKind {
    let peak = amps.iter().map(|a| a.norm()).fold(0.0, f64::max);
    let sig: Vec<&Complex64> = amps
        .iter()
        .filter(|a| a.norm() > PHASE_DUST * peak)
        .collect();
    let all_real = sig.iter().all(|a| a.im.abs() < PHASE_DUST * a.norm());
    if all_real {
        if sig.iter().all(|a| a.re > 0.0) {
            return BranchKind::RealPos;
        }
        if sig.iter().all(|a| a.re < 0.0) {
            return BranchKind::RealNeg;
        }
        return BranchKind::Complex;
    }
    let all_imag = sig.iter().all(|a| a.re.abs() < PHASE_DUST * a.norm());
    if all_imag {
        if sig.iter().all(|a| a.im > 0.0) {
            return BranchKind::ImagPos;
        }
        if sig.iter().all(|a| a.im < 0.0) {
            return BranchKind::ImagNeg;
        }
    }
    BranchKind::Complex
}

fn snap_quarter_turn(z: Complex64) -> (i32, Complex64) {
    // Nearest of {1, i, −1, −i} and its quarter-turn count.
    let k = (z.arg() / std::f64::consts::FRAC_PI_2).round().rem_euclid(4.0) as i32 % 4;
    let snapped = match k {
        0 => Complex64::ONE,
        1 => Complex64::I,
        2 => -Complex64::ONE,
        _ => -Complex64::I,
    };
    (k, snapped)
}

/// Classify the pair of conditional states by the phase structure of
/// their raw (pre-normalization-phase) coefficients.
pub fn classify_phase(c0: &ConditionalState, c1: &ConditionalState) -> PhaseClass {
    let raw0 = c0.with_raw_phase();
    let raw1 = c1.with_raw_phase();
    let k0 = branch_kind(raw0.amps());
    let k1 = branch_kind(raw1.amps());

    let label = match (k0, k1) {
        (BranchKind::RealPos, BranchKind::RealPos) => PhaseLabel::Be1,
        (BranchKind::RealNeg, BranchKind::RealNeg) => PhaseLabel::Be2,
        (BranchKind::ImagPos, BranchKind::ImagNeg) | (BranchKind::ImagNeg, BranchKind::ImagPos) => {
            PhaseLabel::Be3
        }
        _ => PhaseLabel::Be4,
    };

    let (_, global_sign) = snap_quarter_turn(c0.raw_phase);
    let (krel, _) = snap_quarter_turn(c1.raw_phase / c0.raw_phase);
    // 3 quarter turns (−π/2) folds onto π/2: the reported set is {0, π/2, π}.
    let phi = match krel {
        0 => 0.0,
        2 => std::f64::consts::PI,
        _ => std::f64::consts::FRAC_PI_2,
    };
    PhaseClass {
        label,
        phi,
        global_sign,
    }
}

/// Relative phases tried when maximizing the fidelity; e^{−iφ} over this
/// set covers all four quarter turns.
pub const PHI_CANDIDATES: [f64; 4] = [
    0.0,
    std::f64::consts::FRAC_PI_2,
    std::f64::consts::PI,
    3.0 * std::f64::consts::FRAC_PI_2,
];

/// Trace fidelity of the conditional pair against target coherent
/// states |a1⟩, |a2⟩ at a fixed relative phase:
/// F = (1/4)·|⟨ψ₀|a1⟩ + e^{−iφ}⟨ψ₁|a2⟩|², with the raw phases restored
/// on the bra side.
pub fn fidelity_he(
    c0: &ConditionalState,
    c1: &ConditionalState,
    a1: f64,
    a2: f64,
    phi: f64,
) -> Result<f64> {
    let n = c0.state.n_sites();
    let t1 = coherent_lattice_state(a1.abs(), n)?;
    let t2 = coherent_lattice_state(a2.abs(), n)?;
    let z0 = crate::state::inner_product(&c0.with_raw_phase(), &t1)?;
    let z1 = crate::state::inner_product(&c1.with_raw_phase(), &t2)?;
    let f = 0.25 * (z0 + Complex64::from_polar(1.0, -phi) * z1).norm_sqr();
    Ok(f.clamp(0.0, 1.0 + 1e-10).min(1.0))
}

/// `fidelity_he` maximized over the discrete relative-phase candidates.
/// Returns the best fidelity and the phase that achieved it.
pub fn fidelity_he_max(
    c0: &ConditionalState,
    c1: &ConditionalState,
    a1: f64,
    a2: f64,
) -> Result<(f64, f64)> {
    let mut best = (f64::NEG_INFINITY, 0.0);
    for phi in PHI_CANDIDATES {
        let f = fidelity_he(c0, c1, a1, a2, phi)?;
        if f > best.0 {
            best = (f, phi);
        }
    }
    Ok(best)
}
