//! Bosonic displacement on the truncated lattice, used to symmetrize
//! the two conditional branches around zero amplitude.
//!
//! Sites are read as Fock indices, so the lattice carries the standard
//! ladder operators and D(β) = exp(β a† − β* a) is a dense N×N matrix
//! exponential. The generator is anti-Hermitian, so the truncated D is
//! exactly unitary; truncation shows up as weight reaching the top edge
//! of the lattice, which is checked after application.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::analysis::{estimate_alpha_bar, AmplitudeEstimate, ConditionalState, DEFAULT_WINDOW};
use crate::error::{HeWalkError, Result};
use crate::state::LatticeState;

/// Tail weight at the truncation edge above which a displaced state is
/// rejected as untrustworthy.
pub const DISPLACEMENT_TAIL_TOL: f64 = 1e-6;

/// Dense matrix of D(β) = exp(β a† − β* a) on the N-site truncation.
pub fn displacement_matrix(beta: Complex64, n_sites: usize) -> DMatrix<Complex64> {
    let mut gen = DMatrix::zeros(n_sites, n_sites);
    for j in 0..n_sites - 1 {
        let root = ((j + 1) as f64).sqrt();
        // a†|j⟩ = √(j+1)|j+1⟩ contributes β to (j+1, j);
        // a|j+1⟩ = √(j+1)|j⟩ contributes −β* to (j, j+1).
        gen[(j + 1, j)] = beta * root;
        gen[(j, j + 1)] = -beta.conj() * root;
    }
    gen.exp()
}

fn mean_site(amps: &[Complex64]) -> f64 {
    amps.iter()
        .enumerate()
        .map(|(j, a)| j as f64 * a.norm_sqr())
        .sum()
}

fn ladder_expectation(amps: &[Complex64]) -> Complex64 {
    // ⟨a⟩ = Σⱼ √(j+1)·conj(C_j)·C_{j+1}
    amps.windows(2)
        .enumerate()
        .map(|(j, w)| ((j + 1) as f64).sqrt() * w[0].conj() * w[1])
        .sum()
}

/// Apply D(β) to a lattice state. Two truncation-artifact checks guard
/// the result: weight reaching the top edge, and violation of the exact
/// first-moment identity ⟨n̂⟩_out = ⟨n̂⟩_in + 2Re(β*⟨a⟩_in) + |β|² —
/// the truncated generator folds a packet that does not fit back into
/// the lattice instead of leaking, which edge weight alone misses.
pub fn displace(state: &LatticeState, beta: Complex64) -> Result<LatticeState> {
    let n = state.n_sites();
    let d = displacement_matrix(beta, n);
    let v = nalgebra::DVector::from_column_slice(state.amps());
    let out = d * v;
    let amps: Vec<Complex64> = out.iter().copied().collect();

    let tail: f64 = amps[n.saturating_sub(2)..].iter().map(|a| a.norm_sqr()).sum();
    if tail > DISPLACEMENT_TAIL_TOL {
        return Err(HeWalkError::DisplacementTruncation { tail });
    }
    let predicted = mean_site(state.amps())
        + 2.0 * (beta.conj() * ladder_expectation(state.amps())).re
        + beta.norm_sqr();
    let deviation = (mean_site(&amps) - predicted).abs();
    if deviation > 1e-6 * (1.0 + predicted.abs()) {
        return Err(HeWalkError::DisplacementTruncation { tail: deviation });
    }
    LatticeState::from_amplitudes(amps)
}

/// Integer-site shift with relabeling: amplitudes move down by `shift`
/// sites and the vacated top sites are zeroed. This is what "shifting
/// the lattice points and relabelling them" literally does; it is not
/// the bosonic displacement and the two differ on Fock-indexed states.
pub fn relabel_shift(state: &LatticeState, shift: usize) -> Result<LatticeState> {
    let n = state.n_sites();
    let lost: f64 = state.amps()[..shift.min(n)].iter().map(|a| a.norm_sqr()).sum();
    if lost > DISPLACEMENT_TAIL_TOL {
        return Err(HeWalkError::DisplacementTruncation { tail: lost });
    }
    let mut amps = vec![Complex64::ZERO; n];
    for j in shift..n {
        amps[j - shift] = state.amps()[j];
    }
    LatticeState::from_amplitudes(amps)
}

/// Result of centering the branch pair around zero amplitude.
#[derive(Debug, Clone)]
pub struct Symmetrized {
    pub branch0: LatticeState,
    pub branch1: LatticeState,
    pub alpha_sym: f64,
    pub beta: Complex64,
    /// Post-displacement estimates of the two branch amplitudes. `None`
    /// when a branch lands so close to the vacuum that the estimation
    /// window has fewer than 2 reliable sites.
    pub est0: Option<AmplitudeEstimate>,
    pub est1: Option<AmplitudeEstimate>,
}

fn try_estimate(state: &LatticeState) -> Result<Option<AmplitudeEstimate>> {
    match estimate_alpha_bar(state, DEFAULT_WINDOW) {
        Ok(e) => Ok(Some(e)),
        Err(HeWalkError::EstimationWindow { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Displace both branches by β = −(ᾱ₁ + ᾱ₂)/2 so their amplitudes land
/// at ±alpha_sym with alpha_sym = (ᾱ₁ − ᾱ₂)/2.
pub fn symmetrize(
    c0: &ConditionalState,
    c1: &ConditionalState,
    est1: &AmplitudeEstimate,
    est2: &AmplitudeEstimate,
) -> Result<Symmetrized> {
    let a1 = est1.alpha_bar;
    let a2 = est2.alpha_bar;
    if a2.norm() == 0.0 {
        return Err(HeWalkError::ZeroReferenceAmplitude);
    }
    // g = ᾱ₁/ᾱ₂, β = −(ᾱ₂ + gᾱ₂)/2 = −(ᾱ₁ + ᾱ₂)/2.
    let g = a1 / a2;
    let beta = -(a2 + g * a2) / 2.0;
    let alpha_sym = ((g * a2 - a2) / 2.0).re;

    let branch0 = displace(&c0.state, beta)?;
    let branch1 = displace(&c1.state, beta)?;
    let est0 = try_estimate(&branch0)?;
    let est1 = try_estimate(&branch1)?;
    Ok(Symmetrized {
        branch0,
        branch1,
        alpha_sym,
        beta,
        est0,
        est1,
    })
}
