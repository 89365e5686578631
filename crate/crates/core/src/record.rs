//! End-to-end run pipeline and its serializable result record.
//!
//! Site indices inside the crate are 0-based Fock indices; everything
//! in `RunRecord` that names a site uses the 1-based convention of the
//! published figures (internal index + 1).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analysis::{
    classify_phase, estimate_alpha_bar, extract_conditional, fidelity_he_max, make_initial,
    PhaseLabel, DEFAULT_WINDOW,
};
use crate::displacement::symmetrize;
use crate::error::Result;
use crate::state::{CoinLatticeState, WalkConfig};
use crate::walk::{evolve, Boundary, StepUnitary, WalkKind};

/// One row of the per-site amplitude table (1-based site labels).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SiteRow {
    pub site: usize,
    pub re0: f64,
    pub im0: f64,
    pub re1: f64,
    pub im1: f64,
    pub prob: f64,
}

/// Everything measured on one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub config: WalkConfig,
    pub window_size: usize,
    pub alpha_bar_1: Complex64,
    pub alpha_bar_2: Complex64,
    /// Peak sites of the two branches, 1-based.
    pub peak_sites: (usize, usize),
    pub prob_pair: (f64, f64),
    pub fidelity: f64,
    /// Relative phase that maximized the fidelity.
    pub phi: f64,
    pub phase_class: PhaseLabel,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_sym: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distributions: Option<Vec<SiteRow>>,
}

/// Which optional outputs a run should produce.
#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    pub symmetrize: bool,
    pub include_distributions: bool,
}

/// The split-step unitary described by a config.
pub fn step_unitary(config: &WalkConfig) -> StepUnitary {
    StepUnitary {
        kind: WalkKind::Ssqw,
        theta1: config.theta1,
        theta2: config.theta2,
        axis: config.axis,
        boundary: Boundary {
            kind: config.boundary,
            leakage_tol: config.leakage_tol,
        },
    }
}

fn site_rows(s: &CoinLatticeState) -> Vec<SiteRow> {
    (0..s.n_sites())
        .map(|j| {
            let a0 = s.comp0().amp(j).unwrap();
            let a1 = s.comp1().amp(j).unwrap();
            SiteRow {
                site: j + 1,
                re0: a0.re,
                im0: a0.im,
                re1: a1.re,
                im1: a1.im,
                prob: a0.norm_sqr() + a1.norm_sqr(),
            }
        })
        .collect()
}

/// Run the full pipeline: initialize, evolve, split into conditional
/// branches, estimate both coherent amplitudes, classify the phase
/// structure, and score the fidelity against the estimated targets.
pub fn run_pipeline(
    config: &WalkConfig,
    window_size: usize,
    options: RunOptions,
) -> Result<RunRecord> {
    let context = format!(
        "run(n_sites={}, alpha0={}, delta={}, theta1={}, theta2={}, steps={})",
        config.n_sites, config.alpha0, config.delta, config.theta1, config.theta2, config.steps
    );
    run_pipeline_inner(config, window_size, options).map_err(|e| e.with_context(context))
}

fn run_pipeline_inner(
    config: &WalkConfig,
    window_size: usize,
    options: RunOptions,
) -> Result<RunRecord> {
    let initial = make_initial(config)?;
    let evolved = evolve(&initial, &step_unitary(config), config.steps)?;
    let (c0, c1) = extract_conditional(&evolved)?;
    let est1 = estimate_alpha_bar(&c0.state, window_size)?;
    let est2 = estimate_alpha_bar(&c1.state, window_size)?;
    let phase_class = classify_phase(&c0, &c1);
    let (fidelity, phi) =
        fidelity_he_max(&c0, &c1, est1.alpha_bar.norm(), est2.alpha_bar.norm())?;

    let alpha_sym = if options.symmetrize {
        Some(symmetrize(&c0, &c1, &est1, &est2)?.alpha_sym)
    } else {
        None
    };
    let distributions = options.include_distributions.then(|| site_rows(&evolved));

    Ok(RunRecord {
        config: config.clone(),
        window_size,
        alpha_bar_1: est1.alpha_bar,
        alpha_bar_2: est2.alpha_bar,
        peak_sites: (est1.peak_site + 1, est2.peak_site + 1),
        prob_pair: (c0.prob, c1.prob),
        fidelity,
        phi,
        phase_class: phase_class.label,
        alpha_sym,
        distributions,
    })
}

/// `run_pipeline` with the default 40-site window and no extras.
pub fn run_default(config: &WalkConfig) -> Result<RunRecord> {
    run_pipeline(config, DEFAULT_WINDOW, RunOptions::default())
}
