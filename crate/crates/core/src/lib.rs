//! Split-step quantum walk simulator for generating hybrid-entangled
//! coin-lattice states and characterizing the conditional lattice
//! branches as coherent states.
//!
//! Pipeline: a coherent state on the lattice with a superposed coin is
//! evolved under the split-step unitary, the coin is projected onto its
//! two outcomes, each conditional branch is fitted with the local
//! amplitude estimator α = √(j+1)·C_{j+1}/C_j averaged over a window
//! around the peak, and the pair is scored by trace fidelity against
//! the targeted hybrid-entangled state.

pub mod analysis;
pub mod displacement;
pub mod error;
pub mod record;
pub mod state;
pub mod stats;
pub mod walk;

pub use analysis::{
    classify_phase, coherent_lattice_state, coin_state, estimate_alpha_bar, extract_conditional,
    fidelity_he, fidelity_he_max, local_alpha, make_initial, peak_site, AmplitudeEstimate,
    ConditionalState, PhaseClass, PhaseLabel, DEFAULT_WINDOW,
};
pub use displacement::{displace, displacement_matrix, relabel_shift, symmetrize, Symmetrized};
pub use error::{HeWalkError, Result};
pub use record::{run_default, run_pipeline, step_unitary, RunOptions, RunRecord, SiteRow};
pub use state::{
    inner_product, Axis, BoundaryKind, CoinLatticeState, LatticeState, WalkConfig,
};
pub use stats::{classical_distribution, log_log_slope, variance, walk_distribution, Distribution};
pub use walk::{
    apply_rotation, apply_shift_full, apply_shift_t0, apply_shift_t1, evolve, step, Boundary,
    StepUnitary, WalkKind,
};
