use thiserror::Error;

/// Errors produced by state construction, walk evolution and analysis.
#[derive(Debug, Error)]
pub enum HeWalkError {
    #[error("dimension mismatch: {left} vs {right} sites")]
    DimensionMismatch { left: usize, right: usize },

    #[error("site index {site} out of range for lattice of {n_sites} sites")]
    IndexOutOfRange { site: usize, n_sites: usize },

    #[error("non-finite amplitude at site {site}")]
    NonFiniteAmplitude { site: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error(
        "boundary leakage: amplitude {amplitude:.3e} near lattice edge exceeds tolerance {tol:.3e} \
         (lattice too small for this evolution)"
    )]
    BoundaryLeakage { amplitude: f64, tol: f64 },

    #[error(
        "coherent-state truncation: tail weight {tail:.3e} beyond {n_sites} sites exceeds 1e-10 \
         for alpha0 = {alpha0}"
    )]
    Truncation {
        alpha0: f64,
        n_sites: usize,
        tail: f64,
    },

    #[error("degenerate branch {branch}: projection probability {prob:.3e} below 1e-12")]
    DegenerateBranch { branch: u8, prob: f64 },

    #[error("unreliable site {site}: |C_j| = {magnitude:.3e} below floor {floor:.3e}")]
    UnreliableSite {
        site: usize,
        magnitude: f64,
        floor: f64,
    },

    #[error("amplitude estimation failed: only {reliable} reliable sites in window (need >= 2)")]
    EstimationWindow { reliable: usize },

    #[error(
        "displacement truncation: displaced state carries tail weight {tail:.3e} at the \
         truncation edge (> 1e-6)"
    )]
    DisplacementTruncation { tail: f64 },

    #[error("symmetrization requires a nonzero second amplitude estimate")]
    ZeroReferenceAmplitude,

    #[error("classical walk support ({support} sites) exceeds lattice of {n_sites} sites")]
    SupportExceedsLattice { support: usize, n_sites: usize },

    #[error("{context}: {source}")]
    WithContext {
        context: String,
        #[source]
        source: Box<HeWalkError>,
    },
}

impl HeWalkError {
    /// Wrap an error with run-configuration context for diagnostics.
    pub fn with_context(self, context: impl Into<String>) -> Self {
        HeWalkError::WithContext {
            context: context.into(),
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, HeWalkError>;
