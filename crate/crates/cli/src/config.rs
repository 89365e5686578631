//! Run configuration: flat JSON file with the WalkConfig fields, every
//! one of which a CLI flag can override.

use std::path::Path;

use clap::Args;
use hewalk::{Axis, BoundaryKind, WalkConfig};

use crate::angle::parse_angle;

#[derive(Debug, Clone, Args)]
pub struct ConfigArgs {
    /// JSON config file with WalkConfig fields; flags override it.
    #[arg(long)]
    pub config: Option<std::path::PathBuf>,

    /// Lattice size N.
    #[arg(long = "n-sites")]
    pub n_sites: Option<usize>,

    /// Initial coherent amplitude.
    #[arg(long)]
    pub alpha0: Option<f64>,

    /// Coin relative phase δ (radians or 'pi' suffix, e.g. 0.5pi).
    #[arg(long, value_parser = parse_angle)]
    pub delta: Option<f64>,

    /// First coin angle θ₁ (radians or 'pi' suffix).
    #[arg(long, value_parser = parse_angle)]
    pub theta1: Option<f64>,

    /// Second coin angle θ₂ (radians or 'pi' suffix, e.g. -0.5pi).
    #[arg(long, value_parser = parse_angle)]
    pub theta2: Option<f64>,

    /// Coin rotation axis: x, y or z.
    #[arg(long)]
    pub axis: Option<String>,

    /// Number of walk steps t.
    #[arg(long)]
    pub steps: Option<usize>,

    /// Boundary handling: cyclic or hard-wall.
    #[arg(long)]
    pub boundary: Option<String>,

    /// Leakage tolerance for the boundary monitor. Small alpha0 runs
    /// put coherent-tail weight at the vacuum end of the lattice and
    /// need this raised above that tail (e.g. 1e-3 for alpha0 = 4).
    #[arg(long = "leakage-tol")]
    pub leakage_tol: Option<f64>,

    /// Averaging window size for the amplitude estimate.
    #[arg(long, default_value_t = hewalk::DEFAULT_WINDOW)]
    pub window: usize,
}

fn parse_axis(s: &str) -> Result<Axis, String> {
    match s.to_ascii_lowercase().as_str() {
        "x" => Ok(Axis::X),
        "y" => Ok(Axis::Y),
        "z" => Ok(Axis::Z),
        other => Err(format!("unknown axis '{other}' (expected x, y or z)")),
    }
}

fn parse_boundary(s: &str) -> Result<BoundaryKind, String> {
    match s.to_ascii_lowercase().as_str() {
        "cyclic" => Ok(BoundaryKind::Cyclic),
        "hard-wall" | "hardwall" => Ok(BoundaryKind::HardWall),
        other => Err(format!(
            "unknown boundary '{other}' (expected cyclic or hard-wall)"
        )),
    }
}

impl ConfigArgs {
    /// Resolve the effective config: defaults, then the JSON file, then
    /// the individual flags.
    pub fn resolve(&self) -> Result<WalkConfig, String> {
        let mut cfg = match &self.config {
            Some(path) => load_config(path)?,
            None => WalkConfig::default(),
        };
        if let Some(v) = self.n_sites {
            cfg.n_sites = v;
        }
        if let Some(v) = self.alpha0 {
            cfg.alpha0 = v;
        }
        if let Some(v) = self.delta {
            cfg.delta = v;
        }
        if let Some(v) = self.theta1 {
            cfg.theta1 = v;
        }
        if let Some(v) = self.theta2 {
            cfg.theta2 = v;
        }
        if let Some(v) = &self.axis {
            cfg.axis = parse_axis(v)?;
        }
        if let Some(v) = self.steps {
            cfg.steps = v;
        }
        if let Some(v) = &self.boundary {
            cfg.boundary = parse_boundary(v)?;
        }
        if let Some(v) = self.leakage_tol {
            cfg.leakage_tol = v;
        }
        cfg.validate().map_err(|e| e.to_string())?;
        if cfg.delta_outside_recommended_range() {
            eprintln!(
                "warning: delta = {} is outside [0, pi/2]; accepted, but the \
                 intended symmetric construction assumes that range",
                cfg.delta
            );
        }
        Ok(cfg)
    }
}

pub fn load_config(path: &Path) -> Result<WalkConfig, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("bad config {}: {e}", path.display()))
}
