//! Browser bindings: three interactive operations over JSON strings so
//! the page needs no generated TypeScript glue beyond wasm-bindgen's.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use hewalk::{
    classical_distribution, evolve, extract_conditional, make_initial, step, step_unitary,
    variance, walk_distribution, Axis, Boundary, CoinLatticeState, LatticeState, StepUnitary,
    WalkConfig, WalkKind,
};

// JsValue cannot exist off-wasm, so the logic lives in plain-String
// impl functions that the host-side tests exercise directly.
fn err_s(e: impl std::fmt::Display) -> String {
    e.to_string()
}

#[derive(Serialize)]
struct WalkResult {
    record: hewalk::RunRecord,
    /// Per-site walker probability after evolution (1-based plotting
    /// handled by the page).
    probs: Vec<f64>,
    /// Normalized conditional branch probabilities per site.
    branch0: Vec<f64>,
    branch1: Vec<f64>,
}

/// Run the full pipeline for a JSON WalkConfig and return the record
/// plus plot-ready distributions, serialized as JSON.
#[wasm_bindgen]
pub fn run_walk(config_json: &str) -> Result<String, JsValue> {
    run_walk_impl(config_json).map_err(|e| JsValue::from_str(&e))
}

fn run_walk_impl(config_json: &str) -> Result<String, String> {
    let config: WalkConfig = serde_json::from_str(config_json).map_err(err_s)?;
    let record = hewalk::run_default(&config).map_err(err_s)?;
    let evolved = evolve(
        &make_initial(&config).map_err(err_s)?,
        &step_unitary(&config),
        config.steps,
    )
    .map_err(err_s)?;
    let (c0, c1) = extract_conditional(&evolved).map_err(err_s)?;
    let result = WalkResult {
        record,
        probs: (0..config.n_sites)
            .map(|j| evolved.probability_at(j).unwrap())
            .collect(),
        branch0: c0.state.amps().iter().map(|a| a.norm_sqr()).collect(),
        branch1: c1.state.amps().iter().map(|a| a.norm_sqr()).collect(),
    };
    serde_json::to_string(&result).map_err(err_s)
}

#[derive(Serialize)]
struct SweepPoint {
    value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    fidelity: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

/// Fidelity versus one swept parameter ("alpha0" or "steps"); values
/// come in as a JSON array of numbers.
#[wasm_bindgen]
pub fn sweep_fidelity(config_json: &str, param: &str, values_json: &str) -> Result<String, JsValue> {
    sweep_fidelity_impl(config_json, param, values_json).map_err(|e| JsValue::from_str(&e))
}

fn sweep_fidelity_impl(config_json: &str, param: &str, values_json: &str) -> Result<String, String> {
    let base: WalkConfig = serde_json::from_str(config_json).map_err(err_s)?;
    let values: Vec<f64> = serde_json::from_str(values_json).map_err(err_s)?;
    let mut points = Vec::with_capacity(values.len());
    for v in values {
        let mut cfg = base.clone();
        match param {
            "alpha0" => cfg.alpha0 = v,
            "steps" => cfg.steps = v.round() as usize,
            other => return Err(format!("unknown sweep parameter '{other}'")),
        }
        match hewalk::run_default(&cfg) {
            Ok(rec) => points.push(SweepPoint {
                value: v,
                fidelity: Some(rec.fidelity),
                error: None,
            }),
            Err(e) => points.push(SweepPoint {
                value: v,
                fidelity: None,
                error: Some(e.to_string()),
            }),
        }
    }
    serde_json::to_string(&points).map_err(err_s)
}

#[derive(Serialize)]
struct VariancePoint {
    t: usize,
    quantum: f64,
    classical: f64,
}

/// Variance growth of the conventional walk versus the classical
/// random walk, t = 1..=t_max.
#[wasm_bindgen]
pub fn variance_series(t_max: usize) -> Result<String, JsValue> {
    variance_series_impl(t_max).map_err(|e| JsValue::from_str(&e))
}

fn variance_series_impl(t_max: usize) -> Result<String, String> {
    let t_max = t_max.clamp(1, 300);
    let n = 2 * t_max + 101;
    let origin = n / 2;
    let r = num_complex::Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let i = num_complex::Complex64::new(0.0, std::f64::consts::FRAC_1_SQRT_2);
    let basis = LatticeState::basis(n, origin).map_err(err_s)?;
    let mut s = CoinLatticeState::new(basis.clone().scaled(r), basis.scaled(i)).map_err(err_s)?;
    let u = StepUnitary {
        kind: WalkKind::Dtqw,
        theta1: std::f64::consts::FRAC_PI_2,
        theta2: 0.0,
        axis: Axis::Y,
        boundary: Boundary::cyclic(1.0),
    };
    let mut out = Vec::with_capacity(t_max);
    for t in 1..=t_max {
        step(&mut s, &u).map_err(err_s)?;
        out.push(VariancePoint {
            t,
            quantum: variance(&walk_distribution(&s, t, origin)),
            classical: variance(&classical_distribution(t, n).map_err(err_s)?),
        });
    }
    serde_json::to_string(&out).map_err(err_s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn run_walk_round_trip() {
        let cfg = serde_json::to_string(&WalkConfig {
            steps: 4,
            ..WalkConfig::default()
        })
        .unwrap();
        let out = run_walk_impl(&cfg).unwrap();
        let parsed: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(parsed["probs"].as_array().unwrap().len(), 200);
        assert!(parsed["record"]["fidelity"].as_f64().unwrap() > 0.99);
    }

    #[test]
    fn sweep_reports_errors_in_row() {
        let cfg = serde_json::to_string(&WalkConfig::default()).unwrap();
        let out = sweep_fidelity_impl(&cfg, "alpha0", "[10, 4]").unwrap();
        let parsed: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!(parsed[0]["fidelity"].as_f64().is_some());
        // alpha0=4 trips the boundary monitor at the default tolerance;
        // the point carries the error instead of failing the sweep.
        assert!(parsed[1]["error"].as_str().is_some());
    }

    #[test]
    fn variance_series_shapes() {
        let out = variance_series_impl(30).unwrap();
        let parsed: Vec<serde_json::Value> = serde_json::from_str(&out).unwrap();
        assert_eq!(parsed.len(), 30);
        let last = &parsed[29];
        assert!(last["quantum"].as_f64().unwrap() > last["classical"].as_f64().unwrap());
    }

    #[test]
    fn unknown_sweep_param_rejected() {
        let cfg = serde_json::to_string(&WalkConfig::default()).unwrap();
        assert!(sweep_fidelity_impl(&cfg, "bogus", "[1]").is_err());
    }
}
