//! The three subcommands: single runs, parameter sweeps, and figure
//! data export.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use hewalk::{
    classical_distribution, coherent_lattice_state, estimate_alpha_bar, evolve,
    extract_conditional, make_initial, run_pipeline, step, variance,
    walk_distribution, Axis, Boundary, CoinLatticeState, LatticeState, RunOptions, RunRecord,
    StepUnitary, WalkConfig, WalkKind, DEFAULT_WINDOW,
};

use crate::csv::{fmt_f64, state_rows, write_csv, STATE_HEADER};

pub type CmdResult<T> = Result<T, String>;

fn err_str(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Number of sweep workers: HEWALK_WORKERS overrides the detected
/// parallelism.
pub fn worker_count() -> usize {
    if let Ok(v) = std::env::var("HEWALK_WORKERS") {
        if let Ok(n) = v.parse::<usize>() {
            return n.max(1);
        }
    }
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

/// Run one configured pipeline, write the record as JSON and optionally
/// the per-site state table as CSV.
pub fn cmd_generate(
    config: &WalkConfig,
    window: usize,
    symmetrize: bool,
    out: Option<&Path>,
    csv: Option<&Path>,
) -> CmdResult<RunRecord> {
    let options = RunOptions {
        symmetrize,
        include_distributions: csv.is_some(),
    };
    let record = run_pipeline(config, window, options).map_err(err_str)?;
    if let Some(path) = csv {
        let rows = record.distributions.as_deref().unwrap_or(&[]);
        write_csv(path, &STATE_HEADER, &state_rows(rows)).map_err(err_str)?;
    }
    let json = serde_json::to_string_pretty(&record).map_err(err_str)?;
    match out {
        Some(path) => fs::write(path, json + "\n").map_err(err_str)?,
        None => println!("{json}"),
    }
    Ok(record)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SweepParam {
    Alpha0,
    Steps,
}

/// One sweep point: either a full record or the error that stopped it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepRow {
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub record: Option<RunRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

fn sweep_config(base: &WalkConfig, param: SweepParam, value: f64) -> WalkConfig {
    let mut cfg = base.clone();
    match param {
        SweepParam::Alpha0 => cfg.alpha0 = value,
        SweepParam::Steps => cfg.steps = value.round() as usize,
    }
    cfg
}

/// Run one pipeline per value. Points execute concurrently but the
/// returned rows follow the input order.
pub fn cmd_sweep(
    base: &WalkConfig,
    param: SweepParam,
    values: &[f64],
    window: usize,
) -> CmdResult<Vec<SweepRow>> {
    if values.is_empty() {
        return Err("sweep needs at least one value".into());
    }
    let workers = worker_count().min(values.len());
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<SweepRow>>> = values.iter().map(|_| Mutex::new(None)).collect();

    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= values.len() {
                    break;
                }
                let cfg = sweep_config(base, param, values[i]);
                let row = match run_pipeline(&cfg, window, RunOptions::default()) {
                    Ok(record) => SweepRow {
                        value: values[i],
                        record: Some(record),
                        error: None,
                    },
                    Err(e) => SweepRow {
                        value: values[i],
                        record: None,
                        error: Some(e.to_string()),
                    },
                };
                *slots[i].lock().unwrap() = Some(row);
            });
        }
    });

    Ok(slots
        .into_iter()
        .map(|m| m.into_inner().unwrap().expect("sweep point not filled"))
        .collect())
}

pub fn write_sweep(rows: &[SweepRow], out: Option<&Path>) -> CmdResult<()> {
    let json = serde_json::to_string_pretty(rows).map_err(err_str)?;
    match out {
        Some(path) => fs::write(path, json + "\n").map_err(err_str)?,
        None => println!("{json}"),
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct ManifestPanel {
    file: String,
    columns: Vec<String>,
    description: String,
}

#[derive(Debug, Serialize)]
struct Manifest {
    figure: String,
    panels: Vec<ManifestPanel>,
}

struct FigureWriter<'a> {
    dir: &'a Path,
    panels: Vec<ManifestPanel>,
}

impl<'a> FigureWriter<'a> {
    fn new(dir: &'a Path) -> Self {
        FigureWriter {
            dir,
            panels: Vec::new(),
        }
    }

    fn emit(
        &mut self,
        name: &str,
        header: &[&str],
        rows: &[Vec<String>],
        description: &str,
    ) -> CmdResult<PathBuf> {
        let path = self.dir.join(name);
        write_csv(&path, header, rows).map_err(err_str)?;
        self.panels.push(ManifestPanel {
            file: name.to_string(),
            columns: header.iter().map(|s| s.to_string()).collect(),
            description: description.to_string(),
        });
        Ok(path)
    }

    fn finish(self, figure: &str) -> CmdResult<()> {
        let manifest = Manifest {
            figure: figure.to_string(),
            panels: self.panels,
        };
        let json = serde_json::to_string_pretty(&manifest).map_err(err_str)?;
        fs::write(self.dir.join("manifest.json"), json + "\n").map_err(err_str)
    }
}

fn headline_config(steps: usize) -> WalkConfig {
    WalkConfig {
        steps,
        ..WalkConfig::default()
    }
}

fn conditional_pair(
    config: &WalkConfig,
) -> CmdResult<(hewalk::ConditionalState, hewalk::ConditionalState)> {
    let initial = make_initial(config).map_err(err_str)?;
    let evolved = evolve(&initial, &hewalk::step_unitary(config), config.steps).map_err(err_str)?;
    extract_conditional(&evolved).map_err(err_str)
}

fn branch_prob_rows(c0: &LatticeState, c1: &LatticeState) -> Vec<Vec<String>> {
    (0..c0.n_sites())
        .map(|j| {
            vec![
                (j + 1).to_string(),
                fmt_f64(c0.amp(j).unwrap().norm_sqr()),
                fmt_f64(c1.amp(j).unwrap().norm_sqr()),
            ]
        })
        .collect()
}

fn local_alpha_rows(c0: &LatticeState, c1: &LatticeState, window: usize) -> Vec<Vec<String>> {
    let mut rows = Vec::new();
    for (branch, state) in [(0usize, c0), (1, c1)] {
        if let Ok(est) = estimate_alpha_bar(state, window) {
            for (j, a) in est.window.iter().zip(&est.local_alphas) {
                rows.push(vec![
                    branch.to_string(),
                    (j + 1).to_string(),
                    fmt_f64(a.re),
                    fmt_f64(a.im),
                ]);
            }
        }
    }
    rows
}

fn fig2(w: &mut FigureWriter) -> CmdResult<()> {
    let initial = make_initial(&headline_config(0)).map_err(err_str)?;
    let rows: Vec<Vec<String>> = (0..initial.n_sites())
        .map(|j| {
            vec![
                (j + 1).to_string(),
                fmt_f64(initial.probability_at(j).unwrap()),
            ]
        })
        .collect();
    w.emit(
        "fig2a.csv",
        &["site", "prob"],
        &rows,
        "initial lattice distribution, alpha0=10, N=200",
    )?;

    for (steps, dist_name, scatter_name, dist_panel, scatter_panel) in [
        (20usize, "fig2b.csv", "fig2c.csv", "b", "c"),
        (60, "fig2d.csv", "fig2e.csv", "d", "e"),
    ] {
        let (c0, c1) = conditional_pair(&headline_config(steps))?;
        w.emit(
            dist_name,
            &["site", "prob0", "prob1"],
            &branch_prob_rows(&c0.state, &c1.state),
            &format!("panel {dist_panel}: conditional branch distributions at t={steps}"),
        )?;
        w.emit(
            scatter_name,
            &["branch", "site", "alpha_re", "alpha_im"],
            &local_alpha_rows(&c0.state, &c1.state, DEFAULT_WINDOW),
            &format!("panel {scatter_panel}: local amplitude estimates at t={steps}"),
        )?;
    }
    Ok(())
}

fn fig3(w: &mut FigureWriter) -> CmdResult<()> {
    let config = headline_config(20);
    let (c0, c1) = conditional_pair(&config)?;
    let e0 = estimate_alpha_bar(&c0.state, DEFAULT_WINDOW).map_err(err_str)?;
    let e1 = estimate_alpha_bar(&c1.state, DEFAULT_WINDOW).map_err(err_str)?;
    let t0 = coherent_lattice_state(e0.alpha_bar.norm(), config.n_sites).map_err(err_str)?;
    let t1 = coherent_lattice_state(e1.alpha_bar.norm(), config.n_sites).map_err(err_str)?;
    let rows: Vec<Vec<String>> = (0..config.n_sites)
        .map(|j| {
            vec![
                (j + 1).to_string(),
                fmt_f64(c0.state.amp(j).unwrap().re),
                fmt_f64(c0.state.amp(j).unwrap().im),
                fmt_f64(t0.amp(j).unwrap().re),
                fmt_f64(c1.state.amp(j).unwrap().re),
                fmt_f64(c1.state.amp(j).unwrap().im),
                fmt_f64(t1.amp(j).unwrap().re),
            ]
        })
        .collect();
    w.emit(
        "fig3.csv",
        &["site", "gen0_re", "gen0_im", "target0", "gen1_re", "gen1_im", "target1"],
        &rows,
        "generated vs targeted coherent states, both branches, t=20",
    )?;
    Ok(())
}

fn fig4(w: &mut FigureWriter) -> CmdResult<()> {
    // Small alpha0 starts the wavepacket near the vacuum end and the walk
    // pushes a real tail into the seam (amplitude 3.1e-2 for alpha0=4
    // over 20 steps), so the monitor needs headroom for this sweep.
    let base = WalkConfig {
        leakage_tol: 5e-2,
        ..headline_config(20)
    };
    let alpha_rows: CmdResult<Vec<Vec<String>>> = [4.0, 6.0, 8.0, 10.0]
        .iter()
        .map(|&a0| {
            let cfg = WalkConfig {
                alpha0: a0,
                ..base.clone()
            };
            let rec = hewalk::run_default(&cfg).map_err(err_str)?;
            Ok(vec![fmt_f64(a0), fmt_f64(rec.fidelity)])
        })
        .collect();
    w.emit(
        "fig4a.csv",
        &["alpha0", "fidelity"],
        &alpha_rows?,
        "fidelity vs initial coherent amplitude, t=20",
    )?;

    let mut t_rows = Vec::new();
    for t in [20usize, 30, 40, 50, 60] {
        let mut row = vec![t.to_string()];
        for a0 in [6.0, 10.0] {
            let cfg = WalkConfig {
                alpha0: a0,
                steps: t,
                leakage_tol: 1e-2,
                ..WalkConfig::default()
            };
            let rec = hewalk::run_default(&cfg).map_err(err_str)?;
            row.push(fmt_f64(rec.fidelity));
        }
        t_rows.push(row);
    }
    w.emit(
        "fig4b.csv",
        &["steps", "fidelity_alpha6", "fidelity_alpha10"],
        &t_rows,
        "fidelity vs time steps for alpha0 = 6 and 10",
    )?;
    Ok(())
}

fn dtqw_start(n: usize, origin: usize, symmetric: bool) -> CmdResult<CoinLatticeState> {
    use num_complex::Complex64;
    let r = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let i = Complex64::new(0.0, std::f64::consts::FRAC_1_SQRT_2);
    let b = LatticeState::basis(n, origin).map_err(err_str)?;
    if symmetric {
        CoinLatticeState::new(b.scaled(r), b.scaled(i)).map_err(err_str)
    } else {
        CoinLatticeState::new(b, LatticeState::zero(n)).map_err(err_str)
    }
}

fn dtqw_unitary() -> StepUnitary {
    StepUnitary {
        kind: WalkKind::Dtqw,
        theta1: std::f64::consts::FRAC_PI_2,
        theta2: 0.0,
        axis: Axis::Y,
        boundary: Boundary::cyclic(1.0),
    }
}

fn fig5(w: &mut FigureWriter) -> CmdResult<()> {
    let n = 201;
    let origin = n / 2;
    let t = 100;
    let u = dtqw_unitary();

    for (name, symmetric, desc) in [
        ("fig5a.csv", false, "walker distribution, coin |0> start"),
        ("fig5b.csv", true, "walker distribution, symmetric coin start"),
    ] {
        let s = evolve(&dtqw_start(n, origin, symmetric)?, &u, t).map_err(err_str)?;
        let d = walk_distribution(&s, t, origin);
        let rows: Vec<Vec<String>> = d
            .probs
            .iter()
            .enumerate()
            .map(|(j, &p)| {
                vec![(j as i64 - origin as i64).to_string(), fmt_f64(p)]
            })
            .collect();
        w.emit(name, &["displacement", "prob"], &rows, &format!("{desc}, t={t}"))?;
    }

    let d = classical_distribution(t, n).map_err(err_str)?;
    let rows: Vec<Vec<String>> = d
        .probs
        .iter()
        .enumerate()
        .map(|(j, &p)| vec![(j as i64 - origin as i64).to_string(), fmt_f64(p)])
        .collect();
    w.emit(
        "fig5c.csv",
        &["displacement", "prob"],
        &rows,
        &format!("classical +-1 random walk distribution, t={t}"),
    )?;

    // Variance series on a larger lattice so t=200 stays clear of the seam.
    let big = 501;
    let big_origin = big / 2;
    let mut s = dtqw_start(big, big_origin, true)?;
    let mut rows = Vec::new();
    for tt in 1..=200usize {
        let mut next = s.clone();
        step(&mut next, &u).map_err(err_str)?;
        s = next;
        if tt >= 10 {
            let vq = variance(&walk_distribution(&s, tt, big_origin));
            let vc = variance(&classical_distribution(tt, big).map_err(err_str)?);
            rows.push(vec![tt.to_string(), fmt_f64(vq), fmt_f64(vc)]);
        }
    }
    w.emit(
        "fig5d.csv",
        &["t", "var_quantum", "var_classical"],
        &rows,
        "variance growth: ballistic quantum walk vs diffusive classical walk",
    )?;
    Ok(())
}

fn small_t_panels(w: &mut FigureWriter, prefix: &str, delta: f64) -> CmdResult<()> {
    for t in 1..=3usize {
        let cfg = WalkConfig {
            delta,
            steps: t,
            ..WalkConfig::default()
        };
        let (c0, c1) = conditional_pair(&cfg)?;
        let raw0 = c0.with_raw_phase();
        let raw1 = c1.with_raw_phase();
        let rows: Vec<Vec<String>> = (0..cfg.n_sites)
            .map(|j| {
                vec![
                    (j + 1).to_string(),
                    fmt_f64(raw0.amp(j).unwrap().re),
                    fmt_f64(raw0.amp(j).unwrap().im),
                    fmt_f64(raw1.amp(j).unwrap().re),
                    fmt_f64(raw1.amp(j).unwrap().im),
                ]
            })
            .collect();
        w.emit(
            &format!("{prefix}_t{t}.csv"),
            &["site", "re0", "im0", "re1", "im1"],
            &rows,
            &format!("conditional branch coefficients, delta={delta}, t={t}"),
        )?;
    }
    Ok(())
}

/// Emit plot-ready CSV panels plus a manifest for one figure id.
pub fn cmd_figure(id: &str, out_dir: &Path) -> CmdResult<()> {
    fs::create_dir_all(out_dir).map_err(err_str)?;
    let mut w = FigureWriter::new(out_dir);
    match id {
        "fig2" => fig2(&mut w)?,
        "fig3" => fig3(&mut w)?,
        "fig4" => fig4(&mut w)?,
        "fig5" => fig5(&mut w)?,
        "fig6" => small_t_panels(&mut w, "fig6", 0.0)?,
        "fig7" => small_t_panels(&mut w, "fig7", std::f64::consts::FRAC_PI_2)?,
        other => {
            return Err(format!(
                "unknown figure id '{other}' (expected fig2..fig7)"
            ))
        }
    }
    w.finish(id)
}
