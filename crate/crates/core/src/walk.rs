//! The walk operators: coin rotations, conditional translations, and the
//! composed step unitaries, all applied matrix-free.
//!
//! A split step is U_SS(θ₁,θ₂) = T₁ R(θ₂) T₀ R(θ₁) with the rightmost
//! operator acting first; the conventional walk is U(θ) = T R(θ). With
//! θ₂ = 0 the split step collapses to the conventional one because
//! T₁T₀ = T.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{HeWalkError, Result};
use crate::state::{Axis, BoundaryKind, CoinLatticeState};

/// Edge policy plus the tolerance used by both the hard-wall check and
/// the cyclic seam monitor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Boundary {
    pub kind: BoundaryKind,
    pub leakage_tol: f64,
}

impl Boundary {
    pub fn cyclic(leakage_tol: f64) -> Self {
        Boundary {
            kind: BoundaryKind::Cyclic,
            leakage_tol,
        }
    }

    pub fn hard_wall(leakage_tol: f64) -> Self {
        Boundary {
            kind: BoundaryKind::HardWall,
            leakage_tol,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WalkKind {
    Dtqw,
    Ssqw,
}

/// One time step of the walk. `theta2` is ignored for the conventional
/// (dtqw) kind.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepUnitary {
    pub kind: WalkKind,
    pub theta1: f64,
    pub theta2: f64,
    pub axis: Axis,
    pub boundary: Boundary,
}

/// The 2×2 coin rotation exp(−iθ(n·σ)/2) for the chosen Pauli axis.
pub fn rotation_matrix(theta: f64, axis: Axis) -> [[Complex64; 2]; 2] {
    let (s, c) = (theta / 2.0).sin_cos();
    let re = |x: f64| Complex64::new(x, 0.0);
    let im = |x: f64| Complex64::new(0.0, x);
    match axis {
        // cos(θ/2) I − i sin(θ/2) σ_x
        Axis::X => [[re(c), im(-s)], [im(-s), re(c)]],
        // cos(θ/2) I − i sin(θ/2) σ_y
        Axis::Y => [[re(c), re(-s)], [re(s), re(c)]],
        // cos(θ/2) I − i sin(θ/2) σ_z
        Axis::Z => [[Complex64::new(c, -s), re(0.0)], [re(0.0), Complex64::new(c, s)]],
    }
}

/// Rotate the coin at every site by exp(−iθ(n·σ)/2).
pub fn apply_rotation(s: &mut CoinLatticeState, theta: f64, axis: Axis) {
    let m = rotation_matrix(theta, axis);
    let (a0, a1) = s.parts_mut();
    for (x, y) in a0.iter_mut().zip(a1.iter_mut()) {
        let (px, py) = (*x, *y);
        *x = m[0][0] * px + m[0][1] * py;
        *y = m[1][0] * px + m[1][1] * py;
    }
}

fn check_wall(edge_amp: Complex64, tol: f64) -> Result<()> {
    let mag = edge_amp.norm();
    if mag > tol {
        return Err(HeWalkError::BoundaryLeakage {
            amplitude: mag,
            tol,
        });
    }
    Ok(())
}

/// Shift a branch by +1 (toward higher site index).
fn shift_up(amps: &mut [Complex64], boundary: Boundary) -> Result<()> {
    let n = amps.len();
    match boundary.kind {
        BoundaryKind::Cyclic => amps.rotate_right(1),
        BoundaryKind::HardWall => {
            check_wall(amps[n - 1], boundary.leakage_tol)?;
            for j in (1..n).rev() {
                amps[j] = amps[j - 1];
            }
            amps[0] = Complex64::ZERO;
        }
    }
    Ok(())
}

/// Shift a branch by −1 (toward lower site index).
fn shift_down(amps: &mut [Complex64], boundary: Boundary) -> Result<()> {
    let n = amps.len();
    match boundary.kind {
        BoundaryKind::Cyclic => amps.rotate_left(1),
        BoundaryKind::HardWall => {
            check_wall(amps[0], boundary.leakage_tol)?;
            for j in 0..n - 1 {
                amps[j] = amps[j + 1];
            }
            amps[n - 1] = Complex64::ZERO;
        }
    }
    Ok(())
}

/// T: coin-0 amplitudes move j → j+1 and coin-1 amplitudes j → j−1.
pub fn apply_shift_full(s: &mut CoinLatticeState, boundary: Boundary) -> Result<()> {
    let (a0, a1) = s.parts_mut();
    shift_up(a0, boundary)?;
    shift_down(a1, boundary)
}

/// T₀: coin-0 amplitudes move j → j+1, coin-1 untouched.
pub fn apply_shift_t0(s: &mut CoinLatticeState, boundary: Boundary) -> Result<()> {
    let (a0, _) = s.parts_mut();
    shift_up(a0, boundary)
}

/// T₁: coin-1 amplitudes move j → j−1, coin-0 untouched.
pub fn apply_shift_t1(s: &mut CoinLatticeState, boundary: Boundary) -> Result<()> {
    let (_, a1) = s.parts_mut();
    shift_down(a1, boundary)
}

/// Under cyclic boundaries wraparound is silent, so watch the seam: if
/// amplitude within 2 sites of it grows past the tolerance, the lattice
/// is too small for the requested evolution.
fn monitor_seam(s: &CoinLatticeState, tol: f64) -> Result<()> {
    let n = s.n_sites();
    if n < 5 {
        // Every site is "near the seam"; the monitor is meaningless.
        return Ok(());
    }
    for j in [0, 1, n - 2, n - 1] {
        let mag = s.probability_at(j)?.sqrt();
        if mag > tol {
            return Err(HeWalkError::BoundaryLeakage {
                amplitude: mag,
                tol,
            });
        }
    }
    Ok(())
}

/// Apply one step of the walk in place.
pub fn step(s: &mut CoinLatticeState, u: &StepUnitary) -> Result<()> {
    match u.kind {
        WalkKind::Dtqw => {
            apply_rotation(s, u.theta1, u.axis);
            apply_shift_full(s, u.boundary)?;
        }
        WalkKind::Ssqw => {
            apply_rotation(s, u.theta1, u.axis);
            apply_shift_t0(s, u.boundary)?;
            apply_rotation(s, u.theta2, u.axis);
            apply_shift_t1(s, u.boundary)?;
        }
    }
    if u.boundary.kind == BoundaryKind::Cyclic {
        monitor_seam(s, u.boundary.leakage_tol)?;
    }
    Ok(())
}

/// t-fold composition of `step`; t = 0 returns the input unchanged.
pub fn evolve(s0: &CoinLatticeState, u: &StepUnitary, t: usize) -> Result<CoinLatticeState> {
    let mut s = s0.clone();
    for k in 0..t {
        step(&mut s, u).map_err(|e| e.with_context(format!("step {}", k + 1)))?;
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{CoinLatticeState, LatticeState};
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn cyc() -> Boundary {
        Boundary::cyclic(1e-8)
    }

    fn random_state(n: usize, seed: u64) -> CoinLatticeState {
        let mut rng = StdRng::seed_from_u64(seed);
        let draw = |rng: &mut StdRng| {
            (0..n)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect::<Vec<_>>()
        };
        let c0 = LatticeState::from_amplitudes(draw(&mut rng)).unwrap();
        let c1 = LatticeState::from_amplitudes(draw(&mut rng)).unwrap();
        let norm = (c0.norm_sqr() + c1.norm_sqr()).sqrt();
        let inv = Complex64::new(1.0 / norm, 0.0);
        CoinLatticeState::new(c0.scaled(inv), c1.scaled(inv)).unwrap()
    }

    #[test]
    fn rotation_theta_zero_is_identity() {
        let mut s = random_state(12, 1);
        let before = s.clone();
        apply_rotation(&mut s, 0.0, Axis::Y);
        assert_eq!(s, before);
        apply_rotation(&mut s, 0.0, Axis::X);
        assert_eq!(s, before);
        apply_rotation(&mut s, 0.0, Axis::Z);
        assert_eq!(s, before);
    }

    #[test]
    fn rotation_y_pi_flips_coin() {
        // exp(−iπσ_y/2) = [[0,−1],[1,0]]: |0⟩ → |1⟩ and |1⟩ → −|0⟩.
        let mut s = CoinLatticeState::basis(6, 0, 3).unwrap();
        apply_rotation(&mut s, std::f64::consts::PI, Axis::Y);
        assert_abs_diff_eq!(s.comp0().amp(3).unwrap().norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s.comp1().amp(3).unwrap().re, 1.0, epsilon = 1e-15);

        let mut s = CoinLatticeState::basis(6, 1, 3).unwrap();
        apply_rotation(&mut s, std::f64::consts::PI, Axis::Y);
        assert_abs_diff_eq!(s.comp0().amp(3).unwrap().re, -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s.comp1().amp(3).unwrap().norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn rotation_y_half_pi_closed_form() {
        let mut s = CoinLatticeState::basis(4, 0, 2).unwrap();
        apply_rotation(&mut s, std::f64::consts::FRAC_PI_2, Axis::Y);
        let q = std::f64::consts::FRAC_PI_4;
        assert_abs_diff_eq!(s.comp0().amp(2).unwrap().re, q.cos(), epsilon = 1e-15);
        assert_abs_diff_eq!(s.comp1().amp(2).unwrap().re, q.sin(), epsilon = 1e-15);
    }

    #[test]
    fn rotation_preserves_norm() {
        for seed in 0..5u64 {
            let mut s = random_state(16, seed);
            apply_rotation(&mut s, 1.234, Axis::X);
            apply_rotation(&mut s, -2.5, Axis::Z);
            assert_abs_diff_eq!(s.norm(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn shift_definitions() {
        let mut s = CoinLatticeState::basis(6, 0, 2).unwrap();
        apply_shift_full(&mut s, cyc()).unwrap();
        assert_eq!(s.comp0().amp(3).unwrap(), Complex64::ONE);

        let mut s = CoinLatticeState::basis(6, 1, 2).unwrap();
        apply_shift_full(&mut s, cyc()).unwrap();
        assert_eq!(s.comp1().amp(1).unwrap(), Complex64::ONE);

        // T₀ leaves coin-1 alone; T₁ leaves coin-0 alone.
        let mut s = CoinLatticeState::basis(6, 1, 2).unwrap();
        apply_shift_t0(&mut s, cyc()).unwrap();
        assert_eq!(s.comp1().amp(2).unwrap(), Complex64::ONE);
        let mut s = CoinLatticeState::basis(6, 0, 2).unwrap();
        apply_shift_t1(&mut s, cyc()).unwrap();
        assert_eq!(s.comp0().amp(2).unwrap(), Complex64::ONE);
    }

    #[test]
    fn cyclic_wraparound() {
        let mut s = CoinLatticeState::basis(6, 0, 5).unwrap();
        // Seam check would flag this; the shift itself must wrap exactly.
        apply_shift_full(&mut s, cyc()).unwrap();
        assert_eq!(s.comp0().amp(0).unwrap(), Complex64::ONE);
    }

    #[test]
    fn hard_wall_leakage_detected() {
        let mut s = CoinLatticeState::basis(6, 0, 5).unwrap();
        let r = apply_shift_full(&mut s, Boundary::hard_wall(1e-8));
        assert!(matches!(r, Err(HeWalkError::BoundaryLeakage { .. })));

        let mut s = CoinLatticeState::basis(6, 1, 0).unwrap();
        let r = apply_shift_t1(&mut s, Boundary::hard_wall(1e-8));
        assert!(matches!(r, Err(HeWalkError::BoundaryLeakage { .. })));
    }

    #[test]
    fn t1_after_t0_equals_full_shift() {
        for seed in 0..8u64 {
            let s0 = random_state(20, seed);
            let mut a = s0.clone();
            apply_shift_full(&mut a, cyc()).unwrap();
            let mut b = s0;
            apply_shift_t0(&mut b, cyc()).unwrap();
            apply_shift_t1(&mut b, cyc()).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn ssqw_theta2_zero_reduces_to_dtqw() {
        let boundary = Boundary::cyclic(1.0);
        let ss = StepUnitary {
            kind: WalkKind::Ssqw,
            theta1: 0.7,
            theta2: 0.0,
            axis: Axis::Y,
            boundary,
        };
        let dt = StepUnitary {
            kind: WalkKind::Dtqw,
            theta1: 0.7,
            theta2: 0.0,
            axis: Axis::Y,
            boundary,
        };
        for seed in 0..4u64 {
            let s0 = random_state(14, seed);
            let a = evolve(&s0, &ss, 5).unwrap();
            let b = evolve(&s0, &dt, 5).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn ssqw_identity_coins_shift_coin0_up() {
        let u = StepUnitary {
            kind: WalkKind::Ssqw,
            theta1: 0.0,
            theta2: 0.0,
            axis: Axis::Y,
            boundary: Boundary::cyclic(1.0),
        };
        let s0 = CoinLatticeState::basis(6, 0, 2).unwrap();
        let s1 = evolve(&s0, &u, 1).unwrap();
        assert_eq!(s1.comp0().amp(3).unwrap(), Complex64::ONE);
    }

    #[test]
    fn dtqw_identity_coin_shifts_coin1_down() {
        let u = StepUnitary {
            kind: WalkKind::Dtqw,
            theta1: 0.0,
            theta2: 0.0,
            axis: Axis::Y,
            boundary: Boundary::cyclic(1.0),
        };
        let s0 = CoinLatticeState::basis(6, 1, 2).unwrap();
        let s1 = evolve(&s0, &u, 1).unwrap();
        assert_eq!(s1.comp1().amp(1).unwrap(), Complex64::ONE);
    }

    #[test]
    fn step_preserves_norm() {
        let u = StepUnitary {
            kind: WalkKind::Ssqw,
            theta1: 1.1,
            theta2: -0.6,
            axis: Axis::Y,
            boundary: Boundary::cyclic(1.0),
        };
        for seed in 0..6u64 {
            let s0 = random_state(30, seed);
            let s = evolve(&s0, &u, 10).unwrap();
            assert_abs_diff_eq!(s.norm(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn evolve_zero_steps_is_identity() {
        let s0 = random_state(10, 9);
        let u = StepUnitary {
            kind: WalkKind::Ssqw,
            theta1: 0.3,
            theta2: 0.4,
            axis: Axis::X,
            boundary: Boundary::cyclic(1.0),
        };
        assert_eq!(evolve(&s0, &u, 0).unwrap(), s0);
        // One step equals step().
        let mut manual = s0.clone();
        step(&mut manual, &u).unwrap();
        assert_eq!(evolve(&s0, &u, 1).unwrap(), manual);
    }

    #[test]
    fn translation_covariance_on_cycle() {
        // Shifting the initial state commutes with evolution.
        let u = StepUnitary {
            kind: WalkKind::Ssqw,
            theta1: 0.9,
            theta2: -1.3,
            axis: Axis::Y,
            boundary: Boundary::cyclic(1.0),
        };
        let s0 = random_state(16, 17);
        let evolved_then_shifted = {
            let mut s = evolve(&s0, &u, 4).unwrap();
            let (a0, a1) = s.parts_mut();
            a0.rotate_right(3);
            a1.rotate_right(3);
            s
        };
        let shifted_then_evolved = {
            let mut s = s0.clone();
            let (a0, a1) = s.parts_mut();
            a0.rotate_right(3);
            a1.rotate_right(3);
            evolve(&s, &u, 4).unwrap()
        };
        for j in 0..16 {
            let a = evolved_then_shifted.comp0().amp(j).unwrap()
                - shifted_then_evolved.comp0().amp(j).unwrap();
            let b = evolved_then_shifted.comp1().amp(j).unwrap()
                - shifted_then_evolved.comp1().amp(j).unwrap();
            assert!(a.norm() < 1e-12 && b.norm() < 1e-12);
        }
    }
}
