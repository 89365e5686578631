//! Matrix-free evolution checked against an explicit dense unitary on a
//! small cyclic lattice.

mod common;

use common::{dense_ssqw, random_coin_lattice, to_vector};
use hewalk::{evolve, Axis, Boundary, StepUnitary, WalkKind};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn max_deviation(
    s: &hewalk::CoinLatticeState,
    v: &nalgebra::DVector<num_complex::Complex64>,
) -> f64 {
    let n = s.n_sites();
    let mut worst = 0.0f64;
    for j in 0..n {
        worst = worst.max((s.comp0().amp(j).unwrap() - v[j]).norm());
        worst = worst.max((s.comp1().amp(j).unwrap() - v[n + j]).norm());
    }
    worst
}

#[test]
fn dense_oracle_n8() {
    let n = 8;
    let mut rng = StdRng::seed_from_u64(0x0dac1e);
    for draw in 0..50 {
        let theta1 = rng.gen_range(-2.0 * std::f64::consts::PI..2.0 * std::f64::consts::PI);
        let theta2 = rng.gen_range(-2.0 * std::f64::consts::PI..2.0 * std::f64::consts::PI);
        let axis = [Axis::X, Axis::Y, Axis::Z][draw % 3];
        let t = rng.gen_range(1..=5usize);
        let s0 = random_coin_lattice(n, &mut rng);

        let u = StepUnitary {
            kind: WalkKind::Ssqw,
            theta1,
            theta2,
            axis,
            boundary: Boundary::cyclic(10.0),
        };
        let evolved = evolve(&s0, &u, t).unwrap();

        let dense = dense_ssqw(theta1, theta2, axis, n);
        let mut v = to_vector(&s0);
        for _ in 0..t {
            v = &dense * v;
        }

        let dev = max_deviation(&evolved, &v);
        assert!(
            dev < 1e-12,
            "draw {draw}: deviation {dev:.3e} for theta1={theta1}, theta2={theta2}, t={t}"
        );
    }
}

#[test]
fn dense_oracle_matches_single_step_operators() {
    // The dense factors themselves must agree with the matrix-free
    // shift/rotation primitives, not just their product.
    let n = 6;
    let mut rng = StdRng::seed_from_u64(7);
    let s0 = random_coin_lattice(n, &mut rng);
    let boundary = Boundary::cyclic(10.0);

    let mut shifted = s0.clone();
    hewalk::apply_shift_t0(&mut shifted, boundary).unwrap();
    assert!(max_deviation(&shifted, &(common::dense_t0(n) * to_vector(&s0))) < 1e-15);

    let mut shifted = s0.clone();
    hewalk::apply_shift_t1(&mut shifted, boundary).unwrap();
    assert!(max_deviation(&shifted, &(common::dense_t1(n) * to_vector(&s0))) < 1e-15);

    let mut rotated = s0.clone();
    hewalk::apply_rotation(&mut rotated, 1.234, Axis::Y);
    assert!(
        max_deviation(
            &rotated,
            &(common::dense_rotation(1.234, Axis::Y, n) * to_vector(&s0))
        ) < 1e-15
    );
}

#[test]
fn dense_unitary_is_unitary() {
    let n = 8;
    let u = dense_ssqw(0.9, -1.7, Axis::Y, n);
    let prod = &u * u.adjoint();
    for i in 0..2 * n {
        for j in 0..2 * n {
            let expect = if i == j { 1.0 } else { 0.0 };
            assert!((prod[(i, j)].re - expect).abs() < 1e-13);
            assert!(prod[(i, j)].im.abs() < 1e-13);
        }
    }
}
