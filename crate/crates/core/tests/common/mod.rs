//! Shared helpers for the integration tests: a brute-force dense-matrix
//! model of the walk on small cyclic lattices.

use hewalk::{Axis, CoinLatticeState, LatticeState};
use nalgebra::DMatrix;
use num_complex::Complex64;

/// Basis ordering for the dense model: index = coin·N + site.
pub fn dense_rotation(theta: f64, axis: Axis, n: usize) -> DMatrix<Complex64> {
    let m = hewalk::walk::rotation_matrix(theta, axis);
    let mut out = DMatrix::zeros(2 * n, 2 * n);
    for c_out in 0..2 {
        for c_in in 0..2 {
            for j in 0..n {
                out[(c_out * n + j, c_in * n + j)] = m[c_out][c_in];
            }
        }
    }
    out
}

/// Permutation matrix moving the coin-0 block j → j+1 (cyclic).
pub fn dense_t0(n: usize) -> DMatrix<Complex64> {
    let mut out = DMatrix::zeros(2 * n, 2 * n);
    for j in 0..n {
        out[((j + 1) % n, j)] = Complex64::ONE;
        out[(n + j, n + j)] = Complex64::ONE;
    }
    out
}

/// Permutation matrix moving the coin-1 block j → j−1 (cyclic).
pub fn dense_t1(n: usize) -> DMatrix<Complex64> {
    let mut out = DMatrix::zeros(2 * n, 2 * n);
    for j in 0..n {
        out[(j, j)] = Complex64::ONE;
        out[(n + (j + n - 1) % n, n + j)] = Complex64::ONE;
    }
    out
}

/// Full split-step unitary T₁ R(θ₂) T₀ R(θ₁) as a dense 2N×2N matrix.
pub fn dense_ssqw(theta1: f64, theta2: f64, axis: Axis, n: usize) -> DMatrix<Complex64> {
    dense_t1(n) * dense_rotation(theta2, axis, n) * dense_t0(n) * dense_rotation(theta1, axis, n)
}

pub fn to_vector(s: &CoinLatticeState) -> nalgebra::DVector<Complex64> {
    let n = s.n_sites();
    let mut v = nalgebra::DVector::zeros(2 * n);
    for j in 0..n {
        v[j] = s.comp0().amp(j).unwrap();
        v[n + j] = s.comp1().amp(j).unwrap();
    }
    v
}

pub fn random_coin_lattice(n: usize, rng: &mut impl rand::Rng) -> CoinLatticeState {
    let draw = |rng: &mut dyn FnMut() -> f64| {
        LatticeState::from_amplitudes(
            (0..n)
                .map(|_| Complex64::new(rng(), rng()))
                .collect::<Vec<_>>(),
        )
        .unwrap()
    };
    let c0 = draw(&mut || rng.gen_range(-1.0..1.0));
    let c1 = draw(&mut || rng.gen_range(-1.0..1.0));
    let norm = (c0.norm_sqr() + c1.norm_sqr()).sqrt();
    let inv = Complex64::new(1.0 / norm, 0.0);
    CoinLatticeState::new(c0.scaled(inv), c1.scaled(inv)).unwrap()
}
