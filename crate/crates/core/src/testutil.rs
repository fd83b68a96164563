//! Seeded helpers for unit tests.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cmatrix::CMatrix;

pub fn assert_close(actual: f64, expected: f64, tol: f64) {
    assert!(
        (actual - expected).abs() <= tol,
        "expected {expected}, got {actual} (tol {tol})"
    );
}

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.gen();
    let u2: f64 = rng.gen();
    (-2.0 * (1.0 - u1).ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

pub fn rand_matrix(rows: usize, cols: usize, seed: u64) -> CMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    CMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(gaussian(&mut rng), gaussian(&mut rng)) * std::f64::consts::FRAC_1_SQRT_2
    })
}

pub fn rand_unitary(n: usize, seed: u64) -> CMatrix {
    let g = rand_matrix(n, n, seed);
    let (q, r) = g.qr();
    // Fix column phases so the factor is unique.
    let mut u = q;
    for j in 0..n {
        let d = r[(j, j)];
        if d.norm() > 0.0 {
            let phase = d / d.norm();
            for i in 0..n {
                u[(i, j)] *= phase;
            }
        }
    }
    u
}

pub fn rand_vector(n: usize, seed: u64) -> Vec<Complex64> {
    let m = rand_matrix(n, 1, seed);
    (0..n).map(|i| m[(i, 0)]).collect()
}
