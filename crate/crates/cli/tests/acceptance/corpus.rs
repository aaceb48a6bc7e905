//! Seeded corpora for the acceptance criteria: square and rectangular dual
//! matrices mixing generic entries, rank-deficient and repeated singular
//! values, zero standard parts, and zero dual parts.

use dualmat::{ComplexMatrix, DualMatrix};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rand_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

pub fn random_complex_matrix(rng: &mut ChaCha8Rng, m: usize, n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(m, n, |_, _| rand_complex(rng))
}

/// Modified Gram-Schmidt orthonormalization, two passes.
pub fn random_unitary(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let mut q = random_complex_matrix(rng, n, n);
    for j in 0..n {
        for _ in 0..2 {
            for i in 0..j {
                let mut dot = Complex64::new(0.0, 0.0);
                for row in 0..n {
                    dot += q[(row, i)].conj() * q[(row, j)];
                }
                for row in 0..n {
                    let qi = q[(row, i)];
                    q[(row, j)] -= dot * qi;
                }
            }
        }
        let norm: f64 = (0..n).map(|row| q[(row, j)].norm_sqr()).sum::<f64>().sqrt();
        for row in 0..n {
            q[(row, j)] /= norm;
        }
    }
    q
}

fn with_singular_values(rng: &mut ChaCha8Rng, m: usize, n: usize, values: &[f64]) -> ComplexMatrix {
    let u = random_unitary(rng, m);
    let v = random_unitary(rng, n);
    let mut d = ComplexMatrix::zeros(m, n);
    for (i, &x) in values.iter().enumerate().take(m.min(n)) {
        d[(i, i)] = Complex64::new(x, 0.0);
    }
    u.mul(&d).mul(&v.adjoint())
}

/// Deterministic corpus entry `i`: shape cycles over every (m, n) pair up to
/// `max_dim`, construction style cycles over five families.
pub fn corpus_matrix(i: usize, max_dim: usize, master: u64) -> DualMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(master ^ (i as u64).wrapping_mul(0x9E3779B97F4A7C15));
    let m = 1 + i % max_dim;
    let n = 1 + (i / max_dim) % max_dim;
    let k = m.min(n);
    let dual_scale = [0.1, 1.0, 10.0][i % 3];
    let dual = random_complex_matrix(&mut rng, m, n).scale(Complex64::new(dual_scale, 0.0));

    match i % 5 {
        // generic entries in both parts
        0 => DualMatrix::new(random_complex_matrix(&mut rng, m, n), dual).unwrap(),
        // rank-deficient standard part with exact zeros
        1 => {
            let rank = (i / 5) % (k + 1);
            let values: Vec<f64> = (0..rank).map(|j| 2.0 - 1.5 * j as f64 / k as f64).collect();
            DualMatrix::new(with_singular_values(&mut rng, m, n, &values), dual).unwrap()
        }
        // repeated singular values in exact groups of three
        2 => {
            let values: Vec<f64> = (0..k).map(|j| 2.0 / (1 << (j / 3)) as f64).collect();
            DualMatrix::new(with_singular_values(&mut rng, m, n, &values), dual).unwrap()
        }
        // zero standard part
        3 => DualMatrix::new(ComplexMatrix::zeros(m, n), dual).unwrap(),
        // zero dual part
        _ => DualMatrix::new(
            random_complex_matrix(&mut rng, m, n),
            ComplexMatrix::zeros(m, n),
        )
        .unwrap(),
    }
}

/// Square-only variant used for the HS criteria.
pub fn square_corpus_matrix(i: usize, max_dim: usize, master: u64) -> DualMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(master ^ (i as u64).wrapping_mul(0xD1B54A32D192ED03));
    let n = 1 + i % max_dim;
    let dual = random_complex_matrix(&mut rng, n, n);
    match i % 4 {
        0 => DualMatrix::new(random_complex_matrix(&mut rng, n, n), dual).unwrap(),
        1 => {
            let rank = (i / 4) % (n + 1);
            let values: Vec<f64> = (0..rank).map(|j| 2.0 - j as f64 / n as f64).collect();
            DualMatrix::new(with_singular_values(&mut rng, n, n, &values), dual).unwrap()
        }
        2 => {
            let values: Vec<f64> = (0..n).map(|j| 1.5 / (1 << (j / 2)) as f64).collect();
            DualMatrix::new(with_singular_values(&mut rng, n, n, &values), dual).unwrap()
        }
        _ => DualMatrix::new(ComplexMatrix::zeros(n, n), dual).unwrap(),
    }
}

/// Square dual matrix with an invertible standard part.
pub fn invertible_matrix(i: usize, max_dim: usize, master: u64) -> DualMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(master ^ (i as u64).wrapping_mul(0xA24BAED4963EE407));
    let n = 2 + i % (max_dim - 1);
    let values: Vec<f64> = (0..n).map(|j| 2.5 - 2.0 * j as f64 / n as f64).collect();
    let std = with_singular_values(&mut rng, n, n, &values);
    let dual = random_complex_matrix(&mut rng, n, n);
    DualMatrix::new(std, dual).unwrap()
}
