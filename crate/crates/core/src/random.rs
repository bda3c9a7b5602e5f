//! Seeded random states and operators for randomized invariant checks.
//!
//! Everything is driven by an explicit [`ChaCha8Rng`] so sweeps are
//! reproducible from a single `u64` seed.

use crate::hilbert::{Operator, StateVector, SubsystemLayout};
use crate::C64;
use ndarray::{Array1, Array2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A reproducible generator from a seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard normal deviate (Box-Muller).
fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

fn gaussian_c64(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(gaussian(rng), gaussian(rng))
}

/// Unit-norm state with complex Gaussian amplitudes.
pub fn random_state(layout: &SubsystemLayout, rng: &mut ChaCha8Rng) -> StateVector {
    loop {
        let amplitudes: Array1<C64> = Array1::from(
            (0..layout.dim())
                .map(|_| gaussian_c64(rng))
                .collect::<Vec<_>>(),
        );
        let state = StateVector {
            layout: layout.clone(),
            amplitudes,
        };
        if let Ok(normed) = state.normalized() {
            return normed;
        }
    }
}

/// Random Hermitian operator `(M + M†)/2` with Gaussian `M`.
pub fn random_hermitian(layout: &SubsystemLayout, rng: &mut ChaCha8Rng) -> Operator {
    let n = layout.dim();
    let m = Array2::from_shape_fn((n, n), |_| gaussian_c64(rng));
    let herm = (&m + &m.t().mapv(|z| z.conj())).mapv(|z| z * 0.5);
    Operator {
        layout: layout.clone(),
        matrix: herm,
    }
}

/// Haar-like random unitary: Gram-Schmidt of a Gaussian matrix.
pub fn random_unitary(layout: &SubsystemLayout, rng: &mut ChaCha8Rng) -> Operator {
    let n = layout.dim();
    let mut cols: Vec<Array1<C64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Array1<C64> = Array1::from(
            (0..n).map(|_| gaussian_c64(rng)).collect::<Vec<_>>(),
        );
        for u in &cols {
            let proj: C64 = u.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum();
            v = v - u.mapv(|z| z * proj);
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-8 {
            cols.push(v.mapv(|z| z / norm));
        }
    }
    let mut matrix = Array2::zeros((n, n));
    for (j, col) in cols.iter().enumerate() {
        for i in 0..n {
            matrix[(i, j)] = col[i];
        }
    }
    Operator {
        layout: layout.clone(),
        matrix,
    }
}
