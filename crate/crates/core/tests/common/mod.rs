//! Test-only oracles, independent of the library's computation paths.
#![allow(dead_code)]

use itertools::Itertools;
use mpcert::matrix::Matrix;
use mpcert::{CMatrix, Complex64};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Definition of the permanent: sum over all n! permutations.
pub fn naive_permanent(m: &CMatrix) -> Complex64 {
    let n = m.rows();
    (0..n)
        .permutations(n)
        .map(|sigma| {
            sigma
                .iter()
                .enumerate()
                .map(|(i, &j)| m[(i, j)])
                .product::<Complex64>()
        })
        .sum()
}

pub fn random_complex(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> CMatrix {
    Matrix::from_fn(rows, cols, |_, _| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    })
}

/// Haar-like random unitary from Gram–Schmidt on a random complex matrix.
pub fn random_unitary(rng: &mut ChaCha8Rng, m: usize) -> CMatrix {
    let a = random_complex(rng, m, m);
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(m);
    for c in 0..m {
        let mut v: Vec<Complex64> = (0..m).map(|r| a[(r, c)]).collect();
        for q in &cols {
            let dot: Complex64 = q.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
            for (vi, qi) in v.iter_mut().zip(q) {
                *vi -= dot * qi;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    Matrix::from_fn(m, m, |r, c| cols[c][r])
}

/// Fourier matrix written out directly from its definition.
pub fn fourier(m: usize) -> CMatrix {
    Matrix::from_fn(m, m, |l, q| {
        Complex64::from_polar(
            1.0 / (m as f64).sqrt(),
            std::f64::consts::TAU * (l * q) as f64 / m as f64,
        )
    })
}

pub fn rel_err(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

/// An 8-mode (for `p = 3`) qFFT-shaped circuit with transmissivities drawn
/// from `[0.4, 0.6]` and every phase offset by a draw from `[−0.3, 0.3]`.
pub fn perturbed_qfft(p: u32, seed: u64) -> mpcert::Circuit {
    use mpcert::circuit::{build_qfft, wrap_phase};
    use mpcert::CircuitElement;
    let mut r = rng(seed);
    let mut c = build_qfft::<f64>(p).unwrap();
    for el in c.layers.iter_mut().flatten() {
        match el {
            CircuitElement::Mixer {
                transmissivity,
                phase,
                ..
            } => {
                *transmissivity = r.random_range(0.4..=0.6);
                *phase = wrap_phase(*phase + r.random_range(-0.3..=0.3));
            }
            CircuitElement::Phase { phase, .. } => {
                *phase = wrap_phase(*phase + r.random_range(-0.3..=0.3))
            }
        }
    }
    c
}
