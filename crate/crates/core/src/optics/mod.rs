//! Exact multi-photon evolution through a linear-optical unitary.
//!
//! Unitaries act as `U[out, in]`: column `i` describes where a photon
//! entering mode `i` goes. For an input state `S` and output state `T` with
//! `n` photons each,
//!
//! ```text
//! p(S → T) = |Per(U_ST)|² / Π sᵢ! tᵢ!
//! ```
//!
//! where `U_ST` repeats column `i` of `U` `sᵢ` times and row `j` `tⱼ` times.
//! Distinguishable photons replace `U_ST` by its elementwise squared modulus
//! and need only the `Π tⱼ!` normalization.

mod dist;
mod permanent;
mod state;

pub use dist::{Outcome, ProbDist};
pub use permanent::{permanent, permanent_capped, DEFAULT_PERMANENT_CAP};
pub use state::{enumerate_outcomes, outcome_count, OccupationVector};

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, Matrix};
use crate::scalar::Real;

/// Limits applied during simulation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimConfig {
    /// Largest photon number (permanent side) accepted.
    pub permanent_cap: usize,
    /// Largest number of enumerated output states.
    pub max_outcomes: usize,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            permanent_cap: DEFAULT_PERMANENT_CAP,
            max_outcomes: 1 << 20,
        }
    }
}

const FACTORIALS: [f64; 21] = {
    let mut t = [1.0; 21];
    let mut k = 1;
    while k < 21 {
        t[k] = t[k - 1] * k as f64;
        k += 1;
    }
    t
};

fn factorial<T: Real>(k: usize) -> T {
    match FACTORIALS.get(k) {
        Some(&f) => T::lit(f),
        None => (21..=k).fold(T::lit(FACTORIALS[20]), |acc, i| acc * T::lit(i as f64)),
    }
}

fn occupation_factorials<T: Real>(state: &OccupationVector) -> T {
    state
        .occupations()
        .iter()
        .fold(T::one(), |acc, &r| acc * factorial::<T>(r))
}

fn check_pair(u_modes: usize, input: &OccupationVector, output: &OccupationVector) -> Result<()> {
    if input.modes() != u_modes || output.modes() != u_modes {
        return Err(Error::Dimension(format!(
            "states over {} and {} modes for a {u_modes}-mode unitary",
            input.modes(),
            output.modes()
        )));
    }
    if input.photons() != output.photons() {
        return Err(Error::Input(format!(
            "photon number mismatch: input {} vs output {}",
            input.photons(),
            output.photons()
        )));
    }
    if input.photons() == 0 {
        return Err(Error::Input("states must carry at least one photon".into()));
    }
    Ok(())
}

/// `U_ST`: row `j` of `U` repeated `tⱼ` times, column `i` repeated `sᵢ` times.
pub fn build_submatrix<E: Clone>(
    u: &Matrix<E>,
    input: &OccupationVector,
    output: &OccupationVector,
) -> Result<Matrix<E>> {
    if !u.is_square() {
        return Err(Error::Dimension(format!(
            "{}x{} is not square",
            u.rows(),
            u.cols()
        )));
    }
    check_pair(u.rows(), input, output)?;
    let cols = input.mode_indices();
    let rows = output.mode_indices();
    Ok(Matrix::from_fn(rows.len(), cols.len(), |r, c| {
        u[(rows[r], cols[c])].clone()
    }))
}

/// Transition amplitude `Per(U_ST)` before normalization.
pub(crate) fn transition_permanent<T: Real>(
    u: &ComplexMatrix<T>,
    input: &OccupationVector,
    output: &OccupationVector,
    cap: usize,
) -> Result<Complex<T>> {
    permanent_capped(&build_submatrix(u, input, output)?, cap)
}

pub fn transition_probability<T: Real>(
    u: &ComplexMatrix<T>,
    input: &OccupationVector,
    output: &OccupationVector,
) -> Result<T> {
    transition_probability_capped(u, input, output, DEFAULT_PERMANENT_CAP)
}

pub fn transition_probability_capped<T: Real>(
    u: &ComplexMatrix<T>,
    input: &OccupationVector,
    output: &OccupationVector,
    cap: usize,
) -> Result<T> {
    let per = transition_permanent(u, input, output, cap)?;
    Ok(per.norm_sqr() / (occupation_factorials::<T>(input) * occupation_factorials::<T>(output)))
}

/// Classical transfer probability of distinguishable photons.
pub fn distinguishable_probability<T: Real>(
    u: &ComplexMatrix<T>,
    input: &OccupationVector,
    output: &OccupationVector,
    cap: usize,
) -> Result<T> {
    let sub = build_submatrix(u, input, output)?.map(|z| z.norm_sqr());
    Ok(permanent_capped(&sub, cap)? / occupation_factorials::<T>(output))
}

fn distribution_with<T: Real>(
    u: &ComplexMatrix<T>,
    input: &OccupationVector,
    cfg: &SimConfig,
    prob: impl Fn(&OccupationVector) -> Result<T>,
) -> Result<ProbDist<T>> {
    u.ensure_unitary()?;
    if input.modes() != u.rows() {
        return Err(Error::Dimension(format!(
            "input over {} modes for a {}-mode unitary",
            input.modes(),
            u.rows()
        )));
    }
    let n = input.photons();
    if n == 0 {
        return Err(Error::Input("input state carries no photons".into()));
    }
    if n > cfg.permanent_cap {
        return Err(Error::Size {
            what: "photon number",
            size: n,
            cap: cfg.permanent_cap,
        });
    }
    let outcomes = enumerate_outcomes(u.rows(), n, cfg.max_outcomes)?;
    let mut pairs = Vec::with_capacity(outcomes.len());
    for t in outcomes {
        // round-off can leave an exactly suppressed outcome a hair below zero
        let p = prob(&t)?.max(T::zero()).min(T::one());
        pairs.push((t, p));
    }
    let dist = ProbDist::from_pairs(pairs)?;
    dist.check_normalized(T::norm_tol())?;
    Ok(dist)
}

/// Full output distribution of indistinguishable photons.
pub fn output_distribution<T: Real>(
    u: &ComplexMatrix<T>,
    input: &OccupationVector,
) -> Result<ProbDist<T>> {
    output_distribution_with(u, input, &SimConfig::default())
}

pub fn output_distribution_with<T: Real>(
    u: &ComplexMatrix<T>,
    input: &OccupationVector,
    cfg: &SimConfig,
) -> Result<ProbDist<T>> {
    distribution_with(u, input, cfg, |t| {
        transition_probability_capped(u, input, t, cfg.permanent_cap)
    })
}

/// Full output distribution of fully distinguishable photons.
pub fn distinguishable_distribution<T: Real>(
    u: &ComplexMatrix<T>,
    input: &OccupationVector,
) -> Result<ProbDist<T>> {
    distinguishable_distribution_with(u, input, &SimConfig::default())
}

pub fn distinguishable_distribution_with<T: Real>(
    u: &ComplexMatrix<T>,
    input: &OccupationVector,
    cfg: &SimConfig,
) -> Result<ProbDist<T>> {
    distribution_with(u, input, cfg, |t| {
        distinguishable_probability(u, input, t, cfg.permanent_cap)
    })
}

/// `|Tr(U†V)| / m`, insensitive to a global phase on either argument.
pub fn fidelity<T: Real>(u: &ComplexMatrix<T>, v: &ComplexMatrix<T>) -> Result<T> {
    if u.rows() != v.rows() || u.cols() != v.cols() {
        return Err(Error::Dimension(format!(
            "fidelity between {}x{} and {}x{}",
            u.rows(),
            u.cols(),
            v.rows(),
            v.cols()
        )));
    }
    u.ensure_unitary()?;
    v.ensure_unitary()?;
    let mut tr = Complex::<T>::zero();
    for r in 0..u.rows() {
        for c in 0..u.cols() {
            tr += u[(r, c)].conj() * v[(r, c)];
        }
    }
    Ok(tr.norm() / T::lit(u.rows() as f64))
}

/// Removes the input/output phase freedom `U → D₁ U D₂` by rotating the
/// first row, then the first column, onto the nonnegative real axis.
/// Entries with modulus below `1e-9` are left unrotated.
pub fn canonical_phase_form<T: Real>(u: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let eps = T::lit(1e-9);
    let mut out = u.clone();
    for c in 0..out.cols() {
        let z = out[(0, c)];
        if z.norm() > eps {
            let rot = z.conj() / z.norm();
            for r in 0..out.rows() {
                out[(r, c)] *= rot;
            }
        }
    }
    for r in 1..out.rows() {
        let z = out[(r, 0)];
        if z.norm() > eps {
            let rot = z.conj() / z.norm();
            for x in out.row_mut(r) {
                *x *= rot;
            }
        }
    }
    out
}

/// Fidelity after fixing external phases of both unitaries, the recovery
/// metric for intensity-only reconstruction.
pub fn phase_fixed_fidelity<T: Real>(u: &ComplexMatrix<T>, v: &ComplexMatrix<T>) -> Result<T> {
    fidelity(&canonical_phase_form(u), &canonical_phase_form(v))
}
