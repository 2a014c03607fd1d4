//! Suppression-law validation for Fourier interferometers.
//!
//! A cyclic input places one photon in each of the modes
//! `j(a, b) = b + (a − 1)·n^{p−1}`, `a = 1..n`, of an `m = n^p` mode Fourier
//! interferometer. For such inputs every output whose 1-based photon labels
//! sum to a value not divisible by `n` has zero probability.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::optics::{OccupationVector, ProbDist};
use crate::scalar::Real;

/// One cyclic input per `b ∈ 1..=n^{p−1}`, over `n^p` modes.
pub fn cyclic_inputs(n: usize, p: u32) -> Result<Vec<OccupationVector>> {
    if n < 2 || p == 0 {
        return Err(Error::Input(format!(
            "cyclic inputs need n ≥ 2 and p ≥ 1 (got n={n}, p={p})"
        )));
    }
    let stride = n
        .checked_pow(p - 1)
        .ok_or_else(|| Error::Input(format!("{n}^{p} modes overflow")))?;
    let m = stride * n;
    (1..=stride)
        .map(|b| {
            let labels: Vec<usize> = (1..=n).map(|a| b + (a - 1) * stride).collect();
            OccupationVector::from_labels(m, &labels)
        })
        .collect()
}

/// True iff the 1-based label sum of the `n` photons in `t` is not divisible by `n`.
pub fn is_suppressed(t: &OccupationVector, n: usize) -> Result<bool> {
    if n == 0 || t.photons() != n {
        return Err(Error::Input(format!(
            "state {t} carries {} photons, expected {n}",
            t.photons()
        )));
    }
    let sum: usize = t.labels().iter().sum();
    Ok(!sum.is_multiple_of(n))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OutcomeEntry<T> {
    pub outcome: String,
    pub probability: T,
    pub suppressed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuppressionReport<T> {
    pub suppressed_mass: T,
    pub suppressed_count: usize,
    pub allowed_count: usize,
    pub per_outcome: Vec<OutcomeEntry<T>>,
}

pub fn suppression_report<T: Real>(dist: &ProbDist<T>, n: usize) -> Result<SuppressionReport<T>> {
    let mut suppressed_mass = T::zero();
    let mut suppressed_count = 0;
    let mut per_outcome = Vec::with_capacity(dist.len());
    for o in dist.outcomes() {
        let suppressed = is_suppressed(&o.state, n)?;
        if suppressed {
            suppressed_mass += o.probability;
            suppressed_count += 1;
        }
        per_outcome.push(OutcomeEntry {
            outcome: o.state.code()?,
            probability: o.probability,
            suppressed,
        });
    }
    Ok(SuppressionReport {
        suppressed_mass,
        suppressed_count,
        allowed_count: dist.len() - suppressed_count,
        per_outcome,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InputClass {
    SameMode,
    OddSum,
    EvenSumNoncyclic,
    Cyclic,
}

/// Class of the two-photon input `(i, j)` on `m = 2^p` modes (1-based, `i ≤ j`).
pub fn classify_two_photon_input(i: usize, j: usize, m: usize) -> Result<InputClass> {
    if m < 2 || !m.is_power_of_two() {
        return Err(Error::Input(format!(
            "mode count {m} is not a power of two"
        )));
    }
    if i == 0 || i > j || j > m {
        return Err(Error::Input(format!(
            "pair ({i},{j}) must satisfy 1 ≤ i ≤ j ≤ {m}"
        )));
    }
    Ok(if i == j {
        InputClass::SameMode
    } else if j - i == m / 2 {
        InputClass::Cyclic
    } else if (i + j) % 2 == 1 {
        InputClass::OddSum
    } else {
        InputClass::EvenSumNoncyclic
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(v: &[OccupationVector]) -> Vec<Vec<usize>> {
        v.iter().map(|s| s.labels()).collect()
    }

    #[test]
    fn cyclic_examples() {
        assert_eq!(
            pairs(&cyclic_inputs(2, 3).unwrap()),
            [[1, 5], [2, 6], [3, 7], [4, 8]]
        );
        assert_eq!(pairs(&cyclic_inputs(2, 1).unwrap()), [[1, 2]]);
        assert_eq!(
            pairs(&cyclic_inputs(3, 2).unwrap()),
            [[1, 4, 7], [2, 5, 8], [3, 6, 9]]
        );
        assert!(cyclic_inputs(1, 3).is_err());
        assert!(cyclic_inputs(2, 0).is_err());
    }

    #[test]
    fn suppression_examples() {
        let s = |l: &[usize]| OccupationVector::from_labels(8, l).unwrap();
        assert!(!is_suppressed(&s(&[1, 3]), 2).unwrap());
        assert!(is_suppressed(&s(&[1, 2]), 2).unwrap());
        assert!(!is_suppressed(&s(&[3, 3]), 2).unwrap());
        assert!(is_suppressed(&s(&[1, 2, 3]), 2).is_err());
    }

    #[test]
    fn classifier_examples() {
        assert_eq!(
            classify_two_photon_input(5, 5, 8).unwrap(),
            InputClass::SameMode
        );
        assert_eq!(
            classify_two_photon_input(5, 6, 8).unwrap(),
            InputClass::OddSum
        );
        assert_eq!(
            classify_two_photon_input(5, 7, 8).unwrap(),
            InputClass::EvenSumNoncyclic
        );
        assert_eq!(
            classify_two_photon_input(2, 6, 8).unwrap(),
            InputClass::Cyclic
        );
        assert!(classify_two_photon_input(6, 2, 8).is_err());
        assert!(classify_two_photon_input(1, 9, 8).is_err());
        assert!(classify_two_photon_input(1, 2, 6).is_err());
    }

    #[test]
    fn uniform_distribution_mass() {
        let outcomes = crate::optics::enumerate_outcomes(8, 2, 100).unwrap();
        let dist = ProbDist::from_pairs(outcomes.into_iter().map(|s| (s, 1.0f64 / 36.0))).unwrap();
        let r = suppression_report(&dist, 2).unwrap();
        assert_eq!((r.suppressed_count, r.allowed_count), (16, 20));
        assert!((r.suppressed_mass - 16.0 / 36.0).abs() < 1e-15);
    }
}
