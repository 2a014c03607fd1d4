use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::optics::state::OccupationVector;
use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome<T> {
    pub state: OccupationVector,
    pub probability: T,
    pub sigma: Option<T>,
}

/// Probability distribution over photon-number outcomes, optionally with a
/// standard deviation per outcome (measured or resampled data).
#[derive(Clone, Debug, PartialEq)]
pub struct ProbDist<T> {
    outcomes: Vec<Outcome<T>>,
}

impl<T: Real> ProbDist<T> {
    /// Validates outcome consistency: nonempty, distinct states sharing mode
    /// and photon counts, probabilities in `[0, 1]`, sigmas nonnegative.
    /// Normalization is checked separately by [`ProbDist::check_normalized`].
    pub fn new(outcomes: Vec<Outcome<T>>) -> Result<Self> {
        let first = outcomes
            .first()
            .ok_or_else(|| Error::Input("empty distribution".into()))?;
        let (m, n) = (first.state.modes(), first.state.photons());
        let mut seen = HashSet::with_capacity(outcomes.len());
        for o in &outcomes {
            if o.state.modes() != m || o.state.photons() != n {
                return Err(Error::Input(format!(
                    "outcome {} does not share m={m}, n={n}",
                    o.state
                )));
            }
            if !seen.insert(&o.state) {
                return Err(Error::Input(format!("duplicate outcome {}", o.state)));
            }
            let p = o.probability;
            if !p.is_finite() || p < T::zero() || p > T::one() {
                return Err(Error::Input(format!(
                    "probability {p} of {} outside [0,1]",
                    o.state
                )));
            }
            if let Some(s) = o.sigma {
                if !s.is_finite() || s < T::zero() {
                    return Err(Error::Input(format!(
                        "negative or non-finite sigma for {}",
                        o.state
                    )));
                }
            }
        }
        Ok(Self { outcomes })
    }

    /// Pairs states with probabilities, no sigmas.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (OccupationVector, T)>) -> Result<Self> {
        Self::new(
            pairs
                .into_iter()
                .map(|(state, probability)| Outcome {
                    state,
                    probability,
                    sigma: None,
                })
                .collect(),
        )
    }

    /// Builds a new distribution from `self`'s states with replaced values.
    pub(crate) fn with_values(&self, probs: &[T], sigmas: Option<&[T]>) -> Self {
        debug_assert_eq!(probs.len(), self.outcomes.len());
        Self {
            outcomes: self
                .outcomes
                .iter()
                .enumerate()
                .map(|(i, o)| Outcome {
                    state: o.state.clone(),
                    probability: probs[i],
                    sigma: sigmas.map(|s| s[i]),
                })
                .collect(),
        }
    }

    pub fn outcomes(&self) -> &[Outcome<T>] {
        &self.outcomes
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    pub fn modes(&self) -> usize {
        self.outcomes[0].state.modes()
    }

    pub fn photons(&self) -> usize {
        self.outcomes[0].state.photons()
    }

    pub fn probabilities(&self) -> Vec<T> {
        self.outcomes.iter().map(|o| o.probability).collect()
    }

    /// Per-outcome sigmas, `None` unless every outcome carries one.
    pub fn sigmas(&self) -> Option<Vec<T>> {
        self.outcomes.iter().map(|o| o.sigma).collect()
    }

    pub fn has_sigmas(&self) -> bool {
        self.outcomes.iter().all(|o| o.sigma.is_some())
    }

    pub fn total(&self) -> T {
        self.outcomes
            .iter()
            .fold(T::zero(), |acc, o| acc + o.probability)
    }

    pub fn probability_of(&self, state: &OccupationVector) -> Option<T> {
        self.outcomes
            .iter()
            .find(|o| &o.state == state)
            .map(|o| o.probability)
    }

    /// Checks that the total is one: within `tol` for exact data, within
    /// `3·Σσ` (or `tol`, whichever is larger) when sigmas are present.
    pub fn check_normalized(&self, tol: T) -> Result<()> {
        let total = self.total();
        let sigma_sum = self
            .outcomes
            .iter()
            .fold(T::zero(), |acc, o| acc + o.sigma.unwrap_or(T::zero()));
        let allowed = tol.max(T::lit(3.0) * sigma_sum);
        if (total - T::one()).abs() <= allowed {
            Ok(())
        } else {
            Err(Error::NotNormalized {
                total: total.to_f64().unwrap_or(f64::NAN),
            })
        }
    }
}
