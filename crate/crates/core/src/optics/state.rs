use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Fock state `|r₁ … r_m⟩`: photon count per mode.
///
/// Internal indices are 0-based; `from_labels` and `labels` speak the
/// 1-based mode labels used at every external interface.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OccupationVector(Vec<usize>);

impl OccupationVector {
    pub fn new(occupations: Vec<usize>) -> Result<Self> {
        if occupations.is_empty() {
            return Err(Error::Input(
                "occupation vector needs at least one mode".into(),
            ));
        }
        Ok(Self(occupations))
    }

    /// Builds the state from 1-based per-photon mode labels, e.g. `[2, 6]`.
    pub fn from_labels(modes: usize, labels: &[usize]) -> Result<Self> {
        if modes == 0 {
            return Err(Error::Input("zero modes".into()));
        }
        let mut occ = vec![0; modes];
        for &l in labels {
            if l == 0 || l > modes {
                return Err(Error::Input(format!("mode label {l} outside 1..={modes}")));
            }
            occ[l - 1] += 1;
        }
        Ok(Self(occ))
    }

    pub fn modes(&self) -> usize {
        self.0.len()
    }

    pub fn photons(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn occupations(&self) -> &[usize] {
        &self.0
    }

    /// 0-based mode index of every photon, ascending, with multiplicity.
    pub fn mode_indices(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &r)| std::iter::repeat_n(i, r))
            .collect()
    }

    /// 1-based mode label of every photon, ascending, with multiplicity.
    pub fn labels(&self) -> Vec<usize> {
        self.mode_indices().into_iter().map(|i| i + 1).collect()
    }

    /// Comma-free occupation code, one digit per mode (`01000100`).
    pub fn code(&self) -> Result<String> {
        self.0
            .iter()
            .map(|&r| {
                char::from_digit(r as u32, 10)
                    .filter(|_| r < 10)
                    .ok_or_else(|| Error::Input(format!("occupation {r} has no single-digit code")))
            })
            .collect()
    }

    pub fn parse_code(code: &str) -> Result<Self> {
        let occ = code
            .trim()
            .chars()
            .map(|ch| {
                ch.to_digit(10)
                    .map(|d| d as usize)
                    .ok_or_else(|| Error::Parse(format!("bad occupation code {code:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(occ)
    }
}

impl fmt::Display for OccupationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.0 {
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

/// Number of `n`-photon states over `m` modes, `C(m + n − 1, n)`; `None` on overflow.
pub fn outcome_count(modes: usize, photons: usize) -> Option<usize> {
    let mut acc: u128 = 1;
    for k in 1..=photons as u128 {
        acc = acc.checked_mul(modes as u128 + k - 1)? / k;
    }
    usize::try_from(acc).ok()
}

/// All `n`-photon states over `m` modes in canonical order.
///
/// The order is ascending on the sorted per-photon mode list, i.e.
/// `(1,1), (1,2), …, (1,m), (2,2), …` for two photons; equivalently
/// descending lexicographic order on the occupation vectors.
pub fn enumerate_outcomes(
    modes: usize,
    photons: usize,
    cap: usize,
) -> Result<Vec<OccupationVector>> {
    let count = outcome_count(modes, photons).unwrap_or(usize::MAX);
    if count > cap {
        return Err(Error::Size {
            what: "outcome count",
            size: count,
            cap,
        });
    }
    let mut out = Vec::with_capacity(count);
    if photons == 0 {
        out.push(OccupationVector(vec![0; modes]));
        return Ok(out);
    }
    let mut idx = vec![0usize; photons];
    loop {
        let mut occ = vec![0; modes];
        for &i in &idx {
            occ[i] += 1;
        }
        out.push(OccupationVector(occ));

        // next non-decreasing index tuple
        let Some(pos) = (0..photons).rev().find(|&p| idx[p] + 1 < modes) else {
            break;
        };
        let v = idx[pos] + 1;
        for slot in &mut idx[pos..] {
            *slot = v;
        }
    }
    Ok(out)
}
