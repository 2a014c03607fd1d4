use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optics::{OccupationVector, Outcome, ProbDist};

/// Single-photon and multi-photon output distributions keyed by input.
///
/// Single-photon entries are keyed by the 1-based input mode; multi-photon
/// entries by the sorted 1-based input labels (`[2, 6]`).
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementSet {
    pub modes: usize,
    pub single_photon: BTreeMap<usize, ProbDist<f64>>,
    pub two_photon: BTreeMap<Vec<usize>, ProbDist<f64>>,
}

/// One measured probability with its input and output states.
#[derive(Clone, Debug, PartialEq)]
pub struct DataPoint {
    pub input: OccupationVector,
    pub output: OccupationVector,
    pub measured: f64,
    pub sigma: Option<f64>,
}

impl MeasurementSet {
    pub fn new(modes: usize) -> Self {
        Self {
            modes,
            single_photon: BTreeMap::new(),
            two_photon: BTreeMap::new(),
        }
    }

    /// Every stored probability, single-photon entries first, each map in key order.
    pub fn data_points(&self) -> Result<Vec<DataPoint>> {
        let mut points = Vec::new();
        for (&mode, dist) in &self.single_photon {
            let input = OccupationVector::from_labels(self.modes, &[mode])?;
            push_points(&mut points, &input, dist);
        }
        for (labels, dist) in &self.two_photon {
            let input = OccupationVector::from_labels(self.modes, labels)?;
            push_points(&mut points, &input, dist);
        }
        Ok(points)
    }

    pub fn len(&self) -> usize {
        self.single_photon
            .values()
            .chain(self.two_photon.values())
            .map(ProbDist::len)
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn has_sigmas(&self) -> bool {
        self.single_photon
            .values()
            .chain(self.two_photon.values())
            .all(ProbDist::has_sigmas)
    }

    /// Noiseless data for `u`: all single-photon inputs and every
    /// unordered two-photon input pair (including bunched ones).
    pub fn synthesize(u: &crate::matrix::ComplexMatrix<f64>, sigma: Option<f64>) -> Result<Self> {
        let m = u.rows();
        let mut set = Self::new(m);
        let attach = |d: ProbDist<f64>| match sigma {
            None => d,
            Some(s) => {
                let sig = vec![s; d.len()];
                d.with_values(&d.probabilities(), Some(&sig))
            }
        };
        for i in 1..=m {
            let input = OccupationVector::from_labels(m, &[i])?;
            set.single_photon
                .insert(i, attach(crate::optics::output_distribution(u, &input)?));
        }
        for i in 1..=m {
            for j in i..=m {
                let input = OccupationVector::from_labels(m, &[i, j])?;
                set.two_photon.insert(
                    vec![i, j],
                    attach(crate::optics::output_distribution(u, &input)?),
                );
            }
        }
        Ok(set)
    }

    pub fn to_json(&self) -> Result<String> {
        let single_photon = self
            .single_photon
            .iter()
            .map(|(k, d)| Ok((k.to_string(), RawEntry::from_dist(d, false)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let two_photon = self
            .two_photon
            .iter()
            .map(|(k, d)| Ok((join_labels(k), RawEntry::from_dist(d, true)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let raw = RawSet {
            modes: self.modes,
            single_photon,
            two_photon,
        };
        Ok(serde_json::to_string_pretty(&raw)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawSet = serde_json::from_str(text)?;
        let m = raw.modes;
        if m == 0 {
            return Err(Error::Input("measurement set with zero modes".into()));
        }
        let mut set = Self::new(m);
        for (key, entry) in raw.single_photon {
            let mode: usize = key.trim().parse().map_err(|_| {
                Error::Parse(format!("single-photon key {key:?} is not a mode label"))
            })?;
            if mode == 0 || mode > m {
                return Err(Error::Input(format!(
                    "single-photon input mode {mode} outside 1..={m}"
                )));
            }
            if entry.outcomes.is_some() {
                return Err(Error::Input(format!(
                    "single-photon entry {key} must not list outcomes"
                )));
            }
            let states = (1..=m)
                .map(|j| OccupationVector::from_labels(m, &[j]))
                .collect::<Result<Vec<_>>>()?;
            set.single_photon
                .insert(mode, entry.into_dist(&key, states)?);
        }
        for (key, entry) in raw.two_photon {
            let mut labels = parse_labels(&key)?;
            labels.sort_unstable();
            let codes = entry
                .outcomes
                .as_ref()
                .ok_or_else(|| Error::Input(format!("entry {key:?} lists no outcomes")))?;
            let states = codes
                .iter()
                .map(|c| OccupationVector::parse_code(c))
                .collect::<Result<Vec<_>>>()?;
            for s in &states {
                if s.modes() != m || s.photons() != labels.len() {
                    return Err(Error::Input(format!(
                        "outcome {s} does not match input {key:?} on {m} modes"
                    )));
                }
            }
            // validates label range
            OccupationVector::from_labels(m, &labels)?;
            let dist = entry.into_dist(&key, states)?;
            if set.two_photon.insert(labels, dist).is_some() {
                return Err(Error::Input(format!("duplicate input key {key:?}")));
            }
        }
        Ok(set)
    }
}

fn push_points(points: &mut Vec<DataPoint>, input: &OccupationVector, dist: &ProbDist<f64>) {
    for o in dist.outcomes() {
        points.push(DataPoint {
            input: input.clone(),
            output: o.state.clone(),
            measured: o.probability,
            sigma: o.sigma,
        });
    }
}

fn join_labels(labels: &[usize]) -> String {
    labels
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_labels(key: &str) -> Result<Vec<usize>> {
    key.split(',')
        .map(|t| {
            t.trim().parse::<usize>().map_err(|_| {
                Error::Parse(format!("input key {key:?} is not a list of mode labels"))
            })
        })
        .collect()
}

#[derive(Serialize, Deserialize)]
struct RawSet {
    modes: usize,
    #[serde(default)]
    single_photon: BTreeMap<String, RawEntry>,
    #[serde(default)]
    two_photon: BTreeMap<String, RawEntry>,
}

#[derive(Serialize, Deserialize)]
struct RawEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    outcomes: Option<Vec<String>>,
    probs: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sigmas: Option<Vec<f64>>,
}

impl RawEntry {
    fn from_dist(d: &ProbDist<f64>, with_outcomes: bool) -> Result<Self> {
        Ok(Self {
            outcomes: if with_outcomes {
                Some(
                    d.outcomes()
                        .iter()
                        .map(|o| o.state.code())
                        .collect::<Result<_>>()?,
                )
            } else {
                None
            },
            probs: d.probabilities(),
            sigmas: d.sigmas(),
        })
    }

    fn into_dist(self, key: &str, states: Vec<OccupationVector>) -> Result<ProbDist<f64>> {
        if self.probs.len() != states.len() {
            return Err(Error::Input(format!(
                "entry {key:?}: {} probabilities for {} outcomes",
                self.probs.len(),
                states.len()
            )));
        }
        if let Some(s) = &self.sigmas {
            if s.len() != states.len() {
                return Err(Error::Input(format!(
                    "entry {key:?}: {} sigmas for {} outcomes",
                    s.len(),
                    states.len()
                )));
            }
        }
        let outcomes = states
            .into_iter()
            .enumerate()
            .map(|(i, state)| Outcome {
                state,
                probability: self.probs[i],
                sigma: self.sigmas.as_ref().map(|s| s[i]),
            })
            .collect();
        ProbDist::new(outcomes)
    }
}
