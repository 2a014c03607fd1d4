//! Majorization of probability vectors and step-by-step ordering of
//! distribution sequences.
//!
//! `y` majorizes `x` (`x ≺ y`) when every prefix sum of `y` sorted in
//! decreasing order dominates the corresponding prefix sum of `x`. Vectors
//! of different length are compared after padding the shorter with zeros,
//! which never changes a verdict.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::optics::ProbDist;
use crate::scalar::Real;

/// Default comparison slack for exact simulations.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Probabilities in non-increasing order; outcome identities are dropped.
#[derive(Clone, Debug, PartialEq)]
pub struct SortedProbVector<T> {
    values: Vec<T>,
}

impl<T: Real> SortedProbVector<T> {
    /// Sorts arbitrary values in decreasing order. Ties keep input order.
    pub fn from_values(mut values: Vec<T>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Input("empty probability vector".into()));
        }
        if let Some(v) = values
            .iter()
            .find(|v| !v.is_finite() || **v < T::zero() || **v > T::one())
        {
            return Err(Error::Input(format!("probability {v} outside [0,1]")));
        }
        values.sort_by(|a, b| b.partial_cmp(a).expect("finite values"));
        Ok(Self { values })
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Appends zeros up to length `d`.
    pub fn padded(&self, d: usize) -> Self {
        let mut values = self.values.clone();
        values.resize(d.max(values.len()), T::zero());
        Self { values }
    }
}

pub fn sort_descending<T: Real>(p: &ProbDist<T>) -> SortedProbVector<T> {
    SortedProbVector::from_values(p.probabilities()).expect("ProbDist holds probabilities in [0,1]")
}

/// Partial cumulative sums `C(k)` of a sorted vector, `k = 1..d`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LorenzCurve<T> {
    pub cumulative: Vec<T>,
    pub sigma: Option<Vec<T>>,
}

impl<T: Real> LorenzCurve<T> {
    pub fn len(&self) -> usize {
        self.cumulative.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cumulative.is_empty()
    }

    /// Extends to length `d`; zero-padding the distribution repeats `C(d)`
    /// and the last sigma.
    pub fn padded(&self, d: usize) -> Self {
        let extend = |v: &Vec<T>| {
            let mut v = v.clone();
            let last = *v.last().expect("nonempty curve");
            v.resize(d.max(v.len()), last);
            v
        };
        Self {
            cumulative: extend(&self.cumulative),
            sigma: self.sigma.as_ref().map(extend),
        }
    }
}

pub fn lorenz<T: Real>(v: &SortedProbVector<T>) -> LorenzCurve<T> {
    let mut acc = T::zero();
    let cumulative = v
        .values
        .iter()
        .map(|&p| {
            acc += p;
            acc
        })
        .collect();
    LorenzCurve {
        cumulative,
        sigma: None,
    }
}

pub fn lorenz_of<T: Real>(p: &ProbDist<T>) -> LorenzCurve<T> {
    lorenz(&sort_descending(p))
}

/// True iff `y` majorizes `x`: `C_x(k) ≤ C_y(k) + tol` for every `k`.
pub fn majorizes<T: Real>(
    y: &SortedProbVector<T>,
    x: &SortedProbVector<T>,
    tol: T,
) -> Result<bool> {
    if y.is_empty() || x.is_empty() {
        return Err(Error::Input("cannot compare empty vectors".into()));
    }
    let d = y.len().max(x.len());
    let (cy, cx) = (lorenz(&y.padded(d)), lorenz(&x.padded(d)));
    Ok(cx
        .cumulative
        .iter()
        .zip(&cy.cumulative)
        .all(|(a, b)| *a <= *b + tol))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    /// Each distribution is majorized by its successor (distributions steepen).
    Direct,
    /// Each distribution majorizes its successor (distributions flatten).
    Reverse,
    /// Both orderings hold at every step: the curves coincide within tolerance.
    Equal,
    None,
}

impl Verdict {
    fn from_flags(direct: bool, reverse: bool) -> Self {
        match (direct, reverse) {
            (true, true) => Verdict::Equal,
            (true, false) => Verdict::Direct,
            (false, true) => Verdict::Reverse,
            (false, false) => Verdict::None,
        }
    }
}

/// Smallest prefix-sum margin of one ordering at one step.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Margin<T> {
    /// 1-based prefix length attaining the minimum.
    pub k: usize,
    pub margin: T,
    /// `margin / sqrt(σ_a(k)² + σ_b(k)²)` when both curves carry sigmas.
    pub sigma_units: Option<T>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StepDetail<T> {
    /// 1-based index `s` of the step `s → s+1`.
    pub step: usize,
    pub verdict: Verdict,
    /// Worst `C_{s+1}(k) − C_s(k)`; nonnegative (within tol) when `p_s ≺ p_{s+1}`.
    pub direct: Margin<T>,
    /// Worst `C_s(k) − C_{s+1}(k)`; nonnegative (within tol) when `p_s ≻ p_{s+1}`.
    pub reverse: Margin<T>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StepwiseReport<T> {
    pub verdict: Verdict,
    pub direct_holds: bool,
    pub reverse_holds: bool,
    pub tol: T,
    pub steps: Vec<StepDetail<T>>,
}

fn worst_margin<T: Real>(upper: &LorenzCurve<T>, lower: &LorenzCurve<T>) -> Margin<T> {
    let mut best: Option<Margin<T>> = None;
    for k in 0..upper.len() {
        let margin = upper.cumulative[k] - lower.cumulative[k];
        if best.as_ref().is_none_or(|b| margin < b.margin) {
            let sigma_units = match (&upper.sigma, &lower.sigma) {
                (Some(su), Some(sl)) => {
                    let s = (su[k] * su[k] + sl[k] * sl[k]).sqrt();
                    (s > T::zero()).then(|| margin / s)
                }
                _ => None,
            };
            best = Some(Margin {
                k: k + 1,
                margin,
                sigma_units,
            });
        }
    }
    best.expect("nonempty curves")
}

/// Step-by-step majorization over Lorenz curves (possibly with sigmas).
pub fn stepwise_verdict_curves<T: Real>(
    curves: &[LorenzCurve<T>],
    tol: T,
) -> Result<StepwiseReport<T>> {
    if curves.len() < 2 {
        return Err(Error::Input(format!(
            "need at least 2 distributions, got {}",
            curves.len()
        )));
    }
    if curves.iter().any(|c| c.is_empty()) {
        return Err(Error::Input("empty Lorenz curve".into()));
    }
    let d = curves.iter().map(LorenzCurve::len).max().unwrap_or(0);
    let curves: Vec<_> = curves.iter().map(|c| c.padded(d)).collect();
    let mut steps = Vec::with_capacity(curves.len() - 1);
    for (s, pair) in curves.windows(2).enumerate() {
        let (now, next) = (&pair[0], &pair[1]);
        let direct = worst_margin(next, now);
        let reverse = worst_margin(now, next);
        let verdict = Verdict::from_flags(direct.margin >= -tol, reverse.margin >= -tol);
        steps.push(StepDetail {
            step: s + 1,
            verdict,
            direct,
            reverse,
        });
    }
    let direct_holds = steps
        .iter()
        .all(|s| matches!(s.verdict, Verdict::Direct | Verdict::Equal));
    let reverse_holds = steps
        .iter()
        .all(|s| matches!(s.verdict, Verdict::Reverse | Verdict::Equal));
    Ok(StepwiseReport {
        verdict: Verdict::from_flags(direct_holds, reverse_holds),
        direct_holds,
        reverse_holds,
        tol,
        steps,
    })
}

/// `direct` iff `p⁽ˢ⁾ ≺ p⁽ˢ⁺¹⁾` for all `s`, `reverse` iff `p⁽ˢ⁾ ≻ p⁽ˢ⁺¹⁾` for all `s`.
pub fn stepwise_verdict<T: Real>(seq: &[ProbDist<T>], tol: T) -> Result<StepwiseReport<T>> {
    let curves: Vec<_> = seq.iter().map(lorenz_of).collect();
    stepwise_verdict_curves(&curves, tol)
}
