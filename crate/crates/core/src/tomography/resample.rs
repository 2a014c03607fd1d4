//! Monte Carlo propagation of measurement noise.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::majorization::{lorenz_of, LorenzCurve};
use crate::optics::ProbDist;
use crate::scalar::Real;
use crate::tomography::data::MeasurementSet;

/// Draws every probability from `Normal(p, σ)`, clamps at zero and
/// renormalizes. An all-zero draw keeps the measured values, and so does a
/// distribution whose sigmas are all zero.
fn resample_one<T: Real, R: rand::Rng + ?Sized>(
    dist: &ProbDist<T>,
    rng: &mut R,
) -> Result<ProbDist<T>> {
    let sigmas = dist
        .sigmas()
        .ok_or_else(|| Error::Input("resampling needs a sigma for every outcome".into()))?;
    if sigmas.iter().all(|s| s.is_zero()) {
        return Ok(dist.clone());
    }
    let mut values: Vec<T> = dist
        .outcomes()
        .iter()
        .zip(&sigmas)
        .map(|(o, &s)| {
            let z: f64 = StandardNormal.sample(rng);
            (o.probability + s * T::lit(z)).max(T::zero())
        })
        .collect();
    let total = values.iter().fold(T::zero(), |a, &v| a + v);
    if total > T::zero() {
        for v in &mut values {
            *v /= total;
        }
    } else {
        values = dist.probabilities();
    }
    Ok(dist.with_values(&values, Some(&sigmas)))
}

/// `count` independent noisy copies of one distribution.
pub fn resample_distribution<T: Real>(
    dist: &ProbDist<T>,
    count: usize,
    seed: u64,
) -> Result<Vec<ProbDist<T>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| resample_one(dist, &mut rng)).collect()
}

/// `count` resampled measurement sets. Within a set, single-photon entries
/// are drawn first, then multi-photon entries, each in key order.
pub fn monte_carlo_resample(
    data: &MeasurementSet,
    count: usize,
    seed: u64,
) -> Result<Vec<MeasurementSet>> {
    if count == 0 {
        return Err(Error::Input("resample count must be positive".into()));
    }
    if !data.has_sigmas() {
        return Err(Error::Input(
            "resampling needs sigmas on every data point".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut set = MeasurementSet::new(data.modes);
        for (k, d) in &data.single_photon {
            set.single_photon.insert(*k, resample_one(d, &mut rng)?);
        }
        for (k, d) in &data.two_photon {
            set.two_photon.insert(k.clone(), resample_one(d, &mut rng)?);
        }
        out.push(set);
    }
    Ok(out)
}

/// Lorenz curve of `central` with `σ(k)` the sample standard deviation of
/// `C(k)` across `resamples`. Each resample is sorted on its own, so the
/// noise in which outcome ranks first shows up in the error bars.
pub fn lorenz_error_bars<T: Real>(
    central: &ProbDist<T>,
    resamples: &[ProbDist<T>],
) -> Result<LorenzCurve<T>> {
    if resamples.len() < 2 {
        return Err(Error::Input(format!(
            "need at least 2 resamples, got {}",
            resamples.len()
        )));
    }
    let mut curve = lorenz_of(central);
    let d = curve.len();
    let curves: Vec<_> = resamples.iter().map(lorenz_of).collect();
    if curves.iter().any(|c| c.len() != d) {
        return Err(Error::Dimension("resamples differ in outcome count".into()));
    }
    let count = T::lit(curves.len() as f64);
    let sigma = (0..d)
        .map(|k| {
            // shifted by the first sample so identical samples give exactly zero
            let shift = curves[0].cumulative[k];
            let mean = curves
                .iter()
                .fold(T::zero(), |a, c| a + (c.cumulative[k] - shift))
                / count;
            let var = curves.iter().fold(T::zero(), |a, c| {
                let dev = c.cumulative[k] - shift - mean;
                a + dev * dev
            }) / (count - T::one());
            var.sqrt()
        })
        .collect();
    curve.sigma = Some(sigma);
    Ok(curve)
}
