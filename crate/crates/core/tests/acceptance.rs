//! Acceptance criteria: one PASS/FAIL line each, nonzero exit on any failure.

mod common;

use std::time::{Duration, Instant};

use common::{fourier, naive_permanent, perturbed_qfft, random_complex, rel_err, rng};
use mpcert::circuit::{build_qfft, circuit_to_unitary, dft_matrix, partial_circuit, wrap_phase};
use mpcert::majorization::{majorizes, stepwise_verdict, SortedProbVector, Verdict};
use mpcert::optics::{
    distinguishable_distribution, output_distribution, permanent, phase_fixed_fidelity,
    OccupationVector, Outcome,
};
use mpcert::tomography::{
    fit_parameters, lorenz_error_bars, resample_distribution, FitConfig, MeasurementSet, ParamKind,
    ParamVector,
};
use mpcert::validation::{cyclic_inputs, is_suppressed};
use mpcert::ProbDist;
use rand::RngExt;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(started: Instant, limit: Duration) -> Result<(), String> {
    ensure(
        started.elapsed() < limit,
        format!("took {:?}, limit {limit:?}", started.elapsed()),
    )
}

fn qfft_synthesis() -> Check {
    let t = Instant::now();
    let mut worst = 0.0f64;
    for p in 1..=4u32 {
        let c = build_qfft::<f64>(p).map_err(|e| e.to_string())?;
        let m = 1usize << p;
        ensure(
            c.mixer_count() == m / 2 * p as usize,
            format!("p={p}: {} mixers", c.mixer_count()),
        )?;
        let u = circuit_to_unitary(&c).map_err(|e| e.to_string())?;
        let diff = u
            .max_abs_diff(&dft_matrix(m))
            .unwrap()
            .max(u.max_abs_diff(&fourier(m)).unwrap());
        ensure(
            diff <= 1e-10,
            format!("p={p}: max entry deviation {diff:e}"),
        )?;
        worst = worst.max(diff);
    }
    within(t, Duration::from_secs(1))?;
    Ok(format!(
        "p=1..4 max deviation {worst:.1e}, (m/2)·p mixers, {:?}",
        t.elapsed()
    ))
}

fn permanent_oracle() -> Check {
    let t = Instant::now();
    let mut r = rng(2024);
    let mut worst = 0.0f64;
    for n in 2..=6 {
        for _ in 0..100 {
            let m = random_complex(&mut r, n, n);
            let err = rel_err(
                permanent(&m).map_err(|e| e.to_string())?,
                naive_permanent(&m),
            );
            worst = worst.max(err);
        }
    }
    ensure(worst <= 1e-12, format!("relative error {worst:e}"))?;
    within(t, Duration::from_secs(5))?;
    Ok(format!(
        "500 matrices, max relative error {worst:.1e}, {:?}",
        t.elapsed()
    ))
}

fn outcome_count() -> Check {
    let u = dft_matrix::<f64>(8);
    let s = OccupationVector::from_labels(8, &[2, 6]).unwrap();
    let d = output_distribution(&u, &s).map_err(|e| e.to_string())?;
    ensure(d.len() == 36, format!("{} outcomes", d.len()))?;
    ensure(
        (d.total() - 1.0).abs() <= 1e-9,
        format!("total {}", d.total()),
    )?;
    Ok(format!("36 outcomes, total − 1 = {:.1e}", d.total() - 1.0))
}

fn suppression_law() -> Check {
    let t = Instant::now();
    let u = dft_matrix::<f64>(8);
    let mut worst = 0.0f64;
    for input in cyclic_inputs(2, 3).unwrap() {
        let q = output_distribution(&u, &input).map_err(|e| e.to_string())?;
        let odd: Vec<_> = q
            .outcomes()
            .iter()
            .filter(|o| is_suppressed(&o.state, 2).unwrap())
            .collect();
        ensure(
            odd.len() == 16,
            format!("{input}: {} odd-sum outcomes", odd.len()),
        )?;
        worst = odd.iter().map(|o| o.probability).fold(worst, f64::max);
        let c = distinguishable_distribution(&u, &input).map_err(|e| e.to_string())?;
        ensure(
            c.probabilities().iter().all(|&p| p > 0.0),
            format!("{input}: distinguishable zero"),
        )?;
    }
    ensure(worst <= 1e-12, format!("suppressed probability {worst:e}"))?;
    within(t, Duration::from_secs(1))?;
    Ok(format!(
        "4 cyclic inputs, max odd-sum probability {worst:.1e}, distinguishable all > 0"
    ))
}

fn chain(input: &[usize]) -> Result<Vec<ProbDist>, String> {
    let c = build_qfft::<f64>(3).map_err(|e| e.to_string())?;
    let s = OccupationVector::from_labels(8, input).map_err(|e| e.to_string())?;
    (1..=3)
        .map(|k| {
            let u = circuit_to_unitary(&partial_circuit(&c, k).unwrap()).unwrap();
            output_distribution(&u, &s).map_err(|e| e.to_string())
        })
        .collect()
}

fn single_photon_chain() -> Check {
    for i in 1..=8 {
        let ds = chain(&[i])?;
        let supports: Vec<usize> = ds
            .iter()
            .map(|d| d.probabilities().iter().filter(|&&p| p > 1e-12).count())
            .collect();
        ensure(
            supports == [2, 4, 8],
            format!("input {i}: supports {supports:?}"),
        )?;
        let r = stepwise_verdict(&ds, 1e-9).map_err(|e| e.to_string())?;
        ensure(
            r.verdict == Verdict::Reverse,
            format!("input {i}: verdict {:?}", r.verdict),
        )?;
    }
    Ok("all 8 inputs reverse, supports 2 → 4 → 8".into())
}

fn two_photon_chain() -> Check {
    // regression values from simulating the ideal partial interferometers
    let expected = [
        ([2, 6], Verdict::Reverse),
        ([5, 5], Verdict::Reverse),
        ([5, 6], Verdict::Reverse),
        ([5, 7], Verdict::Reverse),
    ];
    let mut seen = Vec::new();
    for (input, want) in expected {
        let r = stepwise_verdict(&chain(&input)?, 1e-9).map_err(|e| e.to_string())?;
        ensure(
            r.verdict == want,
            format!("{input:?}: {:?}, expected {want:?}", r.verdict),
        )?;
        seen.push(format!("{input:?} {:?}", r.verdict).to_lowercase());
    }
    Ok(seen.join(", "))
}

fn tomography_round_trip() -> Check {
    let t = Instant::now();
    let truth = perturbed_qfft(3, 7);
    let u_truth = circuit_to_unitary(&truth).unwrap();
    let data = MeasurementSet::synthesize(&u_truth, None).map_err(|e| e.to_string())?;
    let template = build_qfft::<f64>(3).unwrap();
    let fit = fit_parameters(
        &template,
        &data,
        &ParamVector::from_circuit(&template),
        &FitConfig::default(),
    )
    .map_err(|e| e.to_string())?;
    let f1 = phase_fixed_fidelity(
        &circuit_to_unitary(&fit.circuit(&template).unwrap()).unwrap(),
        &u_truth,
    )
    .unwrap();
    ensure(f1 >= 0.9999, format!("fidelity {f1}"))?;

    let mut r = rng(5);
    let start = ParamVector::from_circuit(&truth);
    let values: Vec<f64> = start
        .0
        .iter()
        .map(|p| match p.kind {
            ParamKind::Transmissivity => (p.value + r.random_range(-0.1..=0.1)).clamp(0.0, 1.0),
            ParamKind::Phase => wrap_phase(p.value + r.random_range(-0.1..=0.1)),
        })
        .collect();
    let cfg = FitConfig {
        restarts: 5,
        seed: 11,
        ..FitConfig::default()
    };
    let fit2 = fit_parameters(&truth, &data, &start.with_values(&values), &cfg)
        .map_err(|e| e.to_string())?;
    let f2 = phase_fixed_fidelity(
        &circuit_to_unitary(&fit2.circuit(&truth).unwrap()).unwrap(),
        &u_truth,
    )
    .unwrap();
    ensure(f2 >= 0.999, format!("perturbed-start fidelity {f2}"))?;
    within(t, Duration::from_secs(60))?;
    Ok(format!(
        "fidelity {f1:.8} (ideal start), {f2:.8} (±0.1 start, 5 restarts), {:?}",
        t.elapsed()
    ))
}

fn monte_carlo_error_bars() -> Check {
    let u = dft_matrix::<f64>(8);
    let clean =
        output_distribution(&u, &OccupationVector::from_labels(8, &[2, 6]).unwrap()).unwrap();
    let noisy = ProbDist::new(
        clean
            .outcomes()
            .iter()
            .map(|o| Outcome {
                sigma: Some(0.01),
                ..o.clone()
            })
            .collect(),
    )
    .map_err(|e| e.to_string())?;
    let run =
        || lorenz_error_bars(&noisy, &resample_distribution(&noisy, 1000, 1234).unwrap()).unwrap();
    let (a, b) = (run(), run());
    ensure(a == b, "two runs differ")?;
    let s = a.sigma.unwrap();
    let last = s[s.len() - 1];
    ensure(last <= 1e-12, format!("sigma(d) = {last:e}"))?;
    Ok(format!(
        "1000 resamples reproducible, sigma(d) = {last:.1e}"
    ))
}

fn algebra_suite() -> Check {
    let tol = 1e-9;
    let sorted = |v: Vec<f64>| SortedProbVector::from_values(v).unwrap();
    let mut r = rng(99);
    let simplex = |d: usize, r: &mut rand_chacha::ChaCha8Rng| {
        let raw: Vec<f64> = (0..d).map(|_| r.random_range(1e-6..1.0)).collect();
        let t: f64 = raw.iter().sum();
        raw.into_iter().map(|x| x / t).collect::<Vec<_>>()
    };
    let mut triples = 0;
    for _ in 0..1000 {
        let d = r.random_range(2..20);
        let x = simplex(d, &mut r);
        let s = sorted(x.clone());
        ensure(majorizes(&s, &s, tol).unwrap(), "reflexivity")?;
        let mut delta = vec![0.0; d];
        delta[0] = 1.0;
        ensure(
            majorizes(&sorted(delta), &s, tol).unwrap(),
            "delta majorizes all",
        )?;
        ensure(
            majorizes(&s, &sorted(vec![1.0 / d as f64; d]), tol).unwrap(),
            "all majorize uniform",
        )?;
        let padded: Vec<f64> = x.iter().copied().chain([0.0, 0.0, 0.0]).collect();
        let y = sorted(simplex(d, &mut r));
        ensure(
            majorizes(&s, &y, tol).unwrap() == majorizes(&sorted(padded), &y, tol).unwrap(),
            "padding changed the verdict",
        )?;
        // a chain x ≻ y ≻ z by averaging toward uniform
        let toward = |v: &[f64], w: f64| {
            v.iter()
                .map(|a| (1.0 - w) * a + w / d as f64)
                .collect::<Vec<_>>()
        };
        let (y, z) = (sorted(toward(&x, 0.3)), sorted(toward(&x, 0.6)));
        ensure(
            majorizes(&s, &y, tol).unwrap() && majorizes(&y, &z, tol).unwrap(),
            "chain construction",
        )?;
        ensure(majorizes(&s, &z, tol).unwrap(), "transitivity")?;
        triples += 1;
    }
    Ok(format!(
        "{triples} random triples: reflexive, extremal, padding-neutral, transitive"
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("qFFT synthesis equals the DFT", qfft_synthesis),
        ("Ryser permanent matches the n! expansion", permanent_oracle),
        ("two photons in eight modes give 36 outcomes", outcome_count),
        ("suppression law on cyclic inputs", suppression_law),
        (
            "single-photon stepwise reverse majorization",
            single_photon_chain,
        ),
        (
            "two-photon stepwise majorization verdicts",
            two_photon_chain,
        ),
        ("tomography round trip", tomography_round_trip),
        ("Monte Carlo Lorenz error bars", monte_carlo_error_bars),
        ("majorization algebra", algebra_suite),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
