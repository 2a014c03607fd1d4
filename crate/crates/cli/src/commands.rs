use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use mpcert::circuit::{build_qfft, circuit_to_unitary, partial_circuit};
use mpcert::io::{read_distribution_csv, write_distribution_csv, write_lorenz_csv};
use mpcert::majorization::{lorenz_of, stepwise_verdict_curves, Verdict, DEFAULT_TOL};
use mpcert::optics::{
    distinguishable_distribution_with, output_distribution_with, phase_fixed_fidelity,
    OccupationVector, SimConfig,
};
use mpcert::tomography::{
    fit_parameters, lorenz_error_bars, resample_distribution, FitConfig, FitStatus, MeasurementSet,
    ParamVector,
};
use mpcert::validation::suppression_report;
use mpcert::{Circuit, Error, LorenzCurve, ProbDist, Result, StepwiseReport};
use serde::Serialize;

use crate::{svg, Cli, Command, Direction};

/// Total-probability slack accepted on distributions read from disk.
const NORMALIZATION_TOL: f64 = 1e-9;

pub fn exit_code(err: &Error) -> u8 {
    if err.is_numerical() {
        3
    } else {
        2
    }
}

pub fn run(cli: &Cli) -> Result<ExitCode> {
    let ctx = Context { cli };
    match &cli.command {
        Command::BuildQfft { p, out } => ctx.build_qfft(*p, out.as_deref()),
        Command::Simulate {
            circuit,
            input,
            partial,
            distinguishable,
            out,
        } => ctx.simulate(circuit, input, *partial, *distinguishable, out.as_deref()),
        Command::Majorize {
            csv,
            direction,
            resamples,
            lorenz_dir,
            svg,
            out,
        } => ctx.majorize(
            csv,
            *direction,
            *resamples,
            lorenz_dir.as_deref(),
            svg.as_deref(),
            out.as_deref(),
        ),
        Command::Validate {
            csv,
            n,
            m,
            threshold,
            out,
        } => ctx.validate(csv, *n, *m, *threshold, out.as_deref()),
        Command::Fit {
            template,
            data,
            restarts,
            restart_spread,
            max_iterations,
            truth,
            out,
            report,
        } => ctx.fit(
            template,
            data,
            FitConfig {
                max_iterations: *max_iterations,
                tolerance: cli.tol.unwrap_or(FitConfig::default().tolerance),
                restarts: *restarts,
                restart_spread: *restart_spread,
                seed: cli.seed,
                permanent_cap: cli.permanent_cap,
                ..FitConfig::default()
            },
            truth.as_deref(),
            out,
            report.as_deref(),
        ),
        Command::Lorenz {
            csv,
            resamples,
            svg,
            out,
        } => ctx.lorenz(csv, *resamples, svg.as_deref(), out.as_deref()),
    }
}

struct Context<'a> {
    cli: &'a Cli,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn read_circuit(path: &Path) -> Result<Circuit> {
    Circuit::from_json(&read(path)?)
}

fn read_distribution(path: &Path) -> Result<ProbDist> {
    let dist: ProbDist = read_distribution_csv(&read(path)?)?;
    dist.check_normalized(NORMALIZATION_TOL)?;
    Ok(dist)
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

/// Lorenz curve of `dist`, with Monte Carlo sigmas when `resamples` is set.
fn curve(dist: &ProbDist, resamples: Option<usize>, seed: u64) -> Result<LorenzCurve> {
    match resamples {
        None => Ok(lorenz_of(dist)),
        Some(count) => lorenz_error_bars(dist, &resample_distribution(dist, count, seed)?),
    }
}

#[derive(Serialize)]
struct MajorizeReport<'a> {
    direction: &'static str,
    holds: bool,
    files: Vec<String>,
    #[serde(flatten)]
    report: &'a StepwiseReport,
}

#[derive(Serialize)]
struct ValidateReport<'a> {
    photons: usize,
    modes: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    threshold: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    passes: Option<bool>,
    #[serde(flatten)]
    report: &'a mpcert::SuppressionReport,
}

#[derive(Serialize)]
struct FitReport<'a> {
    status: FitStatus,
    chi2: f64,
    dof: isize,
    reduced_chi2: Option<f64>,
    iterations: usize,
    restart: usize,
    run_chi2: &'a [f64],
    chi2_history: &'a [f64],
    #[serde(skip_serializing_if = "Option::is_none")]
    fidelity: Option<f64>,
    parameters: &'a ParamVector,
}

impl Context<'_> {
    fn note(&self, msg: impl AsRef<str>) {
        if !self.cli.quiet {
            eprintln!("{}", msg.as_ref());
        }
    }

    fn emit(&self, path: Option<&Path>, text: &str) -> Result<()> {
        match path {
            Some(p) => {
                write(p, text)?;
                self.note(format!("wrote {}", p.display()));
            }
            None => print!("{text}"),
        }
        Ok(())
    }

    fn sim_config(&self) -> SimConfig {
        SimConfig {
            permanent_cap: self.cli.permanent_cap,
            ..SimConfig::default()
        }
    }

    fn build_qfft(&self, p: u32, out: Option<&Path>) -> Result<ExitCode> {
        let c = build_qfft::<f64>(p)?;
        self.emit(out, &(c.to_json()? + "\n"))?;
        self.note(format!(
            "{} modes, {} layers, {} mixers, {} phase elements",
            c.modes,
            c.layers.len(),
            c.mixer_count(),
            c.phase_count()
        ));
        Ok(ExitCode::SUCCESS)
    }

    fn simulate(
        &self,
        circuit: &Path,
        input: &[usize],
        partial: Option<usize>,
        distinguishable: bool,
        out: Option<&Path>,
    ) -> Result<ExitCode> {
        let mut c = read_circuit(circuit)?;
        if let Some(s) = partial {
            c = partial_circuit(&c, s)?;
        }
        let u = circuit_to_unitary(&c)?;
        let state = OccupationVector::from_labels(c.modes, input)?;
        let cfg = self.sim_config();
        let dist = if distinguishable {
            distinguishable_distribution_with(&u, &state, &cfg)?
        } else {
            output_distribution_with(&u, &state, &cfg)?
        };
        self.emit(out, &write_distribution_csv(&dist)?)?;
        Ok(ExitCode::SUCCESS)
    }

    fn majorize(
        &self,
        files: &[PathBuf],
        direction: Direction,
        resamples: Option<usize>,
        lorenz_dir: Option<&Path>,
        svg_path: Option<&Path>,
        out: Option<&Path>,
    ) -> Result<ExitCode> {
        let curves = files
            .iter()
            .enumerate()
            .map(|(i, f)| {
                curve(
                    &read_distribution(f)?,
                    resamples,
                    self.cli.seed.wrapping_add(i as u64),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        let report = stepwise_verdict_curves(&curves, self.cli.tol.unwrap_or(DEFAULT_TOL))?;
        let (name, holds) = match direction {
            Direction::Direct => ("direct", report.direct_holds),
            Direction::Reverse => ("reverse", report.reverse_holds),
            Direction::Auto => ("auto", report.verdict != Verdict::None),
        };
        let files_str: Vec<String> = files.iter().map(|f| f.display().to_string()).collect();
        let json = to_json(&MajorizeReport {
            direction: name,
            holds,
            files: files_str.clone(),
            report: &report,
        })?;
        self.emit(out, &json)?;
        if let Some(dir) = lorenz_dir {
            fs::create_dir_all(dir).map_err(|e| Error::Input(format!("{}: {e}", dir.display())))?;
            for (i, c) in curves.iter().enumerate() {
                write(
                    &dir.join(format!("lorenz_{}.csv", i + 1)),
                    &write_lorenz_csv(c),
                )?;
            }
            self.note(format!(
                "wrote {} Lorenz curves to {}",
                curves.len(),
                dir.display()
            ));
        }
        if let Some(path) = svg_path {
            let labelled: Vec<_> = files_str.into_iter().zip(curves).collect();
            write(path, &svg::lorenz_plot(&labelled))?;
            self.note(format!("wrote {}", path.display()));
        }
        Ok(ExitCode::SUCCESS)
    }

    fn validate(
        &self,
        csv: &Path,
        n: usize,
        m: usize,
        threshold: Option<f64>,
        out: Option<&Path>,
    ) -> Result<ExitCode> {
        let dist = read_distribution(csv)?;
        if dist.modes() != m || dist.photons() != n {
            return Err(Error::Input(format!(
                "{} holds {} photons over {} modes, expected {n} over {m}",
                csv.display(),
                dist.photons(),
                dist.modes()
            )));
        }
        let report = suppression_report(&dist, n)?;
        let passes = threshold.map(|t| report.suppressed_mass <= t);
        self.emit(
            out,
            &to_json(&ValidateReport {
                photons: n,
                modes: m,
                threshold,
                passes,
                report: &report,
            })?,
        )?;
        Ok(ExitCode::SUCCESS)
    }

    fn fit(
        &self,
        template: &Path,
        data: &Path,
        cfg: FitConfig,
        truth: Option<&Path>,
        out: &Path,
        report_path: Option<&Path>,
    ) -> Result<ExitCode> {
        let template = read_circuit(template)?;
        let data = MeasurementSet::from_json(&read(data)?)?;
        let init = ParamVector::from_circuit(&template);
        self.note(format!(
            "fitting {} parameters to {} data points",
            init.len(),
            data.len()
        ));
        let fit = fit_parameters(&template, &data, &init, &cfg)?;
        let fitted = fit.circuit(&template)?;
        write(out, &(fitted.to_json()? + "\n"))?;
        self.note(format!("wrote {}", out.display()));
        let fidelity = match truth {
            Some(p) => Some(phase_fixed_fidelity(
                &circuit_to_unitary(&fitted)?,
                &circuit_to_unitary(&read_circuit(p)?)?,
            )?),
            None => None,
        };
        let report = FitReport {
            status: fit.status,
            chi2: fit.chi2,
            dof: fit.dof,
            reduced_chi2: (fit.dof > 0).then(|| fit.chi2 / fit.dof as f64),
            iterations: fit.iterations,
            restart: fit.restart,
            run_chi2: &fit.run_chi2,
            chi2_history: &fit.history,
            fidelity,
            parameters: &fit.params,
        };
        self.emit(report_path, &to_json(&report)?)?;
        Ok(match fit.status {
            FitStatus::Converged => ExitCode::SUCCESS,
            FitStatus::MaxIterations => {
                self.note("iteration budget exhausted; best parameters written");
                ExitCode::from(4)
            }
        })
    }

    fn lorenz(
        &self,
        csv: &Path,
        resamples: Option<usize>,
        svg_path: Option<&Path>,
        out: Option<&Path>,
    ) -> Result<ExitCode> {
        let c = curve(&read_distribution(csv)?, resamples, self.cli.seed)?;
        self.emit(out, &write_lorenz_csv(&c))?;
        if let Some(path) = svg_path {
            write(path, &svg::lorenz_plot(&[(csv.display().to_string(), c)]))?;
            self.note(format!("wrote {}", path.display()));
        }
        Ok(ExitCode::SUCCESS)
    }
}
