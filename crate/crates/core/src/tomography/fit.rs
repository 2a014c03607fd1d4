//! Weighted least-squares reconstruction of circuit parameters.
//!
//! The residual of data point `i` is `(model_i − measured_i) / σ_i`, with
//! `σ_i` replaced by the configured floor when absent or zero, and
//! `χ² = Σ residual²`. Minimization is Levenberg–Marquardt with a
//! central-difference Jacobian, projected onto the parameter bounds after
//! every step, plus seeded random restarts around the initial point.

use nalgebra::{DMatrix, DVector};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::circuit::{circuit_to_unitary, Circuit};
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::optics::{transition_probability_capped, DEFAULT_PERMANENT_CAP};
use crate::tomography::data::{DataPoint, MeasurementSet};
use crate::tomography::params::{project, ParamKind, ParamVector};

#[derive(Clone, Debug, PartialEq)]
pub struct FitConfig {
    pub max_iterations: usize,
    /// Stop when the relative χ² improvement or the step norm drops below this.
    pub tolerance: f64,
    /// Extra runs started from `init` plus a uniform perturbation.
    pub restarts: usize,
    pub restart_spread: f64,
    pub seed: u64,
    /// Substitute for missing or zero sigmas.
    pub sigma_floor: f64,
    pub permanent_cap: usize,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self {
            max_iterations: 500,
            tolerance: 1e-10,
            restarts: 0,
            restart_spread: 0.1,
            seed: 0,
            sigma_floor: 1e-4,
            permanent_cap: DEFAULT_PERMANENT_CAP,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FitStatus {
    Converged,
    MaxIterations,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FitResult {
    pub params: ParamVector,
    pub chi2: f64,
    /// Data points minus free parameters.
    pub dof: isize,
    pub status: FitStatus,
    pub iterations: usize,
    /// Index of the winning run (0 is the run from `init`).
    pub restart: usize,
    /// χ² after each accepted step of the winning run, starting value first.
    pub history: Vec<f64>,
    /// Final χ² of every run, in run order.
    pub run_chi2: Vec<f64>,
}

impl FitResult {
    pub fn circuit(&self, template: &Circuit<f64>) -> Result<Circuit<f64>> {
        self.params.apply(template)
    }
}

struct Model<'a> {
    template: &'a Circuit<f64>,
    layout: ParamVector,
    kinds: Vec<ParamKind>,
    points: Vec<DataPoint>,
    weights: Vec<f64>,
    cap: usize,
}

impl<'a> Model<'a> {
    fn new(template: &'a Circuit<f64>, data: &MeasurementSet, cfg: &FitConfig) -> Result<Self> {
        template.validate()?;
        if data.modes != template.modes {
            return Err(Error::Dimension(format!(
                "data over {} modes for a {}-mode template",
                data.modes, template.modes
            )));
        }
        if cfg.sigma_floor.is_nan() || cfg.sigma_floor <= 0.0 {
            return Err(Error::Input(format!(
                "sigma floor {} must be positive",
                cfg.sigma_floor
            )));
        }
        let points = data.data_points()?;
        if points.is_empty() {
            return Err(Error::Input("no data points".into()));
        }
        let weights = points
            .iter()
            .map(|p| match p.sigma {
                Some(s) if s > 0.0 => 1.0 / s,
                _ => 1.0 / cfg.sigma_floor,
            })
            .collect();
        let layout = ParamVector::from_circuit(template);
        let kinds = layout.kinds();
        Ok(Self {
            template,
            layout,
            kinds,
            points,
            weights,
            cap: cfg.permanent_cap,
        })
    }

    fn check_layout(&self, params: &ParamVector) -> Result<()> {
        if params.len() != self.layout.len()
            || params
                .0
                .iter()
                .zip(&self.layout.0)
                .any(|(a, b)| a.element != b.element || a.kind != b.kind)
        {
            return Err(Error::Input(
                "parameter vector does not match the circuit template".into(),
            ));
        }
        Ok(())
    }

    fn unitary(&self, values: &[f64]) -> Result<ComplexMatrix<f64>> {
        let projected: Vec<f64> = values
            .iter()
            .zip(&self.kinds)
            .map(|(&v, &k)| project(k, v))
            .collect();
        circuit_to_unitary(&self.layout.with_values(&projected).apply(self.template)?)
    }

    fn residuals(&self, values: &[f64]) -> Result<DVector<f64>> {
        let u = self.unitary(values)?;
        let mut r = DVector::zeros(self.points.len());
        for (i, p) in self.points.iter().enumerate() {
            let model = transition_probability_capped(&u, &p.input, &p.output, self.cap)?;
            r[i] = (model - p.measured) * self.weights[i];
        }
        Ok(r)
    }

    /// Central differences, one-sided at transmissivity bounds.
    fn jacobian(&self, values: &[f64]) -> Result<DMatrix<f64>> {
        const H: f64 = 1e-6;
        let mut jac = DMatrix::zeros(self.points.len(), values.len());
        let mut x = values.to_vec();
        for j in 0..values.len() {
            let v = values[j];
            let (lo, hi) = match self.kinds[j] {
                ParamKind::Transmissivity => ((v - H).max(0.0), (v + H).min(1.0)),
                ParamKind::Phase => (v - H, v + H),
            };
            x[j] = hi;
            let r_hi = self.residuals(&x)?;
            x[j] = lo;
            let r_lo = self.residuals(&x)?;
            x[j] = v;
            jac.set_column(j, &((r_hi - r_lo) / (hi - lo)));
        }
        Ok(jac)
    }

    fn project(&self, values: &mut [f64]) {
        for (v, &k) in values.iter_mut().zip(&self.kinds) {
            *v = project(k, *v);
        }
    }
}

pub fn chi_squared(
    params: &ParamVector,
    template: &Circuit<f64>,
    data: &MeasurementSet,
    cfg: &FitConfig,
) -> Result<f64> {
    let model = Model::new(template, data, cfg)?;
    model.check_layout(params)?;
    params.check_bounds()?;
    Ok(model.residuals(&params.values())?.norm_squared())
}

/// `∇χ² = 2·Jᵀr` with the finite-difference Jacobian the optimizer uses.
pub fn chi_squared_gradient(
    params: &ParamVector,
    template: &Circuit<f64>,
    data: &MeasurementSet,
    cfg: &FitConfig,
) -> Result<Vec<f64>> {
    let model = Model::new(template, data, cfg)?;
    model.check_layout(params)?;
    params.check_bounds()?;
    let x = params.values();
    let g = model.jacobian(&x)?.transpose() * model.residuals(&x)? * 2.0;
    Ok(g.iter().copied().collect())
}

struct Run {
    values: Vec<f64>,
    chi2: f64,
    status: FitStatus,
    iterations: usize,
    history: Vec<f64>,
}

fn levenberg_marquardt(model: &Model, start: &[f64], cfg: &FitConfig) -> Result<Run> {
    let mut x = start.to_vec();
    model.project(&mut x);
    let mut r = model.residuals(&x)?;
    let mut chi2 = r.norm_squared();
    let mut history = vec![chi2];
    let mut lambda = 1e-3;
    let k = x.len();

    for it in 1..=cfg.max_iterations {
        if chi2 == 0.0 {
            return Ok(Run {
                values: x,
                chi2,
                status: FitStatus::Converged,
                iterations: it - 1,
                history,
            });
        }
        let jac = model.jacobian(&x)?;
        let jt = jac.transpose();
        let a = &jt * &jac;
        let g = &jt * &r;
        let scale = (0..k).map(|i| a[(i, i)]).fold(0.0, f64::max).max(1e-300);
        loop {
            let mut damped = a.clone();
            for i in 0..k {
                // the floor keeps gauge-flat directions (zero curvature) solvable
                damped[(i, i)] += lambda * (a[(i, i)] + 1e-12 * scale);
            }
            let Some(chol) = damped.cholesky() else {
                lambda *= 10.0;
                if lambda > 1e16 {
                    return Ok(Run {
                        values: x,
                        chi2,
                        status: FitStatus::Converged,
                        iterations: it,
                        history,
                    });
                }
                continue;
            };
            let step = chol.solve(&(-&g));
            let mut trial: Vec<f64> = x.iter().zip(step.iter()).map(|(a, b)| a + b).collect();
            model.project(&mut trial);
            let r_trial = model.residuals(&trial)?;
            let chi_trial = r_trial.norm_squared();
            if chi_trial < chi2 {
                let improvement = (chi2 - chi_trial) / chi2;
                let step_norm = step.norm();
                x = trial;
                r = r_trial;
                chi2 = chi_trial;
                history.push(chi2);
                lambda = (lambda / 3.0).max(1e-15);
                if improvement < cfg.tolerance || step_norm < cfg.tolerance {
                    return Ok(Run {
                        values: x,
                        chi2,
                        status: FitStatus::Converged,
                        iterations: it,
                        history,
                    });
                }
                break;
            }
            lambda *= 4.0;
            if lambda > 1e16 {
                // no descent direction left at machine precision
                return Ok(Run {
                    values: x,
                    chi2,
                    status: FitStatus::Converged,
                    iterations: it,
                    history,
                });
            }
        }
    }
    Ok(Run {
        values: x,
        chi2,
        status: FitStatus::MaxIterations,
        iterations: cfg.max_iterations,
        history,
    })
}

/// Fits `template`'s free parameters to `data`, starting from `init`.
///
/// Run 0 starts at `init`; runs `1..=restarts` start at `init` plus a
/// uniform perturbation of half-width `restart_spread` drawn from the
/// seeded generator. The run with the lowest χ² wins, ties going to the
/// earlier run. Budget exhaustion is reported through [`FitStatus`] with
/// the best point found.
pub fn fit_parameters(
    template: &Circuit<f64>,
    data: &MeasurementSet,
    init: &ParamVector,
    cfg: &FitConfig,
) -> Result<FitResult> {
    let model = Model::new(template, data, cfg)?;
    model.check_layout(init)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let base = init.values();

    let mut best: Option<(usize, Run)> = None;
    let mut run_chi2 = Vec::with_capacity(cfg.restarts + 1);
    for run_index in 0..=cfg.restarts {
        let start: Vec<f64> = if run_index == 0 {
            base.clone()
        } else {
            base.iter()
                .map(|v| v + rng.random_range(-cfg.restart_spread..=cfg.restart_spread))
                .collect()
        };
        let run = levenberg_marquardt(&model, &start, cfg)?;
        run_chi2.push(run.chi2);
        if best.as_ref().is_none_or(|(_, b)| run.chi2 < b.chi2) {
            best = Some((run_index, run));
        }
    }
    let (restart, run) = best.expect("at least one run");
    Ok(FitResult {
        params: model.layout.with_values(&run.values),
        chi2: run.chi2,
        dof: model.points.len() as isize - model.layout.len() as isize,
        status: run.status,
        iterations: run.iterations,
        restart,
        history: run.history,
        run_chi2,
    })
}
