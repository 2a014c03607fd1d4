//! Architecture-constrained reconstruction of interferometer parameters
//! from intensity data, and Monte Carlo error propagation.
//!
//! Intensity data cannot see phases applied at the inputs or outputs of a
//! circuit, so reconstructions are compared with
//! [`crate::optics::phase_fixed_fidelity`] rather than parameter distance.

mod data;
mod fit;
mod params;
mod resample;

pub use data::{DataPoint, MeasurementSet};
pub use fit::{chi_squared, chi_squared_gradient, fit_parameters, FitConfig, FitResult, FitStatus};
pub use params::{ElementId, Param, ParamKind, ParamVector};
pub use resample::{lorenz_error_bars, monte_carlo_resample, resample_distribution};
