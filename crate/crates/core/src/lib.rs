//! Multi-photon interference in layered linear-optical interferometers.
//!
//! * [`optics`]: permanents, transition probabilities and full output
//!   distributions for indistinguishable and distinguishable photons.
//! * [`circuit`]: mixer/phase-shifter circuits, the Fourier matrix and its
//!   fast butterfly realization, partial circuits.
//! * [`majorization`]: sorted vectors, Lorenz curves, step-by-step verdicts.
//! * [`validation`]: cyclic inputs and the Fourier suppression law.
//! * [`tomography`]: χ² reconstruction of circuit parameters and Monte
//!   Carlo error bars.
//!
//! The numerical core is generic over [`Real`] (`f32`, `f64`); the aliases
//! below fix the scalar to `f64`, which is what the file formats and the
//! tomography module use.

pub mod circuit;
pub mod error;
pub mod io;
pub mod majorization;
pub mod matrix;
pub mod optics;
pub mod scalar;
pub mod tomography;
pub mod validation;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Complex64 = num_complex::Complex<f64>;
pub type CMatrix = matrix::ComplexMatrix<f64>;
pub type CMatrix32 = matrix::ComplexMatrix<f32>;
pub type Circuit = circuit::Circuit<f64>;
pub type CircuitElement = circuit::CircuitElement<f64>;
pub type ProbDist = optics::ProbDist<f64>;
pub type SortedProbVector = majorization::SortedProbVector<f64>;
pub type LorenzCurve = majorization::LorenzCurve<f64>;
pub type StepwiseReport = majorization::StepwiseReport<f64>;
pub type SuppressionReport = validation::SuppressionReport<f64>;
