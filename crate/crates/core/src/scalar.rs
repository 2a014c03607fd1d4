//! Scalar abstraction shared by the numerical modules.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Floating-point scalar the simulation core is generic over.
///
/// Implemented for `f32` and `f64`. The associated tolerances are the
/// precision-appropriate defaults used for contract checks (unitarity,
/// normalization); they are not user tolerances.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
    /// Maximum entry of `|U†U - I|` accepted for a unitary.
    fn unitarity_tol() -> Self;
    /// Accepted deviation of a probability total from one.
    fn norm_tol() -> Self;

    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }
}

impl Real for f64 {
    fn unitarity_tol() -> Self {
        1e-10
    }
    fn norm_tol() -> Self {
        1e-9
    }
}

impl Real for f32 {
    fn unitarity_tol() -> Self {
        1e-5
    }
    fn norm_tol() -> Self {
        1e-5
    }
}
