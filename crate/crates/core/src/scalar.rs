//! Scalar abstraction shared by every module.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real floating-point scalar the whole crate is generic over (`f32` or `f64`).
///
/// The associated tolerances encode the precision contract for each width:
/// `INPUT_TOL` accepts noisy user-supplied operators, `OUTPUT_TOL` bounds
/// what self-produced closed forms must satisfy.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + LowerExp + Default + Sum + Send + Sync + 'static
{
    /// Hermiticity / density tolerance applied to caller input.
    const INPUT_TOL: Self;
    /// Tolerance met by matrices this crate constructs itself.
    const OUTPUT_TOL: Self;
    /// Margin used by the CHSH violation flag and region classification.
    const BOUNDARY_TOL: Self;
    /// Grid used when rounding eigenvectors for deterministic tie-breaking.
    const ROUNDING_QUANTUM: Self;

    /// Converts an `f64` literal into `Self`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite scalar converts to f64")
    }
}

impl Real for f64 {
    const INPUT_TOL: Self = 1e-10;
    const OUTPUT_TOL: Self = 1e-12;
    const BOUNDARY_TOL: Self = 1e-12;
    const ROUNDING_QUANTUM: Self = 1e-9;
}

impl Real for f32 {
    const INPUT_TOL: Self = 1e-4;
    const OUTPUT_TOL: Self = 1e-5;
    const BOUNDARY_TOL: Self = 1e-5;
    const ROUNDING_QUANTUM: Self = 1e-3;
}
