//! Numeric abstraction shared by every module.
//!
//! All probability tables, utilities, LP coefficients and bounds are stored as
//! a [`Scalar`]. `f64` is the working type; `f32` is supported for the same
//! algorithms with looser tolerances.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign, ToPrimitive};

/// Floating-point type usable by the diagram, reformulation and solver code.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + NumAssign + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Equality tolerance for probabilities and expected utilities.
    const TOLERANCE: f64;
    /// Smallest magnitude accepted as a simplex pivot.
    const PIVOT_TOLERANCE: f64;
    /// Feasibility tolerance for LP rows.
    const FEASIBILITY_TOLERANCE: f64;

    /// Converts an `f64` literal. Panics only if the value is unrepresentable,
    /// which does not happen for finite inputs on `f32`/`f64`.
    #[inline]
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }

    #[inline]
    fn tol() -> Self {
        Self::of(Self::TOLERANCE)
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    const TOLERANCE: f64 = 1e-9;
    const PIVOT_TOLERANCE: f64 = 1e-9;
    const FEASIBILITY_TOLERANCE: f64 = 1e-9;
}

impl Scalar for f32 {
    const TOLERANCE: f64 = 1e-5;
    const PIVOT_TOLERANCE: f64 = 1e-6;
    const FEASIBILITY_TOLERANCE: f64 = 1e-5;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals_round_trip() {
        assert_eq!(<f64 as Scalar>::of(0.25), 0.25);
        assert_eq!(<f32 as Scalar>::of(0.25), 0.25f32);
        assert!(<f32 as Scalar>::tol() > 0.0);
    }
}
