//! Scalar abstraction.
//!
//! Every numeric routine in this crate is written against [`Float`], which is
//! implemented for `f32` and `f64`. Exact fixture data is kept as rationals and
//! rendered into a `Float` at load time (see [`Float::from_ratio`]).

use std::fmt::{Debug, Display};

use nalgebra as na;
use num_rational::Ratio;
use num_traits as nt;

/// Gathers the traits needed to run the measurement code on a floating point type.
pub trait Float:
    Copy
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + nt::FloatConst
    + nt::FromPrimitive
    + nt::ToPrimitive
    + na::RealField
    + 'static
{
    /// Converts an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        na::convert(x)
    }

    /// Converts a count or index.
    #[inline]
    fn from_count(n: usize) -> Self {
        na::convert(n as f64)
    }

    /// Renders an exact rational.
    #[inline]
    fn from_ratio(r: Ratio<i64>) -> Self {
        Self::lit(*r.numer() as f64) / Self::lit(*r.denom() as f64)
    }

    #[inline]
    fn as_f64(self) -> f64 {
        nt::ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }

    /// Machine epsilon of the type.
    #[inline]
    fn machine_epsilon() -> Self {
        <Self as approx::AbsDiffEq>::default_epsilon()
    }
}

impl Float for f32 {}
impl Float for f64 {}
