use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive};

/// Floating-point type used by the rate-domain functions.
///
/// Implemented for `f32` and `f64`. Exact counting never goes through this
/// trait; only entropies, logarithms of counts and rates do.
pub trait RateScalar:
    Float + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal, rounding to the nearest representable value.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }

    /// Rounding slack tolerated around the closed interval [0, 1] before an
    /// entropy argument counts as a domain error.
    fn unit_slack() -> Self {
        let four_eps = Self::epsilon() * Self::lit(4.0);
        four_eps.max(Self::lit(1e-12))
    }
}

impl RateScalar for f32 {}
impl RateScalar for f64 {}
