//! Asymptotic rate bounds, rate-penalty gaps and threshold roots.
//!
//! Rates are in bits per channel use with logarithms base 2. All functions
//! are generic over the float type; `f64` is the reference precision.

mod gaps;
mod rates;
mod thresholds;

pub use gaps::*;
pub use rates::*;
pub use thresholds::*;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite_bounds::Direction;
use crate::scalar::RateScalar;

/// Subblock length, subblock weight and relative distance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateParams<T> {
    #[serde(rename = "L")]
    pub l: u32,
    #[serde(rename = "w_s")]
    pub ws: u32,
    pub delta: T,
}

impl<T: RateScalar> RateParams<T> {
    pub fn new(l: u32, ws: u32, delta: T) -> Result<Self> {
        if l == 0 || ws > l {
            return Err(Error::InvalidParams(format!(
                "need L ≥ 1 and w_s ≤ L, got L={l}, w_s={ws}"
            )));
        }
        check_delta("RateParams::new", delta)?;
        Ok(RateParams { l, ws, delta })
    }

    /// Weight fraction `w_s / L`.
    pub fn omega(&self) -> T {
        T::lit(self.ws as f64 / self.l as f64)
    }

    pub fn delta_star(&self) -> T {
        delta_star(self.l, self.ws)
    }
}

/// A rate bound tagged with its direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateValue<T> {
    pub bits_per_use: T,
    pub direction: Direction,
}

impl<T: RateScalar> RateValue<T> {
    pub(crate) fn lower(v: T) -> Self {
        RateValue {
            bits_per_use: clamp_rate(v),
            direction: Direction::Lower,
        }
    }

    pub(crate) fn upper(v: T) -> Self {
        RateValue {
            bits_per_use: clamp_rate(v),
            direction: Direction::Upper,
        }
    }

    pub(crate) fn exact(v: T) -> Self {
        RateValue {
            bits_per_use: v,
            direction: Direction::Exact,
        }
    }
}

/// Rates never leave `[0, 1]`; tiny excursions are floating noise.
fn clamp_rate<T: RateScalar>(v: T) -> T {
    v.max(T::zero()).min(T::one())
}

/// Value of a sweep point: a bound formula, a proven exact zero, or
/// neither.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum SweepValue<T> {
    Bound(T),
    ProvenZero,
    Undefined,
}

impl<T: RateScalar> SweepValue<T> {
    /// Numeric value where one is known.
    pub fn value(&self) -> Option<T> {
        match self {
            SweepValue::Bound(v) => Some(*v),
            SweepValue::ProvenZero => Some(T::zero()),
            SweepValue::Undefined => None,
        }
    }

    pub fn flag(&self) -> &'static str {
        match self {
            SweepValue::Bound(_) => "bound",
            SweepValue::ProvenZero => "proven-zero",
            SweepValue::Undefined => "undefined",
        }
    }
}

/// `δ* = 2ω(1−ω)` with `ω = w_s/L`.
pub fn delta_star<T: RateScalar>(l: u32, ws: u32) -> T {
    let w = T::lit(ws as f64 / l as f64);
    T::lit(2.0) * w * (T::one() - w)
}

pub(crate) fn check_delta<T: RateScalar>(function: &'static str, delta: T) -> Result<()> {
    if !(delta >= T::zero() && delta <= T::one()) {
        return Err(Error::Domain {
            function,
            value: delta.to_f64().unwrap_or(f64::NAN),
            reason: "relative distance must lie in [0, 1]".into(),
        });
    }
    Ok(())
}

pub(crate) fn domain<T: RateScalar>(function: &'static str, value: T, reason: impl Into<String>) -> Error {
    Error::Domain {
        function,
        value: value.to_f64().unwrap_or(f64::NAN),
        reason: reason.into(),
    }
}

pub(crate) fn check_subblock(function: &'static str, l: u32, ws: u32) -> Result<()> {
    if l == 0 || ws > l {
        return Err(Error::InvalidParams(format!(
            "{function}: need L ≥ 1 and w_s ≤ L, got L={l}, w_s={ws}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_star_examples() {
        assert_eq!(delta_star::<f64>(4, 2), 0.5);
        assert_eq!(delta_star::<f64>(7, 0), 0.0);
        assert!((delta_star::<f64>(16, 12) - 0.375).abs() < 1e-15);
        assert_eq!(delta_star::<f32>(4, 2), 0.5);
    }

    #[test]
    fn rate_params_validation() {
        assert!(RateParams::new(4, 5, 0.1).is_err());
        assert!(RateParams::new(4, 2, 1.5).is_err());
        assert!(RateParams::new(4, 2, f64::NAN).is_err());
        let p = RateParams::new(4, 1, 0.1f64).unwrap();
        assert_eq!(p.omega(), 0.25);
        assert!((p.delta_star() - 0.375).abs() < 1e-15);
    }

    #[test]
    fn sweep_flags() {
        assert_eq!(SweepValue::Bound(0.2).value(), Some(0.2));
        assert_eq!(SweepValue::<f64>::ProvenZero.value(), Some(0.0));
        assert_eq!(SweepValue::<f64>::Undefined.value(), None);
        assert_eq!(SweepValue::<f64>::Undefined.flag(), "undefined");
    }
}
