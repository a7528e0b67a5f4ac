//! Bounds and exact values for constant and heavy subblock weight codes.
//!
//! A CSCC is a binary code of `m` subblocks of length `L` where every
//! subblock has weight exactly `w_s`; an SECC only requires weight at
//! least `w_s`. The crate provides exact counting of the ambient spaces and
//! Hamming balls, finite lower and upper bounds on optimal code sizes, an
//! exact oracle for small parameters, and asymptotic rate bounds.

pub mod asymptotic;
pub mod combinatorics;
pub mod error;
pub mod exact_oracle;
pub mod finite_bounds;
pub mod scalar;
pub mod spaces;

pub use combinatorics::{ExactCount, Ratio};
pub use error::{Error, Result};
pub use finite_bounds::{BoundResult, CodeFamily, Direction};
pub use scalar::RateScalar;
pub use spaces::{CodeParams, SpaceKind, WeightProfile, Word};

pub type RateParams64 = asymptotic::RateParams<f64>;
pub type RateParams32 = asymptotic::RateParams<f32>;
pub type RateValue64 = asymptotic::RateValue<f64>;
pub type RateValue32 = asymptotic::RateValue<f32>;
pub type SweepValue64 = asymptotic::SweepValue<f64>;
