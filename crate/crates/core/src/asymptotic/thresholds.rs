use serde::Serialize;

use super::rates::heavy_subblock_rate;
use super::{check_delta, domain};
use crate::combinatorics::{binary_entropy, log2_binomial};
use crate::error::{Error, Result};
use crate::scalar::RateScalar;

/// Which gap the threshold delimits, all at `w_s = L/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Threshold {
    /// Constant-weight versus CSCC.
    Tilde,
    /// Heavy-weight versus SECC.
    Hat,
    /// SECC versus CSCC.
    Grave,
}

impl Threshold {
    pub const ALL: [Threshold; 3] = [Threshold::Tilde, Threshold::Hat, Threshold::Grave];

    pub fn label(self) -> &'static str {
        match self {
            Threshold::Tilde => "tilde",
            Threshold::Hat => "hat",
            Threshold::Grave => "grave",
        }
    }

    /// Right end of the interval holding the smallest root.
    fn bracket_end(self, l: u32) -> f64 {
        match self {
            Threshold::Tilde | Threshold::Grave => 1.0 / l as f64,
            // for L = 2 the hat function is positive again at δ = 1
            Threshold::Hat if l == 2 => 0.5,
            Threshold::Hat => 2.0 / l as f64,
        }
    }
}

pub const ROOT_TOLERANCE: f64 = 1e-9;
pub const ROOT_MAX_ITERATIONS: u32 = 200;
const ROOT_SCAN_STEPS: u32 = 1000;

/// The gap lower bound at `w_s = L/2` for small `δ`, whose smallest positive
/// root is the threshold. `L` must be even.
pub fn threshold_function<T: RateScalar>(which: Threshold, l: u32, delta: T) -> Result<T> {
    if l == 0 || l % 2 != 0 {
        return Err(Error::InvalidParams(format!("threshold functions need even L, got {l}")));
    }
    check_delta("threshold_function", delta)?;
    let lf = T::lit(l as f64);
    let inv = T::one() / lf;
    let quarter = T::lit(0.25);
    let half = T::lit(0.5);
    if delta * lf * quarter > T::one() + T::unit_slack() {
        return Err(domain("threshold_function", delta, "needs δ ≤ 4/L"));
    }
    let h = binary_entropy(delta)?;
    let h_quarter = binary_entropy(delta * lf * quarter)?;
    let log_central = T::lit(log2_binomial(l as u64, (l / 2) as i64)) * inv;
    let log_heavy = heavy_subblock_rate::<T>(l, l / 2);
    let log_half_l = T::lit((l as f64 / 2.0).log2());
    let v = match which {
        Threshold::Tilde => {
            T::one() - h - log_central + delta * half * log_half_l + inv * h_quarter
        }
        Threshold::Hat => {
            let log_nbhd = T::lit(((l * (l + 2)) as f64 / 4.0).log2());
            T::one() - h - log_heavy + inv * h_quarter + delta * quarter * log_nbhd
        }
        Threshold::Grave => {
            log_heavy - h - log_central + delta * half * log_half_l + inv * h_quarter
        }
    };
    Ok(v)
}

/// Smallest positive root of [`threshold_function`].
///
/// The bracket is scanned on a uniform grid for the first sign change,
/// which is then bisected to [`ROOT_TOLERANCE`].
pub fn threshold_root<T: RateScalar>(which: Threshold, l: u32) -> Result<T> {
    let end = which.bracket_end(l);
    let f = |x: f64| threshold_function(which, l, T::lit(x));
    if f(0.0)? <= T::zero() {
        return Err(Error::BracketFailure(format!(
            "{} function is not positive at δ = 0 for L = {l}",
            which.label()
        )));
    }
    let mut lo = 0.0;
    let mut hi = None;
    for i in 1..=ROOT_SCAN_STEPS {
        let x = end * i as f64 / ROOT_SCAN_STEPS as f64;
        if f(x)? <= T::zero() {
            hi = Some(x);
            break;
        }
        lo = x;
    }
    let mut hi = hi.ok_or_else(|| {
        Error::BracketFailure(format!(
            "{} function has no sign change on (0, {end}] for L = {l}",
            which.label()
        ))
    })?;
    for _ in 0..ROOT_MAX_ITERATIONS {
        if hi - lo <= ROOT_TOLERANCE {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid)? > T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(T::lit(0.5 * (lo + hi)))
}
