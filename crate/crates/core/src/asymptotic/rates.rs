use serde::Serialize;

use super::{check_delta, check_subblock, delta_star, domain, RateValue};
use crate::combinatorics::{binary_entropy, binomial, log2_binomial, log2_count};
use crate::error::{Error, Result};
use crate::scalar::RateScalar;
use crate::spaces::heavy_subblock_count;

fn lb<T: RateScalar>(n: u32, k: u32) -> T {
    T::lit(log2_binomial(n as u64, k as i64))
}

fn inv<T: RateScalar>(l: u32) -> T {
    T::one() / T::lit(l as f64)
}

/// `(1/L) log2 Σ_{j ≥ w_s} C(L, j)`.
pub fn heavy_subblock_rate<T: RateScalar>(l: u32, ws: u32) -> T {
    T::lit(log2_count(&heavy_subblock_count(l, ws)) / l as f64)
}

/// Weighted log-binomials at a fractional half-distance `u`: the floor and
/// ceiling terms of `log C(w_s,·) + log C(L−w_s,·)`, interpolated linearly
/// and divided by `L`.
fn interpolated_log_binomials<T: RateScalar>(l: u32, ws: u32, u: T) -> T {
    let lo = u.floor();
    let hi = u.ceil();
    let w_hi = T::one() + u - hi;
    let w_lo = hi - u;
    let term = |k: T| {
        let k = k.to_u32().expect("half-distance is small");
        lb::<T>(ws, k) + lb::<T>(l - ws, k)
    };
    // a zero weight must not touch log C(n, k) for k > n
    let mut s = w_hi * term(hi);
    if w_lo > T::zero() {
        s = s + w_lo * term(lo);
    }
    s * inv(l)
}

/// GV lower bound for unconstrained binary codes; zero from `δ = 1/2` on.
pub fn alpha_gv_unconstrained<T: RateScalar>(delta: T) -> Result<RateValue<T>> {
    check_delta("alpha_gv_unconstrained", delta)?;
    if delta >= T::lit(0.5) {
        return Ok(RateValue::exact(T::zero()));
    }
    Ok(RateValue::lower(T::one() - binary_entropy(delta)?))
}

fn check_omega<T: RateScalar>(function: &'static str, omega: T) -> Result<()> {
    if !(omega > T::zero() && omega < T::one()) {
        return Err(domain(function, omega, "weight fraction must lie in (0, 1)"));
    }
    Ok(())
}

/// GV lower bound for constant-weight codes of weight fraction `ω`; the
/// rate is exactly zero from `δ* = 2ω(1−ω)` on.
pub fn alpha_gv_cwc<T: RateScalar>(delta: T, omega: T) -> Result<RateValue<T>> {
    check_delta("alpha_gv_cwc", delta)?;
    check_omega("alpha_gv_cwc", omega)?;
    let two = T::lit(2.0);
    if delta >= two * omega * (T::one() - omega) {
        return Ok(RateValue::exact(T::zero()));
    }
    let v = binary_entropy(omega)?
        - omega * binary_entropy(delta / (two * omega))?
        - (T::one() - omega) * binary_entropy(delta / (two * (T::one() - omega)))?;
    Ok(RateValue::lower(v))
}

/// Sphere-packing upper bound for constant-weight codes, for
/// `δ < 4 min(ω, 1−ω)`.
pub fn alpha_sp_cwc<T: RateScalar>(delta: T, omega: T) -> Result<RateValue<T>> {
    check_delta("alpha_sp_cwc", delta)?;
    check_omega("alpha_sp_cwc", omega)?;
    let four = T::lit(4.0);
    if delta >= four * omega.min(T::one() - omega) {
        return Err(domain("alpha_sp_cwc", delta, "needs δ < 4 min(ω, 1 − ω)"));
    }
    let v = binary_entropy(omega)?
        - omega * binary_entropy(delta / (four * omega))?
        - (T::one() - omega) * binary_entropy(delta / (four * (T::one() - omega)))?;
    Ok(RateValue::upper(v))
}

fn check_proper_weight(function: &'static str, l: u32, ws: u32) -> Result<()> {
    check_subblock(function, l, ws)?;
    if ws == 0 || ws == l {
        return Err(Error::InvalidParams(format!(
            "{function}: needs 1 ≤ w_s ≤ L − 1, got L={l}, w_s={ws}"
        )));
    }
    Ok(())
}

/// The GV rate together with both candidates for its last term.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GammaGvTerms<T> {
    pub rate: RateValue<T>,
    /// `(1/L) log2(min(w_s, L−w_s) + 1)`.
    pub theta: T,
    /// `(1/L + δ/2) h(1 / (1 + δL/2))`.
    pub phi: T,
}

/// CSCC Gilbert-Varshamov rate with its `θ` and `φ` terms, `0 ≤ δ < δ*`.
pub fn gamma_gv_terms<T: RateScalar>(l: u32, delta: T, ws: u32) -> Result<GammaGvTerms<T>> {
    check_delta("gamma_gv", delta)?;
    check_proper_weight("gamma_gv", l, ws)?;
    if delta >= delta_star::<T>(l, ws) {
        return Err(domain("gamma_gv", delta, "needs δ < δ*; the rate is 0 beyond"));
    }
    let half = T::lit(0.5);
    let u = delta * T::lit(l as f64) * half;
    let theta = inv::<T>(l) * T::lit(((ws.min(l - ws) + 1) as f64).log2());
    let phi = (inv::<T>(l) + delta * half) * binary_entropy(T::one() / (T::one() + u))?;
    let v = if l == 2 {
        half * (T::one() - binary_entropy(delta)?)
    } else {
        inv::<T>(l) * lb::<T>(l, ws) - interpolated_log_binomials(l, ws, u) - theta.min(phi)
    };
    Ok(GammaGvTerms {
        rate: RateValue::lower(v),
        theta,
        phi,
    })
}

/// CSCC Gilbert-Varshamov rate, `0 ≤ δ < δ*`.
pub fn gamma_gv<T: RateScalar>(l: u32, delta: T, ws: u32) -> Result<RateValue<T>> {
    Ok(gamma_gv_terms(l, delta, ws)?.rate)
}

/// CSCC sphere-packing rate, `0 ≤ δ ≤ δ*`.
///
/// The theorem is stated for `δ < δ*`; the formula is continuous and the
/// true rate non-increasing, so the value at `δ*` is still an upper bound.
pub fn gamma_sp<T: RateScalar>(l: u32, delta: T, ws: u32) -> Result<RateValue<T>> {
    check_delta("gamma_sp", delta)?;
    check_proper_weight("gamma_sp", l, ws)?;
    if delta > delta_star::<T>(l, ws) {
        return Err(domain("gamma_sp", delta, "needs δ ≤ δ*; the rate is 0 beyond"));
    }
    let u = delta * T::lit(l as f64 / 4.0);
    let frac = u.ceil() - u;
    let v = inv::<T>(l) * lb::<T>(l, ws)
        - interpolated_log_binomials(l, ws, u)
        - inv::<T>(l) * binary_entropy(frac)?;
    Ok(RateValue::upper(v))
}

/// Closed form of [`gamma_sp`] for `δ ≤ min(δ*, 4/L)`:
/// `(1/L) log C(L,w_s) − (δ/4) log(w_s(L−w_s)) − (1/L) h(δL/4)`.
pub fn gamma_sp_simplified<T: RateScalar>(l: u32, delta: T, ws: u32) -> Result<RateValue<T>> {
    check_delta("gamma_sp_simplified", delta)?;
    check_proper_weight("gamma_sp_simplified", l, ws)?;
    let limit = delta_star::<T>(l, ws).min(T::lit(4.0 / l as f64));
    if delta > limit {
        return Err(domain("gamma_sp_simplified", delta, "needs δ ≤ min(δ*, 4/L)"));
    }
    let quarter = T::lit(0.25);
    let v = inv::<T>(l) * lb::<T>(l, ws)
        - delta * quarter * T::lit(((ws * (l - ws)) as f64).log2())
        - inv::<T>(l) * binary_entropy(delta * T::lit(l as f64) * quarter)?;
    Ok(RateValue::upper(v))
}

/// SECC Gilbert-Varshamov rate `[(1/L) log Σ_{j≥w_s} C(L,j) − h(δ)]^+`;
/// exactly zero from `δ = 1/2` on, where no binary code has positive rate.
pub fn sigma_gv<T: RateScalar>(l: u32, delta: T, ws: u32) -> Result<RateValue<T>> {
    check_delta("sigma_gv", delta)?;
    check_subblock("sigma_gv", l, ws)?;
    if delta >= T::lit(0.5) {
        return Ok(RateValue::exact(T::zero()));
    }
    Ok(RateValue::lower(heavy_subblock_rate::<T>(l, ws) - binary_entropy(delta)?))
}

/// SECC sphere-packing rate for `0 < w_s < L` and `0 ≤ δ ≤ min(δ*, 4/L)`.
pub fn sigma_sp<T: RateScalar>(l: u32, delta: T, ws: u32) -> Result<RateValue<T>> {
    check_delta("sigma_sp", delta)?;
    check_proper_weight("sigma_sp", l, ws)?;
    let limit = delta_star::<T>(l, ws).min(T::lit(4.0 / l as f64));
    if delta > limit {
        return Err(domain("sigma_sp", delta, "needs δ ≤ min(δ*, 4/L)"));
    }
    let quarter = T::lit(0.25);
    let v = heavy_subblock_rate::<T>(l, ws)
        - inv::<T>(l) * binary_entropy(T::lit(l as f64) * delta * quarter)?
        - delta * quarter * T::lit((((l - ws) * (ws + 1)) as f64).log2());
    Ok(RateValue::upper(v))
}

/// Rate penalty `r(L, ω) = h(w_s/L) − (1/L) log2 C(L, w_s)`.
pub fn rate_penalty_r<T: RateScalar>(l: u32, ws: u32) -> Result<T> {
    check_subblock("rate_penalty_r", l, ws)?;
    let omega = T::lit(ws as f64 / l as f64);
    Ok(binary_entropy(omega)? - inv::<T>(l) * lb::<T>(l, ws))
}

/// One row of the fixed-`m` limit illustration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LimitRow<T> {
    #[serde(rename = "L")]
    pub l: u32,
    #[serde(rename = "w_s")]
    pub ws: u32,
    /// `(1/(mL)) log2(C(L,w_s)^m / C(mL, m w_s))`.
    pub correction: T,
}

/// Normalised log-ratio between the CSCC space and the constant-weight
/// space of the same total weight. It tends to 0 as `L` grows at fixed `m`.
pub fn subblock_correction<T: RateScalar>(m: u32, l: u32, ws: u32) -> Result<T> {
    check_subblock("subblock_correction", l, ws)?;
    if m == 0 {
        return Err(Error::InvalidParams("m must be positive".into()));
    }
    let n = (m * l) as u64;
    let num = binomial(l as u64, ws as i64).pow(m);
    let den = binomial(n, (m * ws) as i64);
    Ok(T::lit((log2_count(&num) - log2_count(&den)) / n as f64))
}

/// Correction terms for each `L` at fixed `m` and weight fraction `ω`;
/// `ωL` must be an integer for every listed `L`.
pub fn finite_l_limit_demo<T: RateScalar>(m: u32, ls: &[u32], omega: f64) -> Result<Vec<LimitRow<T>>> {
    ls.iter()
        .map(|&l| {
            let w = omega * l as f64;
            if (w - w.round()).abs() > 1e-9 || w < 0.0 || w > l as f64 {
                return Err(Error::InvalidParams(format!(
                    "ω·L must be an integer in [0, L], got ω={omega}, L={l}"
                )));
            }
            let ws = w.round() as u32;
            Ok(LimitRow {
                l,
                ws,
                correction: subblock_correction(m, l, ws)?,
            })
        })
        .collect()
}
