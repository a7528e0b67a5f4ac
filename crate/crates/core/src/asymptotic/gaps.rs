use serde::Serialize;

use super::rates::{alpha_gv_cwc, alpha_sp_cwc, gamma_gv, gamma_sp, sigma_gv, sigma_sp};
use super::{check_delta, check_subblock, delta_star, domain, SweepValue};
use crate::error::Result;
use crate::scalar::RateScalar;

fn omega<T: RateScalar>(l: u32, ws: u32) -> T {
    T::lit(ws as f64 / l as f64)
}

fn positive_part<T: RateScalar>(v: T) -> T {
    v.max(T::zero())
}

/// `[α_GV(δ, ω) − γ_SP(L, δ, ω)]^+` for `0 ≤ δ < δ*`: a lower bound on the
/// rate lost by constraining every subblock instead of the whole word.
pub fn gap_cwc_cscc_lb<T: RateScalar>(l: u32, delta: T, ws: u32) -> Result<T> {
    check_delta("gap_cwc_cscc_lb", delta)?;
    if delta >= delta_star::<T>(l, ws) {
        return Err(domain("gap_cwc_cscc_lb", delta, "needs δ < δ*"));
    }
    let a = alpha_gv_cwc(delta, omega::<T>(l, ws))?.bits_per_use;
    let g = gamma_sp(l, delta, ws)?.bits_per_use;
    Ok(positive_part(a - g))
}

/// `[α_GV(δ, ω') − σ_SP(L, δ, ω)]^+` with `ω' = ω` when `w_s ≥ L/2` and
/// `ω' = 1/2` otherwise, since heavy-weight codes below half weight reach
/// the unconstrained rate. Valid for `0 ≤ δ ≤ min(δ*, 4/L)`.
pub fn gap_hwc_secc_lb<T: RateScalar>(l: u32, delta: T, ws: u32) -> Result<T> {
    let s = sigma_sp(l, delta, ws)?.bits_per_use;
    let w = if 2 * ws >= l { omega::<T>(l, ws) } else { T::lit(0.5) };
    let a = alpha_gv_cwc(delta, w)?.bits_per_use;
    Ok(positive_part(a - s))
}

/// `[σ_GV(L, δ, ω) − γ_SP(L, δ, ω)]^+` for `0 ≤ δ ≤ δ*`.
pub fn gap_secc_cscc_lb<T: RateScalar>(l: u32, delta: T, ws: u32) -> Result<T> {
    let g = gamma_sp(l, delta, ws)?.bits_per_use;
    let s = sigma_gv(l, delta, ws)?.bits_per_use;
    Ok(positive_part(s - g))
}

/// Rate functions in sweep-friendly form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RateFamily {
    Cscc,
    Secc,
    Cwc,
}

/// GV lower and sphere-packing upper bound at one sweep point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatePoint<T> {
    pub delta: T,
    pub gv_lower: SweepValue<T>,
    pub sp_upper: SweepValue<T>,
}

impl<T: RateScalar> RatePoint<T> {
    /// `bound`, `proven-zero` or `undefined` when both columns agree,
    /// otherwise `gv-flag/sp-flag`.
    pub fn flag(&self) -> String {
        let (a, b) = (self.gv_lower.flag(), self.sp_upper.flag());
        if a == b {
            a.to_string()
        } else {
            format!("{a}/{b}")
        }
    }
}

/// SECC and heavy-weight rates vanish from `δ = 1/2` on, and also from `δ*`
/// on when `w_s ≥ L/2`.
fn heavy_rate_is_zero<T: RateScalar>(l: u32, ws: u32, delta: T) -> bool {
    delta >= T::lit(0.5) || (2 * ws >= l && delta >= delta_star::<T>(l, ws))
}

/// Bounds for one family at one relative distance, replacing the formulas
/// by exact zeros where a theorem gives the rate and by `Undefined` where
/// nothing applies.
pub fn rate_sweep_point<T: RateScalar>(family: RateFamily, l: u32, ws: u32, delta: T) -> Result<RatePoint<T>> {
    check_delta("rate_sweep_point", delta)?;
    check_subblock("rate_sweep_point", l, ws)?;
    let proper = ws > 0 && ws < l;
    let ds = delta_star::<T>(l, ws);
    let (gv, sp) = match family {
        RateFamily::Cscc | RateFamily::Cwc if !proper || delta >= ds => {
            (SweepValue::ProvenZero, SweepValue::ProvenZero)
        }
        RateFamily::Cscc => (
            SweepValue::Bound(gamma_gv(l, delta, ws)?.bits_per_use),
            SweepValue::Bound(gamma_sp(l, delta, ws)?.bits_per_use),
        ),
        RateFamily::Cwc => {
            let w = omega::<T>(l, ws);
            let sp = match alpha_sp_cwc(delta, w) {
                Ok(v) => SweepValue::Bound(v.bits_per_use),
                Err(_) => SweepValue::Undefined,
            };
            (SweepValue::Bound(alpha_gv_cwc(delta, w)?.bits_per_use), sp)
        }
        RateFamily::Secc => {
            if heavy_rate_is_zero(l, ws, delta) {
                (SweepValue::ProvenZero, SweepValue::ProvenZero)
            } else {
                let sp = if proper && delta <= ds.min(T::lit(4.0 / l as f64)) {
                    SweepValue::Bound(sigma_sp(l, delta, ws)?.bits_per_use)
                } else {
                    SweepValue::Undefined
                };
                (SweepValue::Bound(sigma_gv(l, delta, ws)?.bits_per_use), sp)
            }
        }
    };
    Ok(RatePoint {
        delta,
        gv_lower: gv,
        sp_upper: sp,
    })
}

/// [`gap_cwc_cscc_lb`] over all `δ ∈ [0, 1]`: both rates are zero from `δ*`
/// on.
pub fn gap_cwc_cscc_sweep<T: RateScalar>(l: u32, delta: T, ws: u32) -> Result<SweepValue<T>> {
    check_delta("gap_cwc_cscc_sweep", delta)?;
    check_subblock("gap_cwc_cscc_sweep", l, ws)?;
    if ws == 0 || ws == l || delta >= delta_star::<T>(l, ws) {
        return Ok(SweepValue::ProvenZero);
    }
    Ok(SweepValue::Bound(gap_cwc_cscc_lb(l, delta, ws)?))
}

/// [`gap_hwc_secc_lb`] over all `δ ∈ [0, 1]`.
pub fn gap_hwc_secc_sweep<T: RateScalar>(l: u32, delta: T, ws: u32) -> Result<SweepValue<T>> {
    check_delta("gap_hwc_secc_sweep", delta)?;
    check_subblock("gap_hwc_secc_sweep", l, ws)?;
    // w_s = 0 leaves both spaces unconstrained; w_s = L leaves one word
    if ws == 0 || ws == l || heavy_rate_is_zero(l, ws, delta) {
        return Ok(SweepValue::ProvenZero);
    }
    if delta <= delta_star::<T>(l, ws).min(T::lit(4.0 / l as f64)) {
        return Ok(SweepValue::Bound(gap_hwc_secc_lb(l, delta, ws)?));
    }
    Ok(SweepValue::Undefined)
}

/// [`gap_secc_cscc_lb`] over all `δ ∈ [0, 1]`.
pub fn gap_secc_cscc_sweep<T: RateScalar>(l: u32, delta: T, ws: u32) -> Result<SweepValue<T>> {
    check_delta("gap_secc_cscc_sweep", delta)?;
    check_subblock("gap_secc_cscc_sweep", l, ws)?;
    if ws == l || heavy_rate_is_zero(l, ws, delta) {
        return Ok(SweepValue::ProvenZero);
    }
    if ws == 0 {
        // a weight-0 CSCC has one word, so σ_GV itself bounds the gap
        return Ok(SweepValue::Bound(sigma_gv(l, delta, ws)?.bits_per_use));
    }
    if delta <= delta_star::<T>(l, ws) {
        return Ok(SweepValue::Bound(gap_secc_cscc_lb(l, delta, ws)?));
    }
    Ok(SweepValue::Undefined)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotic::rates::{heavy_subblock_rate, rate_penalty_r};
    use crate::combinatorics::log2_binomial;

    #[test]
    fn cwc_cscc_gap_tends_to_penalty() {
        for l in [2u32, 4, 8, 16] {
            for ws in 1..l {
                let g = gap_cwc_cscc_lb(l, 1e-9f64, ws).unwrap();
                let r = rate_penalty_r::<f64>(l, ws).unwrap();
                assert!((g - r).abs() < 1e-6, "L={l} w={ws}");
                assert!(r > 0.0);
            }
        }
    }

    #[test]
    fn cwc_cscc_gap_is_symmetric_and_zero_beyond_delta_star() {
        for l in [5u32, 8, 12] {
            for ws in 1..l {
                let ds: f64 = delta_star(l, ws);
                for i in 0..100 {
                    let d = ds * i as f64 / 100.0;
                    let a = gap_cwc_cscc_lb(l, d, ws).unwrap();
                    let b = gap_cwc_cscc_lb(l, d, l - ws).unwrap();
                    assert!((a - b).abs() < 1e-12);
                    assert!(a >= 0.0);
                }
                assert_eq!(gap_cwc_cscc_sweep(l, ds, ws).unwrap(), SweepValue::ProvenZero);
                assert_eq!(gap_cwc_cscc_sweep(l, 0.9f64, ws).unwrap(), SweepValue::ProvenZero);
                assert!(gap_cwc_cscc_lb(l, ds, ws).is_err());
            }
        }
    }

    #[test]
    fn hwc_secc_gap_limits() {
        for l in [2u32, 4, 8, 16] {
            for ws in 1..l {
                let g = gap_hwc_secc_lb(l, 1e-9f64, ws).unwrap();
                let limit = if 2 * ws <= l {
                    1.0 - heavy_subblock_rate::<f64>(l, ws)
                } else {
                    // ω > 1/2: h(ω) − log Σ / L
                    let w = ws as f64 / l as f64;
                    -w * w.log2() - (1.0 - w) * (1.0 - w).log2() - heavy_subblock_rate::<f64>(l, ws)
                };
                assert!((g - limit.max(0.0)).abs() < 1e-6, "L={l} w={ws}");
            }
        }
        assert_eq!(gap_hwc_secc_sweep(4, 0.6f64, 1).unwrap(), SweepValue::ProvenZero);
        assert_eq!(gap_hwc_secc_sweep(8, 0.45f64, 2).unwrap(), SweepValue::Undefined);
    }

    #[test]
    fn secc_cscc_gap_limits() {
        for l in [2u32, 4, 8, 16] {
            for ws in 1..l {
                let g = gap_secc_cscc_lb(l, 1e-9f64, ws).unwrap();
                let limit = heavy_subblock_rate::<f64>(l, ws) - log2_binomial(l as u64, ws as i64) / l as f64;
                assert!((g - limit).abs() < 1e-6, "L={l} w={ws}");
            }
        }
    }

    #[test]
    fn two_bit_gaps_match_closed_forms() {
        let h = |p: f64| -p * p.log2() - (1.0 - p) * (1.0 - p).log2();
        for i in 1..100 {
            let d = i as f64 / 200.0;
            let hat = gap_hwc_secc_lb(2, d, 1).unwrap();
            let closed = 1.0 - h(d) - 0.5 * 3f64.log2() + 0.5 * h(d / 2.0) + d / 4.0;
            assert!((hat - closed.max(0.0)).abs() < 1e-12);
            let grave = gap_secc_cscc_lb(2, d, 1).unwrap();
            let closed = 0.5 * 1.5f64.log2() - h(d) + 0.5 * h(d / 2.0);
            assert!((grave - closed.max(0.0)).abs() < 1e-12);
        }
        assert!(gap_hwc_secc_lb(2, 0.055f64, 1).unwrap() > 0.0);
        assert_eq!(gap_hwc_secc_lb(2, 0.058f64, 1).unwrap(), 0.0);
        assert!(gap_secc_cscc_lb(2, 0.083f64, 1).unwrap() > 0.0);
        assert_eq!(gap_secc_cscc_lb(2, 0.086f64, 1).unwrap(), 0.0);
    }

    #[test]
    fn rate_points() {
        let p = rate_sweep_point(RateFamily::Cscc, 2, 1, 0.2f64).unwrap();
        let h = |p: f64| -p * p.log2() - (1.0 - p) * (1.0 - p).log2();
        assert!((p.gv_lower.value().unwrap() - 0.5 * (1.0 - h(0.2))).abs() < 1e-12);
        assert!((p.sp_upper.value().unwrap() - 0.5 * (1.0 - h(0.1))).abs() < 1e-12);
        assert_eq!(p.flag(), "bound");
        let p = rate_sweep_point(RateFamily::Cscc, 6, 2, 0.0f64).unwrap();
        let base = log2_binomial(6, 2) / 6.0;
        assert!((p.gv_lower.value().unwrap() - base).abs() < 1e-12);
        assert!((p.sp_upper.value().unwrap() - base).abs() < 1e-12);
        let p = rate_sweep_point(RateFamily::Cscc, 4, 2, 0.5f64).unwrap();
        assert_eq!(p.flag(), "proven-zero");
        let p = rate_sweep_point(RateFamily::Secc, 8, 2, 0.45f64).unwrap();
        assert_eq!(p.flag(), "bound/undefined");
    }

    #[test]
    fn gaps_are_nonnegative_everywhere() {
        for l in 2..=12u32 {
            for ws in 0..=l {
                for i in 0..=200 {
                    let d = i as f64 / 200.0;
                    for v in [
                        gap_cwc_cscc_sweep(l, d, ws).unwrap(),
                        gap_hwc_secc_sweep(l, d, ws).unwrap(),
                        gap_secc_cscc_sweep(l, d, ws).unwrap(),
                    ] {
                        if let Some(x) = v.value() {
                            assert!((0.0..=1.0).contains(&x));
                        }
                    }
                }
            }
        }
    }
}
