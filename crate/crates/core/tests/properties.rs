use num_bigint::BigUint;
use proptest::prelude::*;

use subblock_codes::asymptotic::{
    alpha_gv_cwc, alpha_sp_cwc, delta_star, gamma_gv, gamma_sp, rate_sweep_point, sigma_gv,
    sigma_sp, RateFamily,
};
use subblock_codes::finite_bounds::{bound_report, BoundConfig};
use subblock_codes::spaces::{cscc_ball_size, cscc_space_size, secc_avg_ball_size, secc_space_size};
use subblock_codes::{CodeFamily, CodeParams, Ratio};

fn params() -> impl Strategy<Value = CodeParams> {
    (1u32..=6, 1u32..=8)
        .prop_flat_map(|(m, l)| (Just(m), Just(l), 1..=m * l, 0..=l))
        .prop_map(|(m, l, d, ws)| CodeParams::new(m, l, d, ws).unwrap())
}

fn no_oracle() -> BoundConfig {
    BoundConfig {
        oracle_baselines: false,
        ..BoundConfig::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn aggregated_bounds_never_cross(p in params()) {
        for family in [CodeFamily::Cscc, CodeFamily::Secc] {
            let r = bound_report(&p, family, &no_oracle()).unwrap();
            prop_assert!(r.lower.value <= r.upper.value, "{family:?} {p}");
            for c in &r.candidates {
                prop_assert_eq!(c.params, p);
            }
        }
    }

    #[test]
    fn cscc_bounds_respect_complement_symmetry(p in params()) {
        let q = CodeParams::new(p.m(), p.subblock_len(), p.distance(), p.subblock_len() - p.subblock_weight()).unwrap();
        let a = bound_report(&p, CodeFamily::Cscc, &no_oracle()).unwrap();
        let b = bound_report(&q, CodeFamily::Cscc, &no_oracle()).unwrap();
        prop_assert_eq!(a.lower.value, b.lower.value);
        prop_assert_eq!(a.upper.value, b.upper.value);
    }

    #[test]
    fn cscc_balls_grow_to_the_whole_space(p in params()) {
        let mut prev = BigUint::from(0u32);
        for r in 0..=p.n() {
            let b = cscc_ball_size(&p, r);
            prop_assert!(b >= prev);
            prev = b;
        }
        prop_assert_eq!(prev, cscc_space_size(&p));
        let full = secc_avg_ball_size(&p, p.n());
        prop_assert_eq!(full, Ratio::from_integer(secc_space_size(&p)));
    }

    #[test]
    fn rates_stay_in_unit_interval_and_gv_below_sp(l in 1u32..=32, frac in 0.0f64..1.0, delta in 0.0f64..=1.0) {
        let ws = ((l as f64) * frac).floor() as u32;
        for family in [RateFamily::Cscc, RateFamily::Secc, RateFamily::Cwc] {
            let pt = rate_sweep_point(family, l, ws, delta).unwrap();
            let gv = pt.gv_lower.value();
            let sp = pt.sp_upper.value();
            for v in [gv, sp].into_iter().flatten() {
                prop_assert!((0.0..=1.0).contains(&v));
            }
            if let (Some(g), Some(s)) = (gv, sp) {
                prop_assert!(g <= s + 1e-12, "{family:?} L={l} w_s={ws} δ={delta}: {g} > {s}");
            }
        }
    }

    #[test]
    fn cscc_rates_symmetric_in_weight(l in 2u32..=32, frac in 0.0f64..1.0, t in 0.0f64..1.0) {
        let ws = 1 + ((l as f64 - 1.0) * frac).floor() as u32;
        prop_assume!(ws < l);
        let delta = t * delta_star::<f64>(l, ws);
        let a = gamma_gv::<f64>(l, delta, ws).unwrap().bits_per_use;
        let b = gamma_gv::<f64>(l, delta, l - ws).unwrap().bits_per_use;
        prop_assert!((a - b).abs() < 1e-12);
        let a = gamma_sp::<f64>(l, delta, ws).unwrap().bits_per_use;
        let b = gamma_sp::<f64>(l, delta, l - ws).unwrap().bits_per_use;
        prop_assert!((a - b).abs() < 1e-12);
    }
}

/// GV ≤ SP on a 1000-point δ grid over each family's common domain.
#[test]
fn gv_below_sp_on_dense_grids() {
    for l in [2u32, 3, 4, 8, 16] {
        for ws in 1..l {
            let omega = ws as f64 / l as f64;
            let ds: f64 = delta_star(l, ws);
            for i in 0..1000 {
                let d = i as f64 / 1000.0;
                if d < ds {
                    let g = gamma_gv::<f64>(l, d, ws).unwrap().bits_per_use;
                    let s = gamma_sp::<f64>(l, d, ws).unwrap().bits_per_use;
                    assert!(g <= s + 1e-12, "CSCC L={l} w_s={ws} δ={d}");
                    let g = alpha_gv_cwc(d, omega).unwrap().bits_per_use;
                    let s = alpha_sp_cwc(d, omega).unwrap().bits_per_use;
                    assert!(g <= s + 1e-12, "CWC L={l} w_s={ws} δ={d}");
                }
                if d <= ds.min(4.0 / l as f64) {
                    let g = sigma_gv::<f64>(l, d, ws).unwrap().bits_per_use;
                    let s = sigma_sp::<f64>(l, d, ws).unwrap().bits_per_use;
                    assert!(g <= s + 1e-12, "SECC L={l} w_s={ws} δ={d}");
                }
            }
        }
    }
}
