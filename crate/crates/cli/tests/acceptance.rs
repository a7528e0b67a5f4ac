//! Acceptance criteria, one test each. Every test prints a single
//! `criterion N: PASS|FAIL` line with its runtime and detail.
//!
//! The tests hold a shared lock so that runtime limits are measured
//! without the other criteria competing for the CPU.

use std::sync::Mutex;
use std::time::{Duration, Instant};

use subblock_codes::exact_oracle::OracleConfig;
use subblock_codes_cli::verify::{
    balanced_product_monotone, cscc_ball_center_independence, figure_shapes,
    finite_to_asymptotic_trend, gap_decomposition_grid, near_neighbour_lower_bound,
    sandwich_check, small_delta_limits, threshold_roots, two_bit_cscc_identity, worked_examples,
    CheckResult, Ops, SandwichConfig,
};

static SERIAL: Mutex<()> = Mutex::new(());

fn criterion(n: u32, name: &str, limit: Duration, check: impl FnOnce() -> CheckResult) {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let result = check();
    let elapsed = start.elapsed();
    let (passed, detail) = match result {
        Ok(d) if elapsed <= limit => (true, d),
        Ok(d) => (false, format!("over the {limit:?} limit; {d}")),
        Err(d) => (false, d),
    };
    let status = if passed { "PASS" } else { "FAIL" };
    println!("criterion {n}: {status} {name} ({:.2}s) {detail}", elapsed.as_secs_f64());
    assert!(passed, "criterion {n} failed: {detail}");
}

#[test]
fn criterion_01_worked_examples() {
    criterion(1, "worked example values", Duration::from_secs(1), || {
        worked_examples(&Ops::default())
    });
}

#[test]
fn criterion_02_two_bit_cscc_identity() {
    criterion(2, "C(m,2,2d,1) = A(m,d) for m ≤ 8, d ≤ 4", Duration::from_secs(120), || {
        two_bit_cscc_identity(8, 4, &OracleConfig::default())
    });
}

#[test]
fn criterion_03_sandwich_and_chain() {
    // per-instance budget, and no new searches after 13 minutes so the
    // whole sweep stays inside its 15 minute limit
    let cfg = SandwichConfig::new(12, Duration::from_secs(20), Some(Duration::from_secs(13 * 60)));
    criterion(3, "oracle sandwich and containment chain, mL ≤ 12", Duration::from_secs(15 * 60), || {
        sandwich_check(&cfg)
    });
}

#[test]
fn criterion_04_cscc_ball_center_independence() {
    criterion(4, "CSCC ball centre independence, mL ≤ 12", Duration::from_secs(60), || {
        cscc_ball_center_independence(&Ops::default(), 12)
    });
}

#[test]
fn criterion_05_subblock_inequalities() {
    criterion(5, "binomial product and near-neighbour inequalities", Duration::from_secs(60), || {
        let a = balanced_product_monotone(24)?;
        let b = near_neighbour_lower_bound(12)?;
        Ok(format!("{a}; {b}"))
    });
}

#[test]
fn criterion_06_threshold_roots() {
    criterion(6, "threshold roots", Duration::from_secs(5), || threshold_roots(64));
}

#[test]
fn criterion_07_small_delta_limits() {
    criterion(7, "small-δ gap limits", Duration::from_secs(5), small_delta_limits);
}

#[test]
fn criterion_08_gap_decomposition() {
    criterion(8, "gap decomposition inequality grid", Duration::from_secs(10), || {
        gap_decomposition_grid(32)
    });
}

#[test]
fn criterion_09_figure_shapes() {
    criterion(9, "figure table shapes", Duration::from_secs(30), figure_shapes);
}

#[test]
fn criterion_10_finite_to_asymptotic_trend() {
    criterion(10, "finite Gilbert bound approaches asymptotic rate", Duration::from_secs(120), || {
        finite_to_asymptotic_trend()
    });
}
