//! Cross-module verification checks.
//!
//! Each check returns a one-line detail on success and a description of the
//! first failures otherwise. The ball-size functions under test are passed
//! in through [`Ops`] so that a deliberately broken implementation can be
//! shown to fail the suite.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rayon::prelude::*;

use subblock_codes::asymptotic::{
    delta_star, gamma_gv, heavy_subblock_rate, rate_penalty_r, threshold_function, threshold_root,
    Threshold,
};
use subblock_codes::combinatorics::{binomial, log2_binomial, log2_count};
use subblock_codes::exact_oracle::{exact_size, verify_code, OracleConfig};
use subblock_codes::finite_bounds::{avg_sp_value, bound_report, cscc_gv_lower, BoundConfig};
use subblock_codes::spaces::{
    cscc_ball_size, enumerate_space, secc_avg_ball_size, secc_ball_size_at, secc_space_size,
    DEFAULT_SPACE_CAP,
};
use subblock_codes::{CodeFamily, CodeParams, ExactCount, Ratio, SpaceKind, WeightProfile, Word};

use crate::figures::{figure_table, FigureId, FigureSpec, Gap};

/// Ball-size implementations exercised by the checks.
#[derive(Clone, Copy)]
pub struct Ops {
    pub cscc_ball_size: fn(&CodeParams, u32) -> ExactCount,
    pub secc_ball_size_at: fn(&WeightProfile, &CodeParams, u32) -> ExactCount,
    pub secc_avg_ball_size: fn(&CodeParams, u32) -> Ratio,
}

impl Default for Ops {
    fn default() -> Self {
        Ops {
            cscc_ball_size,
            secc_ball_size_at,
            secc_avg_ball_size,
        }
    }
}

pub type CheckResult = std::result::Result<String, String>;

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

fn timed(name: &str, f: impl FnOnce() -> CheckResult) -> CheckOutcome {
    let start = Instant::now();
    let r = f();
    let elapsed = start.elapsed();
    let (passed, detail) = match r {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CheckOutcome {
        name: name.to_string(),
        passed,
        detail,
        elapsed,
    }
}

fn params(m: u32, l: u32, d: u32, ws: u32) -> CodeParams {
    CodeParams::new(m, l, d, ws).expect("parameters in range")
}

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn fail_if(errors: Vec<String>, ok: String) -> CheckResult {
    if errors.is_empty() {
        Ok(ok)
    } else {
        let n = errors.len();
        let shown: Vec<String> = errors.into_iter().take(5).collect();
        Err(format!("{n} failure(s): {}", shown.join("; ")))
    }
}

/// `(m, L)` pairs with `mL ≤ max_ml`.
pub fn shapes(max_ml: u32) -> Vec<(u32, u32)> {
    let mut v = Vec::new();
    for m in 1..=max_ml {
        for l in 1..=max_ml / m {
            v.push((m, l));
        }
    }
    v
}

/// Worked SECC examples: two balls, a space size, an average ball and a
/// code beating the average sphere-packing value.
pub fn worked_examples(ops: &Ops) -> CheckResult {
    let mut errors = Vec::new();
    let q = params(1, 4, 1, 2);
    for (word, want) in [("0111", 5u64), ("1001", 3)] {
        let w = Word::parse(word).expect("literal word");
        let profile = WeightProfile::of_word(&w, &q).expect("word lies in the space");
        let got = (ops.secc_ball_size_at)(&profile, &q, 1);
        if got != big(want) {
            errors.push(format!("ball around {word} is {got}, expected {want}"));
        }
    }
    let q = params(1, 3, 1, 1);
    if secc_space_size(&q) != big(7) {
        errors.push(format!("|S(1,3,1)| = {}", secc_space_size(&q)));
    }
    let avg = (ops.secc_avg_ball_size)(&q, 1);
    if avg != Ratio::new(big(25), big(7)) {
        errors.push(format!("average ball is {avg}, expected 25/7"));
    }
    let q = params(1, 3, 3, 1);
    let avg_sp = Ratio::from_integer(secc_space_size(&q)) / (ops.secc_avg_ball_size)(&q, 1);
    if avg_sp != Ratio::new(big(49), big(25)) || avg_sp_value(&q) != avg_sp {
        errors.push(format!("average sphere-packing value is {avg_sp}, expected 49/25"));
    }
    let code = [Word::parse("100").unwrap(), Word::parse("011").unwrap()];
    if !verify_code(&code, 3, &q, SpaceKind::Secc) {
        errors.push("{100, 011} is not a valid single-error-correcting SECC".into());
    }
    if Ratio::from_integer(big(code.len() as u64)) <= avg_sp {
        errors.push("the size-2 code does not exceed the average value".into());
    }
    fail_if(errors, "balls 5/3, |S|=7, average 25/7, 49/25 < 2".into())
}

fn brute_ball_counts(words: &[Word], center: &Word, n: u32) -> Vec<u64> {
    let mut hist = vec![0u64; n as usize + 1];
    for w in words {
        hist[center.distance(w) as usize] += 1;
    }
    let mut acc = 0;
    hist.iter()
        .map(|h| {
            acc += h;
            acc
        })
        .collect()
}

/// Every CSCC ball of every radius has the same size, equal to the
/// counting formula.
pub fn cscc_ball_center_independence(ops: &Ops, max_ml: u32) -> CheckResult {
    let mut errors = Vec::new();
    let mut instances = 0;
    for (m, l) in shapes(max_ml) {
        for ws in 0..=l {
            let q = params(m, l, 1, ws);
            let words = enumerate_space(&q, SpaceKind::Cscc, u64::MAX).expect("no cap");
            let n = m * l;
            let formula: Vec<BigUint> = (0..=n).map(|r| (ops.cscc_ball_size)(&q, r)).collect();
            for c in &words {
                let counts = brute_ball_counts(&words, c, n);
                for (r, (got, want)) in counts.iter().zip(&formula).enumerate() {
                    if big(*got) != *want {
                        errors.push(format!("{q} centre {c} radius {r}: {got} vs formula {want}"));
                    }
                }
            }
            instances += 1;
        }
    }
    fail_if(errors, format!("{instances} spaces, all centres and radii"))
}

/// SECC balls around every centre against the profile formula, and the
/// average against the mean over centres, for `mL ≤ max_ml`.
pub fn secc_balls_brute_force(ops: &Ops, max_ml: u32) -> CheckResult {
    let mut errors = Vec::new();
    let mut instances = 0;
    for (m, l) in shapes(max_ml) {
        for ws in 0..=l {
            let q = params(m, l, 1, ws);
            let words = enumerate_space(&q, SpaceKind::Secc, u64::MAX).expect("no cap");
            let n = m * l;
            let mut totals = vec![0u64; n as usize + 1];
            for c in &words {
                let profile = WeightProfile::of_word(c, &q).expect("in space");
                for (r, got) in brute_ball_counts(&words, c, n).iter().enumerate() {
                    totals[r] += got;
                    let want = (ops.secc_ball_size_at)(&profile, &q, r as u32);
                    if big(*got) != want {
                        errors.push(format!("{q} centre {c} radius {r}: {got} vs {want}"));
                    }
                }
            }
            for (r, total) in totals.iter().enumerate() {
                let want = Ratio::new(big(*total), big(words.len() as u64));
                let got = (ops.secc_avg_ball_size)(&q, r as u32);
                if got != want {
                    errors.push(format!("{q} average radius {r}: {got} vs {want}"));
                }
            }
            instances += 1;
        }
    }
    fail_if(errors, format!("{instances} spaces"))
}

/// `C(w,k)C(L−w,k) > C(w,k−1)C(L−w,k−1)` for `0 < k ≤ w(L−w)/L`.
pub fn balanced_product_monotone(max_l: u32) -> CheckResult {
    let mut errors = Vec::new();
    let mut cases = 0;
    for l in 3..=max_l {
        for ws in 1..l {
            let kmax = (ws * (l - ws)) / l;
            for k in 1..=kmax {
                let prod = |k: u32| binomial(ws as u64, k as i64) * binomial((l - ws) as u64, k as i64);
                if prod(k) <= prod(k - 1) {
                    errors.push(format!("L={l} w_s={ws} k={k}"));
                }
                cases += 1;
            }
        }
    }
    fail_if(errors, format!("{cases} cases for L ≤ {max_l}"))
}

/// Around a subblock of weight `a ≥ w_s`, at least `(L−w_s)(w_s+1)`
/// subblocks of weight `≥ w_s` lie at distance 1 or 2.
pub fn near_neighbour_lower_bound(max_l: u32) -> CheckResult {
    let mut errors = Vec::new();
    let mut cases = 0;
    for l in 2..=max_l {
        for ws in 1..l {
            for a in ws..=l {
                // any centre of weight a: the top a bits set
                let x: u32 = ((1u32 << a) - 1) << (l - a);
                let count = (0u32..1 << l)
                    .filter(|y| y.count_ones() >= ws && matches!((x ^ y).count_ones(), 1 | 2))
                    .count() as u32;
                if count < (l - ws) * (ws + 1) {
                    errors.push(format!("L={l} w_s={ws} a={a}: {count}"));
                }
                cases += 1;
            }
        }
    }
    fail_if(errors, format!("{cases} cases for L ≤ {max_l}"))
}

fn oracle(q: &CodeParams, kind: SpaceKind, cfg: &OracleConfig) -> Result<usize, String> {
    exact_size(q, kind, cfg)
        .map(|r| r.size)
        .map_err(|e| format!("{kind} {q}: {e}"))
}

/// `C(m, 2, 2d, 1) = A(m, d)` on oracle values for `m ≤ max_m`, `d ≤ max_d`.
pub fn two_bit_cscc_identity(max_m: u32, max_d: u32, cfg: &OracleConfig) -> CheckResult {
    let mut errors = Vec::new();
    let mut cases = 0;
    for m in 1..=max_m {
        for d in 1..=max_d.min(m) {
            let c = oracle(&params(m, 2, 2 * d, 1), SpaceKind::Cscc, cfg);
            let a = oracle(&params(1, m, d, 0), SpaceKind::Unconstrained, cfg);
            match (c, a) {
                (Ok(c), Ok(a)) if c == a => {}
                (Ok(c), Ok(a)) => errors.push(format!("m={m} d={d}: C={c} A={a}")),
                (Err(e), _) | (_, Err(e)) => errors.push(e),
            }
            cases += 1;
        }
    }
    fail_if(errors, format!("{cases} pairs (d ≤ m; beyond that both sides are 1)"))
}

/// Canonical oracle instance: equal keys have equal optimal sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OracleKey {
    /// `A(n, d)`.
    Unconstrained { n: u32, d: u32 },
    /// `A(n, d, w)` with `w ≤ n/2` and `d` even.
    ConstantWeight { n: u32, d: u32, w: u32 },
    /// `H(n, d, w)` with `w ≥ 1`.
    HeavyWeight { n: u32, d: u32, w: u32 },
    /// `C(m, L, d, w_s)` with `m ≥ 2`, `w_s ≤ L/2` and `d` even.
    Cscc { m: u32, l: u32, d: u32, ws: u32 },
    /// `S(m, L, d, w_s)` with `m ≥ 2`, `w_s ≥ 1`.
    Secc { m: u32, l: u32, d: u32, ws: u32 },
}

// Distances inside a constant-weight or CSCC space are even, so an odd
// distance gives the same graph as the next even one.
fn even_up(d: u32) -> u32 {
    d + d % 2
}

impl OracleKey {
    pub fn cscc(q: &CodeParams) -> Self {
        let (m, l, d, ws) = (q.m(), q.subblock_len(), q.distance(), q.subblock_weight());
        let ws = ws.min(l - ws);
        if m == 1 {
            OracleKey::ConstantWeight { n: l, d: even_up(d), w: ws }
        } else {
            OracleKey::Cscc { m, l, d: even_up(d), ws }
        }
    }

    pub fn secc(q: &CodeParams) -> Self {
        let (m, l, d, ws) = (q.m(), q.subblock_len(), q.distance(), q.subblock_weight());
        if ws == 0 {
            OracleKey::Unconstrained { n: m * l, d }
        } else if m == 1 {
            OracleKey::HeavyWeight { n: l, d, w: ws }
        } else {
            OracleKey::Secc { m, l, d, ws }
        }
    }

    pub fn cwc(n: u32, d: u32, w: u32) -> Self {
        OracleKey::ConstantWeight { n, d: even_up(d), w: w.min(n - w) }
    }

    pub fn hwc(n: u32, d: u32, w: u32) -> Self {
        if w == 0 {
            OracleKey::Unconstrained { n, d }
        } else {
            OracleKey::HeavyWeight { n, d, w }
        }
    }

    /// A parameter set and space realising the key.
    fn instance(&self) -> (CodeParams, SpaceKind) {
        // even_up can push d one past n; the graph is unchanged at d − 1
        let fit = |n: u32, d: u32| d.min(n);
        match *self {
            OracleKey::Unconstrained { n, d } => (params(1, n, d, 0), SpaceKind::Unconstrained),
            OracleKey::ConstantWeight { n, d, w } => (params(1, n, fit(n, d), w), SpaceKind::Cscc),
            OracleKey::HeavyWeight { n, d, w } => (params(1, n, d, w), SpaceKind::Secc),
            OracleKey::Cscc { m, l, d, ws } => (params(m, l, fit(m * l, d), ws), SpaceKind::Cscc),
            OracleKey::Secc { m, l, d, ws } => (params(m, l, d, ws), SpaceKind::Secc),
        }
    }

    fn size_hint(&self) -> u64 {
        let (q, kind) = self.instance();
        subblock_codes::spaces::space_size(&q, kind)
            .try_into()
            .unwrap_or(u64::MAX)
    }
}

#[derive(Debug, Clone)]
pub struct SandwichConfig {
    pub max_ml: u32,
    /// Budget of the first pass over every instance.
    pub quick_budget: Duration,
    /// Settings of the second pass over what the first left open; its time
    /// budget is the per-instance limit.
    pub oracle: OracleConfig,
    /// No new searches start after this long.
    pub total_budget: Option<Duration>,
    pub bounds: BoundConfig,
}

impl SandwichConfig {
    pub fn new(max_ml: u32, per_instance: Duration, total: Option<Duration>) -> Self {
        SandwichConfig {
            max_ml,
            quick_budget: per_instance.min(Duration::from_secs(1)),
            oracle: OracleConfig {
                space_cap: DEFAULT_SPACE_CAP,
                time_budget: Some(per_instance),
                node_budget: None,
                use_symmetry: true,
            },
            total_budget: total,
            bounds: BoundConfig::default(),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct SandwichReport {
    pub parameter_sets: usize,
    pub oracle_instances: usize,
    pub resolved: usize,
    /// Oracle instances that ran out of budget, with the best size found.
    pub unresolved: Vec<String>,
    pub violations: Vec<String>,
    /// Comparisons actually made (bounds and chain).
    pub comparisons: usize,
    /// Comparisons skipped because an oracle value was missing.
    pub skipped: usize,
}

impl SandwichReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.unresolved.is_empty()
    }

    pub fn summary(&self) -> String {
        format!(
            "{} parameter sets, {}/{} oracle instances resolved, {} comparisons, {} skipped, {} violations",
            self.parameter_sets,
            self.resolved,
            self.oracle_instances,
            self.comparisons,
            self.skipped,
            self.violations.len()
        )
    }
}

/// Bounds sandwich the oracle for CSCC and SECC, and the containments
/// `C ≤ S`, `C ≤ A(n,d,w)`, `S ≤ H(n,d,w)`, `A(n,d,w) ≤ H(n,d,w)` hold on
/// oracle values, with `n = mL`, `w = m w_s`.
pub fn sandwich_and_chain(cfg: &SandwichConfig) -> SandwichReport {
    let mut report = SandwichReport::default();
    let mut sets = Vec::new();
    let mut keys = BTreeSet::new();
    for (m, l) in shapes(cfg.max_ml) {
        let n = m * l;
        for ws in 0..=l {
            for d in 1..=n {
                let q = params(m, l, d, ws);
                keys.insert(OracleKey::cscc(&q));
                keys.insert(OracleKey::secc(&q));
                keys.insert(OracleKey::cwc(n, d, m * ws));
                keys.insert(OracleKey::hwc(n, d, m * ws));
                sets.push(q);
            }
        }
    }
    report.parameter_sets = sets.len();
    report.oracle_instances = keys.len();

    // small spaces first so the total budget cuts off only the large ones
    let mut keys: Vec<OracleKey> = keys.into_iter().collect();
    keys.sort_by_key(|k| (k.size_hint(), *k));
    let start = Instant::now();
    let spent = |t: Duration| start.elapsed() >= t;
    let quick = OracleConfig {
        time_budget: Some(cfg.quick_budget),
        ..cfg.oracle.clone()
    };
    let mut values: BTreeMap<OracleKey, Result<usize, String>> = keys
        .par_iter()
        .map(|k| {
            if cfg.total_budget.is_some_and(spent) {
                return (*k, Err(format!("{k:?}: not started, total budget spent")));
            }
            let (q, kind) = k.instance();
            (*k, oracle(&q, kind, &quick))
        })
        .collect();
    // second pass: the longer budget, still smallest first
    for k in &keys {
        if values[k].is_ok() || cfg.oracle.time_budget <= Some(cfg.quick_budget) {
            continue;
        }
        let mut long = cfg.oracle.clone();
        if let Some(total) = cfg.total_budget {
            let left = total.saturating_sub(start.elapsed());
            if left.is_zero() {
                break;
            }
            long.time_budget = long.time_budget.map(|b| b.min(left));
        }
        let (q, kind) = k.instance();
        values.insert(*k, oracle(&q, kind, &long));
    }
    for v in values.values() {
        match v {
            Ok(_) => report.resolved += 1,
            Err(e) => report.unresolved.push(e.clone()),
        }
    }

    let get = |k: OracleKey| values.get(&k).and_then(|v| v.as_ref().ok()).copied();
    let outcomes: Vec<(usize, usize, Vec<String>)> = sets
        .par_iter()
        .map(|q| {
            let mut done = 0;
            let mut skipped = 0;
            let mut bad = Vec::new();
            let (n, w) = (q.n(), q.m() * q.subblock_weight());
            let c = get(OracleKey::cscc(q));
            let s = get(OracleKey::secc(q));
            for (family, exact) in [(CodeFamily::Cscc, c), (CodeFamily::Secc, s)] {
                let Some(exact) = exact else {
                    skipped += 1;
                    continue;
                };
                match bound_report(q, family, &cfg.bounds) {
                    Ok(r) => {
                        let e = big(exact as u64);
                        if r.lower.value > e || e > r.upper.value {
                            bad.push(format!(
                                "{family:?} {q}: {} ≤ {exact} ≤ {} fails",
                                r.lower, r.upper
                            ));
                        }
                    }
                    Err(err) => bad.push(format!("{family:?} {q}: {err}")),
                }
                done += 1;
            }
            let a = get(OracleKey::cwc(n, q.distance(), w));
            let h = get(OracleKey::hwc(n, q.distance(), w));
            for (name, small, large) in [("C ≤ S", c, s), ("C ≤ A", c, a), ("S ≤ H", s, h), ("A ≤ H", a, h)] {
                match (small, large) {
                    (Some(x), Some(y)) => {
                        if x > y {
                            bad.push(format!("{name} fails at {q}: {x} > {y}"));
                        }
                        done += 1;
                    }
                    _ => skipped += 1,
                }
            }
            (done, skipped, bad)
        })
        .collect();
    for (done, skipped, bad) in outcomes {
        report.comparisons += done;
        report.skipped += skipped;
        report.violations.extend(bad);
    }
    report
}

pub fn sandwich_check(cfg: &SandwichConfig) -> CheckResult {
    let r = sandwich_and_chain(cfg);
    if r.passed() {
        Ok(r.summary())
    } else {
        let mut parts = vec![r.summary()];
        parts.extend(r.violations.iter().take(5).cloned());
        parts.extend(r.unresolved.iter().take(8).cloned());
        Err(parts.join("; "))
    }
}

/// Threshold roots for `L = 2` against the known values 0.056 and 0.084, and the
/// brackets and ordering for even `L` in `4..=max_l`.
pub fn threshold_roots(max_l: u32) -> CheckResult {
    let mut errors = Vec::new();
    let root = |w: Threshold, l: u32| threshold_root::<f64>(w, l).map_err(|e| e.to_string());
    let mut details = Vec::new();
    for (w, want) in [(Threshold::Hat, 0.056), (Threshold::Grave, 0.084)] {
        match root(w, 2) {
            Ok(r) if (r - want).abs() <= 1e-3 => details.push(format!("{} root L=2 {r:.5}", w.label())),
            Ok(r) => errors.push(format!("{} root for L=2 is {r}, expected {want}±0.001", w.label())),
            Err(e) => errors.push(e),
        }
    }
    for l in (4..=max_l).step_by(2) {
        let lf = l as f64;
        match (root(Threshold::Tilde, l), root(Threshold::Hat, l), root(Threshold::Grave, l)) {
            (Ok(t), Ok(h), Ok(g)) => {
                if !(t > 0.0 && t < 1.0 / lf) {
                    errors.push(format!("tilde root {t} outside (0, 1/{l})"));
                }
                if !(h > 0.0 && h < 2.0 / lf) {
                    errors.push(format!("hat root {h} outside (0, 2/{l})"));
                }
                if g >= t {
                    errors.push(format!("grave root {g} ≥ tilde root {t} at L={l}"));
                }
                for (w, r) in [(Threshold::Tilde, t), (Threshold::Hat, h), (Threshold::Grave, g)] {
                    match threshold_function::<f64>(w, l, r) {
                        Ok(v) if v.abs() < 1e-8 => {}
                        Ok(v) => errors.push(format!("{} function at its root is {v} (L={l})", w.label())),
                        Err(e) => errors.push(e.to_string()),
                    }
                }
            }
            (a, b, c) => {
                for e in [a.err(), b.err(), c.err()].into_iter().flatten() {
                    errors.push(e);
                }
            }
        }
    }
    fail_if(errors, format!("{}; even L in 4..={max_l} inside brackets", details.join(", ")))
}

/// Small-`δ` limits of the three gaps against their closed forms.
pub fn small_delta_limits() -> CheckResult {
    let mut errors = Vec::new();
    let mut cases = 0;
    let delta = 1e-9;
    for l in [2u32, 4, 8, 16] {
        for ws in 1..l {
            let log_c = log2_binomial(l as u64, ws as i64) / l as f64;
            let log_s = heavy_subblock_rate::<f64>(l, ws);
            let w = ws as f64 / l as f64;
            let h_w = -w * w.log2() - (1.0 - w) * (1.0 - w).log2();
            let hwc_limit = if 2 * ws <= l { 1.0 - log_s } else { h_w - log_s };
            let expected = [
                (Gap::CwcCscc, rate_penalty_r::<f64>(l, ws).expect("valid")),
                (Gap::HwcSecc, hwc_limit),
                (Gap::SeccCscc, log_s - log_c),
            ];
            for (gap, want) in expected {
                match gap.sweep(l, delta, ws).map(|v| v.value()) {
                    Ok(Some(got)) if (got - want).abs() <= 1e-6 => {}
                    Ok(got) => errors.push(format!("{} L={l} w_s={ws}: {got:?} vs {want}", gap.label())),
                    Err(e) => errors.push(e.to_string()),
                }
                cases += 1;
            }
        }
    }
    fail_if(errors, format!("{cases} limits within 1e-6"))
}

/// `G_{α−γ} ≥ G_{η−σ} + G_{σ−γ}` at `w_s = L/2` on the δ grid with step
/// 0.001 up to `min(δ*, 4/L)`, even `L` in `4..=max_l`.
pub fn gap_decomposition_grid(max_l: u32) -> CheckResult {
    let mut errors = Vec::new();
    let mut points = 0;
    for l in (4..=max_l).step_by(2) {
        let ws = l / 2;
        let limit = delta_star::<f64>(l, ws).min(4.0 / l as f64);
        let steps = (limit * 1000.0 + 1e-9).floor() as u32;
        for k in 1..=steps {
            let d = k as f64 / 1000.0;
            let vals: Vec<Option<f64>> = [Gap::CwcCscc, Gap::HwcSecc, Gap::SeccCscc]
                .iter()
                .map(|g| g.sweep(l, d, ws).ok().and_then(|v| v.value()))
                .collect();
            match (vals[0], vals[1], vals[2]) {
                (Some(a), Some(b), Some(c)) => {
                    if a + 1e-12 < b + c {
                        errors.push(format!("L={l} δ={d}: {a} < {b} + {c}"));
                    }
                }
                _ => errors.push(format!("L={l} δ={d}: a gap is undefined")),
            }
            points += 1;
        }
    }
    fail_if(errors, format!("{points} grid points"))
}

fn strictly_decreasing_until_zero(col: &[Option<f64>]) -> Result<(), String> {
    let vals: Vec<f64> = col
        .iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| format!("row {i} is empty")))
        .collect::<Result<_, _>>()?;
    let first_zero = vals.iter().position(|&v| v == 0.0).unwrap_or(vals.len());
    for i in 1..first_zero {
        if vals[i] >= vals[i - 1] {
            return Err(format!("row {i}: {} ≥ {}", vals[i], vals[i - 1]));
        }
    }
    if let Some(i) = vals[first_zero..].iter().position(|&v| v != 0.0) {
        return Err(format!("row {} leaves zero after clamping", first_zero + i));
    }
    Ok(())
}

/// Shapes of the figure tables: length sweeps decrease until they clamp at
/// zero, the smallest-δ column of the first figure follows the penalty
/// `r(L, 1/2)`, and threshold roots decrease in `L`.
pub fn figure_shapes() -> CheckResult {
    let mut errors = Vec::new();
    for id in [FigureId::Fig1, FigureId::Fig4, FigureId::Fig7] {
        let spec = FigureSpec::new(id);
        let t = match figure_table(&spec) {
            Ok(t) => t,
            Err(e) => {
                errors.push(format!("{}: {e}", id.label()));
                continue;
            }
        };
        for (j, d) in spec.deltas.iter().enumerate() {
            if let Err(e) = strictly_decreasing_until_zero(&t.column(j + 1)) {
                errors.push(format!("{} δ={d}: {e}", id.label()));
            }
        }
        if id == FigureId::Fig1 {
            let small = t.column(1);
            let r = t.column(1 + spec.deltas.len());
            let worst = small
                .iter()
                .zip(&r)
                .map(|(a, b)| (a.unwrap_or(f64::NAN) - b.unwrap_or(f64::NAN)).abs())
                .fold(0.0f64, |m, x| if x.is_nan() { f64::INFINITY } else { m.max(x) });
            if worst >= 0.01 {
                errors.push(format!("fig1 δ={} column is {worst} from r(L,0.5)", spec.deltas[0]));
            }
        }
    }
    for id in [FigureId::Fig3, FigureId::Fig6, FigureId::Fig9] {
        match figure_table(&FigureSpec::new(id)) {
            Ok(t) => {
                let col = t.column(1);
                for i in 1..col.len() {
                    if !(col[i] < col[i - 1]) {
                        errors.push(format!("{} root at row {i} is not below row {}", id.label(), i - 1));
                    }
                }
            }
            Err(e) => errors.push(format!("{}: {e}", id.label())),
        }
    }
    fail_if(errors, "fig1/4/7 decreasing to zero, fig1 tracks r, fig3/6/9 roots decreasing".into())
}

/// Normalised finite Gilbert bound `(1/mL) log2 ⌈|C|/V(d−1)⌉` with
/// `d = ⌊mLδ⌋` against the asymptotic rate, for `m = 10, 20, 40`.
pub fn finite_to_asymptotic_trend() -> CheckResult {
    let mut errors = Vec::new();
    let mut details = Vec::new();
    for l in [2u32, 3, 4] {
        let ws = l.div_ceil(2);
        for delta in [0.05, 0.1] {
            let target = match gamma_gv::<f64>(l, delta, ws) {
                Ok(v) => v.bits_per_use,
                Err(e) => {
                    errors.push(e.to_string());
                    continue;
                }
            };
            let diffs: Vec<f64> = [10u32, 20, 40]
                .iter()
                .map(|&m| {
                    let n = m * l;
                    let d = ((n as f64 * delta).floor() as u32).max(1);
                    let v = log2_count(&cscc_gv_lower(&params(m, l, d, ws)).value) / n as f64;
                    (v - target).abs()
                })
                .collect();
            let monotone = diffs.windows(2).all(|w| w[1] < w[0]);
            let last = diffs[diffs.len() - 1];
            let line = format!(
                "L={l} δ={delta}: |diff| {:.4} {:.4} {:.4}",
                diffs[0], diffs[1], diffs[2]
            );
            if !monotone || last >= 0.02 {
                errors.push(line.clone());
            }
            details.push(line);
        }
    }
    if errors.is_empty() {
        Ok(details.join("; "))
    } else {
        Err(format!("{} of 6 series miss (monotone, final < 0.02): {}", errors.len(), errors.join("; ")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Fast,
    Full,
}

/// The checks for one level, in a fixed order.
pub fn run_suite(level: Level, ops: &Ops, oracle_budget: Duration) -> Vec<CheckOutcome> {
    let full = level == Level::Full;
    let oracle_cfg = OracleConfig {
        time_budget: Some(oracle_budget),
        ..OracleConfig::default()
    };
    let (ball_ml, secc_ml, identity_m, sandwich_ml) = if full { (12, 10, 8, 12) } else { (8, 8, 6, 6) };
    let mut out = vec![
        timed("worked example values", || worked_examples(ops)),
        timed(&format!("CSCC ball centre independence, mL ≤ {ball_ml}"), || {
            cscc_ball_center_independence(ops, ball_ml)
        }),
        timed(&format!("SECC balls by brute force, mL ≤ {secc_ml}"), || secc_balls_brute_force(ops, secc_ml)),
        timed("balanced binomial product monotone, L ≤ 24", || balanced_product_monotone(24)),
        timed("heavy near-neighbour count, L ≤ 12", || near_neighbour_lower_bound(12)),
        timed(&format!("C(m,2,2d,1) = A(m,d), m ≤ {identity_m}"), || {
            two_bit_cscc_identity(identity_m, 4, &oracle_cfg)
        }),
        timed(&format!("bounds sandwich the oracle and containment chain, mL ≤ {sandwich_ml}"), || {
            // keeps the full level inside 15 minutes
            let total = full.then(|| Duration::from_secs(12 * 60));
            sandwich_check(&SandwichConfig::new(sandwich_ml, oracle_budget, total))
        }),
        timed("threshold roots", || threshold_roots(64)),
        timed("small-δ gap limits", small_delta_limits),
        timed("gap decomposition inequality grid", || gap_decomposition_grid(32)),
        timed("figure table shapes", figure_shapes),
    ];
    if full {
        out.push(timed("finite Gilbert bound approaches asymptotic rate", finite_to_asymptotic_trend));
    }
    out
}
