//! Finite-length bounds on the optimal sizes `C(m,L,d,w_s)` and
//! `S(m,L,d,w_s)`.
//!
//! Every division is done on exact rationals: lower bounds are ceiled and
//! upper bounds floored.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, Pow, Zero};
use serde::{Serialize, Serializer};

use crate::combinatorics::{binomial, ceil_div, ratio_floor, ExactCount, Ratio};
use crate::error::{Error, Result};
use crate::exact_oracle::{exact_size, OracleConfig};
use crate::spaces::{
    cscc_ball_size, cscc_space_size, secc_avg_ball_size, secc_min_ball_size, secc_space_size,
    CodeParams, SpaceKind, DEFAULT_PROFILE_CAP,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Lower,
    Upper,
    Exact,
}

impl Direction {
    fn bounds_above(self) -> bool {
        matches!(self, Direction::Upper | Direction::Exact)
    }

    fn bounds_below(self) -> bool {
        matches!(self, Direction::Lower | Direction::Exact)
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Lower => "lower",
            Direction::Upper => "upper",
            Direction::Exact => "exact",
        })
    }
}

fn as_decimal<S: Serializer>(value: &ExactCount, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&value.to_string())
}

/// One bound on the optimal code size for `params`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundResult {
    #[serde(serialize_with = "as_decimal")]
    pub value: ExactCount,
    pub direction: Direction,
    pub method: String,
    pub params: CodeParams,
}

impl BoundResult {
    pub fn lower(value: ExactCount, method: impl Into<String>, params: CodeParams) -> Self {
        BoundResult {
            value,
            direction: Direction::Lower,
            method: method.into(),
            params,
        }
    }

    pub fn upper(value: ExactCount, method: impl Into<String>, params: CodeParams) -> Self {
        BoundResult {
            value,
            direction: Direction::Upper,
            method: method.into(),
            params,
        }
    }
}

impl fmt::Display for BoundResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} [{}] {}", self.direction, self.value, self.method, self.params)
    }
}

fn params(m: u32, l: u32, d: u32, ws: u32) -> Result<CodeParams> {
    CodeParams::new(m, l, d, ws)
}

/// Gilbert bound in the CSCC space: `⌈|C| / V(d−1)⌉`.
pub fn cscc_gv_lower(p: &CodeParams) -> BoundResult {
    let space = cscc_space_size(p);
    let ball = cscc_ball_size(p, p.distance() - 1);
    BoundResult::lower(ceil_div(&space, &ball), "cscc-gv", *p)
}

/// Sphere-packing bound in the CSCC space: `⌊|C| / V(⌊(d−1)/2⌋)⌋`.
pub fn cscc_sp_upper(p: &CodeParams) -> BoundResult {
    let space = cscc_space_size(p);
    let ball = cscc_ball_size(p, (p.distance() - 1) / 2);
    BoundResult::upper(space / ball, "cscc-sp", *p)
}

/// Complementing every bit maps CSCCs of weight `w_s` onto weight `L − w_s`.
pub fn cscc_symmetry(p: &CodeParams) -> CodeParams {
    p.with_subblock_weight(p.subblock_len() - p.subblock_weight())
        .expect("complementary weight is in range")
}

/// Generalised Gilbert bound with the average ball: `⌈|S| / V̄(d−1)⌉`.
pub fn secc_gv_lower(p: &CodeParams) -> BoundResult {
    let space = Ratio::from_integer(secc_space_size(p));
    let avg = secc_avg_ball_size(p, p.distance() - 1);
    let q = space / avg;
    BoundResult::lower(crate::combinatorics::ratio_ceil(&q), "secc-gv", *p)
}

/// SECC lower bounds built from CSCCs of weights `w_s..=L`.
///
/// `full[j]` is a lower bound on `C(m,L,d,j)`. With `d ≤ m`, codes of
/// distinct weights can be united since any two of them differ in every
/// subblock. `per_block[j]`, a lower bound on `C(d,L,d,j)`, enables the
/// product construction when `d` divides `m`.
pub fn secc_from_cscc_lower(
    p: &CodeParams,
    full: &BTreeMap<u32, ExactCount>,
    per_block: Option<&BTreeMap<u32, ExactCount>>,
) -> Result<BoundResult> {
    let (m, l, d, ws) = (p.m(), p.subblock_len(), p.distance(), p.subblock_weight());
    let lookup = |map: &BTreeMap<u32, ExactCount>, j: u32| {
        map.get(&j)
            .cloned()
            .ok_or_else(|| Error::Precondition(format!("missing CSCC value for w_s = {j}")))
    };
    let mut best = BoundResult::lower(BigUint::zero(), "secc-from-cscc(i)", *p);
    for j in ws..=l {
        let v = lookup(full, j)?;
        if v > best.value {
            best.value = v;
        }
    }
    if m >= d {
        let mut sum = BigUint::zero();
        for j in ws..=l {
            sum += lookup(full, j)?;
        }
        if sum > best.value {
            best = BoundResult::lower(sum, "secc-from-cscc(ii)", *p);
        }
    }
    if let Some(block) = per_block {
        if m % d == 0 {
            let mut sum = BigUint::zero();
            for j in ws..=l {
                sum += lookup(block, j)?;
            }
            let v = Pow::pow(sum, m / d);
            if v > best.value {
                best = BoundResult::lower(v, "secc-from-cscc(iii)", *p);
            }
        }
    }
    Ok(best)
}

/// `⌈2^n / Σ_{i<d} C(n,i)⌉`.
pub fn binary_gv_lower(n: u32, d: u32) -> ExactCount {
    qary_gv_lower(&BigUint::from(2u32), n, d)
}

/// `⌊2^n / Σ_{i≤⌊(d−1)/2⌋} C(n,i)⌋`.
pub fn hamming_upper(n: u32, d: u32) -> ExactCount {
    let t = d.saturating_sub(1) / 2;
    let ball: BigUint = (0..=t).map(|i| binomial(n as u64, i as i64)).sum();
    (BigUint::one() << n as usize) / ball
}

/// `⌈q^m / Σ_{i<d} C(m,i)(q−1)^i⌉`.
pub fn qary_gv_lower(q: &ExactCount, m: u32, d: u32) -> ExactCount {
    let qm1 = q - BigUint::one();
    let ball: BigUint = (0..d.min(m + 1))
        .map(|i| binomial(m as u64, i as i64) * Pow::pow(&qm1, i))
        .sum();
    ceil_div(&Pow::pow(q, m), &ball)
}

/// `q^{m−d+1}`, or 1 when `d > m`.
pub fn singleton_upper(q: &ExactCount, m: u32, d: u32) -> ExactCount {
    if d > m {
        return BigUint::one();
    }
    Pow::pow(q, m + 1 - d.max(1))
}

/// Concatenation of an outer code over an alphabet of `q = h_inner`
/// symbols, each mapped to a word of a heavy-weight inner code of length
/// `L`, distance `d1`, weight at least `w_s`. Bounds `S(m,L,d1·d2,w_s)`
/// from below by a lower bound on `A_q(m,d2)`.
pub fn secc_concat_lower(
    m: u32,
    l: u32,
    d1: u32,
    d2: u32,
    ws: u32,
    h_inner: &ExactCount,
) -> Result<BoundResult> {
    if *h_inner < BigUint::from(2u32) {
        return Err(Error::Precondition(format!(
            "inner code size {h_inner} leaves no outer alphabet"
        )));
    }
    let p = params(m, l, d1 * d2, ws)?;
    let outer = if d2 > m {
        BigUint::one()
    } else {
        // q words repeating one symbol are pairwise at distance m
        qary_gv_lower(h_inner, m, d2).max(h_inner.clone())
    };
    Ok(BoundResult::lower(
        outer,
        format!("secc-concat(d1={d1},d2={d2},q={h_inner})"),
        p,
    ))
}

/// The best coset of a binary code meets the SECC space in at least
/// `⌈|S|·A / 2^{mL}⌉` words.
pub fn secc_elias_lower(p: &CodeParams, a_lower: &ExactCount) -> BoundResult {
    let num = secc_space_size(p) * a_lower;
    let den = BigUint::one() << p.n() as usize;
    BoundResult::lower(ceil_div(&num, &den), "secc-elias", *p)
}

/// Sphere-packing with the smallest ball: `⌊|S| / V_min(⌊(d−1)/2⌋)⌋`.
pub fn secc_sp_upper(p: &CodeParams, profile_cap: u64) -> Result<BoundResult> {
    let ball = secc_min_ball_size(p, (p.distance() - 1) / 2, profile_cap)?;
    Ok(BoundResult::upper(secc_space_size(p) / ball, "secc-sp", *p))
}

fn require_upper(inner: &BoundResult) -> Result<()> {
    if !inner.direction.bounds_above() {
        return Err(Error::Precondition(format!(
            "expected an upper bound, got {}",
            inner.direction
        )));
    }
    Ok(())
}

/// Raising `w_s` shrinks the space, so an upper bound at a smaller weight
/// carries over.
pub fn secc_monotonic_upper(p: &CodeParams, at_lower_weight: &BoundResult) -> Result<BoundResult> {
    require_upper(at_lower_weight)?;
    let q = &at_lower_weight.params;
    if (q.m(), q.subblock_len(), q.distance()) != (p.m(), p.subblock_len(), p.distance())
        || q.subblock_weight() > p.subblock_weight()
    {
        return Err(Error::Precondition(format!(
            "monotonicity needs the same (m, L, d) and a weight at most {}, got {q}",
            p.subblock_weight()
        )));
    }
    Ok(BoundResult::upper(
        at_lower_weight.value.clone(),
        format!("secc-monotone(w_s={} {})", q.subblock_weight(), at_lower_weight.method),
        *p,
    ))
}

/// Deleting one fixed column from every subblock gives an
/// `(m, L−1, d−m, w_s−1)`-SECC of the same size.
pub fn secc_puncture_upper(p: &CodeParams, inner: &BoundResult) -> Result<BoundResult> {
    require_upper(inner)?;
    let (m, l, d, ws) = (p.m(), p.subblock_len(), p.distance(), p.subblock_weight());
    if d <= m || ws == 0 || l < 2 {
        return Err(Error::Precondition(format!(
            "puncturing needs d > m, w_s ≥ 1 and L ≥ 2, got {p}"
        )));
    }
    let q = &inner.params;
    if (q.m(), q.subblock_len(), q.distance(), q.subblock_weight()) != (m, l - 1, d - m, ws - 1) {
        return Err(Error::Precondition(format!(
            "inner bound is for {q}, expected (m={m}, L={}, d={}, w_s={})",
            l - 1,
            d - m,
            ws - 1
        )));
    }
    Ok(BoundResult::upper(
        inner.value.clone(),
        format!("secc-puncture({})", inner.method),
        *p,
    ))
}

/// `S(m,L,d,w_s) ≤ ⌊(L/w_s)^m · S(m,L−1,d,w_s−1)⌋`.
pub fn secc_johnson_upper(p: &CodeParams, inner: &BoundResult) -> Result<BoundResult> {
    require_upper(inner)?;
    let (m, l, d, ws) = (p.m(), p.subblock_len(), p.distance(), p.subblock_weight());
    if ws == 0 || l < 2 {
        return Err(Error::Precondition(format!(
            "the Johnson-type bound needs w_s ≥ 1 and L ≥ 2, got {p}"
        )));
    }
    let q = &inner.params;
    if (q.m(), q.subblock_len(), q.distance(), q.subblock_weight()) != (m, l - 1, d, ws - 1) {
        return Err(Error::Precondition(format!(
            "inner bound is for {q}, expected (m={m}, L={}, d={d}, w_s={})",
            l - 1,
            ws - 1
        )));
    }
    let factor = Ratio::new(BigUint::from(l), BigUint::from(ws));
    let v = Pow::pow(factor, m) * Ratio::from_integer(inner.value.clone());
    Ok(BoundResult::upper(
        ratio_floor(&v),
        format!("secc-johnson({})", inner.method),
        *p,
    ))
}

/// `|S| / V̄(⌊(d−1)/2⌋)`. Not an upper bound: codes can exceed it.
pub fn avg_sp_value(p: &CodeParams) -> Ratio {
    Ratio::from_integer(secc_space_size(p)) / secc_avg_ball_size(p, (p.distance() - 1) / 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CodeFamily {
    Cscc,
    Secc,
}

impl CodeFamily {
    pub fn space(self) -> SpaceKind {
        match self {
            CodeFamily::Cscc => SpaceKind::Cscc,
            CodeFamily::Secc => SpaceKind::Secc,
        }
    }
}

#[derive(Debug, Clone)]
pub struct BoundConfig {
    /// Depth of the puncture and Johnson recursions; sphere-packing at the
    /// base.
    pub recursion_depth: u32,
    /// Replace the built-in `A(n,d)` and inner `H(L,d,w)` baselines by exact
    /// values when the oracle settles them within its node budget.
    pub oracle_baselines: bool,
    pub baseline_space_cap: u64,
    pub baseline_node_budget: u64,
    pub profile_cap: u64,
}

impl Default for BoundConfig {
    fn default() -> Self {
        BoundConfig {
            recursion_depth: 1,
            oracle_baselines: true,
            baseline_space_cap: 4096,
            baseline_node_budget: 100_000,
            profile_cap: DEFAULT_PROFILE_CAP,
        }
    }
}

/// All bounds tried for one parameter set, with the aggregate.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub family: CodeFamily,
    pub lower: BoundResult,
    pub upper: BoundResult,
    pub candidates: Vec<BoundResult>,
    /// Methods that could not be evaluated, with the reason.
    pub skipped: Vec<String>,
}

type BaselineKey = (SpaceKind, u32, u32, u32, u32, u64);

fn baseline_cache() -> &'static Mutex<HashMap<BaselineKey, Option<ExactCount>>> {
    static CACHE: OnceLock<Mutex<HashMap<BaselineKey, Option<ExactCount>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Exact optimum if the oracle settles it within the baseline budget. The
/// node budget keeps the answer independent of machine speed.
fn oracle_baseline(p: &CodeParams, kind: SpaceKind, cfg: &BoundConfig) -> Option<ExactCount> {
    if !cfg.oracle_baselines {
        return None;
    }
    let key = (
        kind,
        p.m(),
        p.subblock_len(),
        p.distance(),
        p.subblock_weight(),
        cfg.baseline_node_budget,
    );
    if let Some(v) = baseline_cache().lock().expect("cache lock").get(&key) {
        return v.clone();
    }
    let ocfg = OracleConfig {
        space_cap: cfg.baseline_space_cap,
        time_budget: None,
        node_budget: Some(cfg.baseline_node_budget),
        use_symmetry: true,
    };
    let v = exact_size(p, kind, &ocfg).ok().map(|r| BigUint::from(r.size));
    baseline_cache()
        .lock()
        .expect("cache lock")
        .insert(key, v.clone());
    v
}

/// Lower bound on `A(n, d)`, as a labelled value.
fn a_lower(n: u32, d: u32, cfg: &BoundConfig) -> (ExactCount, &'static str) {
    let gv = binary_gv_lower(n, d);
    match params(1, n, d, 0).ok().and_then(|p| oracle_baseline(&p, SpaceKind::Unconstrained, cfg)) {
        Some(v) if v >= gv => (v, "exact"),
        _ => (gv, "gv"),
    }
}

fn a_upper(n: u32, d: u32, cfg: &BoundConfig) -> (ExactCount, &'static str) {
    let h = hamming_upper(n, d);
    match params(1, n, d, 0).ok().and_then(|p| oracle_baseline(&p, SpaceKind::Unconstrained, cfg)) {
        Some(v) if v <= h => (v, "exact"),
        _ => (h, "hamming"),
    }
}

fn secc_lower_candidates(p: &CodeParams, cfg: &BoundConfig, out: &mut Vec<BoundResult>, skipped: &mut Vec<String>) {
    let (m, l, d, ws) = (p.m(), p.subblock_len(), p.distance(), p.subblock_weight());
    out.push(secc_gv_lower(p));

    let full: BTreeMap<u32, ExactCount> = (ws..=l)
        .map(|j| (j, cscc_gv_lower(&p.with_subblock_weight(j).expect("j ≤ L")).value))
        .collect();
    let per_block = (m % d == 0 && d < m).then(|| {
        (ws..=l)
            .map(|j| (j, cscc_gv_lower(&params(d, l, d, j).expect("d ≤ dL")).value))
            .collect::<BTreeMap<_, _>>()
    });
    match secc_from_cscc_lower(p, &full, per_block.as_ref()) {
        Ok(b) => out.push(b),
        Err(e) => skipped.push(format!("secc-from-cscc: {e}")),
    }

    for d1 in 1..=l.min(d) {
        if d % d1 != 0 {
            continue;
        }
        let d2 = d / d1;
        if d2 > m {
            continue;
        }
        let inner = params(1, l, d1, ws).expect("d1 ≤ L");
        let gv = secc_gv_lower(&inner).value;
        let q = match oracle_baseline(&inner, SpaceKind::Secc, cfg) {
            Some(v) if v >= gv => v,
            _ => gv,
        };
        match secc_concat_lower(m, l, d1, d2, ws, &q) {
            Ok(b) => out.push(b),
            Err(e) => skipped.push(format!("secc-concat(d1={d1},d2={d2}): {e}")),
        }
    }

    let (a, how) = a_lower(p.n(), d, cfg);
    let mut elias = secc_elias_lower(p, &a);
    elias.method = format!("secc-elias(A {how} {a})");
    out.push(elias);
}

/// Upper bounds on `S` from sphere-packing, monotonicity in `w_s`, and
/// puncturing or Johnson steps down to `depth`.
fn secc_upper_candidates(
    p: &CodeParams,
    depth: u32,
    cfg: &BoundConfig,
    out: &mut Vec<BoundResult>,
    skipped: &mut Vec<String>,
) {
    let (m, l, d, ws) = (p.m(), p.subblock_len(), p.distance(), p.subblock_weight());
    match secc_sp_upper(p, cfg.profile_cap) {
        Ok(b) => out.push(b),
        Err(e) => skipped.push(format!("secc-sp: {e}")),
    }
    // the bottom of the chain is the whole cube
    out.push(BoundResult::upper(secc_space_size(p), "space-size", *p));
    if depth == 0 {
        return;
    }
    for w2 in 0..ws {
        let q = p.with_subblock_weight(w2).expect("w2 < w_s");
        let inner = if w2 == 0 {
            let (v, how) = a_upper(p.n(), d, cfg);
            BoundResult::upper(v, format!("A {how}"), q)
        } else {
            match secc_sp_upper(&q, cfg.profile_cap) {
                Ok(b) => b,
                Err(e) => {
                    skipped.push(format!("secc-monotone(w_s={w2}): {e}"));
                    continue;
                }
            }
        };
        out.push(secc_monotonic_upper(p, &inner).expect("preconditions hold"));
    }
    let best_inner = |q: CodeParams, skipped: &mut Vec<String>| -> Option<BoundResult> {
        let mut inner = Vec::new();
        secc_upper_candidates(&q, depth - 1, cfg, &mut inner, skipped);
        inner.into_iter().min_by(|a, b| a.value.cmp(&b.value))
    };
    if ws >= 1 && l >= 2 {
        if d > m {
            let q = params(m, l - 1, d - m, ws - 1).expect("d − m ≤ m(L − 1)");
            if let Some(inner) = best_inner(q, skipped) {
                out.push(secc_puncture_upper(p, &inner).expect("preconditions hold"));
            }
        }
        // the reduced parameters only exist while d fits in m(L−1) bits
        if d <= m * (l - 1) {
            let q = params(m, l - 1, d, ws - 1).expect("checked above");
            if let Some(inner) = best_inner(q, skipped) {
                out.push(secc_johnson_upper(p, &inner).expect("preconditions hold"));
            }
        }
    }
}

fn pick(candidates: &[BoundResult], dir: Direction) -> Option<BoundResult> {
    let it = candidates.iter().filter(|b| b.direction == dir);
    match dir {
        Direction::Lower => it.max_by(|a, b| a.value.cmp(&b.value).then(b.method.cmp(&a.method))),
        _ => it.min_by(|a, b| a.value.cmp(&b.value).then(a.method.cmp(&b.method))),
    }
    .cloned()
}

/// Every applicable bound for `params` in the given family, and the best
/// lower and upper bound among them.
pub fn bound_report(p: &CodeParams, family: CodeFamily, cfg: &BoundConfig) -> Result<BoundReport> {
    let mut candidates = Vec::new();
    let mut skipped = Vec::new();
    match family {
        CodeFamily::Cscc => {
            candidates.push(cscc_gv_lower(p));
            candidates.push(cscc_sp_upper(p));
            // a CSCC is an SECC at its own weight and, after complementing,
            // at L − w_s
            let mut seen = Vec::new();
            for q in [*p, cscc_symmetry(p)] {
                if seen.contains(&q) {
                    continue;
                }
                seen.push(q);
                let mut inner = Vec::new();
                secc_upper_candidates(&q, cfg.recursion_depth, cfg, &mut inner, &mut skipped);
                if let Some(b) = pick(&inner, Direction::Upper) {
                    candidates.push(BoundResult::upper(
                        b.value,
                        format!("cscc-in-secc(w_s={} {})", q.subblock_weight(), b.method),
                        *p,
                    ));
                }
            }
        }
        CodeFamily::Secc => {
            secc_lower_candidates(p, cfg, &mut candidates, &mut skipped);
            secc_upper_candidates(p, cfg.recursion_depth, cfg, &mut candidates, &mut skipped);
        }
    }
    let lower = pick(&candidates, Direction::Lower).expect("a Gilbert bound always applies");
    let upper = pick(&candidates, Direction::Upper).expect("sphere-packing always applies");
    if lower.value > upper.value {
        return Err(Error::InternalConsistency(format!(
            "bounds crossed for {p}: {lower} > {upper}"
        )));
    }
    Ok(BoundReport {
        family,
        lower,
        upper,
        candidates,
        skipped,
    })
}

/// Best lower and upper bound with default settings.
pub fn best_bounds(p: &CodeParams, family: CodeFamily) -> Result<(BoundResult, BoundResult)> {
    let r = bound_report(p, family, &BoundConfig::default())?;
    Ok((r.lower, r.upper))
}

/// True iff `lower` and `upper` are a consistent pair of bounds.
pub fn bounds_agree(lower: &BoundResult, upper: &BoundResult) -> bool {
    lower.direction.bounds_below() && upper.direction.bounds_above() && lower.value <= upper.value
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(m: u32, l: u32, d: u32, ws: u32) -> CodeParams {
        CodeParams::new(m, l, d, ws).unwrap()
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn cscc_examples() {
        assert_eq!(cscc_gv_lower(&p(2, 4, 1, 2)).value, big(36));
        assert_eq!(cscc_gv_lower(&p(2, 4, 3, 2)).value, big(4));
        assert_eq!(cscc_gv_lower(&p(1, 4, 3, 2)).value, big(2));
        assert_eq!(cscc_sp_upper(&p(1, 4, 2, 2)).value, big(6));
        assert_eq!(cscc_symmetry(&p(3, 5, 2, 1)), p(3, 5, 2, 4));
        assert_eq!(cscc_symmetry(&p(3, 4, 2, 2)), p(3, 4, 2, 2));
    }

    #[test]
    fn cscc_sp_radius_two() {
        // d = 5 exceeds n = 4 for m = 1, so the radius-2 case is checked
        // through the ball directly
        assert_eq!(
            cscc_space_size(&p(1, 4, 1, 2)) / cscc_ball_size(&p(1, 4, 1, 2), 2),
            big(1)
        );
        assert_eq!(cscc_sp_upper(&p(2, 4, 5, 2)).value, big(4));
    }

    #[test]
    fn secc_gv_examples() {
        assert_eq!(secc_gv_lower(&p(1, 3, 2, 1)).value, big(2));
        assert_eq!(secc_gv_lower(&p(1, 3, 1, 1)).value, big(7));
        assert_eq!(secc_gv_lower(&p(1, 4, 2, 2)).value, big(3));
    }

    #[test]
    fn secc_sp_examples() {
        assert_eq!(secc_sp_upper(&p(1, 3, 3, 1), DEFAULT_PROFILE_CAP).unwrap().value, big(2));
        assert_eq!(secc_sp_upper(&p(1, 4, 3, 2), DEFAULT_PROFILE_CAP).unwrap().value, big(3));
        assert_eq!(secc_sp_upper(&p(2, 3, 2, 1), DEFAULT_PROFILE_CAP).unwrap().value, big(49));
    }

    #[test]
    fn average_sphere_packing_is_not_a_bound() {
        let q = p(1, 3, 3, 1);
        let v = avg_sp_value(&q);
        assert_eq!(v, Ratio::new(big(49), big(25)));
        assert!(Ratio::from_integer(big(2)) > v);
        assert_eq!(avg_sp_value(&p(1, 3, 2, 1)), Ratio::from_integer(big(7)));
    }

    #[test]
    fn from_cscc_cases() {
        let q = p(2, 2, 2, 1);
        let full = BTreeMap::from([(1, big(4)), (2, big(1))]);
        let b = secc_from_cscc_lower(&q, &full, None).unwrap();
        assert_eq!(b.value, big(5));
        assert_eq!(b.method, "secc-from-cscc(ii)");
        let top = p(3, 3, 2, 3);
        let b = secc_from_cscc_lower(&top, &BTreeMap::from([(3, big(1))]), None).unwrap();
        assert_eq!(b.value, big(1));
        // with m = d the product construction is the union itself
        let blocks = full.clone();
        let b = secc_from_cscc_lower(&q, &full, Some(&blocks)).unwrap();
        assert_eq!(b.value, big(5));
        assert!(secc_from_cscc_lower(&q, &BTreeMap::new(), None).is_err());
    }

    #[test]
    fn concat_examples() {
        assert_eq!(secc_concat_lower(3, 1, 1, 1, 0, &big(2)).unwrap().value, big(8));
        assert_eq!(secc_concat_lower(3, 1, 1, 3, 0, &big(2)).unwrap().value, big(2));
        assert_eq!(secc_concat_lower(2, 4, 2, 2, 2, &big(7)).unwrap().value, big(7));
        assert!(secc_concat_lower(2, 4, 2, 2, 2, &big(1)).is_err());
    }

    #[test]
    fn elias_examples() {
        let q = p(1, 3, 2, 1);
        assert_eq!(secc_elias_lower(&q, &big(4)).value, big(4));
        assert_eq!(secc_elias_lower(&q, &binary_gv_lower(3, 2)).value, big(2));
        assert_eq!(secc_elias_lower(&p(2, 3, 1, 1), &big(64)).value, big(49));
        let open = p(2, 2, 3, 0);
        assert_eq!(secc_elias_lower(&open, &big(2)).value, big(2));
    }

    #[test]
    fn baselines() {
        assert_eq!(binary_gv_lower(3, 2), big(2));
        assert_eq!(binary_gv_lower(3, 3), big(2));
        assert_eq!(hamming_upper(7, 3), big(16));
        // the radius-1 ball in a 7-ary length-2 space has 1 + 2·6 words
        assert_eq!(qary_gv_lower(&big(7), 2, 2), big(4));
        assert_eq!(singleton_upper(&big(7), 2, 2), big(7));
        assert_eq!(singleton_upper(&big(7), 2, 3), big(1));
    }

    #[test]
    fn recursion_examples() {
        let inner = BoundResult::upper(big(3), "oracle", p(1, 3, 2, 1));
        let b = secc_puncture_upper(&p(1, 4, 3, 2), &inner).unwrap();
        assert_eq!(b.value, big(3));
        assert!(secc_puncture_upper(&p(2, 4, 2, 2), &inner).is_err());
        let b = secc_johnson_upper(&p(1, 4, 2, 2), &inner).unwrap();
        assert_eq!(b.value, big(6));
        let inner = BoundResult::upper(big(8), "oracle", p(2, 2, 2, 0));
        assert_eq!(secc_johnson_upper(&p(2, 3, 2, 1), &inner).unwrap().value, big(72));
        let inner = BoundResult::upper(big(5), "x", p(2, 2, 2, 2));
        assert_eq!(secc_johnson_upper(&p(2, 3, 2, 3), &inner).unwrap().value, big(5));
        let lower = BoundResult::lower(big(3), "gv", p(1, 3, 2, 1));
        assert!(secc_johnson_upper(&p(1, 4, 2, 2), &lower).is_err());
    }

    #[test]
    fn monotone_examples() {
        let at_one = BoundResult::upper(big(3), "oracle", p(1, 3, 2, 1));
        assert_eq!(secc_monotonic_upper(&p(1, 3, 2, 2), &at_one).unwrap().value, big(3));
        assert_eq!(secc_monotonic_upper(&p(1, 3, 2, 1), &at_one).unwrap().value, big(3));
        assert!(secc_monotonic_upper(&p(1, 3, 2, 0), &at_one).is_err());
        assert!(secc_monotonic_upper(&p(1, 3, 3, 2), &at_one).is_err());
    }

    #[test]
    fn aggregate_examples() {
        let (lo, up) = best_bounds(&p(1, 3, 3, 1), CodeFamily::Secc).unwrap();
        assert!(lo.value >= big(2));
        assert_eq!(up.value, big(2));
        for fam in [CodeFamily::Cscc, CodeFamily::Secc] {
            let q = p(2, 3, 1, 1);
            let (lo, up) = best_bounds(&q, fam).unwrap();
            assert_eq!(lo.value, up.value);
        }
        let (lo, up) = best_bounds(&p(2, 2, 2, 1), CodeFamily::Cscc).unwrap();
        assert!(lo.value <= big(4) && big(4) <= up.value);
        assert!(bounds_agree(&lo, &up));
    }

    #[test]
    fn report_serializes_with_stable_keys() {
        let (lo, _) = best_bounds(&p(1, 3, 3, 1), CodeFamily::Secc).unwrap();
        let v = serde_json::to_value(&lo).unwrap();
        let obj = v.as_object().unwrap();
        for key in ["value", "direction", "method", "params"] {
            assert!(obj.contains_key(key), "{key}");
        }
        assert!(obj["value"].is_string());
    }
}
