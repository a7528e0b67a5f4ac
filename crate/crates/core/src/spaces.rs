//! Codeword spaces of subblock-constrained codes and their Hamming balls.
//!
//! A word of length `n = m L` is split into `m` subblocks of length `L`.
//! The CSCC space fixes every subblock weight to `w_s`; the SECC space only
//! asks every subblock weight to be at least `w_s`. CSCC balls have the same
//! size around every center, SECC balls do not, which is why the SECC code
//! needs both a minimum and an average ball size.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::combinatorics::{binomial, poly_power_truncated, CountPolynomial, ExactCount, Ratio};
use crate::error::{Error, Result};

/// Default cap on the number of words an enumeration may produce.
pub const DEFAULT_SPACE_CAP: u64 = 20_000;

/// Default cap on the number of weight profiles the minimum-ball search visits.
pub const DEFAULT_PROFILE_CAP: u64 = 1_000_000;

/// Longest word the packed representation holds.
pub const MAX_WORD_LEN: u32 = 128;

/// `(m, L, d, w_s)`: number of subblocks, subblock length, minimum distance
/// and subblock weight parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CodeParams {
    m: u32,
    #[serde(rename = "L")]
    l: u32,
    d: u32,
    #[serde(rename = "w_s")]
    ws: u32,
}

impl CodeParams {
    pub fn new(m: u32, l: u32, d: u32, ws: u32) -> Result<Self> {
        if m == 0 || l == 0 {
            return Err(Error::InvalidParams(format!(
                "m and L must be positive (m={m}, L={l})"
            )));
        }
        if ws > l {
            return Err(Error::InvalidParams(format!(
                "subblock weight w_s={ws} exceeds subblock length L={l}"
            )));
        }
        let n = m as u64 * l as u64;
        if d == 0 || d as u64 > n {
            return Err(Error::InvalidParams(format!(
                "distance d={d} must satisfy 1 <= d <= mL = {n}"
            )));
        }
        Ok(CodeParams { m, l, d, ws })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn subblock_len(&self) -> u32 {
        self.l
    }

    pub fn distance(&self) -> u32 {
        self.d
    }

    pub fn subblock_weight(&self) -> u32 {
        self.ws
    }

    /// Codeword length `n = m L`.
    pub fn n(&self) -> u32 {
        self.m * self.l
    }

    /// Codeword weight `w = m w_s` (exact for CSCC, a floor for SECC).
    pub fn w(&self) -> u32 {
        self.m * self.ws
    }

    /// Relative distance `d / n`.
    pub fn delta(&self) -> f64 {
        self.d as f64 / self.n() as f64
    }

    /// Fraction of ones `w / n = w_s / L`.
    pub fn omega(&self) -> f64 {
        self.ws as f64 / self.l as f64
    }

    pub fn with_subblock_weight(&self, ws: u32) -> Result<Self> {
        Self::new(self.m, self.l, self.d, ws)
    }

    pub fn with_distance(&self, d: u32) -> Result<Self> {
        Self::new(self.m, self.l, d, self.ws)
    }
}

impl fmt::Display for CodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(m={}, L={}, d={}, w_s={})", self.m, self.l, self.d, self.ws)
    }
}

/// Which space a code lives in. CWC/HWC use word length `m L` and weight
/// `m w_s`; `Unconstrained` is all of `{0,1}^{mL}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceKind {
    Cscc,
    Secc,
    Cwc,
    Hwc,
    Unconstrained,
}

impl SpaceKind {
    pub const ALL: [SpaceKind; 5] = [
        SpaceKind::Cscc,
        SpaceKind::Secc,
        SpaceKind::Cwc,
        SpaceKind::Hwc,
        SpaceKind::Unconstrained,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            SpaceKind::Cscc => "cscc",
            SpaceKind::Secc => "secc",
            SpaceKind::Cwc => "cwc",
            SpaceKind::Hwc => "hwc",
            SpaceKind::Unconstrained => "unconstrained",
        }
    }
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Packed binary word. Position 0 is the most significant bit, so integer
/// order on `bits` is lexicographic order on the word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    bits: u128,
    len: u32,
}

impl Word {
    pub fn new(bits: u128, len: u32) -> Result<Self> {
        if len > MAX_WORD_LEN {
            return Err(Error::InvalidParams(format!(
                "word length {len} exceeds {MAX_WORD_LEN}"
            )));
        }
        if len < 128 && bits >> len != 0 {
            return Err(Error::InvalidParams(format!(
                "bit pattern does not fit in {len} positions"
            )));
        }
        Ok(Word { bits, len })
    }

    /// Parses a string of `0`/`1`; spaces and underscores are ignored.
    pub fn parse(s: &str) -> Result<Self> {
        let mut bits = 0u128;
        let mut len = 0u32;
        for c in s.chars() {
            match c {
                '0' | '1' => {
                    if len == MAX_WORD_LEN {
                        return Err(Error::InvalidParams("word too long".into()));
                    }
                    bits = (bits << 1) | (c == '1') as u128;
                    len += 1;
                }
                ' ' | '_' => {}
                other => {
                    return Err(Error::InvalidParams(format!(
                        "unexpected character {other:?} in word"
                    )))
                }
            }
        }
        Ok(Word { bits, len })
    }

    pub fn bits(&self) -> u128 {
        self.bits
    }

    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn distance(&self, other: &Word) -> u32 {
        (self.bits ^ other.bits).count_ones()
    }

    /// Subblock `i` (positions `iL .. (i+1)L - 1`).
    pub fn subblock(&self, i: u32, l: u32) -> SubblockWord {
        let shift = self.len - (i + 1) * l;
        let mask = if l == 128 { u128::MAX } else { (1u128 << l) - 1 };
        SubblockWord {
            bits: ((self.bits >> shift) & mask) as u64,
            len: l,
        }
    }

    pub fn subblock_weights(&self, l: u32) -> Vec<u32> {
        (0..self.len / l).map(|i| self.subblock(i, l).weight()).collect()
    }

    /// Renders the word with a space between consecutive subblocks.
    pub fn format_subblocks(&self, l: u32) -> String {
        let s = self.to_string();
        let chunks: Vec<&str> = (0..s.len())
            .step_by(l.max(1) as usize)
            .map(|i| &s[i..(i + l as usize).min(s.len())])
            .collect();
        chunks.join(" ")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in (0..self.len).rev() {
            f.write_str(if (self.bits >> i) & 1 == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// One length-`L` subblock of a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SubblockWord {
    bits: u64,
    len: u32,
}

impl SubblockWord {
    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }
}

/// Per-subblock weights of an SECC word. The SECC ball size around a word
/// depends only on this multiset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightProfile {
    weights: Vec<u32>,
}

impl WeightProfile {
    pub fn new(weights: Vec<u32>, params: &CodeParams) -> Result<Self> {
        if weights.len() != params.m as usize {
            return Err(Error::InvalidParams(format!(
                "profile has {} entries, expected m={}",
                weights.len(),
                params.m
            )));
        }
        if let Some(&bad) = weights.iter().find(|&&a| a < params.ws || a > params.l) {
            return Err(Error::InvalidParams(format!(
                "profile entry {bad} outside [w_s, L] = [{}, {}]",
                params.ws, params.l
            )));
        }
        Ok(WeightProfile { weights })
    }

    pub fn of_word(word: &Word, params: &CodeParams) -> Result<Self> {
        Self::new(word.subblock_weights(params.l), params)
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }
}

pub fn cscc_space_size(params: &CodeParams) -> ExactCount {
    binomial(params.l as u64, params.ws as i64).pow(params.m)
}

/// Number of length-`L` words with weight at least `w_s`.
pub fn heavy_subblock_count(l: u32, ws: u32) -> ExactCount {
    (ws..=l).map(|i| binomial(l as u64, i as i64)).sum()
}

pub fn secc_space_size(params: &CodeParams) -> ExactCount {
    heavy_subblock_count(params.l, params.ws).pow(params.m)
}

pub fn space_size(params: &CodeParams, kind: SpaceKind) -> ExactCount {
    let n = params.n() as u64;
    let w = params.w() as i64;
    match kind {
        SpaceKind::Cscc => cscc_space_size(params),
        SpaceKind::Secc => secc_space_size(params),
        SpaceKind::Cwc => binomial(n, w),
        SpaceKind::Hwc => (w..=n as i64).map(|i| binomial(n, i)).sum(),
        SpaceKind::Unconstrained => BigUint::one() << n,
    }
}

/// Per-subblock CSCC polynomial in `z^u` where the subblock distance is `2u`.
fn cscc_subblock_polynomial(l: u32, ws: u32) -> CountPolynomial {
    let v = ws.min(l - ws);
    CountPolynomial::new(
        (0..=v)
            .map(|u| binomial(ws as u64, u as i64) * binomial((l - ws) as u64, u as i64))
            .collect(),
    )
}

/// `|B_C(x, radius)|`, the same for every CSCC center `x`.
pub fn cscc_ball_size(params: &CodeParams, radius: u32) -> ExactCount {
    let half = (radius / 2) as usize;
    let p = cscc_subblock_polynomial(params.l, params.ws);
    poly_power_truncated(&p, params.m, half).total()
}

/// Distance polynomial from a fixed weight-`a` subblock to the heavy
/// subblocks: coefficient `e` counts length-`L` words of weight `>= w_s` at
/// distance `e`.
pub fn heavy_neighbour_polynomial(l: u32, ws: u32, a: u32) -> CountPolynomial {
    let mut coeffs = vec![BigUint::zero(); l as usize + 1];
    // k ones cleared, j zeros set
    for k in 0..=a {
        for j in 0..=(l - a) {
            if a - k + j >= ws {
                coeffs[(k + j) as usize] +=
                    binomial(a as u64, k as i64) * binomial((l - a) as u64, j as i64);
            }
        }
    }
    CountPolynomial::new(coeffs)
}

/// `|B_S(x, radius)|` for any SECC center whose subblock weights are `profile`.
pub fn secc_ball_size_at(profile: &WeightProfile, params: &CodeParams, radius: u32) -> ExactCount {
    let r = radius as usize;
    let mut acc = CountPolynomial::one();
    for &a in &profile.weights {
        let poly = heavy_neighbour_polynomial(params.l, params.ws, a);
        acc = acc.mul_truncated(&poly, r);
    }
    acc.prefix_sum(r)
}

/// Smallest SECC ball of the given radius, with a profile attaining it.
///
/// Profiles are visited as multisets of `m` weights from `[w_s, L]`; there
/// are `C(L - w_s + m, m)` of them and more than `profile_cap` is an error.
pub fn secc_min_ball(
    params: &CodeParams,
    radius: u32,
    profile_cap: u64,
) -> Result<(ExactCount, WeightProfile)> {
    let choices = params.l - params.ws + 1;
    let count = binomial((choices - 1 + params.m) as u64, params.m as i64);
    if count > BigUint::from(profile_cap) {
        return Err(Error::ResourceCap {
            what: format!("weight-profile multiset for {params}"),
            size: count.to_string(),
            cap: profile_cap,
        });
    }
    let r = radius as usize;
    let polys: Vec<CountPolynomial> = (params.ws..=params.l)
        .map(|a| heavy_neighbour_polynomial(params.l, params.ws, a).truncate(r))
        .collect();

    struct Search<'a> {
        polys: &'a [CountPolynomial],
        m: usize,
        r: usize,
        best: Option<(ExactCount, Vec<usize>)>,
        stack: Vec<usize>,
    }

    impl Search<'_> {
        fn run(&mut self, start: usize, acc: &CountPolynomial) {
            if self.stack.len() == self.m {
                let size = acc.prefix_sum(self.r);
                if self.best.as_ref().is_none_or(|(b, _)| size < *b) {
                    self.best = Some((size, self.stack.clone()));
                }
                return;
            }
            for idx in start..self.polys.len() {
                let next = acc.mul_truncated(&self.polys[idx], self.r);
                self.stack.push(idx);
                self.run(idx, &next);
                self.stack.pop();
            }
        }
    }

    let mut search = Search {
        polys: &polys,
        m: params.m as usize,
        r,
        best: None,
        stack: Vec::with_capacity(params.m as usize),
    };
    search.run(0, &CountPolynomial::one());
    let (size, idx) = search.best.expect("at least one profile");
    let weights = idx.into_iter().map(|i| params.ws + i as u32).collect();
    Ok((size, WeightProfile { weights }))
}

pub fn secc_min_ball_size(params: &CodeParams, radius: u32, profile_cap: u64) -> Result<ExactCount> {
    secc_min_ball(params, radius, profile_cap).map(|(size, _)| size)
}

/// Per-subblock pair polynomial: coefficient `e` counts ordered pairs of heavy
/// subblocks at distance `e`.
pub fn heavy_pair_polynomial(l: u32, ws: u32) -> CountPolynomial {
    let mut acc = vec![BigUint::zero(); l as usize + 1];
    for a in ws..=l {
        let centers = binomial(l as u64, a as i64);
        for (e, c) in heavy_neighbour_polynomial(l, ws, a)
            .coefficients()
            .iter()
            .enumerate()
        {
            acc[e] += &centers * c;
        }
    }
    CountPolynomial::new(acc)
}

/// Exact average SECC ball size: ordered pairs within `radius` over `|S|`.
pub fn secc_avg_ball_size(params: &CodeParams, radius: u32) -> Ratio {
    let r = radius as usize;
    let pairs = poly_power_truncated(&heavy_pair_polynomial(params.l, params.ws), params.m, r)
        .prefix_sum(r);
    Ratio::new(pairs, secc_space_size(params))
}

/// Whether `word` belongs to the space of the given kind.
pub fn in_space(word: &Word, params: &CodeParams, kind: SpaceKind) -> bool {
    if word.len() != params.n() {
        return false;
    }
    match kind {
        SpaceKind::Cscc => word
            .subblock_weights(params.l)
            .iter()
            .all(|&w| w == params.ws),
        SpaceKind::Secc => word
            .subblock_weights(params.l)
            .iter()
            .all(|&w| w >= params.ws),
        SpaceKind::Cwc => word.weight() == params.w(),
        SpaceKind::Hwc => word.weight() >= params.w(),
        SpaceKind::Unconstrained => true,
    }
}

/// All words of the space in lexicographic order (most significant bit first).
pub fn enumerate_space(params: &CodeParams, kind: SpaceKind, cap: u64) -> Result<Vec<Word>> {
    let size = space_size(params, kind);
    if size > BigUint::from(cap) {
        return Err(Error::ResourceCap {
            what: format!("{kind} space for {params}"),
            size: size.to_string(),
            cap,
        });
    }
    let n = params.n();
    if n > MAX_WORD_LEN {
        return Err(Error::InvalidParams(format!(
            "word length {n} exceeds {MAX_WORD_LEN}"
        )));
    }
    let expected = size.to_usize().expect("below cap");
    let mut out = Vec::with_capacity(expected);
    let gen = Generator {
        kind,
        n,
        l: params.l,
        ws: params.ws,
        w: params.w(),
    };
    gen.extend(0, 0, 0, 0, &mut out);
    debug_assert_eq!(out.len(), expected);
    Ok(out)
}

struct Generator {
    kind: SpaceKind,
    n: u32,
    l: u32,
    ws: u32,
    w: u32,
}

impl Generator {
    /// Whether a prefix ending at position `pos` with the given weights can
    /// still be completed. `sub` is the weight of the open subblock.
    fn feasible(&self, pos: u32, sub: u32, total: u32) -> bool {
        let left_in_sub = (self.l - pos % self.l) % self.l;
        let left_total = self.n - pos;
        match self.kind {
            SpaceKind::Cscc => sub <= self.ws && sub + left_in_sub >= self.ws,
            SpaceKind::Secc => sub + left_in_sub >= self.ws,
            SpaceKind::Cwc => total <= self.w && total + left_total >= self.w,
            SpaceKind::Hwc => total + left_total >= self.w,
            SpaceKind::Unconstrained => true,
        }
    }

    fn extend(&self, pos: u32, bits: u128, sub: u32, total: u32, out: &mut Vec<Word>) {
        if pos == self.n {
            out.push(Word { bits, len: self.n });
            return;
        }
        for b in 0..=1u32 {
            let next = pos + 1;
            let sub_next = sub + b;
            let total_next = total + b;
            if !self.feasible(next, sub_next, total_next) {
                continue;
            }
            let sub_carry = if next % self.l == 0 { 0 } else { sub_next };
            self.extend(next, (bits << 1) | b as u128, sub_carry, total_next, out);
        }
    }
}
