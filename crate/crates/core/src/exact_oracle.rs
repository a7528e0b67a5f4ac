//! Exact optimal code sizes on small instances.
//!
//! A code with minimum distance `d` inside a space is a clique of the
//! graph joining two words when their distance is at least `d`, so the
//! optimal size is the clique number. The search is a bitset
//! branch-and-bound with greedy sequential colouring as the bound.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::spaces::{enumerate_space, in_space, CodeParams, SpaceKind, Word, DEFAULT_SPACE_CAP};

/// Default wall-clock budget for one clique search.
pub const DEFAULT_TIME_BUDGET: Duration = Duration::from_secs(60);

#[derive(Debug, Clone)]
pub struct OracleConfig {
    /// Largest space that will be enumerated.
    pub space_cap: u64,
    /// Wall-clock limit; `None` searches to completion.
    pub time_budget: Option<Duration>,
    /// Search-node limit; unlike the time limit it is reproducible.
    pub node_budget: Option<u64>,
    /// Break symmetry with the coordinate permutations preserving the space
    /// (and complements of the cube): fix one word when the group is
    /// transitive, otherwise branch on one word per orbit.
    pub use_symmetry: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            space_cap: DEFAULT_SPACE_CAP,
            time_budget: Some(DEFAULT_TIME_BUDGET),
            node_budget: None,
            use_symmetry: true,
        }
    }
}

/// Optimal size with one optimal code, words in increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactResult {
    pub size: usize,
    pub witness: Vec<Word>,
    pub nodes: u64,
}

#[derive(Clone, PartialEq, Eq)]
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn empty(n: usize) -> Self {
        BitSet {
            words: vec![0; n.div_ceil(64)],
        }
    }

    fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for i in 0..n {
            s.insert(i);
        }
        s
    }

    #[inline]
    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    #[inline]
    fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| i * 64 + w.trailing_zeros() as usize)
    }

    fn intersect(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    fn subtract(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + t)
            })
        })
    }
}

/// Words of a space joined when their distance is at least `d`.
#[derive(Clone)]
pub struct CompatibilityGraph {
    vertices: Vec<Word>,
    adjacency: Vec<BitSet>,
}

impl CompatibilityGraph {
    pub fn new(vertices: Vec<Word>, d: u32) -> Self {
        let n = vertices.len();
        let mut adjacency = vec![BitSet::empty(n); n];
        for i in 0..n {
            for j in (i + 1)..n {
                if vertices[i].distance(&vertices[j]) >= d {
                    adjacency[i].insert(j);
                    adjacency[j].insert(i);
                }
            }
        }
        CompatibilityGraph {
            vertices,
            adjacency,
        }
    }

    /// Graph given by an explicit adjacency predicate on vertex indices.
    /// Used for testing the clique search on arbitrary graphs.
    pub fn from_fn(n: usize, mut edge: impl FnMut(usize, usize) -> bool) -> Self {
        let mut adjacency = vec![BitSet::empty(n); n];
        for i in 0..n {
            for j in (i + 1)..n {
                if edge(i, j) {
                    adjacency[i].insert(j);
                    adjacency[j].insert(i);
                }
            }
        }
        let vertices = (0..n)
            .map(|i| Word::new(i as u128, 64).expect("index fits"))
            .collect();
        CompatibilityGraph {
            vertices,
            adjacency,
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Word] {
        &self.vertices
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].contains(j)
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].count()
    }
}

/// Outcome of a clique search: vertex indices of a maximum clique.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clique {
    pub vertices: Vec<usize>,
    pub nodes: u64,
}

/// Degeneracy order: repeatedly peel a minimum-degree vertex; the returned
/// order lists the last peeled vertex first.
fn degeneracy_order(graph: &CompatibilityGraph, candidates: &BitSet) -> Vec<usize> {
    let members: Vec<usize> = candidates.iter().collect();
    let mut alive = candidates.clone();
    let mut degree: Vec<usize> = vec![0; graph.len()];
    for &v in &members {
        degree[v] = graph.adjacency[v].intersect(candidates).count();
    }
    let mut peeled = Vec::with_capacity(members.len());
    for _ in 0..members.len() {
        let v = alive
            .iter()
            .min_by_key(|&v| (degree[v], v))
            .expect("non-empty");
        alive.remove(v);
        for u in graph.adjacency[v].intersect(&alive).iter() {
            degree[u] -= 1;
        }
        peeled.push(v);
    }
    peeled.reverse();
    peeled
}

struct Searcher<'a> {
    adjacency: Vec<BitSet>,
    best_len: usize,
    best: Option<Vec<usize>>,
    current: Vec<usize>,
    nodes: u64,
    start: Instant,
    cfg: &'a OracleConfig,
    stopped: bool,
}

impl Searcher<'_> {
    fn out_of_budget(&mut self) -> bool {
        if self.stopped {
            return true;
        }
        if let Some(limit) = self.cfg.node_budget {
            if self.nodes >= limit {
                self.stopped = true;
            }
        }
        if self.nodes % 1024 == 0 {
            if let Some(limit) = self.cfg.time_budget {
                if self.start.elapsed() >= limit {
                    self.stopped = true;
                }
            }
        }
        self.stopped
    }

    fn expand(&mut self, mut candidates: BitSet) {
        self.nodes += 1;
        if self.out_of_budget() {
            return;
        }
        // colour classes; only vertices whose colour can still beat the
        // incumbent are branched on
        let need = (self.best_len + 1).saturating_sub(self.current.len());
        let mut order: Vec<(usize, usize)> = Vec::new();
        let mut uncoloured = candidates.clone();
        let mut colour = 0usize;
        while !uncoloured.is_empty() {
            colour += 1;
            let mut class = uncoloured.clone();
            while let Some(v) = class.first() {
                class.remove(v);
                class.subtract(&self.adjacency[v]);
                uncoloured.remove(v);
                if colour >= need {
                    order.push((v, colour));
                }
            }
        }
        for &(v, colour) in order.iter().rev() {
            if self.current.len() + colour <= self.best_len {
                return;
            }
            self.current.push(v);
            let next = candidates.intersect(&self.adjacency[v]);
            if next.is_empty() {
                if self.current.len() > self.best_len {
                    self.best_len = self.current.len();
                    self.best = Some(self.current.clone());
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            if self.stopped {
                return;
            }
            candidates.remove(v);
        }
    }
}

/// Shared budget state across the subproblems of one search.
struct Budget<'a> {
    cfg: &'a OracleConfig,
    start: Instant,
    nodes: u64,
}

impl Budget<'_> {
    fn exceeded(&self, best_found: usize) -> Error {
        Error::BudgetExceeded {
            elapsed: self.start.elapsed(),
            nodes: self.nodes,
            best_found,
        }
    }
}

/// Largest clique inside `pool` strictly larger than `floor`, if any. On
/// budget exhaustion the error carries the largest size seen.
fn clique_above(
    graph: &CompatibilityGraph,
    pool: &BitSet,
    floor: usize,
    budget: &mut Budget<'_>,
) -> std::result::Result<Option<Vec<usize>>, usize> {
    if pool.count() <= floor {
        return Ok(None);
    }
    // Renumber the pool in degeneracy order so low indices (coloured first)
    // are the high-core vertices.
    let order = degeneracy_order(graph, pool);
    let k = order.len();
    let mut position = vec![usize::MAX; graph.len()];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let adjacency: Vec<BitSet> = order
        .iter()
        .map(|&v| {
            let mut row = BitSet::empty(k);
            for u in graph.adjacency[v].intersect(pool).iter() {
                row.insert(position[u]);
            }
            row
        })
        .collect();
    let cfg = budget.cfg;
    let mut searcher = Searcher {
        adjacency,
        best_len: floor,
        best: None,
        current: Vec::new(),
        nodes: budget.nodes,
        start: budget.start,
        cfg,
        stopped: false,
    };
    searcher.expand(BitSet::full(k));
    budget.nodes = searcher.nodes;
    if searcher.stopped {
        return Err(searcher.best.map_or(0, |b| b.len()));
    }
    Ok(searcher
        .best
        .map(|b| b.iter().map(|&i| order[i]).collect()))
}

/// Maximum clique by colouring branch-and-bound, optionally forcing vertex
/// `forced` into the clique.
pub fn max_clique(
    graph: &CompatibilityGraph,
    forced: Option<usize>,
    cfg: &OracleConfig,
) -> Result<Clique> {
    let n = graph.len();
    if n == 0 {
        return Ok(Clique {
            vertices: Vec::new(),
            nodes: 0,
        });
    }
    let mut budget = Budget {
        cfg,
        start: Instant::now(),
        nodes: 0,
    };
    let (pool, mut base) = match forced {
        Some(v) => (graph.adjacency[v].clone(), vec![v]),
        None => (BitSet::full(n), Vec::new()),
    };
    match clique_above(graph, &pool, 0, &mut budget) {
        Ok(found) => {
            base.extend(found.unwrap_or_default());
            base.sort_unstable();
            Ok(Clique {
                vertices: base,
                nodes: budget.nodes,
            })
        }
        Err(seen) => Err(budget.exceeded(base.len() + seen)),
    }
}

/// Maximum clique through vertex `x`, splitting on the second vertex.
///
/// `orbit[v]` must be constant on each orbit class used for splitting: any
/// two vertices with the same key are exchanged by an automorphism fixing
/// `x`, and `rank[v]` must be invariant under those automorphisms. Every
/// clique through `x` is then equivalent to one whose second vertex is a
/// class representative of least rank.
fn max_clique_by_orbits(
    graph: &CompatibilityGraph,
    x: usize,
    orbit: &[Vec<u32>],
    rank: &[u32],
    cfg: &OracleConfig,
) -> Result<Clique> {
    let mut budget = Budget {
        cfg,
        start: Instant::now(),
        nodes: 0,
    };
    let mut best = Vec::new();
    let all = BitSet::full(graph.len());
    if let Err(seen) = improve_through(graph, x, &all, orbit, rank, &mut budget, &mut best) {
        return Err(budget.exceeded(seen));
    }
    best.sort_unstable();
    Ok(Clique {
        vertices: best,
        nodes: budget.nodes,
    })
}

/// Replaces `best` by a larger clique through `x` inside `allowed`, if one
/// exists (`best` itself need not contain `x`); `allowed` must be invariant under the automorphisms behind
/// `orbit`. The error is the largest clique size seen.
fn improve_through(
    graph: &CompatibilityGraph,
    x: usize,
    allowed: &BitSet,
    orbit: &[Vec<u32>],
    rank: &[u32],
    budget: &mut Budget<'_>,
    best: &mut Vec<usize>,
) -> std::result::Result<(), usize> {
    let neighbours = graph.adjacency[x].intersect(allowed);
    if best.is_empty() {
        *best = vec![x];
    }
    let mut reps: Vec<usize> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for v in neighbours.iter() {
        if seen.insert(&orbit[v]) {
            reps.push(v);
        }
    }
    reps.sort_by_key(|&v| (rank[v], v));
    for &r in &reps {
        let mut pool = neighbours.intersect(&graph.adjacency[r]);
        for v in pool.clone().iter() {
            if rank[v] < rank[r] {
                pool.remove(v);
            }
        }
        let floor = best.len().saturating_sub(2);
        let found = match clique_above(graph, &pool, floor, budget) {
            Ok(found) => found,
            Err(seen) => return Err(best.len().max(seen + 2)),
        };
        match found {
            Some(c) => {
                *best = vec![x, r];
                best.extend(c);
            }
            None if best.len() < 2 => *best = vec![x, r],
            None => {}
        }
    }
    Ok(())
}

/// Maximum clique when `class[v]` labels the vertex orbits of a group of
/// automorphisms and `stabiliser_orbits(x)` gives orbit keys for the
/// stabiliser of `x`.
///
/// A maximum clique meets some earliest class; moving its vertex there
/// onto that class's representative gives a clique through the
/// representative avoiding all earlier classes.
fn max_clique_by_vertex_classes(
    graph: &CompatibilityGraph,
    class: &[Vec<u32>],
    stabiliser_orbits: impl Fn(usize) -> Vec<Vec<u32>>,
    cfg: &OracleConfig,
) -> Result<Clique> {
    let mut budget = Budget {
        cfg,
        start: Instant::now(),
        nodes: 0,
    };
    let mut reps: Vec<usize> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for v in 0..graph.len() {
        if seen.insert(&class[v]) {
            reps.push(v);
        }
    }
    let mut allowed = BitSet::full(graph.len());
    let mut best: Vec<usize> = Vec::new();
    for &x in &reps {
        // a clique through x lies in x plus its allowed neighbours
        if graph.adjacency[x].intersect(&allowed).count() + 1 > best.len() {
            let orbit = stabiliser_orbits(x);
            let origin = graph.vertices[x];
            let rank: Vec<u32> = graph.vertices.iter().map(|w| w.distance(&origin)).collect();
            if let Err(seen) = improve_through(graph, x, &allowed, &orbit, &rank, &mut budget, &mut best) {
                return Err(budget.exceeded(seen));
            }
        }
        for v in 0..graph.len() {
            if class[v] == class[x] {
                allowed.remove(v);
            }
        }
    }
    best.sort_unstable();
    Ok(Clique {
        vertices: best,
        nodes: budget.nodes,
    })
}

/// Orbit keys of the stabiliser of the first word, when the space's
/// isometry group is transitive and the keys are known.
fn orbit_keys(words: &[Word], params: &CodeParams, kind: SpaceKind) -> Option<Vec<Vec<u32>>> {
    let x = words[0];
    let l = params.subblock_len();
    let full_cube = match kind {
        SpaceKind::Unconstrained => true,
        SpaceKind::Secc => params.subblock_weight() == 0,
        SpaceKind::Hwc => params.w() == 0,
        _ => false,
    };
    // the full cube and constant-weight spaces are distance-transitive
    if full_cube || kind == SpaceKind::Cwc {
        return Some(words.iter().map(|w| vec![w.distance(&x)]).collect());
    }
    if kind == SpaceKind::Cscc {
        // coordinate permutations inside subblocks and permutations of whole
        // subblocks; the orbit of a word is its multiset of subblock
        // distances when all subblocks of x coincide
        let first = x.subblock(0, l);
        if (1..params.m()).any(|i| x.subblock(i, l) != first) {
            return None;
        }
        return Some(
            words
                .iter()
                .map(|w| {
                    let mut k: Vec<u32> = (0..params.m())
                        .map(|i| (w.subblock(i, l).bits() ^ x.subblock(i, l).bits()).count_ones())
                        .collect();
                    k.sort_unstable();
                    k
                })
                .collect(),
        );
    }
    None
}

/// Largest subset of `words` with no two at distance 1.
///
/// Distance-1 pairs change the weight by one, so they form a bipartite
/// graph between even and odd weights, and a largest independent set is
/// the complement of a minimum vertex cover (König), read off a maximum
/// matching.
fn distance_two_code(words: &[Word]) -> Vec<usize> {
    let index: HashMap<u128, usize> = words.iter().enumerate().map(|(i, w)| (w.bits(), i)).collect();
    let len = words.first().map_or(0, |w| w.len());
    let even = |i: usize| words[i].weight() % 2 == 0;
    let neighbours: Vec<Vec<usize>> = words
        .iter()
        .map(|w| {
            (0..len)
                .filter_map(|b| index.get(&(w.bits() ^ (1u128 << b))).copied())
                .collect()
        })
        .collect();
    let left: Vec<usize> = (0..words.len()).filter(|&i| even(i)).collect();
    let mut mate: Vec<Option<usize>> = vec![None; words.len()];

    // augmenting paths from each left vertex, iteratively
    let mut stamp = vec![usize::MAX; words.len()];
    for (round, &root) in left.iter().enumerate() {
        // stack of (left vertex, next neighbour position); parent links on the right
        let mut parent: HashMap<usize, usize> = HashMap::new();
        let mut stack = vec![(root, 0usize)];
        let mut end = None;
        while let Some(&mut (u, ref mut pos)) = stack.last_mut() {
            if *pos == neighbours[u].len() {
                stack.pop();
                continue;
            }
            let r = neighbours[u][*pos];
            *pos += 1;
            if stamp[r] == round {
                continue;
            }
            stamp[r] = round;
            parent.insert(r, u);
            match mate[r] {
                None => {
                    end = Some(r);
                    break;
                }
                Some(next) => stack.push((next, 0)),
            }
        }
        let mut r = match end {
            Some(r) => r,
            None => continue,
        };
        loop {
            let u = parent[&r];
            let prev = mate[u];
            mate[r] = Some(u);
            mate[u] = Some(r);
            match prev {
                Some(p) => r = p,
                None => break,
            }
        }
    }

    // alternating reachability from unmatched left vertices
    let mut reached = vec![false; words.len()];
    let mut queue: std::collections::VecDeque<usize> =
        left.iter().copied().filter(|&u| mate[u].is_none()).collect();
    for &u in &queue {
        reached[u] = true;
    }
    while let Some(u) = queue.pop_front() {
        for &r in &neighbours[u] {
            if !reached[r] {
                reached[r] = true;
                if let Some(next) = mate[r] {
                    if !reached[next] {
                        reached[next] = true;
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    (0..words.len()).filter(|&i| even(i) == reached[i]).collect()
}

fn split_blocks(w: &Word, blocks: u32, len: u32) -> Vec<u128> {
    let mask = if len >= 128 { u128::MAX } else { (1u128 << len) - 1 };
    (0..blocks)
        .map(|i| (w.bits() >> ((blocks - 1 - i) * len)) & mask)
        .collect()
}

fn transitive_space(params: &CodeParams, kind: SpaceKind) -> bool {
    match kind {
        SpaceKind::Cscc | SpaceKind::Cwc | SpaceKind::Unconstrained => true,
        SpaceKind::Secc => {
            params.subblock_weight() == 0 || params.subblock_weight() == params.subblock_len()
        }
        SpaceKind::Hwc => params.w() == 0 || params.w() == params.n(),
    }
}

/// Largest code of minimum distance `params.d` in the given space, with a
/// witness code.
///
/// `Unconstrained` computes `A(mL, d)`, `Cwc` computes `A(mL, d, m w_s)` and
/// `Hwc` computes `H(mL, d, m w_s)`.
pub fn exact_size(params: &CodeParams, kind: SpaceKind, cfg: &OracleConfig) -> Result<ExactResult> {
    let words = enumerate_space(params, kind, cfg.space_cap)?;
    if words.is_empty() {
        return Ok(ExactResult {
            size: 0,
            witness: Vec::new(),
            nodes: 0,
        });
    }
    // every pair is at distance ≥ 1; at 2 the conflicts are bipartite
    if params.distance() <= 2 {
        let mut witness: Vec<Word> = if params.distance() == 1 {
            words
        } else {
            let keep = distance_two_code(&words);
            keep.into_iter().map(|i| words[i]).collect()
        };
        witness.sort_unstable();
        return Ok(ExactResult {
            size: witness.len(),
            witness,
            nodes: 0,
        });
    }
    let graph = CompatibilityGraph::new(words, params.distance());
    let clique = if cfg.use_symmetry && transitive_space(params, kind) {
        match orbit_keys(graph.vertices(), params, kind) {
            Some(keys) => {
                let x = graph.vertices()[0];
                let rank: Vec<u32> = graph.vertices().iter().map(|w| w.distance(&x)).collect();
                max_clique_by_orbits(&graph, 0, &keys, &rank, cfg)?
            }
            None => max_clique(&graph, Some(0), cfg)?,
        }
    } else if cfg.use_symmetry && matches!(kind, SpaceKind::Secc | SpaceKind::Hwc) {
        // S_L on each subblock and S_m on the subblocks; HWC is one block
        let (blocks, len) = match kind {
            SpaceKind::Secc => (params.m(), params.subblock_len()),
            _ => (1, params.n()),
        };
        let parts: Vec<Vec<u128>> = graph.vertices().iter().map(|w| split_blocks(w, blocks, len)).collect();
        let class: Vec<Vec<u32>> = parts
            .iter()
            .map(|p| {
                let mut k: Vec<u32> = p.iter().map(|b| b.count_ones()).collect();
                k.sort_unstable();
                k
            })
            .collect();
        let stabiliser_orbits = |x: usize| -> Vec<Vec<u32>> {
            let k = len + 1;
            parts
                .iter()
                .map(|p| {
                    let mut key: Vec<u32> = p
                        .iter()
                        .zip(&parts[x])
                        .map(|(u, v)| (v.count_ones() * k + u.count_ones()) * k + (u & v).count_ones())
                        .collect();
                    key.sort_unstable();
                    key
                })
                .collect()
        };
        max_clique_by_vertex_classes(&graph, &class, stabiliser_orbits, cfg)?
    } else {
        max_clique(&graph, None, cfg)?
    };
    let mut witness: Vec<Word> = clique.vertices.iter().map(|&i| graph.vertices[i]).collect();
    witness.sort_unstable();
    Ok(ExactResult {
        size: witness.len(),
        witness,
        nodes: clique.nodes,
    })
}

/// True iff every word lies in the space and all pairwise distances are at
/// least `d`. The empty code is valid.
pub fn verify_code(words: &[Word], d: u32, params: &CodeParams, kind: SpaceKind) -> bool {
    if !words.iter().all(|w| in_space(w, params, kind)) {
        return false;
    }
    words
        .iter()
        .enumerate()
        .all(|(i, a)| words[i + 1..].iter().all(|b| a.distance(b) >= d))
}
