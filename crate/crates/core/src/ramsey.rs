//! Set-Ramsey numbers: monochromatic subgraph detection, exhaustive
//! avoidance search and closed-form bounds.
//!
//! The search colours the edges of K_n in row order `(0,1), (0,2), ...,
//! (1,2), ...`, trying k-sets in lexicographic order. With symmetry breaking
//! on, vertex 0's edge sets are non-decreasing, the first one is `{0..k}`,
//! and for `r <= 7` every prefix of vertex 0's list must be minimal under
//! colour relabelling (after re-sorting). For triangles the search also
//! forward-checks every unassigned edge and bounds colour degrees: the
//! colour-i neighbourhood of a vertex avoids colour i internally, so it is at
//! most `ram_{r-1,k}(K3) - 1` vertices.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::time::Instant;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::colour::{binomial, k_subsets, ColourSet};
use crate::constructions::{
    code_colouring, distance_code, doubling_cycle_colouring, turan_affine_colouring,
};
use crate::{HostGraph, SetColouring, VertexSet};

pub const MAX_SEARCH_VERTICES: usize = 32;
pub const DEFAULT_SEARCH_BUDGET: u64 = 1_000_000_000;
/// Largest witness built by [`cycle_lower_bound`] and [`ramsey_number`].
pub const MAX_WITNESS_VERTICES: usize = 1024;
const MAX_CANONICAL_R: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RamseyError {
    #[error("bad target: {0}")]
    Target(String),
    #[error("{0}")]
    Parameters(String),
    #[error("internal: {0}")]
    Internal(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum TargetGraph {
    Clique(usize),
    OddCycle(usize),
}

impl TargetGraph {
    pub fn clique(t: usize) -> Result<Self, RamseyError> {
        if t < 2 {
            return Err(RamseyError::Target(format!("K{t}: need t >= 2")));
        }
        Ok(Self::Clique(t))
    }

    pub fn odd_cycle(l: usize) -> Result<Self, RamseyError> {
        if l < 3 || l.is_multiple_of(2) {
            return Err(RamseyError::Target(format!("C{l}: need odd length >= 3")));
        }
        Ok(Self::OddCycle(l))
    }

    pub fn vertex_count(self) -> usize {
        match self {
            Self::Clique(t) | Self::OddCycle(t) => t,
        }
    }

    fn is_triangle(self) -> bool {
        matches!(self, Self::Clique(3) | Self::OddCycle(3))
    }
}

impl fmt::Display for TargetGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Clique(t) => write!(f, "K{t}"),
            Self::OddCycle(l) => write!(f, "C{l}"),
        }
    }
}

impl FromStr for TargetGraph {
    type Err = RamseyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || RamseyError::Target(format!("`{s}`: expected Kt or Cl, e.g. K3 or C5"));
        let mut chars = s.chars();
        let head = chars.next().ok_or_else(bad)?;
        let size: usize = chars.as_str().parse().map_err(|_| bad())?;
        match head {
            'K' | 'k' => Self::clique(size),
            'C' | 'c' => Self::odd_cycle(size),
            _ => Err(bad()),
        }
    }
}

impl From<TargetGraph> for String {
    fn from(t: TargetGraph) -> String {
        t.to_string()
    }
}

impl TryFrom<String> for TargetGraph {
    type Error = RamseyError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoWitness {
    pub colour: usize,
    /// Clique vertices in increasing order, or a cycle starting at its
    /// smallest vertex.
    pub vertices: Vec<usize>,
}

/// Per colour, per vertex neighbourhoods.
fn colour_adjacency(c: &SetColouring) -> Vec<Vec<VertexSet>> {
    let n = c.vertex_count();
    let mut adj = vec![vec![VertexSet::with_capacity(n); n]; c.r()];
    for (u, v, s) in c.edges() {
        for col in s.iter() {
            adj[col][u].insert(v);
            adj[col][v].insert(u);
        }
    }
    adj
}

/// The lexicographically first monochromatic copy of `target`: smallest
/// colour, then smallest vertex sequence.
pub fn has_mono_subgraph(c: &SetColouring, target: TargetGraph) -> Option<MonoWitness> {
    let n = c.vertex_count();
    let adj = colour_adjacency(c);
    for (colour, g) in adj.iter().enumerate() {
        let found = match target {
            TargetGraph::Clique(t) => {
                let mut chosen = Vec::with_capacity(t);
                first_clique(g, &VertexSet::full(n), t, &mut chosen).then_some(chosen)
            }
            TargetGraph::OddCycle(l) => first_odd_cycle(g, l),
        };
        if let Some(vertices) = found {
            return Some(MonoWitness { colour, vertices });
        }
    }
    None
}

fn first_clique(g: &[VertexSet], cand: &VertexSet, need: usize, chosen: &mut Vec<usize>) -> bool {
    if need == 0 {
        return true;
    }
    let list = cand.to_vec();
    for (i, &v) in list.iter().enumerate() {
        if list.len() - i < need {
            return false;
        }
        let next = VertexSet::from_iter_vertices(list[i + 1..].iter().copied().filter(|&w| g[v].contains(w)));
        chosen.push(v);
        if first_clique(g, &next, need - 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

fn is_bipartite(g: &[VertexSet]) -> bool {
    let n = g.len();
    let mut side = vec![u8::MAX; n];
    for s in 0..n {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        let mut queue = vec![s];
        while let Some(x) = queue.pop() {
            for y in g[x].iter() {
                if side[y] == u8::MAX {
                    side[y] = 1 - side[x];
                    queue.push(y);
                } else if side[y] == side[x] {
                    return false;
                }
            }
        }
    }
    true
}

fn first_odd_cycle(g: &[VertexSet], l: usize) -> Option<Vec<usize>> {
    if is_bipartite(g) {
        return None;
    }
    let n = g.len();
    for s in 0..n {
        // distances to s inside the vertices >= s
        let mut dist = vec![usize::MAX; n];
        dist[s] = 0;
        let mut frontier = vec![s];
        let mut reached = 1;
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &x in &frontier {
                for y in g[x].iter().filter(|&y| y > s) {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        reached += 1;
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        if reached < l {
            continue;
        }
        let mut path = vec![s];
        let mut used = VertexSet::singleton(s);
        if extend_cycle(g, l, &dist, &mut path, &mut used) {
            return Some(path);
        }
    }
    None
}

fn extend_cycle(
    g: &[VertexSet],
    l: usize,
    dist: &[usize],
    path: &mut Vec<usize>,
    used: &mut VertexSet,
) -> bool {
    let s = path[0];
    let x = *path.last().unwrap();
    if path.len() == l {
        return g[x].contains(s) && path[1] < x;
    }
    // steps left after moving to the next vertex, including the closing edge
    let left = l - path.len();
    for y in g[x].iter() {
        if y <= s || used.contains(y) || dist[y] > left {
            continue;
        }
        path.push(y);
        used.insert(y);
        if extend_cycle(g, l, dist, path, used) {
            return true;
        }
        used.remove(y);
        path.pop();
    }
    false
}

/// `ram_{r,k}(K_t) = t` exactly when `r > (r-k)·C(t,2)`.
pub fn trivial_ramsey_predicate(r: usize, k: usize, t: usize) -> bool {
    r as u128 > (r.saturating_sub(k) as u128) * binomial(t as u64, 2) as u128
}

/// A colouring of K_t without monochromatic K_t, when one exists because
/// the edges can miss pairwise disjoint colour blocks.
pub fn trivial_witness(r: usize, k: usize, t: usize) -> Option<SetColouring> {
    let miss = r - k;
    if t < 2 || k > r || trivial_ramsey_predicate(r, k, t) {
        return None;
    }
    let host = HostGraph::complete(t);
    let sets = (0..host.edge_count())
        .map(|i| {
            // edge i misses block i; blocks wrap once the palette runs out,
            // which only happens for the last edges and keeps k colours
            let lo = (i * miss).min(r - miss);
            ColourSet::full(r).difference(ColourSet::range(lo, miss))
        })
        .collect();
    SetColouring::new(host, r, Some(k), sets).ok()
}

/// `⌊1/ε⌋ + 1` where `(t-2)/(t-1) = (1-ε)·k/r`, when `ε > 0`.
pub fn turan_upper_bound(r: usize, k: usize, t: usize) -> Option<usize> {
    if t < 2 || k == 0 || r == 0 {
        return None;
    }
    let density = Ratio::new(t as i64 - 2, t as i64 - 1);
    let eps = Ratio::from_integer(1) - density * Ratio::new(r as i64, k as i64);
    if eps <= Ratio::from_integer(0) {
        return None;
    }
    Some((eps.recip().floor().to_integer() + 1) as usize)
}

/// Known r-colour Ramsey numbers.
///
/// - R_1(H) = |V(H)|.
/// - R(3,3) = 6 and R(4,4) = 18 (Greenwood and Gleason 1955).
/// - R(3,3,3) = 17 (Greenwood and Gleason 1955).
/// - R(C_l, C_l) = 2l - 1 for odd l >= 5 (Rosta 1973; Faudree and Schelp 1974).
/// - R(C_5, C_5, C_5) = 17 (Yang and Rowlinson 1992).
pub fn classical_ramsey(colours: usize, target: TargetGraph) -> Option<usize> {
    use TargetGraph::*;
    match (colours, target) {
        (1, t) => Some(t.vertex_count()),
        (2, Clique(3) | OddCycle(3)) => Some(6),
        (2, Clique(4)) => Some(18),
        (3, Clique(3) | OddCycle(3)) => Some(17),
        (2, OddCycle(l)) => Some(2 * l - 1),
        (3, OddCycle(5)) => Some(17),
        _ => None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: Option<usize>,
    pub hi: Option<usize>,
}

/// `[R_{⌊r/k⌋}(H), R_{r-k+1}(H)]`, with unknown classical values left open.
pub fn general_bounds(r: usize, k: usize, target: TargetGraph) -> Interval {
    if k == 0 || k > r {
        return Interval { lo: None, hi: None };
    }
    Interval {
        lo: classical_ramsey(r / k, target),
        hi: classical_ramsey(r - k + 1, target),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleBound {
    /// `ram_{r,k}(C_l)` is larger than this.
    pub bound: u64,
    pub source: String,
    /// A colouring of K_bound with no monochromatic C_l, when small enough
    /// to build.
    pub witness: Option<SetColouring>,
}

/// `max(2^{⌊(r-1)/(k-1)⌋}, 2^{⌊r/k⌋-1}(l-1))`, the first term only for k >= 2.
pub fn cycle_lower_bound(r: usize, k: usize, l: usize) -> Result<CycleBound, RamseyError> {
    let target = TargetGraph::odd_cycle(l)?;
    if k == 0 || k > r || r > 64 {
        return Err(RamseyError::Parameters(format!("need 1 <= k <= r <= 64, got r={r}, k={k}")));
    }
    let code_term = (k >= 2).then(|| 1u64.checked_shl(((r - 1) / (k - 1)) as u32).unwrap_or(u64::MAX));
    let doubling_term = 1u64
        .checked_shl((r / k - 1) as u32)
        .map_or(u64::MAX, |p| p.saturating_mul(l as u64 - 1));
    let use_code = code_term.is_some_and(|c| c >= doubling_term);
    let bound = if use_code { code_term.unwrap() } else { doubling_term };
    let witness = if bound as usize > MAX_WITNESS_VERTICES {
        None
    } else if use_code {
        let code = distance_code(r, k).map_err(|e| RamseyError::Internal(e.to_string()))?;
        Some(code_colouring(&code, k).map_err(|e| RamseyError::Internal(e.to_string()))?)
    } else {
        Some(doubling_cycle_colouring(r, k, l).map_err(|e| RamseyError::Internal(e.to_string()))?)
    };
    if let Some(w) = &witness {
        if w.vertex_count() as u64 != bound {
            return Err(RamseyError::Internal(format!(
                "witness has {} vertices, bound is {bound}",
                w.vertex_count()
            )));
        }
        if let Some(m) = has_mono_subgraph(w, target) {
            return Err(RamseyError::Internal(format!("witness contains {target} in colour {}", m.colour)));
        }
    }
    Ok(CycleBound {
        bound,
        source: if use_code { "distance code" } else { "doubling" }.into(),
        witness,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOptions {
    pub budget: u64,
    pub symmetry: bool,
    /// Colour degree bounds for triangle targets.
    pub degree_prune: bool,
    /// Worker threads; 0 or 1 searches on the calling thread.
    pub threads: usize,
    /// Wall-clock cap, reported like an exhausted budget.
    #[serde(default)]
    pub time_limit_ms: Option<u64>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            budget: DEFAULT_SEARCH_BUDGET,
            symmetry: true,
            degree_prune: true,
            threads: 1,
            time_limit_ms: None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub canonical_rejections: u64,
    pub forward_prunes: u64,
    pub degree_prunes: u64,
    pub tasks: usize,
    /// Largest colour degree allowed per vertex, when degree pruning applies.
    pub degree_bound: Option<usize>,
}

impl SearchStats {
    fn add(&mut self, o: &SearchStats) {
        self.canonical_rejections += o.canonical_rejections;
        self.forward_prunes += o.forward_prunes;
        self.degree_prunes += o.degree_prunes;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SearchOutcome {
    Avoidable { witness: SetColouring },
    Unavoidable,
    BudgetExceeded,
}

impl SearchOutcome {
    pub fn label(&self) -> &'static str {
        match self {
            Self::Avoidable { .. } => "avoidable",
            Self::Unavoidable => "unavoidable",
            Self::BudgetExceeded => "budget_exceeded",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub r: usize,
    pub k: usize,
    pub target: TargetGraph,
    pub n: usize,
    pub outcome: SearchOutcome,
    pub nodes: u64,
    pub wall_ms: u64,
    pub stats: SearchStats,
}

/// Upper bound on `ram_{r,k}(K3)` without searching.
fn triangle_upper(r: usize, k: usize) -> Option<usize> {
    if trivial_ramsey_predicate(r, k, 3) {
        return Some(3);
    }
    let a = turan_upper_bound(r, k, 3);
    let b = general_bounds(r, k, TargetGraph::Clique(3)).hi;
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, y) => x.or(y),
    }
}

/// Largest possible colour degree in a triangle-free (r,k)-colouring.
fn triangle_degree_bound(r: usize, k: usize) -> Option<usize> {
    if k > r - 1 {
        // the neighbourhood cannot contain an edge
        return Some(1);
    }
    triangle_upper(r - 1, k).map(|h| h - 1)
}

enum Flow {
    Found,
    Exhausted,
    Budget,
    Abort,
}

struct Shared {
    nodes: AtomicU64,
    budget: u64,
    best_task: AtomicUsize,
    deadline: Option<Instant>,
}

struct Problem {
    r: usize,
    k: usize,
    n: usize,
    target: TargetGraph,
    sets: Vec<u64>,
    edges: Vec<(usize, usize)>,
    edge_id: Vec<usize>,
    /// Colour permutations acting on set indices.
    perms: Vec<Vec<u16>>,
    symmetry: bool,
    triangle: bool,
    deg_max: usize,
    deg_min: usize,
    full: u64,
}

struct State {
    /// `adj[c * n + v]`: colour-c neighbours of v among decided edges.
    adj: Vec<u32>,
    deg: Vec<u8>,
    assign: Vec<u16>,
    pending: u64,
    stats: SearchStats,
    task: usize,
    collect: Option<(usize, Vec<Vec<u16>>)>,
}

const FLUSH: u64 = 1024;

impl Problem {
    fn id(&self, x: usize, y: usize) -> usize {
        self.edge_id[x * self.n + y]
    }

    fn new_state(&self) -> State {
        State {
            adj: vec![0; self.r * self.n],
            deg: vec![0; self.r * self.n],
            assign: vec![0; self.edges.len()],
            pending: 0,
            stats: SearchStats::default(),
            task: 0,
            collect: None,
        }
    }

    fn apply(&self, st: &mut State, pos: usize, idx: usize) {
        let (u, v) = self.edges[pos];
        st.assign[pos] = idx as u16;
        let mut s = self.sets[idx];
        while s != 0 {
            let c = s.trailing_zeros() as usize;
            s &= s - 1;
            st.adj[c * self.n + u] |= 1 << v;
            st.adj[c * self.n + v] |= 1 << u;
            st.deg[c * self.n + u] += 1;
            st.deg[c * self.n + v] += 1;
        }
    }

    fn undo(&self, st: &mut State, pos: usize) {
        let (u, v) = self.edges[pos];
        let mut s = self.sets[st.assign[pos] as usize];
        while s != 0 {
            let c = s.trailing_zeros() as usize;
            s &= s - 1;
            st.adj[c * self.n + u] &= !(1 << v);
            st.adj[c * self.n + v] &= !(1 << u);
            st.deg[c * self.n + u] -= 1;
            st.deg[c * self.n + v] -= 1;
        }
    }

    fn saturated(&self, st: &State, x: usize) -> u64 {
        let mut m = 0;
        for c in 0..self.r {
            if st.deg[c * self.n + x] as usize >= self.deg_max {
                m |= 1 << c;
            }
        }
        m
    }

    fn triangle_forbidden(&self, st: &State, x: usize, y: usize) -> u64 {
        let mut m = 0;
        for c in 0..self.r {
            if st.adj[c * self.n + x] & st.adj[c * self.n + y] != 0 {
                m |= 1 << c;
            }
        }
        m
    }

    /// Colours that would complete a monochromatic target on edge (u, v).
    fn forbidden(&self, st: &State, u: usize, v: usize) -> u64 {
        if self.triangle {
            return self.triangle_forbidden(st, u, v);
        }
        let mut m = 0;
        for c in 0..self.r {
            let g = &st.adj[c * self.n..(c + 1) * self.n];
            let hit = match self.target {
                TargetGraph::Clique(t) => clique_in(g, g[u] & g[v], t - 2),
                TargetGraph::OddCycle(l) => path_of_length(g, u, v, l - 1, 1 << u),
            };
            if hit {
                m |= 1 << c;
            }
        }
        m
    }

    /// Every open edge at x keeps k usable colours, and the colour degrees
    /// at x can still be completed within the bounds.
    fn vertex_feasible(&self, st: &mut State, x: usize, pos: usize) -> bool {
        let sat_x = self.saturated(st, x);
        let mut avail = [0usize; 64];
        let mut open = 0;
        for y in 0..self.n {
            if y == x {
                continue;
            }
            let (a, b) = if x < y { (x, y) } else { (y, x) };
            if self.id(a, b) <= pos {
                continue;
            }
            open += 1;
            let allowed = self.full
                & !self.triangle_forbidden(st, x, y)
                & !sat_x
                & !self.saturated(st, y);
            if (allowed.count_ones() as usize) < self.k {
                st.stats.forward_prunes += 1;
                return false;
            }
            let mut s = allowed;
            while s != 0 {
                avail[s.trailing_zeros() as usize] += 1;
                s &= s - 1;
            }
        }
        if self.deg_max == usize::MAX || open == 0 {
            return true;
        }
        let mut room = 0;
        for (c, &a) in avail.iter().enumerate().take(self.r) {
            let d = st.deg[c * self.n + x] as usize;
            if d + a < self.deg_min {
                st.stats.degree_prunes += 1;
                return false;
            }
            room += a.min(self.deg_max - d);
        }
        if room < self.k * open {
            st.stats.degree_prunes += 1;
            return false;
        }
        true
    }

    fn consistent(&self, st: &mut State, pos: usize) -> bool {
        if !self.triangle {
            return true;
        }
        let (u, v) = self.edges[pos];
        let mut touched: u32 = (1 << u) | (1 << v);
        let mut s = self.sets[st.assign[pos] as usize];
        while s != 0 {
            let c = s.trailing_zeros() as usize;
            s &= s - 1;
            touched |= st.adj[c * self.n + u] | st.adj[c * self.n + v];
        }
        while touched != 0 {
            let x = touched.trailing_zeros() as usize;
            touched &= touched - 1;
            if !self.vertex_feasible(st, x, pos) {
                return false;
            }
        }
        true
    }

    /// Vertex 0's list so far, with `idx` at `pos`, is no larger than any
    /// colour relabelling of it after sorting.
    fn prefix_canonical(&self, st: &State, pos: usize, idx: usize) -> bool {
        let mut p = [0u16; MAX_SEARCH_VERTICES];
        p[..pos].copy_from_slice(&st.assign[..pos]);
        p[pos] = idx as u16;
        let p = &p[..=pos];
        let mut img = [0u16; MAX_SEARCH_VERTICES];
        for perm in &self.perms {
            for (i, &x) in p.iter().enumerate() {
                img[i] = perm[x as usize];
            }
            let img = &mut img[..=pos];
            img.sort_unstable();
            if *img < *p {
                return false;
            }
        }
        true
    }

    fn tick(&self, st: &mut State, shared: &Shared) -> Option<Flow> {
        st.pending += 1;
        if st.pending >= FLUSH {
            let total = shared.nodes.fetch_add(st.pending, Ordering::Relaxed) + st.pending;
            st.pending = 0;
            if total > shared.budget || shared.deadline.is_some_and(|d| Instant::now() >= d) {
                return Some(Flow::Budget);
            }
            if st.task > shared.best_task.load(Ordering::Relaxed) {
                return Some(Flow::Abort);
            }
        } else if shared.nodes.load(Ordering::Relaxed) + st.pending > shared.budget {
            return Some(Flow::Budget);
        }
        None
    }

    fn dfs(&self, st: &mut State, pos: usize, shared: &Shared) -> Flow {
        if pos == self.edges.len() {
            return Flow::Found;
        }
        if let Some((depth, tasks)) = st.collect.as_mut() {
            if pos == *depth {
                tasks.push(st.assign[..pos].to_vec());
                return Flow::Exhausted;
            }
        }
        let (u, v) = self.edges[pos];
        let blocked = self.forbidden(st, u, v) | self.saturated(st, u) | self.saturated(st, v);
        let vertex0 = self.symmetry && u == 0;
        let start = if vertex0 && pos > 0 { st.assign[pos - 1] as usize } else { 0 };
        let end = if vertex0 && pos == 0 { 1 } else { self.sets.len() };
        for idx in start..end {
            if self.sets[idx] & blocked != 0 {
                continue;
            }
            if let Some(flow) = self.tick(st, shared) {
                return flow;
            }
            if vertex0 && !self.perms.is_empty() && !self.prefix_canonical(st, pos, idx) {
                st.stats.canonical_rejections += 1;
                continue;
            }
            self.apply(st, pos, idx);
            if self.consistent(st, pos) {
                match self.dfs(st, pos + 1, shared) {
                    Flow::Exhausted => {}
                    Flow::Found => return Flow::Found,
                    other => {
                        self.undo(st, pos);
                        return other;
                    }
                }
            }
            self.undo(st, pos);
        }
        Flow::Exhausted
    }

    fn witness(&self, assign: &[u16]) -> SetColouring {
        let sets = assign.iter().map(|&i| ColourSet(self.sets[i as usize])).collect();
        SetColouring::from_raw(HostGraph::complete(self.n), self.r, Some(self.k), sets)
    }
}

fn clique_in(g: &[u32], cand: u32, need: usize) -> bool {
    if need == 0 {
        return true;
    }
    if (cand.count_ones() as usize) < need {
        return false;
    }
    let mut rest = cand;
    while rest != 0 {
        let x = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if clique_in(g, rest & g[x], need - 1) {
            return true;
        }
    }
    false
}

/// A simple path with exactly `len` edges from x to `to`.
fn path_of_length(g: &[u32], x: usize, to: usize, len: usize, used: u32) -> bool {
    if len == 1 {
        return g[x] >> to & 1 == 1;
    }
    let mut next = g[x] & !used & !(1 << to);
    while next != 0 {
        let y = next.trailing_zeros() as usize;
        next &= next - 1;
        if path_of_length(g, y, to, len - 1, used | 1 << y) {
            return true;
        }
    }
    false
}

fn permutations(r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..r).collect();
    heap_permute(r, &mut cur, &mut out);
    out
}

fn heap_permute(m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if m <= 1 {
        out.push(cur.clone());
        return;
    }
    for i in 0..m {
        heap_permute(m - 1, cur, out);
        let j = if m.is_multiple_of(2) { i } else { 0 };
        cur.swap(j, m - 1);
    }
}

fn build_problem(
    r: usize,
    k: usize,
    target: TargetGraph,
    n: usize,
    opts: &SearchOptions,
    stats: &mut SearchStats,
) -> Result<Problem, RamseyError> {
    if k == 0 || k > r || r > 64 {
        return Err(RamseyError::Parameters(format!("need 1 <= k <= r <= 64, got r={r}, k={k}")));
    }
    if !(2..=MAX_SEARCH_VERTICES).contains(&n) {
        return Err(RamseyError::Parameters(format!("n must be in 2..={MAX_SEARCH_VERTICES}, got {n}")));
    }
    if binomial(r as u64, k as u64) > u16::MAX as u64 {
        return Err(RamseyError::Parameters(format!("C({r},{k}) colour sets is too many")));
    }
    match target {
        TargetGraph::Clique(t) if t < 2 => return Err(RamseyError::Target(target.to_string())),
        TargetGraph::OddCycle(l) if l < 3 || l % 2 == 0 => {
            return Err(RamseyError::Target(target.to_string()))
        }
        _ => {}
    }
    let sets: Vec<u64> = k_subsets(ColourSet::full(r), k).into_iter().map(|s| s.0).collect();
    let host = HostGraph::complete(n);
    let edges: Vec<(usize, usize)> = host.edges().collect();
    let mut edge_id = vec![usize::MAX; n * n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        edge_id[u * n + v] = i;
    }
    let mut perms = Vec::new();
    if opts.symmetry && r <= MAX_CANONICAL_R {
        let index: HashMap<u64, u16> = sets.iter().enumerate().map(|(i, &s)| (s, i as u16)).collect();
        for p in permutations(r) {
            if p.iter().enumerate().all(|(i, &x)| i == x) {
                continue;
            }
            let table = sets
                .iter()
                .map(|&s| {
                    let img = ColourSet(s).iter().fold(0u64, |m, c| m | 1 << p[c]);
                    index[&img]
                })
                .collect();
            perms.push(table);
        }
    }
    let triangle = target.is_triangle();
    let deg_bound = if triangle && opts.degree_prune {
        triangle_degree_bound(r, k)
    } else {
        None
    };
    stats.degree_bound = deg_bound;
    let deg_max = deg_bound.unwrap_or(usize::MAX);
    let deg_min = match deg_bound {
        Some(d) => (k * (n - 1)).saturating_sub((r - 1) * d),
        None => 0,
    };
    Ok(Problem {
        r,
        k,
        n,
        target,
        sets,
        edges,
        edge_id,
        perms,
        symmetry: opts.symmetry,
        triangle,
        deg_max,
        deg_min,
        full: ColourSet::full(r).0,
    })
}

/// Decides whether some (r,k)-colouring of K_n has no monochromatic
/// `target`.
///
/// With several threads the tree is split into prefixes that are searched
/// in parallel; the reported witness is the one from the earliest prefix in
/// search order, which is the witness a single-threaded run finds, unless an
/// earlier prefix ran out of budget.
pub fn ramsey_search(
    r: usize,
    k: usize,
    target: TargetGraph,
    n: usize,
    opts: &SearchOptions,
) -> Result<SearchReport, RamseyError> {
    let start = Instant::now();
    let mut stats = SearchStats::default();
    let p = build_problem(r, k, target, n, opts, &mut stats)?;
    let shared = Shared {
        nodes: AtomicU64::new(0),
        budget: opts.budget,
        best_task: AtomicUsize::new(usize::MAX),
        deadline: opts.time_limit_ms.map(|ms| start + std::time::Duration::from_millis(ms)),
    };
    let found: Option<Vec<u16>>;
    let mut budget_hit = false;
    if opts.threads <= 1 {
        let mut st = p.new_state();
        let flow = p.dfs(&mut st, 0, &shared);
        shared.nodes.fetch_add(st.pending, Ordering::Relaxed);
        stats.add(&st.stats);
        stats.tasks = 1;
        found = matches!(flow, Flow::Found).then(|| st.assign.clone());
        budget_hit = matches!(flow, Flow::Budget);
    } else {
        let (depth, tasks) = split(&p, &shared, opts.threads, &mut stats, &mut budget_hit);
        stats.tasks = tasks.len();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| RamseyError::Internal(e.to_string()))?;
        let results: Vec<(Flow, Option<Vec<u16>>, SearchStats)> = if budget_hit {
            Vec::new()
        } else {
            pool.install(|| {
                tasks
                    .par_iter()
                    .enumerate()
                    .map(|(i, prefix)| {
                        let mut st = p.new_state();
                        st.task = i;
                        for (pos, &idx) in prefix.iter().enumerate() {
                            p.apply(&mut st, pos, idx as usize);
                        }
                        let flow = p.dfs(&mut st, depth, &shared);
                        shared.nodes.fetch_add(st.pending, Ordering::Relaxed);
                        let w = matches!(flow, Flow::Found).then(|| {
                            shared.best_task.fetch_min(i, Ordering::Relaxed);
                            st.assign.clone()
                        });
                        (flow, w, st.stats)
                    })
                    .collect()
            })
        };
        let mut first = None;
        for (flow, w, s) in results {
            stats.add(&s);
            budget_hit |= matches!(flow, Flow::Budget);
            if first.is_none() {
                first = w;
            }
        }
        found = first;
    }
    let outcome = match found {
        Some(assign) => {
            let witness = p.witness(&assign);
            if !witness.validate().is_empty() {
                return Err(RamseyError::Internal("search produced an invalid colouring".into()));
            }
            if let Some(m) = has_mono_subgraph(&witness, target) {
                return Err(RamseyError::Internal(format!(
                    "search witness contains {target} in colour {} on {:?}",
                    m.colour, m.vertices
                )));
            }
            SearchOutcome::Avoidable { witness }
        }
        None if budget_hit => SearchOutcome::BudgetExceeded,
        None => SearchOutcome::Unavoidable,
    };
    Ok(SearchReport {
        r,
        k,
        target,
        n,
        outcome,
        nodes: shared.nodes.load(Ordering::Relaxed),
        wall_ms: start.elapsed().as_millis() as u64,
        stats,
    })
}

/// Prefixes at the shallowest depth giving enough tasks per thread.
fn split(
    p: &Problem,
    shared: &Shared,
    threads: usize,
    stats: &mut SearchStats,
    budget_hit: &mut bool,
) -> (usize, Vec<Vec<u16>>) {
    let want = 32 * threads;
    let mut depth = 1;
    loop {
        let mut st = p.new_state();
        st.collect = Some((depth, Vec::new()));
        let flow = p.dfs(&mut st, 0, shared);
        shared.nodes.fetch_add(st.pending, Ordering::Relaxed);
        let tasks = st.collect.take().unwrap().1;
        if matches!(flow, Flow::Budget) {
            *budget_hit = true;
            return (depth, tasks);
        }
        if tasks.len() >= want || depth + 1 >= p.edges.len() || tasks.is_empty() {
            stats.add(&st.stats);
            return (depth, tasks);
        }
        depth += 1;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStep {
    pub n: usize,
    pub status: String,
    pub nodes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamseyNumber {
    pub r: usize,
    pub k: usize,
    pub target: TargetGraph,
    /// `ram >= lo`.
    pub lo: usize,
    /// `ram <= hi`, when known.
    pub hi: Option<usize>,
    pub value: Option<usize>,
    /// Where each endpoint came from.
    pub lo_source: String,
    pub hi_source: Option<String>,
    /// A colouring of K_{lo-1} without a monochromatic target.
    pub witness: Option<SetColouring>,
    pub searches: Vec<SearchStep>,
}

impl RamseyNumber {
    fn raise(&mut self, n_avoiding: usize, source: &str, witness: Option<SetColouring>) {
        if n_avoiding + 1 > self.lo {
            self.lo = n_avoiding + 1;
            self.lo_source = source.into();
            self.witness = witness;
        }
    }

    fn lower(&mut self, hi: usize, source: &str) {
        if self.hi.is_none_or(|h| hi < h) {
            self.hi = Some(hi);
            self.hi_source = Some(source.into());
        }
    }
}

/// Brackets `ram_{r,k}(target)` with constructions and the Turán bound, then
/// searches `n = lo, lo+1, ...` up to `n_max` until the interval closes.
pub fn ramsey_number(
    r: usize,
    k: usize,
    target: TargetGraph,
    n_max: usize,
    opts: &SearchOptions,
) -> Result<RamseyNumber, RamseyError> {
    if k == 0 || k > r || r > 64 {
        return Err(RamseyError::Parameters(format!("need 1 <= k <= r <= 64, got r={r}, k={k}")));
    }
    let size = target.vertex_count();
    let mut out = RamseyNumber {
        r,
        k,
        target,
        lo: size,
        hi: None,
        value: None,
        lo_source: "smaller hosts cannot contain the target".into(),
        hi_source: None,
        witness: None,
        searches: Vec::new(),
    };
    let verified = |w: SetColouring| has_mono_subgraph(&w, target).is_none().then_some(w);
    match target {
        TargetGraph::Clique(t) => {
            if trivial_ramsey_predicate(r, k, t) {
                out.lower(t, "some colour lies on every edge of K_t");
            } else if let Some(w) = trivial_witness(r, k, t).and_then(verified) {
                out.raise(t, "edges missing disjoint colour blocks", Some(w));
            }
            if let Some(h) = turan_upper_bound(r, k, t) {
                out.lower(h, "Turán density bound");
            }
            if k + 1 == r && k + 1 == t {
                if let Some(w) = turan_affine_colouring(k).ok().and_then(verified) {
                    let n = w.vertex_count();
                    out.raise(n, "affine plane colouring", Some(w));
                }
            }
            if t == 3 {
                add_cycle_constructions(&mut out, r, k, 3, &verified);
            }
        }
        TargetGraph::OddCycle(l) => add_cycle_constructions(&mut out, r, k, l, &verified),
    }
    let mut n = out.lo;
    while out.hi.is_none_or(|h| n < h) && n <= n_max && n <= MAX_SEARCH_VERTICES {
        let rep = ramsey_search(r, k, target, n, opts)?;
        out.searches.push(SearchStep {
            n,
            status: rep.outcome.label().into(),
            nodes: rep.nodes,
        });
        match rep.outcome {
            SearchOutcome::Avoidable { witness } => out.raise(n, "search", Some(witness)),
            SearchOutcome::Unavoidable => {
                out.lower(n, "search");
                break;
            }
            SearchOutcome::BudgetExceeded => break,
        }
        n += 1;
    }
    if out.hi == Some(out.lo) {
        out.value = Some(out.lo);
    }
    Ok(out)
}

fn add_cycle_constructions(
    out: &mut RamseyNumber,
    r: usize,
    k: usize,
    l: usize,
    verified: &dyn Fn(SetColouring) -> Option<SetColouring>,
) {
    if k >= 2 {
        if let Ok(code) = distance_code(r, k) {
            if code.len() <= MAX_WITNESS_VERTICES {
                if let Some(w) = code_colouring(&code, k).ok().and_then(verified) {
                    out.raise(w.vertex_count(), "distance code colouring", Some(w));
                }
            }
        }
    }
    let doubled = (l - 1).checked_shl((r / k - 1) as u32).unwrap_or(usize::MAX);
    if doubled <= MAX_WITNESS_VERTICES {
        if let Some(w) = doubling_cycle_colouring(r, k, l).ok().and_then(verified) {
            out.raise(w.vertex_count(), "doubling colouring", Some(w));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(n: usize, r: usize) -> SetColouring {
        SetColouring::from_fn(HostGraph::complete(n), r, Some(1), |_, _| ColourSet::singleton(0)).unwrap()
    }

    #[test]
    fn target_parsing() {
        assert_eq!("K3".parse::<TargetGraph>().unwrap(), TargetGraph::Clique(3));
        assert_eq!("c5".parse::<TargetGraph>().unwrap(), TargetGraph::OddCycle(5));
        assert!("C4".parse::<TargetGraph>().is_err());
        assert!("K1".parse::<TargetGraph>().is_err());
        assert!("P3".parse::<TargetGraph>().is_err());
        assert_eq!(TargetGraph::OddCycle(7).to_string(), "C7");
        let json = serde_json::to_string(&TargetGraph::Clique(4)).unwrap();
        assert_eq!(json, "\"K4\"");
    }

    #[test]
    fn monochromatic_witnesses() {
        let c = mono(5, 2);
        let w = has_mono_subgraph(&c, TargetGraph::Clique(3)).unwrap();
        assert_eq!(w, MonoWitness { colour: 0, vertices: vec![0, 1, 2] });
        let w = has_mono_subgraph(&c, TargetGraph::OddCycle(5)).unwrap();
        assert_eq!(w.vertices, vec![0, 1, 2, 3, 4]);
        assert!(has_mono_subgraph(&mono(4, 1), TargetGraph::OddCycle(5)).is_none());
    }

    #[test]
    fn odd_cycle_needs_exact_length() {
        // C5 in colour 0, the rest colour 1 (which contains a triangle but
        // no C5 on its own: the chords form another C5)
        let ring = |u: usize, v: usize| (v - u) % 5 == 1 || (v - u) % 5 == 4;
        let c = SetColouring::from_fn(HostGraph::complete(5), 2, Some(1), |u, v| {
            ColourSet::singleton(usize::from(!ring(u, v)))
        })
        .unwrap();
        assert!(has_mono_subgraph(&c, TargetGraph::Clique(3)).is_none());
        assert_eq!(
            has_mono_subgraph(&c, TargetGraph::OddCycle(5)),
            Some(MonoWitness { colour: 0, vertices: vec![0, 1, 2, 3, 4] })
        );
    }

    #[test]
    fn closed_forms() {
        assert!(trivial_ramsey_predicate(4, 3, 3));
        assert!(!trivial_ramsey_predicate(3, 2, 3));
        assert!(trivial_ramsey_predicate(5, 5, 9));
        assert_eq!(turan_upper_bound(3, 2, 3), Some(5));
        assert_eq!(turan_upper_bound(4, 3, 4), Some(10));
        assert_eq!(turan_upper_bound(4, 2, 3), None);
        assert_eq!(general_bounds(3, 2, TargetGraph::Clique(3)), Interval { lo: Some(3), hi: Some(6) });
        assert_eq!(general_bounds(4, 2, TargetGraph::Clique(3)), Interval { lo: Some(6), hi: Some(17) });
        assert_eq!(general_bounds(5, 5, TargetGraph::Clique(4)), Interval { lo: Some(4), hi: Some(4) });
        assert_eq!(general_bounds(6, 1, TargetGraph::Clique(3)).hi, None);
    }

    #[test]
    fn trivial_witness_avoids_clique() {
        let w = trivial_witness(3, 2, 3).unwrap();
        assert!(has_mono_subgraph(&w, TargetGraph::Clique(3)).is_none());
        assert!(trivial_witness(4, 3, 3).is_none());
    }

    #[test]
    fn cycle_bounds() {
        let b = cycle_lower_bound(4, 2, 3).unwrap();
        assert_eq!(b.bound, 8);
        assert_eq!(b.witness.unwrap().vertex_count(), 8);
        let b = cycle_lower_bound(6, 2, 5).unwrap();
        assert_eq!(b.bound, 32);
        assert!(b.witness.is_some());
        assert_eq!(cycle_lower_bound(2, 2, 3).unwrap().bound, 2);
        assert_eq!(cycle_lower_bound(4, 1, 3).unwrap().bound, 16);
    }

    #[test]
    fn small_searches() {
        let o = SearchOptions::default();
        let k3 = TargetGraph::Clique(3);
        let rep = ramsey_search(3, 2, k3, 4, &o).unwrap();
        assert!(matches!(rep.outcome, SearchOutcome::Avoidable { .. }));
        let rep = ramsey_search(3, 2, k3, 5, &o).unwrap();
        assert_eq!(rep.outcome, SearchOutcome::Unavoidable);
        let rep = ramsey_search(4, 3, k3, 3, &o).unwrap();
        assert_eq!(rep.outcome, SearchOutcome::Unavoidable);
    }

    #[test]
    fn budget_is_reported() {
        let o = SearchOptions { budget: 10, degree_prune: false, ..Default::default() };
        let rep = ramsey_search(2, 1, TargetGraph::Clique(3), 6, &o).unwrap();
        assert_eq!(rep.outcome, SearchOutcome::BudgetExceeded);
    }

    #[test]
    fn threads_agree_on_witness() {
        let k3 = TargetGraph::Clique(3);
        let one = ramsey_search(2, 1, k3, 5, &SearchOptions::default()).unwrap();
        let four = ramsey_search(2, 1, k3, 5, &SearchOptions { threads: 4, ..Default::default() }).unwrap();
        assert_eq!(one.outcome, four.outcome);
        let six = ramsey_search(2, 1, k3, 6, &SearchOptions { threads: 4, ..Default::default() }).unwrap();
        assert_eq!(six.outcome, SearchOutcome::Unavoidable);
    }

    #[test]
    fn numbers() {
        let o = SearchOptions::default();
        let k3 = TargetGraph::Clique(3);
        assert_eq!(ramsey_number(3, 2, k3, 10, &o).unwrap().value, Some(5));
        assert_eq!(ramsey_number(2, 1, k3, 10, &o).unwrap().value, Some(6));
        assert_eq!(ramsey_number(4, 3, k3, 10, &o).unwrap().value, Some(3));
        assert_eq!(ramsey_number(2, 2, TargetGraph::Clique(4), 10, &o).unwrap().value, Some(4));
    }
}
