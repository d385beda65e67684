//! r-partite r-uniform hypergraphs and their set-coloured intersection graphs.
//!
//! Hyperedges become graph vertices; two of them are joined by an edge
//! carrying the parts in which they agree. A transversal of the hypergraph
//! is then the same thing as a cover by monochromatic components of the
//! saturated colouring, one block per part.
//!
//! File form: `parts s_1 ... s_r`, then one hyperedge per line as `r`
//! vertex indices (`#` starts a comment).

use std::fmt::Write as _;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::colour::ColourSet;
use crate::components::ComponentIndex;
use crate::cover::{complete_bound, constructive_cover_complete, CoverError};
use crate::{HostGraph, SetColouring, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HypergraphError {
    #[error("need 1..=64 parts, got {0}")]
    Parts(usize),
    #[error("hyperedge {index}: {message}")]
    Edge { index: usize, message: String },
    #[error("hyperedges {first} and {second} are equal")]
    Duplicate { first: usize, second: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("hyperedges {first} and {second} share {shared} parts, need {k}")]
    NotIntersecting {
        first: usize,
        second: usize,
        shared: usize,
        k: usize,
    },
    #[error("colouring is not saturated: colour {colour} joins {u} and {v} without the edge {u}-{v} carrying it")]
    NotSaturated { colour: usize, u: usize, v: usize },
    #[error("intersection level must be in 1..={r}, got {k}")]
    Level { k: usize, r: usize },
    #[error("need a complete host")]
    NotComplete,
    #[error("search exceeded {0} nodes")]
    BudgetExceeded(u64),
    #[error(transparent)]
    Cover(#[from] CoverError),
}

/// Parts `0..r`; hyperedge `e` uses vertex `e[c]` of part `c`.
///
/// Repeated hyperedges are allowed in memory because colourings with an edge
/// carrying every colour produce them; the file parser and [`Hypergraph::new`]
/// reject them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypergraph {
    part_sizes: Vec<usize>,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    pub fn new(part_sizes: Vec<usize>, edges: Vec<Vec<usize>>) -> Result<Self, HypergraphError> {
        let h = Self::with_repeats(part_sizes, edges)?;
        let mut sorted: Vec<(&Vec<usize>, usize)> = h.edges.iter().zip(0..).collect();
        sorted.sort();
        for w in sorted.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(HypergraphError::Duplicate {
                    first: w[0].1.min(w[1].1),
                    second: w[0].1.max(w[1].1),
                });
            }
        }
        Ok(h)
    }

    /// Like [`new`](Self::new) but keeps repeated hyperedges.
    pub fn with_repeats(part_sizes: Vec<usize>, edges: Vec<Vec<usize>>) -> Result<Self, HypergraphError> {
        let r = part_sizes.len();
        if !(1..=64).contains(&r) {
            return Err(HypergraphError::Parts(r));
        }
        for (index, e) in edges.iter().enumerate() {
            if e.len() != r {
                return Err(HypergraphError::Edge {
                    index,
                    message: format!("has {} vertices, expected {r}", e.len()),
                });
            }
            if let Some(c) = (0..r).find(|&c| e[c] >= part_sizes[c]) {
                return Err(HypergraphError::Edge {
                    index,
                    message: format!("vertex {} is outside part {c} of size {}", e[c], part_sizes[c]),
                });
            }
        }
        Ok(Self { part_sizes, edges })
    }

    pub fn parts(&self) -> usize {
        self.part_sizes.len()
    }

    pub fn part_sizes(&self) -> &[usize] {
        &self.part_sizes
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    /// Parts in which two hyperedges agree.
    pub fn shared_parts(&self, i: usize, j: usize) -> ColourSet {
        let (a, b) = (&self.edges[i], &self.edges[j]);
        ColourSet::from_colours((0..self.parts()).filter(|&c| a[c] == b[c]))
    }

    /// Largest k such that every two hyperedges agree in at least k parts.
    /// A hypergraph with fewer than two hyperedges has level r.
    pub fn intersection_level(&self) -> usize {
        let mut level = self.parts();
        for i in 0..self.edges.len() {
            for j in i + 1..self.edges.len() {
                level = level.min(self.shared_parts(i, j).len());
            }
        }
        level
    }

    pub fn is_intersecting(&self) -> bool {
        self.edges.is_empty() || self.intersection_level() >= 1
    }

    fn check_level(&self, k: usize) -> Result<(), HypergraphError> {
        for i in 0..self.edges.len() {
            for j in i + 1..self.edges.len() {
                let shared = self.shared_parts(i, j).len();
                if shared < k {
                    return Err(HypergraphError::NotIntersecting {
                        first: i,
                        second: j,
                        shared,
                        k,
                    });
                }
            }
        }
        Ok(())
    }

    /// Each part's used vertices renumbered by first appearance; unused
    /// vertices dropped. Two hypergraphs are equal up to relabelling inside
    /// parts exactly when their canonical forms are equal.
    pub fn canonical(&self) -> Hypergraph {
        let r = self.parts();
        let mut maps: Vec<Vec<usize>> = self.part_sizes.iter().map(|&s| vec![usize::MAX; s]).collect();
        let mut sizes = vec![0; r];
        let edges = self
            .edges
            .iter()
            .map(|e| {
                (0..r)
                    .map(|c| {
                        if maps[c][e[c]] == usize::MAX {
                            maps[c][e[c]] = sizes[c];
                            sizes[c] += 1;
                        }
                        maps[c][e[c]]
                    })
                    .collect()
            })
            .collect();
        Hypergraph { part_sizes: sizes, edges }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::from("parts");
        for p in &self.part_sizes {
            write!(s, " {p}").unwrap();
        }
        s.push('\n');
        for e in &self.edges {
            let list: Vec<String> = e.iter().map(|x| x.to_string()).collect();
            writeln!(s, "{}", list.join(" ")).unwrap();
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<Self, HypergraphError> {
        let mut sizes: Option<Vec<usize>> = None;
        let mut edges = Vec::new();
        let bad = |line: usize, message: String| HypergraphError::Parse { line, message };
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let mut toks = content.split_whitespace().peekable();
            let numbers = |toks: &mut dyn Iterator<Item = &str>| -> Result<Vec<usize>, HypergraphError> {
                toks.map(|t| t.parse::<usize>().map_err(|_| bad(line, format!("expected a number, found `{t}`"))))
                    .collect()
            };
            if toks.peek() == Some(&"parts") {
                toks.next();
                if sizes.is_some() {
                    return Err(bad(line, "duplicate parts line".into()));
                }
                sizes = Some(numbers(&mut toks)?);
            } else {
                if sizes.is_none() {
                    return Err(bad(line, "hyperedge before parts line".into()));
                }
                edges.push(numbers(&mut toks)?);
            }
        }
        let sizes = sizes.ok_or_else(|| bad(0, "missing parts line".into()))?;
        Self::new(sizes, edges)
    }

    /// Either the text form or the JSON form (starting with `{`).
    pub fn parse_any(text: &str) -> Result<Self, HypergraphError> {
        if text.trim_start().starts_with('{') {
            let h: Hypergraph = serde_json::from_str(text).map_err(|e| HypergraphError::Parse {
                line: e.line(),
                message: e.to_string(),
            })?;
            Self::new(h.part_sizes, h.edges)
        } else {
            Self::parse_text(text)
        }
    }
}

/// The intersection graph as an edge list: `(i, j, parts shared)` for every
/// pair of hyperedges that meet.
pub fn intersection_graph(h: &Hypergraph) -> Vec<(usize, usize, ColourSet)> {
    let m = h.edges().len();
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let s = h.shared_parts(i, j);
            if !s.is_empty() {
                out.push((i, j, s));
            }
        }
    }
    out
}

/// The intersection graph of an intersecting hypergraph as a generalized
/// colouring of K_{|E|}.
pub fn hypergraph_to_colouring(h: &Hypergraph) -> Result<SetColouring, HypergraphError> {
    h.check_level(1)?;
    let m = h.edges().len();
    if m == 0 {
        return Err(HypergraphError::Edge {
            index: 0,
            message: "hypergraph has no edges".into(),
        });
    }
    SetColouring::from_fn(HostGraph::complete(m), h.parts(), None, |i, j| h.shared_parts(i, j))
        .map_err(|e| HypergraphError::Edge { index: 0, message: e.to_string() })
}

/// Adds colour c to every edge inside a colour-c component.
pub fn saturate(c: &SetColouring) -> Result<SetColouring, HypergraphError> {
    if !c.host().is_complete() {
        return Err(HypergraphError::NotComplete);
    }
    let index = ComponentIndex::build(c);
    let sets = c
        .edges()
        .map(|(u, v, s)| {
            let mut s = s;
            for col in 0..c.r() {
                if index.same_component(col, u, v) {
                    s.insert(col);
                }
            }
            s
        })
        .collect();
    Ok(SetColouring::from_raw(c.host(), c.r(), None, sets))
}

fn unsaturated(c: &SetColouring, index: &ComponentIndex) -> Option<(usize, usize, usize)> {
    for (u, v, s) in c.edges() {
        for col in 0..c.r() {
            if !s.contains(col) && index.same_component(col, u, v) {
                return Some((col, u, v));
            }
        }
    }
    None
}

/// Part c holds one block per colour-c component (singletons included),
/// numbered by smallest vertex; graph vertex v becomes the hyperedge of
/// its blocks.
pub fn colouring_to_hypergraph(c: &SetColouring) -> Result<Hypergraph, HypergraphError> {
    if !c.host().is_complete() {
        return Err(HypergraphError::NotComplete);
    }
    let index = ComponentIndex::build(c);
    if let Some((colour, u, v)) = unsaturated(c, &index) {
        return Err(HypergraphError::NotSaturated { colour, u, v });
    }
    let r = c.r();
    let sizes = (0..r).map(|col| index.components(col).len()).collect();
    let edges = (0..c.vertex_count())
        .map(|v| (0..r).map(|col| index.label(col, v)).collect())
        .collect();
    Hypergraph::with_repeats(sizes, edges)
}

/// A vertex of the hypergraph: `(part, index)`.
pub type HyperVertex = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transversal {
    pub size: usize,
    pub vertices: Vec<HyperVertex>,
    pub nodes: u64,
}

/// Whether `t` meets every hyperedge.
pub fn is_transversal(h: &Hypergraph, t: &[HyperVertex]) -> bool {
    h.edges().iter().all(|e| t.iter().any(|&(c, x)| e.get(c) == Some(&x)))
}

struct Incidence {
    vertices: Vec<HyperVertex>,
    /// Hyperedges through each vertex.
    hits: Vec<VertexSet>,
}

fn incidence(h: &Hypergraph) -> Incidence {
    let mut vertices = Vec::new();
    let mut hits = Vec::new();
    for c in 0..h.parts() {
        for x in 0..h.part_sizes()[c] {
            let set = VertexSet::from_iter_vertices(
                h.edges().iter().enumerate().filter(|(_, e)| e[c] == x).map(|(i, _)| i),
            );
            if !set.is_empty() {
                vertices.push((c, x));
                hits.push(set);
            }
        }
    }
    Incidence { vertices, hits }
}

/// Smallest transversal, by branching on the vertices of an uncovered
/// hyperedge; disjoint uncovered hyperedges give the lower bound.
pub fn transversal_exact(h: &Hypergraph, budget: u64) -> Result<Transversal, HypergraphError> {
    let inc = incidence(h);
    let m = h.edges().len();
    // vertices of each hyperedge, as indices into inc
    let mut through: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (vi, set) in inc.hits.iter().enumerate() {
        for e in set.iter() {
            through[e].push(vi);
        }
    }
    struct Ctx<'a> {
        inc: &'a Incidence,
        through: &'a [Vec<usize>],
        best: Vec<usize>,
        nodes: u64,
        budget: u64,
    }
    fn packing(ctx: &Ctx, uncovered: &VertexSet) -> usize {
        let mut used = VertexSet::new();
        let mut count = 0;
        for e in uncovered.iter() {
            if ctx.through[e].iter().all(|&v| !used.contains(v)) {
                count += 1;
                for &v in &ctx.through[e] {
                    used.insert(v);
                }
            }
        }
        count
    }
    fn go(ctx: &mut Ctx, uncovered: VertexSet, chosen: &mut Vec<usize>) -> Result<(), HypergraphError> {
        ctx.nodes += 1;
        if ctx.nodes > ctx.budget {
            return Err(HypergraphError::BudgetExceeded(ctx.budget));
        }
        let Some(_) = uncovered.first() else {
            if chosen.len() < ctx.best.len() {
                ctx.best = chosen.clone();
            }
            return Ok(());
        };
        if chosen.len() + packing(ctx, &uncovered) >= ctx.best.len() {
            return Ok(());
        }
        // the uncovered hyperedge with the fewest ways to be hit
        let e = uncovered.iter().min_by_key(|&e| ctx.through[e].len()).unwrap();
        let options = ctx.through[e].clone();
        for v in options {
            chosen.push(v);
            let rest = uncovered.difference(&ctx.inc.hits[v]);
            go(ctx, rest, chosen)?;
            chosen.pop();
        }
        Ok(())
    }
    // one vertex per hyperedge is always enough
    let mut ctx = Ctx {
        inc: &inc,
        through: &through,
        best: (0..m).map(|e| through[e][0]).collect(),
        nodes: 0,
        budget,
    };
    ctx.best.sort_unstable();
    ctx.best.dedup();
    go(&mut ctx, VertexSet::full(m), &mut Vec::new())?;
    let mut vertices: Vec<HyperVertex> = ctx.best.iter().map(|&v| inc.vertices[v]).collect();
    vertices.sort_unstable();
    Ok(Transversal {
        size: vertices.len(),
        vertices,
        nodes: ctx.nodes,
    })
}

/// Largest set of pairwise disjoint hyperedges.
pub fn matching_number(h: &Hypergraph, budget: u64) -> Result<usize, HypergraphError> {
    let m = h.edges().len();
    let disjoint: Vec<VertexSet> = (0..m)
        .map(|i| VertexSet::from_iter_vertices((0..m).filter(|&j| j != i && h.shared_parts(i, j).is_empty())))
        .collect();
    fn go(d: &[VertexSet], cand: VertexSet, size: usize, best: &mut usize, nodes: &mut u64, budget: u64) -> Result<(), HypergraphError> {
        *nodes += 1;
        if *nodes > budget {
            return Err(HypergraphError::BudgetExceeded(budget));
        }
        *best = (*best).max(size);
        if size + cand.len() <= *best {
            return Ok(());
        }
        let list = cand.to_vec();
        for (i, &e) in list.iter().enumerate() {
            if size + list.len() - i <= *best {
                break;
            }
            let next = VertexSet::from_iter_vertices(list[i + 1..].iter().copied().filter(|&f| d[e].contains(f)));
            go(d, next, size + 1, best, nodes, budget)?;
        }
        Ok(())
    }
    let mut best = 0;
    let mut nodes = 0;
    go(&disjoint, VertexSet::full(m), 0, &mut best, &mut nodes, budget)?;
    Ok(best)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RyserTransversal {
    pub k: usize,
    /// Guaranteed size limit for this (r, k).
    pub bound: usize,
    pub vertices: Vec<HyperVertex>,
}

/// Transversal of a k-intersecting hypergraph from a constructive tree cover
/// of its intersection graph, with each edge's colours cut down to the k
/// smallest.
pub fn ryser_transversal(h: &Hypergraph, k: usize) -> Result<RyserTransversal, HypergraphError> {
    let r = h.parts();
    if k == 0 || k > r {
        return Err(HypergraphError::Level { k, r });
    }
    h.check_level(k)?;
    let g = hypergraph_to_colouring(h)?;
    let sets = g.edge_sets().iter().map(|s| s.smallest(k)).collect();
    let trimmed = SetColouring::new(g.host(), r, Some(k), sets)
        .map_err(|e| HypergraphError::Edge { index: 0, message: e.to_string() })?;
    let cover = constructive_cover_complete(&trimmed)?;
    let mut vertices: Vec<HyperVertex> = cover
        .trees
        .iter()
        .map(|t| {
            let v = t.vertices.first().expect("non-empty piece");
            (t.colour, h.edges()[v][t.colour])
        })
        .collect();
    vertices.sort_unstable();
    vertices.dedup();
    Ok(RyserTransversal {
        k,
        bound: complete_bound(r, k),
        vertices,
    })
}

/// `count` distinct hyperedges on parts of size `part_size`, every two
/// agreeing in at least `k` parts. Each new hyperedge copies a random
/// earlier one and redraws up to `r - k` coordinates; candidates breaking
/// the level are redrawn. Returns fewer hyperedges if `attempts` runs out.
pub fn random_intersecting<R: Rng + ?Sized>(
    rng: &mut R,
    r: usize,
    k: usize,
    part_size: usize,
    count: usize,
    attempts: usize,
) -> Hypergraph {
    let mut edges: Vec<Vec<usize>> = vec![(0..r).map(|_| rng.gen_range(0..part_size)).collect()];
    let mut tries = 0;
    while edges.len() < count && tries < attempts {
        tries += 1;
        let mut e = edges[rng.gen_range(0..edges.len())].clone();
        let redraw = rng.gen_range(1..=r.saturating_sub(k).max(1));
        for _ in 0..redraw {
            let c = rng.gen_range(0..r);
            e[c] = rng.gen_range(0..part_size);
        }
        let ok = edges.iter().all(|f| {
            f != &e && (0..r).filter(|&c| f[c] == e[c]).count() >= k
        });
        if ok {
            edges.push(e);
        }
    }
    Hypergraph::new(vec![part_size; r], edges).expect("generated hyperedges are valid and distinct")
}
