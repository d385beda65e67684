//! Exact minimum tree cover by set-cover branch and bound.
//!
//! Candidates are the maximal monochromatic components with at least two
//! vertices, plus a singleton for every vertex lying in none of them. The
//! first phase finds the optimum value; the second phase walks candidate
//! index sequences in lex order to return the smallest optimal certificate
//! under the (colour, smallest vertex) ordering.

use crate::certificate::CoverCertificate;
use crate::colour::ColourSet;
use crate::components::{ComponentIndex, MonoComponent};
use crate::{SetColouring, VertexSet};

use super::CoverError;

pub const DEFAULT_NODE_BUDGET: u64 = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactCover {
    pub value: usize,
    pub certificate: CoverCertificate,
    pub nodes: u64,
}

#[derive(Clone, Debug)]
struct Candidate {
    colour: usize,
    set: VertexSet,
}

fn candidates(colouring: &SetColouring, colours: ColourSet) -> Vec<Candidate> {
    let n = colouring.vertex_count();
    let index = ComponentIndex::build(colouring);
    let mut out = Vec::new();
    let mut covered = VertexSet::with_capacity(n);
    for c in colours.iter().filter(|&c| c < colouring.r()) {
        for set in index.components(c) {
            if set.len() >= 2 {
                covered.union_with(set);
                out.push(Candidate {
                    colour: c,
                    set: set.clone(),
                });
            }
        }
    }
    let lone = colours.min().unwrap_or(0);
    for v in (0..n).filter(|&v| !covered.contains(v)) {
        out.push(Candidate {
            colour: lone,
            set: VertexSet::singleton(v),
        });
    }
    out.sort_by_key(|c| (c.colour, c.set.first()));
    out
}

struct Search<'a> {
    cands: &'a [Candidate],
    /// candidate indices containing each vertex, ascending
    containing: Vec<Vec<usize>>,
    nodes: u64,
    budget: u64,
    exceeded: bool,
}

impl<'a> Search<'a> {
    fn new(cands: &'a [Candidate], n: usize, budget: u64) -> Self {
        let mut containing = vec![Vec::new(); n];
        for (i, c) in cands.iter().enumerate() {
            for v in c.set.iter() {
                containing[v].push(i);
            }
        }
        Self {
            cands,
            containing,
            nodes: 0,
            budget,
            exceeded: false,
        }
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exceeded = true;
        }
        !self.exceeded
    }

    /// Lower bound on the pieces needed for `uncovered`, counting only
    /// candidates with index at least `from`.
    fn lower_bound(&self, uncovered: &VertexSet, from: usize, used: &mut [bool]) -> usize {
        let mut max_cov = 0;
        let mut order: Vec<(usize, usize)> = Vec::with_capacity(uncovered.len());
        for v in uncovered.iter() {
            let live = &self.containing[v];
            let start = live.partition_point(|&i| i < from);
            if start == live.len() {
                return usize::MAX;
            }
            order.push((live.len() - start, v));
            for &i in &live[start..] {
                if !used[i] {
                    used[i] = true;
                    max_cov = max_cov.max(self.cands[i].set.intersection(uncovered).len());
                }
            }
        }
        used.iter_mut().for_each(|u| *u = false);
        let by_size = uncovered.len().div_ceil(max_cov.max(1));
        order.sort_unstable();
        let mut packing = 0;
        for &(_, v) in &order {
            let live = &self.containing[v];
            let start = live.partition_point(|&i| i < from);
            if live[start..].iter().all(|&i| !used[i]) {
                packing += 1;
                for &i in &live[start..] {
                    used[i] = true;
                }
            }
        }
        used.iter_mut().for_each(|u| *u = false);
        by_size.max(packing)
    }
}

fn greedy(cands: &[Candidate], live: &[usize], n: usize) -> Vec<usize> {
    let mut uncovered = VertexSet::full(n);
    let mut chosen = Vec::new();
    while !uncovered.is_empty() {
        let best = live
            .iter()
            .copied()
            .max_by_key(|&i| (cands[i].set.intersection(&uncovered).len(), usize::MAX - i))
            .expect("candidates cover every vertex");
        uncovered.difference_with(&cands[best].set);
        chosen.push(best);
    }
    chosen
}

struct Optimum<'s, 'a> {
    search: &'s mut Search<'a>,
    live_containing: Vec<Vec<usize>>,
    best: usize,
    best_sol: Vec<usize>,
    used: Vec<bool>,
}

impl Optimum<'_, '_> {
    fn run(&mut self, uncovered: &VertexSet, chosen: &mut Vec<usize>) {
        if !self.search.tick() {
            return;
        }
        if uncovered.is_empty() {
            if chosen.len() < self.best {
                self.best = chosen.len();
                self.best_sol = chosen.clone();
            }
            return;
        }
        let lb = self.search.lower_bound(uncovered, 0, &mut self.used);
        if chosen.len().saturating_add(lb) >= self.best {
            return;
        }
        let pivot = uncovered
            .iter()
            .min_by_key(|&v| (self.live_containing[v].len(), v))
            .expect("non-empty");
        let mut options: Vec<(usize, usize)> = self.live_containing[pivot]
            .iter()
            .map(|&i| (self.search.cands[i].set.intersection(uncovered).len(), i))
            .collect();
        options.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for (_, i) in options {
            chosen.push(i);
            let rest = uncovered.difference(&self.search.cands[i].set);
            self.run(&rest, chosen);
            chosen.pop();
            if self.search.exceeded {
                return;
            }
        }
    }
}

struct LexFirst<'s, 'a> {
    search: &'s mut Search<'a>,
    max_index: Vec<usize>,
    used: Vec<bool>,
}

impl LexFirst<'_, '_> {
    fn run(&mut self, next: usize, uncovered: &VertexSet, slots: usize, chosen: &mut Vec<usize>) -> bool {
        if uncovered.is_empty() {
            return true;
        }
        if slots == 0 || !self.search.tick() {
            return false;
        }
        let hi = uncovered
            .iter()
            .map(|v| self.max_index[v])
            .min()
            .expect("non-empty");
        if hi < next {
            return false;
        }
        if self.search.lower_bound(uncovered, next, &mut self.used) > slots {
            return false;
        }
        for j in next..=hi {
            if !self.search.cands[j].set.intersects(uncovered) {
                continue;
            }
            chosen.push(j);
            let rest = uncovered.difference(&self.search.cands[j].set);
            if self.run(j + 1, &rest, slots - 1, chosen) {
                return true;
            }
            chosen.pop();
            if self.search.exceeded {
                return false;
            }
        }
        false
    }
}

fn certificate(colouring: &SetColouring, cands: &[Candidate], sol: &[usize]) -> CoverCertificate {
    let mut trees: Vec<MonoComponent> = sol
        .iter()
        .map(|&i| {
            MonoComponent::spanning(colouring, cands[i].colour, &cands[i].set)
                .expect("candidate is a component")
        })
        .collect();
    trees.sort_by_key(|t| t.key());
    CoverCertificate { trees }
}

fn live_indices(cands: &[Candidate]) -> Vec<usize> {
    // drop candidates whose vertex set sits inside another one
    (0..cands.len())
        .filter(|&i| {
            !cands.iter().enumerate().any(|(j, other)| {
                j != i
                    && cands[i].set.is_subset(&other.set)
                    && (other.set.len() > cands[i].set.len() || j < i)
            })
        })
        .collect()
}

fn optimum(
    colouring: &SetColouring,
    cands: &[Candidate],
    search: &mut Search<'_>,
    cap: usize,
) -> Option<(usize, Vec<usize>)> {
    let n = colouring.vertex_count();
    let live = live_indices(cands);
    let mut live_containing = vec![Vec::new(); n];
    for &i in &live {
        for v in cands[i].set.iter() {
            live_containing[v].push(i);
        }
    }
    let start = greedy(cands, &live, n);
    let (best, best_sol) = if start.len() <= cap {
        (start.len(), start)
    } else {
        (cap + 1, Vec::new())
    };
    let mut opt = Optimum {
        search,
        live_containing,
        best,
        best_sol,
        used: vec![false; cands.len()],
    };
    let mut chosen = Vec::new();
    opt.run(&VertexSet::full(n), &mut chosen);
    (opt.best <= cap).then(|| (opt.best, std::mem::take(&mut opt.best_sol)))
}

/// Minimum number of monochromatic trees covering the host, with the
/// canonical optimal certificate.
pub fn exact_tree_cover(colouring: &SetColouring, budget: u64) -> Result<ExactCover, CoverError> {
    let n = colouring.vertex_count();
    if n == 0 {
        return Ok(ExactCover {
            value: 0,
            certificate: CoverCertificate::default(),
            nodes: 0,
        });
    }
    let cands = candidates(colouring, colouring.palette());
    let mut search = Search::new(&cands, n, budget);
    let found = optimum(colouring, &cands, &mut search, usize::MAX - 1);
    if search.exceeded {
        return Err(CoverError::BudgetExceeded { nodes: search.nodes });
    }
    let (value, _) = found.expect("greedy always succeeds");
    let mut max_index = vec![0; n];
    for (i, c) in cands.iter().enumerate() {
        for v in c.set.iter() {
            max_index[v] = i;
        }
    }
    let mut lex = LexFirst {
        search: &mut search,
        max_index,
        used: vec![false; cands.len()],
    };
    let mut chosen = Vec::new();
    let ok = lex.run(0, &VertexSet::full(n), value, &mut chosen);
    if search.exceeded {
        return Err(CoverError::BudgetExceeded { nodes: search.nodes });
    }
    if !ok {
        return Err(CoverError::Internal(format!(
            "no certificate of optimal size {value} found in lex phase"
        )));
    }
    Ok(ExactCover {
        value,
        certificate: certificate(colouring, &cands, &chosen),
        nodes: search.nodes,
    })
}

/// A cover by at most `limit` components whose colours lie in `colours`,
/// or `None` if there is none. Vertices in no non-trivial component of
/// those colours may be covered by singletons.
pub fn cover_within(
    colouring: &SetColouring,
    colours: ColourSet,
    limit: usize,
    budget: u64,
) -> Result<Option<CoverCertificate>, CoverError> {
    let n = colouring.vertex_count();
    if n == 0 {
        return Ok(Some(CoverCertificate::default()));
    }
    if colours.is_empty() || limit == 0 {
        return Ok(None);
    }
    let cands = candidates(colouring, colours);
    let mut search = Search::new(&cands, n, budget);
    let found = optimum(colouring, &cands, &mut search, limit);
    if search.exceeded {
        return Err(CoverError::BudgetExceeded { nodes: search.nodes });
    }
    Ok(found.map(|(_, sol)| certificate(colouring, &cands, &sol)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::verify_cover;
    use crate::HostGraph;

    fn mono(n: usize) -> SetColouring {
        SetColouring::from_fn(HostGraph::complete(n), 3, Some(1), |_, _| ColourSet::singleton(0))
            .unwrap()
    }

    #[test]
    fn monochromatic_is_one() {
        let out = exact_tree_cover(&mono(6), DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(out.value, 1);
        assert!(verify_cover(&mono(6), &out.certificate).is_valid());
    }

    #[test]
    fn single_vertex() {
        let out = exact_tree_cover(&mono(1), DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(out.value, 1);
        assert_eq!(out.certificate.trees[0].vertices.to_vec(), vec![0]);
    }

    #[test]
    fn canonical_certificate_prefers_small_colours() {
        // K4 two-missing: colour c is the triangle on [4] \ {c}
        let c = SetColouring::from_fn(HostGraph::complete(4), 4, Some(2), |u, v| {
            ColourSet::full(4).difference(ColourSet::from_colours([u, v]))
        })
        .unwrap();
        let out = exact_tree_cover(&c, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(out.value, 2);
        let keys: Vec<_> = out.certificate.trees.iter().map(|t| t.key()).collect();
        assert_eq!(keys, vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn tiny_budget_is_reported() {
        let c = crate::random::random_colouring(HostGraph::complete(12), 6, 1, 5).unwrap();
        assert!(matches!(
            exact_tree_cover(&c, 1),
            Err(CoverError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn restricted_colours() {
        let c = mono(4);
        assert!(cover_within(&c, ColourSet::singleton(1), 3, 1000).unwrap().is_none());
        let four = cover_within(&c, ColourSet::singleton(1), 4, 1000).unwrap().unwrap();
        assert_eq!(four.len(), 4);
        assert_eq!(cover_within(&c, ColourSet::full(2), 1, 1000).unwrap().unwrap().len(), 1);
    }
}
