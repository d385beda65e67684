//! Transformations between colourings that control the tree cover number.

use crate::certificate::CoverCertificate;
use crate::colour::{ColourSet, MAX_COLOURS};
use crate::colouring::ColouringError;
use crate::components::MonoComponent;
use crate::{HostGraph, SetColouring, VertexSet};

#[derive(Debug, thiserror::Error)]
pub enum ReductionError {
    #[error("operation needs a uniform colouring")]
    NotUniform,
    #[error("expected {expected} colours, got {found}")]
    WrongCount { expected: usize, found: usize },
    #[error("edge {u}-{v} would lose all of its colours")]
    EdgeEmptied { u: usize, v: usize },
    #[error("r·k = {0} exceeds 64 colours")]
    TooManyColours(usize),
    #[error("colour set {0} is not valid for this colouring")]
    BadColourSet(ColourSet),
    #[error("vertex {0} is not in the host")]
    NoSuchVertex(usize),
    #[error(transparent)]
    Colouring(#[from] ColouringError),
}

/// Deletes `drop` from every edge and keeps the smallest surviving colour.
///
/// Surviving colours are renumbered densely in increasing order, so the result
/// is an ordinary `(r-k+1)`-colouring (uniform k = 1).
pub fn reduce_to_partition_colouring(
    colouring: &SetColouring,
    drop: ColourSet,
) -> Result<SetColouring, ReductionError> {
    let k = colouring.uniform_k().ok_or(ReductionError::NotUniform)?;
    if drop.len() + 1 != k || !drop.is_subset(colouring.palette()) {
        return Err(ReductionError::WrongCount {
            expected: k.saturating_sub(1),
            found: drop.len(),
        });
    }
    let survivors = colouring.palette().difference(drop);
    let mut renumber = vec![usize::MAX; colouring.r()];
    for (i, c) in survivors.iter().enumerate() {
        renumber[c] = i;
    }
    let mut edges = Vec::with_capacity(colouring.edge_sets().len());
    for (u, v, set) in colouring.edges() {
        let keep = set
            .difference(drop)
            .min()
            .ok_or(ReductionError::EdgeEmptied { u, v })?;
        edges.push(ColourSet::singleton(renumber[keep]));
    }
    Ok(SetColouring::new(
        colouring.host(),
        survivors.len(),
        Some(1),
        edges,
    )?)
}

/// Replaces colour `c` of an ordinary colouring by the block `{c·k, ..., c·k+k-1}`.
pub fn split_colours(colouring: &SetColouring, k: usize) -> Result<SetColouring, ReductionError> {
    if colouring.uniform_k() != Some(1) {
        return Err(ReductionError::NotUniform);
    }
    let r = colouring.r() * k;
    if r > MAX_COLOURS {
        return Err(ReductionError::TooManyColours(r));
    }
    let edges = colouring
        .edge_sets()
        .iter()
        .map(|s| ColourSet::range((*s).min().expect("non-empty") * k, k))
        .collect();
    Ok(SetColouring::new(colouring.host(), r, Some(k), edges)?)
}

/// Adds a copy of `v` carrying the same colour sets as `v`.
///
/// On a complete host the copy is the new last vertex and the edge between `v`
/// and its copy gets `cross`. On a bipartite host the copy joins `v`'s side as
/// its new last vertex (side-B indices shift up when `v` is in side A), and
/// `cross` must be `None`.
pub fn duplicate_vertex(
    colouring: &SetColouring,
    v: usize,
    cross: Option<ColourSet>,
) -> Result<SetColouring, ReductionError> {
    let host = colouring.host();
    if v >= host.vertex_count() {
        return Err(ReductionError::NoSuchVertex(v));
    }
    match host {
        HostGraph::Complete { n } => {
            let cross = cross.ok_or(ReductionError::BadColourSet(ColourSet::EMPTY))?;
            let palette_ok = !cross.is_empty() && cross.is_subset(colouring.palette());
            let card_ok = colouring.uniform_k().is_none_or(|k| cross.len() == k);
            if !palette_ok || !card_ok {
                return Err(ReductionError::BadColourSet(cross));
            }
            let old = |x: usize| if x == n { v } else { x };
            Ok(SetColouring::from_fn(
                HostGraph::complete(n + 1),
                colouring.r(),
                colouring.uniform_k(),
                |a, b| {
                    if b == n && a == v {
                        cross
                    } else {
                        colouring.colour(old(a), old(b))
                    }
                },
            )?)
        }
        HostGraph::Bipartite { n, m } => {
            if let Some(c) = cross {
                return Err(ReductionError::BadColourSet(c));
            }
            let (new_host, old): (HostGraph, Box<dyn Fn(usize) -> usize>) = if v < n {
                // new A vertex at index n; old B vertex b moves to b+1
                (
                    HostGraph::bipartite(n + 1, m),
                    Box::new(move |x: usize| match x {
                        x if x < n => x,
                        x if x == n => v,
                        x => x - 1,
                    }),
                )
            } else {
                (
                    HostGraph::bipartite(n, m + 1),
                    Box::new(move |x: usize| if x == n + m { v } else { x }),
                )
            };
            Ok(SetColouring::from_fn(
                new_host,
                colouring.r(),
                colouring.uniform_k(),
                |a, b| colouring.colour(old(a), old(b)),
            )?)
        }
    }
}

/// Covers the closed neighbourhood of `centre` by stars centred there, one per
/// colour of `pool`, with `|pool| = r-k+1`.
///
/// Every edge carries k colours, so it meets any `r-k+1` colours; each leaf goes
/// to the smallest pool colour on its edge. Only non-empty stars are returned
/// (or the bare centre when it has no neighbours).
pub fn star_cover(
    colouring: &SetColouring,
    centre: usize,
    pool: ColourSet,
) -> Result<CoverCertificate, ReductionError> {
    let k = colouring.uniform_k().ok_or(ReductionError::NotUniform)?;
    let expected = colouring.r() + 1 - k;
    if pool.len() != expected || !pool.is_subset(colouring.palette()) {
        return Err(ReductionError::WrongCount {
            expected,
            found: pool.len(),
        });
    }
    if centre >= colouring.vertex_count() {
        return Err(ReductionError::NoSuchVertex(centre));
    }
    let mut stars: Vec<(usize, Vec<usize>)> = pool.iter().map(|c| (c, Vec::new())).collect();
    for leaf in colouring.host().neighbours(centre) {
        let c = colouring
            .colour(centre, leaf)
            .intersection(pool)
            .min()
            .expect("k colours always meet r-k+1 colours");
        let slot = stars.iter_mut().find(|(col, _)| *col == c).expect("pool colour");
        slot.1.push(leaf);
    }
    let mut trees: Vec<MonoComponent> = stars
        .into_iter()
        .filter(|(_, leaves)| !leaves.is_empty())
        .map(|(colour, leaves)| {
            let mut vertices = VertexSet::singleton(centre);
            for &l in &leaves {
                vertices.insert(l);
            }
            MonoComponent {
                colour,
                vertices,
                tree_edges: leaves
                    .iter()
                    .map(|&l| (centre.min(l), centre.max(l)))
                    .collect(),
            }
        })
        .collect();
    if trees.is_empty() {
        trees.push(MonoComponent {
            colour: pool.min().expect("pool is non-empty"),
            vertices: VertexSet::singleton(centre),
            tree_edges: Vec::new(),
        });
    }
    Ok(CoverCertificate { trees })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::verify_cover;

    fn cs(c: &[usize]) -> ColourSet {
        ColourSet::from_colours(c.iter().copied())
    }

    #[test]
    fn reduce_keeps_smallest_survivor() {
        let c = SetColouring::new(
            HostGraph::complete(3),
            3,
            Some(2),
            vec![cs(&[0, 1]), cs(&[0, 2]), cs(&[1, 2])],
        )
        .unwrap();
        let red = reduce_to_partition_colouring(&c, cs(&[0])).unwrap();
        assert_eq!(red.r(), 2);
        assert_eq!(red.uniform_k(), Some(1));
        // survivors 1,2 become 0,1: original colours 1,2,1
        assert_eq!(red.edge_sets(), &[cs(&[0]), cs(&[1]), cs(&[0])]);
    }

    #[test]
    fn reduce_with_k1_is_identity() {
        let c = SetColouring::from_fn(HostGraph::complete(4), 3, Some(1), |u, v| {
            ColourSet::singleton((u + v) % 3)
        })
        .unwrap();
        assert_eq!(reduce_to_partition_colouring(&c, ColourSet::EMPTY).unwrap(), c);
    }

    #[test]
    fn reduce_rejects_wrong_drop_size() {
        let c = SetColouring::from_fn(HostGraph::complete(3), 3, Some(2), |_, _| cs(&[0, 1]))
            .unwrap();
        assert!(reduce_to_partition_colouring(&c, ColourSet::EMPTY).is_err());
        let all = reduce_to_partition_colouring(&c, cs(&[1])).unwrap();
        assert!(all.edge_sets().iter().all(|&s| s == cs(&[0])));
    }

    #[test]
    fn split_blocks() {
        let c = SetColouring::new(HostGraph::complete(2), 2, Some(1), vec![cs(&[1])]).unwrap();
        let s = split_colours(&c, 2).unwrap();
        assert_eq!((s.r(), s.uniform_k()), (4, Some(2)));
        assert_eq!(s.edge_sets(), &[cs(&[2, 3])]);
        assert_eq!(split_colours(&c, 1).unwrap(), c);
        assert!(matches!(
            split_colours(&c, 33),
            Err(ReductionError::TooManyColours(66))
        ));
    }

    #[test]
    fn duplicate_bipartite_b_vertex() {
        let c = SetColouring::new(HostGraph::bipartite(1, 1), 1, Some(1), vec![cs(&[0])]).unwrap();
        let d = duplicate_vertex(&c, 1, None).unwrap();
        assert_eq!(d.host(), HostGraph::bipartite(1, 2));
        assert_eq!(d.edge_sets(), &[cs(&[0]), cs(&[0])]);
    }

    #[test]
    fn duplicate_bipartite_a_vertex_shifts_side_b() {
        let c = SetColouring::new(
            HostGraph::bipartite(2, 1),
            3,
            Some(1),
            vec![cs(&[0]), cs(&[2])],
        )
        .unwrap();
        let d = duplicate_vertex(&c, 1, None).unwrap();
        assert_eq!(d.host(), HostGraph::bipartite(3, 1));
        assert_eq!(d.colour(2, 3), cs(&[2]));
        assert_eq!(d.colour(0, 3), cs(&[0]));
    }

    #[test]
    fn duplicate_complete_checks_cross_edge() {
        let c = SetColouring::from_fn(HostGraph::complete(3), 3, Some(2), |_, _| cs(&[0, 1]))
            .unwrap();
        assert!(duplicate_vertex(&c, 0, Some(cs(&[0]))).is_err());
        assert!(duplicate_vertex(&c, 0, None).is_err());
        let d = duplicate_vertex(&c, 0, Some(cs(&[1, 2]))).unwrap();
        assert_eq!(d.vertex_count(), 4);
        assert_eq!(d.colour(0, 3), cs(&[1, 2]));
        assert_eq!(d.colour(1, 3), cs(&[0, 1]));
    }

    #[test]
    fn star_smallest_applicable_colour() {
        // centre 0, leaves 1,2,3 with {0,1},{2,3},{1,2}; remaining edges arbitrary
        let c = SetColouring::from_fn(HostGraph::complete(4), 4, Some(2), |u, v| match (u, v) {
            (0, 1) => cs(&[0, 1]),
            (0, 2) => cs(&[2, 3]),
            (0, 3) => cs(&[1, 2]),
            _ => cs(&[0, 3]),
        })
        .unwrap();
        let cert = star_cover(&c, 0, cs(&[0, 2, 3])).unwrap();
        assert_eq!(cert.len(), 2);
        assert_eq!(cert.trees[0].colour, 0);
        assert_eq!(cert.trees[0].vertices.to_vec(), vec![0, 1]);
        assert_eq!(cert.trees[1].colour, 2);
        assert_eq!(cert.trees[1].vertices.to_vec(), vec![0, 2, 3]);
        assert!(verify_cover(&c, &cert).is_valid());
        assert!(star_cover(&c, 0, cs(&[0, 2])).is_err());
    }

    #[test]
    fn star_with_full_colour_sets_is_one_star() {
        let c = SetColouring::from_fn(HostGraph::complete(5), 3, Some(3), |_, _| {
            ColourSet::full(3)
        })
        .unwrap();
        let cert = star_cover(&c, 2, cs(&[1])).unwrap();
        assert_eq!(cert.len(), 1);
        assert_eq!(cert.trees[0].size(), 5);
    }
}
