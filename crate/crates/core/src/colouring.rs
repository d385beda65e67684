//! Set-colourings of complete and complete bipartite hosts.

use std::fmt;

use crate::colour::{ColourSet, MAX_COLOURS};
use crate::host::HostGraph;
use crate::VertexSet;

/// One broken invariant found by [`SetColouring::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    MalformedHost,
    TooManyColours { r: usize },
    UniformKTooLarge { k: usize, r: usize },
    EdgeCount { expected: usize, found: usize },
    EmptySet { u: usize, v: usize },
    Cardinality { u: usize, v: usize, found: usize, k: usize },
    ColourOutOfRange { u: usize, v: usize, colour: usize, r: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::MalformedHost => write!(f, "host must have at least one vertex per side"),
            Violation::TooManyColours { r } => write!(f, "r={r} exceeds {MAX_COLOURS}"),
            Violation::UniformKTooLarge { k, r } => write!(f, "uniform k={k} exceeds r={r}"),
            Violation::EdgeCount { expected, found } => {
                write!(f, "expected {expected} edge colour sets, found {found}")
            }
            Violation::EmptySet { u, v } => write!(f, "empty colour set on edge {u}-{v}"),
            Violation::Cardinality { u, v, found, k } => {
                write!(f, "cardinality {found} ≠ k={k} on edge {u}-{v}")
            }
            Violation::ColourOutOfRange { u, v, colour, r } => {
                write!(f, "colour {colour} ≥ r={r} on edge {u}-{v}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ColouringError {
    #[error("invalid colouring: {}", join(.0))]
    Invalid(Vec<Violation>),
    #[error("vertex {0} is not in the host")]
    NoSuchVertex(usize),
    #[error("{0}")]
    Parameters(String),
}

fn join(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

/// A host graph together with a colour set on every edge.
///
/// `uniform_k` is `Some(k)` for an (r,k)-colouring and `None` for a
/// generalized colouring whose edge sets may have any non-zero size.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetColouring {
    host: HostGraph,
    r: usize,
    uniform_k: Option<usize>,
    edges: Vec<ColourSet>,
}

impl SetColouring {
    /// Builds a colouring and rejects it if any invariant is broken.
    pub fn new(
        host: HostGraph,
        r: usize,
        uniform_k: Option<usize>,
        edges: Vec<ColourSet>,
    ) -> Result<Self, ColouringError> {
        let c = Self::from_raw(host, r, uniform_k, edges);
        let violations = c.validate();
        if violations.is_empty() {
            Ok(c)
        } else {
            Err(ColouringError::Invalid(violations))
        }
    }

    /// Builds a colouring without checking it. Use [`validate`](Self::validate)
    /// to inspect the result.
    pub fn from_raw(
        host: HostGraph,
        r: usize,
        uniform_k: Option<usize>,
        edges: Vec<ColourSet>,
    ) -> Self {
        Self {
            host,
            r,
            uniform_k,
            edges,
        }
    }

    /// Colours every host edge `(u, v)`, `u < v`, with `f(u, v)`.
    pub fn from_fn<F>(
        host: HostGraph,
        r: usize,
        uniform_k: Option<usize>,
        mut f: F,
    ) -> Result<Self, ColouringError>
    where
        F: FnMut(usize, usize) -> ColourSet,
    {
        let edges = host.edges().map(|(u, v)| f(u, v)).collect();
        Self::new(host, r, uniform_k, edges)
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if !self.host.is_well_formed() {
            out.push(Violation::MalformedHost);
        }
        if self.r > MAX_COLOURS {
            out.push(Violation::TooManyColours { r: self.r });
        }
        if let Some(k) = self.uniform_k {
            if k > self.r {
                out.push(Violation::UniformKTooLarge { k, r: self.r });
            }
        }
        let expected = self.host.edge_count();
        if self.edges.len() != expected {
            out.push(Violation::EdgeCount {
                expected,
                found: self.edges.len(),
            });
            return out;
        }
        let palette = ColourSet::full(self.r.min(MAX_COLOURS));
        for (idx, &set) in self.edges.iter().enumerate() {
            let (u, v) = self.host.endpoints(idx);
            if set.is_empty() {
                out.push(Violation::EmptySet { u, v });
                continue;
            }
            if let Some(k) = self.uniform_k {
                if set.len() != k {
                    out.push(Violation::Cardinality {
                        u,
                        v,
                        found: set.len(),
                        k,
                    });
                }
            }
            for colour in set.difference(palette).iter() {
                out.push(Violation::ColourOutOfRange {
                    u,
                    v,
                    colour,
                    r: self.r,
                });
            }
        }
        out
    }

    pub fn host(&self) -> HostGraph {
        self.host
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn uniform_k(&self) -> Option<usize> {
        self.uniform_k
    }

    pub fn vertex_count(&self) -> usize {
        self.host.vertex_count()
    }

    pub fn palette(&self) -> ColourSet {
        ColourSet::full(self.r)
    }

    /// Colour sets in edge-index order.
    pub fn edge_sets(&self) -> &[ColourSet] {
        &self.edges
    }

    /// Colour set of host edge `uv`. Panics if `uv` is not a host edge.
    #[inline]
    pub fn colour(&self, u: usize, v: usize) -> ColourSet {
        match self.host.edge_index(u, v) {
            Some(i) => self.edges[i],
            None => panic!("{u}-{v} is not an edge of {:?}", self.host),
        }
    }

    /// Colour set of `uv`, or `None` when `uv` is not a host edge.
    #[inline]
    pub fn try_colour(&self, u: usize, v: usize) -> Option<ColourSet> {
        self.host.edge_index(u, v).map(|i| self.edges[i])
    }

    /// `(u, v, colours)` for every edge in index order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, ColourSet)> + '_ {
        self.host
            .edges()
            .zip(self.edges.iter())
            .map(|((u, v), &s)| (u, v, s))
    }

    /// Colours appearing on at least one edge at `v`.
    pub fn colours_seen_by(&self, v: usize) -> ColourSet {
        self.host
            .neighbours(v)
            .fold(ColourSet::EMPTY, |acc, u| acc.union(self.colour(u, v)))
    }

    /// Whether every vertex is incident to an edge of every colour.
    pub fn every_vertex_sees_each_colour(&self) -> bool {
        let palette = self.palette();
        (0..self.vertex_count()).all(|v| self.colours_seen_by(v) == palette)
    }

    /// Vertices adjacent to `v` through an edge carrying `colour`.
    pub fn colour_neighbourhood(&self, v: usize, colour: usize) -> VertexSet {
        self.host
            .neighbours(v)
            .filter(|&u| self.colour(u, v).contains(colour))
            .collect()
    }

    /// The colouring induced on all vertices except `v`, with vertex indices
    /// above `v` shifted down by one.
    pub fn delete_vertex(&self, v: usize) -> Result<SetColouring, ColouringError> {
        let host = match self.host {
            HostGraph::Complete { n } if v < n => HostGraph::complete(n - 1),
            HostGraph::Bipartite { n, m } if v < n => HostGraph::bipartite(n - 1, m),
            HostGraph::Bipartite { n, m } if v < n + m => HostGraph::bipartite(n, m - 1),
            _ => return Err(ColouringError::NoSuchVertex(v)),
        };
        let old = |x: usize| if x >= v { x + 1 } else { x };
        Self::from_fn(host, self.r, self.uniform_k, |a, b| self.colour(old(a), old(b)))
    }

    /// Replaces the uniform marker, e.g. to relabel a uniform colouring as generalized.
    pub fn with_uniform_k(mut self, uniform_k: Option<usize>) -> Result<Self, ColouringError> {
        self.uniform_k = uniform_k;
        let v = self.validate();
        if v.is_empty() {
            Ok(self)
        } else {
            Err(ColouringError::Invalid(v))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3(sets: [u64; 3], k: Option<usize>) -> SetColouring {
        SetColouring::from_raw(
            HostGraph::complete(3),
            3,
            k,
            sets.iter().map(|&s| ColourSet(s)).collect(),
        )
    }

    #[test]
    fn valid_monochromatic_triangle() {
        assert!(k3([1, 1, 1], Some(1)).validate().is_empty());
    }

    #[test]
    fn empty_set_is_reported() {
        let v = k3([1, 0, 1], Some(1)).validate();
        assert_eq!(v, vec![Violation::EmptySet { u: 0, v: 2 }]);
        assert_eq!(v[0].to_string(), "empty colour set on edge 0-2");
    }

    #[test]
    fn wrong_cardinality_is_reported() {
        let v = k3([0b011, 0b111, 0b101], Some(2)).validate();
        assert_eq!(
            v,
            vec![Violation::Cardinality {
                u: 0,
                v: 2,
                found: 3,
                k: 2
            }]
        );
        assert!(v[0].to_string().contains("cardinality 3 ≠ k=2"));
    }

    #[test]
    fn colour_out_of_range_is_reported() {
        let v = k3([1, 0b1000, 1], None).validate();
        assert!(matches!(v[..], [Violation::ColourOutOfRange { colour: 3, .. }]));
    }

    #[test]
    fn delete_vertex_shifts_indices() {
        let c = SetColouring::from_fn(HostGraph::complete(4), 6, Some(1), |u, v| {
            ColourSet::singleton(u + v)
        })
        .unwrap();
        let d = c.delete_vertex(1).unwrap();
        assert_eq!(d.vertex_count(), 3);
        // old edge 2-3 is new edge 1-2
        assert_eq!(d.colour(1, 2), ColourSet::singleton(5));
        assert_eq!(d.colour(0, 2), ColourSet::singleton(3));
    }

    #[test]
    fn delete_vertex_bipartite_side_b() {
        let c = SetColouring::from_fn(HostGraph::bipartite(2, 2), 4, Some(1), |u, v| {
            ColourSet::singleton((u + v) % 4)
        })
        .unwrap();
        let d = c.delete_vertex(2).unwrap();
        assert_eq!(d.host(), HostGraph::bipartite(2, 1));
        assert_eq!(d.colour(1, 2), c.colour(1, 3));
    }
}
