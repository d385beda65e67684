use serde::{Deserialize, Serialize};

/// The underlying uncoloured graph: `K_n` or `K_{n,m}`.
///
/// Bipartite hosts number side A as `0..n` and side B as `n..n+m`. Edges are
/// indexed lexicographically over `(min, max)` endpoint pairs, which for the
/// bipartite host means A-major order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum HostGraph {
    Complete { n: usize },
    Bipartite { n: usize, m: usize },
}

impl HostGraph {
    pub fn complete(n: usize) -> Self {
        HostGraph::Complete { n }
    }

    pub fn bipartite(n: usize, m: usize) -> Self {
        HostGraph::Bipartite { n, m }
    }

    pub fn is_complete(&self) -> bool {
        matches!(self, HostGraph::Complete { .. })
    }

    pub fn vertex_count(&self) -> usize {
        match *self {
            HostGraph::Complete { n } => n,
            HostGraph::Bipartite { n, m } => n + m,
        }
    }

    pub fn edge_count(&self) -> usize {
        match *self {
            HostGraph::Complete { n } => n * n.saturating_sub(1) / 2,
            HostGraph::Bipartite { n, m } => n * m,
        }
    }

    /// Checks `n >= 1` (and `m >= 1` for bipartite hosts).
    pub fn is_well_formed(&self) -> bool {
        match *self {
            HostGraph::Complete { n } => n >= 1,
            HostGraph::Bipartite { n, m } => n >= 1 && m >= 1,
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        match *self {
            HostGraph::Complete { n } => {
                (a != b && b < n).then(|| a * (2 * n - a - 1) / 2 + (b - a - 1))
            }
            HostGraph::Bipartite { n, m } => (a < n && b >= n && b < n + m).then(|| a * m + (b - n)),
        }
    }

    /// Endpoints `(u, v)` with `u < v` of the edge with index `idx`.
    pub fn endpoints(&self, idx: usize) -> (usize, usize) {
        match *self {
            HostGraph::Complete { n } => {
                let mut rest = idx;
                let mut u = 0;
                while rest >= n - u - 1 {
                    rest -= n - u - 1;
                    u += 1;
                }
                (u, u + 1 + rest)
            }
            HostGraph::Bipartite { n, m } => (idx / m, n + idx % m),
        }
    }

    /// All edges in index order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let host = *self;
        let total = self.vertex_count();
        (0..total).flat_map(move |u| {
            let lo = match host {
                HostGraph::Complete { .. } => u + 1,
                HostGraph::Bipartite { n, .. } => n.max(u + 1),
            };
            let hi = match host {
                HostGraph::Complete { n } => n,
                HostGraph::Bipartite { n, m } => {
                    if u < n {
                        n + m
                    } else {
                        0
                    }
                }
            };
            (lo..hi.max(lo)).map(move |v| (u, v))
        })
    }

    /// Neighbours of `v` in increasing order.
    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let (lo, hi, skip) = match *self {
            HostGraph::Complete { n } => (0, n, Some(v)),
            HostGraph::Bipartite { n, m } => {
                if v < n {
                    (n, n + m, None)
                } else {
                    (0, n, None)
                }
            }
        };
        (lo..hi).filter(move |&u| Some(u) != skip)
    }

    /// `Some(true)` for side A, `Some(false)` for side B, `None` on complete hosts.
    pub fn in_side_a(&self, v: usize) -> Option<bool> {
        match *self {
            HostGraph::Complete { .. } => None,
            HostGraph::Bipartite { n, .. } => Some(v < n),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_indexing_round_trips() {
        let h = HostGraph::complete(7);
        let edges: Vec<_> = h.edges().collect();
        assert_eq!(edges.len(), h.edge_count());
        for (i, &(u, v)) in edges.iter().enumerate() {
            assert_eq!(h.edge_index(u, v), Some(i));
            assert_eq!(h.edge_index(v, u), Some(i));
            assert_eq!(h.endpoints(i), (u, v));
        }
        assert_eq!(h.edge_index(3, 3), None);
        assert_eq!(h.edge_index(3, 7), None);
    }

    #[test]
    fn bipartite_indexing_is_a_major() {
        let h = HostGraph::bipartite(2, 3);
        let edges: Vec<_> = h.edges().collect();
        assert_eq!(edges, vec![(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]);
        for (i, &(u, v)) in edges.iter().enumerate() {
            assert_eq!(h.edge_index(u, v), Some(i));
            assert_eq!(h.endpoints(i), (u, v));
        }
        assert!(!h.has_edge(0, 1));
        assert!(!h.has_edge(2, 3));
        assert_eq!(h.neighbours(3).collect::<Vec<_>>(), vec![0, 1]);
    }

    #[test]
    fn degenerate_hosts() {
        assert!(!HostGraph::bipartite(1, 0).is_well_formed());
        assert!(!HostGraph::complete(0).is_well_formed());
        assert_eq!(HostGraph::complete(1).edges().count(), 0);
    }
}
