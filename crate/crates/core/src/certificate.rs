//! Verifiable witnesses for tree covers and path/cycle partitions.
//!
//! The verifiers here only look at the colouring and the certificate; they
//! never consult solver state.

use serde::{Deserialize, Serialize};

use crate::components::{MonoComponent, UnionFind};
use crate::{SetColouring, VertexSet};

/// A set of monochromatic trees whose vertex sets cover the host.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverCertificate {
    pub trees: Vec<MonoComponent>,
}

impl CoverCertificate {
    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PieceKind {
    Path,
    Cycle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionPiece {
    pub colour: usize,
    /// Vertices in traversal order.
    pub vertices: Vec<usize>,
    pub kind: PieceKind,
}

/// Disjoint monochromatic paths or cycles covering the host.
///
/// Single vertices are paths and degenerate cycles; single edges are
/// degenerate cycles.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionCertificate {
    pub pieces: Vec<PartitionPiece>,
}

/// Outcome of a verifier: valid iff `problems` is empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub problems: Vec<String>,
}

impl Verification {
    pub fn is_valid(&self) -> bool {
        self.problems.is_empty()
    }

    fn push(&mut self, msg: String) {
        self.problems.push(msg);
    }
}

pub fn verify_cover(colouring: &SetColouring, cert: &CoverCertificate) -> Verification {
    let mut out = Verification::default();
    let n = colouring.vertex_count();
    let mut covered = VertexSet::with_capacity(n);
    for (i, tree) in cert.trees.iter().enumerate() {
        if tree.colour >= colouring.r() {
            out.push(format!("tree {i}: colour {} ≥ r={}", tree.colour, colouring.r()));
            continue;
        }
        if tree.vertices.is_empty() {
            out.push(format!("tree {i}: empty vertex set"));
            continue;
        }
        if let Some(v) = tree.vertices.iter().find(|&v| v >= n) {
            out.push(format!("tree {i}: vertex {v} not in host"));
            continue;
        }
        if tree.tree_edges.len() + 1 != tree.vertices.len() {
            out.push(format!(
                "tree {i}: {} edges cannot span {} vertices",
                tree.tree_edges.len(),
                tree.vertices.len()
            ));
        }
        let verts = tree.vertices.to_vec();
        let pos = |v: usize| verts.binary_search(&v).ok();
        let mut uf = UnionFind::new(verts.len());
        let mut edges_ok = true;
        for &(u, v) in &tree.tree_edges {
            let (Some(pu), Some(pv)) = (pos(u), pos(v)) else {
                out.push(format!("tree {i}: edge {u}-{v} leaves the vertex set"));
                edges_ok = false;
                continue;
            };
            match colouring.try_colour(u, v) {
                None => {
                    out.push(format!("tree {i}: {u}-{v} is not a host edge"));
                    edges_ok = false;
                }
                Some(set) if !set.contains(tree.colour) => {
                    out.push(format!(
                        "tree {i}: edge {u}-{v} has colours {set}, lacks colour {}",
                        tree.colour
                    ));
                    edges_ok = false;
                }
                Some(_) => {
                    if !uf.union(pu, pv) {
                        out.push(format!("tree {i}: edge {u}-{v} closes a cycle"));
                        edges_ok = false;
                    }
                }
            }
        }
        if edges_ok && tree.tree_edges.len() + 1 == verts.len() {
            let root = uf.find(0);
            if (1..verts.len()).any(|j| uf.find(j) != root) {
                out.push(format!("tree {i}: not connected"));
            }
        }
        covered.union_with(&tree.vertices);
    }
    for v in 0..n {
        if !covered.contains(v) {
            out.push(format!("vertex {v} uncovered"));
        }
    }
    out
}

pub fn verify_partition(colouring: &SetColouring, cert: &PartitionCertificate) -> Verification {
    let mut out = Verification::default();
    let n = colouring.vertex_count();
    let mut seen = VertexSet::with_capacity(n);
    let has = |u: usize, v: usize, c: usize| {
        colouring
            .try_colour(u, v)
            .is_some_and(|s| s.contains(c))
    };
    for (i, piece) in cert.pieces.iter().enumerate() {
        let vs = &piece.vertices;
        if piece.colour >= colouring.r() {
            out.push(format!("piece {i}: colour {} ≥ r={}", piece.colour, colouring.r()));
        }
        if vs.is_empty() {
            out.push(format!("piece {i}: empty"));
            continue;
        }
        for &v in vs {
            if v >= n {
                out.push(format!("piece {i}: vertex {v} not in host"));
            } else if !seen.insert(v) {
                out.push(format!("vertex {v} used twice"));
            }
        }
        for w in vs.windows(2) {
            if !has(w[0], w[1], piece.colour) {
                out.push(format!(
                    "piece {i}: {}-{} lacks colour {}",
                    w[0], w[1], piece.colour
                ));
            }
        }
        if piece.kind == PieceKind::Cycle && vs.len() >= 3 {
            let (first, last) = (vs[0], vs[vs.len() - 1]);
            if !has(last, first, piece.colour) {
                out.push(format!(
                    "piece {i}: closing edge {last}-{first} lacks colour {}",
                    piece.colour
                ));
            }
        }
    }
    for v in 0..n {
        if !seen.contains(v) {
            out.push(format!("vertex {v} uncovered"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{ColourSet, HostGraph};

    fn path_colouring() -> SetColouring {
        // K3 with 0-1 and 1-2 in colour 0, 0-2 in colour 1
        SetColouring::from_fn(HostGraph::complete(3), 2, Some(1), |u, v| {
            if (u, v) == (0, 2) {
                ColourSet::singleton(1)
            } else {
                ColourSet::singleton(0)
            }
        })
        .unwrap()
    }

    fn tree(colour: usize, vs: &[usize], edges: &[(usize, usize)]) -> MonoComponent {
        MonoComponent {
            colour,
            vertices: vs.iter().copied().collect(),
            tree_edges: edges.to_vec(),
        }
    }

    #[test]
    fn accepts_a_valid_cover() {
        let cert = CoverCertificate {
            trees: vec![tree(0, &[0, 1, 2], &[(0, 1), (1, 2)])],
        };
        assert!(verify_cover(&path_colouring(), &cert).is_valid());
    }

    #[test]
    fn reports_uncovered_vertex() {
        let cert = CoverCertificate {
            trees: vec![tree(0, &[0, 1], &[(0, 1)])],
        };
        let v = verify_cover(&path_colouring(), &cert);
        assert_eq!(v.problems, vec!["vertex 2 uncovered".to_string()]);
    }

    #[test]
    fn reports_edge_lacking_colour() {
        let cert = CoverCertificate {
            trees: vec![tree(0, &[0, 1, 2], &[(0, 2), (1, 2)])],
        };
        let v = verify_cover(&path_colouring(), &cert);
        assert!(!v.is_valid());
        assert!(v.problems[0].contains("lacks colour 0"));
    }

    #[test]
    fn reports_disconnected_tree() {
        let cert = CoverCertificate {
            trees: vec![tree(0, &[0, 1, 2], &[(0, 1), (0, 1)])],
        };
        assert!(!verify_cover(&path_colouring(), &cert).is_valid());
    }

    #[test]
    fn partition_checks() {
        let c = path_colouring();
        let good = PartitionCertificate {
            pieces: vec![PartitionPiece {
                colour: 0,
                vertices: vec![0, 1, 2],
                kind: PieceKind::Path,
            }],
        };
        assert!(verify_partition(&c, &good).is_valid());
        let bad_cycle = PartitionCertificate {
            pieces: vec![PartitionPiece {
                colour: 0,
                vertices: vec![0, 1, 2],
                kind: PieceKind::Cycle,
            }],
        };
        assert!(!verify_partition(&c, &bad_cycle).is_valid());
        let degenerate = PartitionCertificate {
            pieces: vec![
                PartitionPiece {
                    colour: 1,
                    vertices: vec![0, 2],
                    kind: PieceKind::Cycle,
                },
                PartitionPiece {
                    colour: 0,
                    vertices: vec![1],
                    kind: PieceKind::Cycle,
                },
            ],
        };
        assert!(verify_partition(&c, &degenerate).is_valid());
    }
}
