//! Exact partitions into monochromatic paths or cycles.
//!
//! For each colour a bitmask DP records which vertex subsets carry a
//! Hamiltonian path (or cycle) of that colour; a second DP over subsets of
//! the remaining vertices picks the fewest pieces. A single vertex is a path
//! and a degenerate cycle; a single edge is a degenerate cycle.

use crate::certificate::{PartitionCertificate, PartitionPiece, PieceKind};
use crate::SetColouring;

use super::CoverError;

pub const MAX_PARTITION_VERTICES: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactPartition {
    pub value: usize,
    pub certificate: PartitionCertificate,
}

struct ColourTables {
    adj: Vec<u32>,
    /// `ends[S]`: vertices at which a colour path through exactly S can end.
    /// For cycles the path is rooted at the smallest vertex of S.
    ends: Vec<u32>,
}

fn tables(c: &SetColouring, colour: usize, kind: PieceKind) -> ColourTables {
    let n = c.vertex_count();
    let mut adj = vec![0u32; n];
    for (u, v, s) in c.edges() {
        if s.contains(colour) {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
    }
    let mut ends = vec![0u32; 1 << n];
    for s in 1usize..1 << n {
        let s32 = s as u32;
        if s.count_ones() == 1 {
            ends[s] = s32;
            continue;
        }
        let mut out = 0u32;
        let mut rest = s32;
        if kind == PieceKind::Cycle {
            // the root is never the end of a longer path
            rest &= !(1 << s32.trailing_zeros());
        }
        while rest != 0 {
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            let prev = s & !(1 << v);
            if ends[prev] & adj[v as usize] != 0 {
                out |= 1 << v;
            }
        }
        ends[s] = out;
    }
    ColourTables { adj, ends }
}

impl ColourTables {
    fn fits(&self, s: usize, kind: PieceKind) -> bool {
        match kind {
            PieceKind::Path => self.ends[s] != 0,
            PieceKind::Cycle => {
                let size = s.count_ones();
                let root = s.trailing_zeros() as usize;
                if size <= 2 {
                    self.ends[s] != 0
                } else {
                    self.ends[s] & self.adj[root] != 0
                }
            }
        }
    }

    /// Vertex order of a piece on `s`, walking the DP backwards.
    fn order(&self, s: usize, kind: PieceKind) -> Vec<usize> {
        let root = s.trailing_zeros();
        let mut end_mask = self.ends[s];
        if kind == PieceKind::Cycle && s.count_ones() >= 3 {
            end_mask &= self.adj[root as usize];
        }
        let mut v = end_mask.trailing_zeros();
        let mut set = s;
        let mut seq = vec![v as usize];
        while set.count_ones() > 1 {
            set &= !(1 << v);
            let cand = self.ends[set] & self.adj[v as usize];
            v = cand.trailing_zeros();
            seq.push(v as usize);
        }
        seq.reverse();
        seq
    }
}

fn solve(c: &SetColouring, kind: PieceKind) -> Result<ExactPartition, CoverError> {
    let n = c.vertex_count();
    if n > MAX_PARTITION_VERTICES {
        return Err(CoverError::TooLarge {
            n,
            max: MAX_PARTITION_VERTICES,
        });
    }
    if n == 0 {
        return Ok(ExactPartition {
            value: 0,
            certificate: PartitionCertificate::default(),
        });
    }
    let tabs: Vec<ColourTables> = (0..c.r()).map(|col| tables(c, col, kind)).collect();
    let full = (1usize << n) - 1;
    // smallest colour carrying a piece on S, if any
    let piece_colour: Vec<u8> = (0..=full)
        .map(|s| {
            (0..c.r())
                .find(|&col| s != 0 && tabs[col].fits(s, kind))
                .map_or(u8::MAX, |col| col as u8)
        })
        .collect();
    let mut best = vec![u8::MAX; full + 1];
    let mut choice = vec![0usize; full + 1];
    best[0] = 0;
    for s in 1..=full {
        let low = s & s.wrapping_neg();
        let others = s & !low;
        // enumerate subsets T of S containing the lowest vertex
        let mut sub = others;
        loop {
            let t = sub | low;
            if piece_colour[t] != u8::MAX {
                let cost = best[s & !t].saturating_add(1);
                if cost < best[s] || (cost == best[s] && t > choice[s]) {
                    best[s] = cost;
                    choice[s] = t;
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & others;
        }
    }
    let mut pieces = Vec::new();
    let mut s = full;
    while s != 0 {
        let t = choice[s];
        let col = piece_colour[t] as usize;
        pieces.push(PartitionPiece {
            colour: col,
            vertices: tabs[col].order(t, kind),
            kind,
        });
        s &= !t;
    }
    Ok(ExactPartition {
        value: best[full] as usize,
        certificate: PartitionCertificate { pieces },
    })
}

/// Fewest vertex-disjoint monochromatic paths covering the host.
pub fn exact_path_partition(c: &SetColouring) -> Result<ExactPartition, CoverError> {
    solve(c, PieceKind::Path)
}

/// Fewest vertex-disjoint monochromatic cycles (degenerate ones allowed)
/// covering the host.
pub fn exact_cycle_partition(c: &SetColouring) -> Result<ExactPartition, CoverError> {
    solve(c, PieceKind::Cycle)
}
