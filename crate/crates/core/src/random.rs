//! Seeded random colourings.
//!
//! All randomness uses ChaCha8 (`rand_chacha::ChaCha8Rng::seed_from_u64`).
//! Edges are visited in index order; each edge draws one integer uniformly
//! from `0..C(r,k)` and maps it to a k-subset by colex unranking. The same
//! seed therefore reproduces the same colouring bit for bit.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::colour::{binomial, unrank_colex, ColourSet, MAX_COLOURS};
use crate::colouring::ColouringError;
use crate::{HostGraph, SetColouring};

pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniformly random k-subset of `0..r`.
pub fn random_k_subset<R: Rng + ?Sized>(rng: &mut R, r: usize, k: usize) -> ColourSet {
    let total = binomial(r as u64, k as u64);
    unrank_colex(r, k, rng.gen_range(0..total))
}

pub fn random_colouring(
    host: HostGraph,
    r: usize,
    k: usize,
    seed: u64,
) -> Result<SetColouring, ColouringError> {
    random_colouring_with(host, r, k, &mut seeded_rng(seed))
}

/// Same as [`random_colouring`], drawing from a caller-supplied generator.
pub fn random_colouring_with<R: Rng + ?Sized>(
    host: HostGraph,
    r: usize,
    k: usize,
    rng: &mut R,
) -> Result<SetColouring, ColouringError> {
    if k == 0 || k > r || r > MAX_COLOURS || !host.is_well_formed() {
        return Err(ColouringError::Parameters(format!(
            "need 1 <= k <= r <= 64 and a non-empty host, got r={r}, k={k}"
        )));
    }
    SetColouring::from_fn(host, r, Some(k), |_, _| random_k_subset(rng, r, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_colouring() {
        let a = random_colouring(HostGraph::complete(4), 5, 2, 7).unwrap();
        let b = random_colouring(HostGraph::complete(4), 5, 2, 7).unwrap();
        assert_eq!(a, b);
        let c = random_colouring(HostGraph::complete(4), 5, 2, 8).unwrap();
        assert_ne!(a.edge_sets(), c.edge_sets());
    }

    #[test]
    fn k_equal_r_gives_full_sets() {
        let c = random_colouring(HostGraph::bipartite(3, 2), 4, 4, 1).unwrap();
        assert!(c.edge_sets().iter().all(|&s| s == ColourSet::full(4)));
    }

    #[test]
    fn first_edge_is_uniform_over_pairs() {
        let samples = 10_000;
        let pairs = crate::colour::k_subsets(ColourSet::full(4), 2);
        let mut counts = vec![0usize; pairs.len()];
        for seed in 0..samples {
            let c = random_colouring(HostGraph::complete(2), 4, 2, seed).unwrap();
            let i = pairs.iter().position(|&p| p == c.edge_sets()[0]).unwrap();
            counts[i] += 1;
        }
        for &n in &counts {
            let freq = n as f64 / samples as f64;
            assert!((freq - 1.0 / 6.0).abs() <= 0.02, "frequency {freq}");
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(random_colouring(HostGraph::complete(3), 3, 4, 0).is_err());
        assert!(random_colouring(HostGraph::complete(3), 65, 1, 0).is_err());
        assert!(random_colouring(HostGraph::bipartite(3, 0), 3, 1, 0).is_err());
    }
}
