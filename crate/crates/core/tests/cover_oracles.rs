use proptest::prelude::*;
use setram_core::colour::ColourSet;
use setram_core::cover::{
    bipartite_bound, complete_bound, constructive_cover_bipartite, constructive_cover_complete,
    exact_cycle_partition, exact_path_partition, exact_tree_cover,
};
use setram_core::random::random_colouring;
use setram_core::reductions::{duplicate_vertex, reduce_to_partition_colouring, split_colours};
use setram_core::{verify_cover, verify_partition, HostGraph, SetColouring};

/// Vertex bitmasks of every monochromatic component with an edge, found by
/// flood fill over the host, plus every single vertex.
fn pieces(c: &SetColouring) -> Vec<u32> {
    let n = c.vertex_count();
    let mut out: Vec<u32> = (0..n).map(|v| 1 << v).collect();
    for col in 0..c.r() {
        let mut seen = 0u32;
        for s in 0..n {
            if seen >> s & 1 == 1 {
                continue;
            }
            let mut comp = 1u32 << s;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for y in 0..n {
                    if y != x && comp >> y & 1 == 0 && c.try_colour(x, y).is_some_and(|set| set.contains(col)) {
                        comp |= 1 << y;
                        stack.push(y);
                    }
                }
            }
            seen |= comp;
            out.push(comp);
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Fewest pieces covering every vertex, trying all combinations by size.
fn brute_cover(c: &SetColouring) -> usize {
    let n = c.vertex_count();
    let full = (1u32 << n) - 1;
    let ps = pieces(c);
    fn reach(ps: &[u32], from: usize, left: usize, acc: u32, full: u32) -> bool {
        if acc == full {
            return true;
        }
        if left == 0 {
            return false;
        }
        (from..ps.len()).any(|i| reach(ps, i + 1, left - 1, acc | ps[i], full))
    }
    (1..=n).find(|&t| reach(&ps, 0, t, 0, full)).unwrap()
}

#[test]
fn exact_matches_brute_force_on_random_colourings() {
    let mut seed = 0;
    for n in 3..=7 {
        for r in 2..=5 {
            for k in 1..r {
                for _ in 0..4 {
                    seed += 1;
                    let c = random_colouring(HostGraph::complete(n), r, k, seed).unwrap();
                    let ex = exact_tree_cover(&c, 10_000_000).unwrap();
                    assert_eq!(ex.value, brute_cover(&c), "seed {seed}");
                    assert!(verify_cover(&c, &ex.certificate).is_valid());
                    assert_eq!(ex.certificate.len(), ex.value);
                }
            }
        }
    }
    for (n, m) in [(2, 3), (3, 3), (3, 4), (4, 4)] {
        for r in 2..=5 {
            for k in 1..r {
                seed += 1;
                let c = random_colouring(HostGraph::bipartite(n, m), r, k, seed).unwrap();
                let ex = exact_tree_cover(&c, 10_000_000).unwrap();
                assert_eq!(ex.value, brute_cover(&c), "seed {seed}");
            }
        }
    }
}

#[test]
fn all_three_colourings_of_k4() {
    let host = HostGraph::complete(4);
    let mut worst = 0;
    for code in 0..3usize.pow(6) {
        let mut x = code;
        let sets = (0..6)
            .map(|_| {
                let s = ColourSet::singleton(x % 3);
                x /= 3;
                s
            })
            .collect();
        let c = SetColouring::new(host, 3, Some(1), sets).unwrap();
        let ex = exact_tree_cover(&c, 1_000_000).unwrap();
        assert_eq!(ex.value, brute_cover(&c), "colouring {code}");
        worst = worst.max(ex.value);
    }
    // two trees always suffice for three colours on K4
    assert_eq!(worst, 2);
}

#[test]
fn tree_cover_at_most_path_at_most_cycle() {
    for seed in 0..60 {
        let n = 4 + (seed as usize % 5);
        let c = random_colouring(HostGraph::complete(n), 3, 1 + (seed as usize % 2), seed).unwrap();
        let tc = exact_tree_cover(&c, 1_000_000).unwrap().value;
        let pp = exact_path_partition(&c).unwrap();
        let cp = exact_cycle_partition(&c).unwrap();
        assert!(verify_partition(&c, &pp.certificate).is_valid());
        assert!(verify_partition(&c, &cp.certificate).is_valid());
        assert!(tc <= pp.value && pp.value <= cp.value, "seed {seed}");
    }
}

#[test]
fn reductions_preserve_cover_number() {
    for seed in 0..40 {
        let n = 3 + (seed as usize % 5);
        let base = random_colouring(HostGraph::complete(n), 3, 1, seed).unwrap();
        let tc = exact_tree_cover(&base, 1_000_000).unwrap().value;
        let split = split_colours(&base, 2).unwrap();
        assert_eq!(exact_tree_cover(&split, 1_000_000).unwrap().value, tc);
        let dup = duplicate_vertex(&base, seed as usize % n, Some(ColourSet::singleton(seed as usize % 3))).unwrap();
        assert_eq!(exact_tree_cover(&dup, 1_000_000).unwrap().value, tc);

        let c = random_colouring(HostGraph::complete(n), 4, 2, seed).unwrap();
        let t = exact_tree_cover(&c, 1_000_000).unwrap().value;
        let reduced = reduce_to_partition_colouring(&c, ColourSet::singleton(seed as usize % 4)).unwrap();
        assert!(exact_tree_cover(&reduced, 1_000_000).unwrap().value >= t);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn complete_construction_is_valid(n in 1usize..14, r in 1usize..9, kk in 1usize..9, seed: u64) {
        let k = 1 + (kk - 1) % r;
        let c = random_colouring(HostGraph::complete(n), r, k, seed).unwrap();
        let cert = constructive_cover_complete(&c).unwrap();
        prop_assert!(verify_cover(&c, &cert).is_valid());
        prop_assert!(cert.len() <= complete_bound(r, k));
    }

    #[test]
    fn bipartite_construction_is_valid(n in 1usize..9, m in 1usize..9, r in 1usize..9, kk in 1usize..9, seed: u64) {
        let k = 1 + (kk - 1) % r;
        let c = random_colouring(HostGraph::bipartite(n, m), r, k, seed).unwrap();
        let cert = constructive_cover_bipartite(&c).unwrap();
        prop_assert!(verify_cover(&c, &cert).is_valid());
        prop_assert!(cert.len() <= bipartite_bound(r, k));
    }

    #[test]
    fn construction_never_beats_exact(n in 2usize..8, r in 2usize..6, kk in 1usize..6, seed: u64) {
        let k = 1 + (kk - 1) % r;
        let c = random_colouring(HostGraph::complete(n), r, k, seed).unwrap();
        let ex = exact_tree_cover(&c, 10_000_000).unwrap().value;
        prop_assert!(ex <= constructive_cover_complete(&c).unwrap().len());
    }
}
