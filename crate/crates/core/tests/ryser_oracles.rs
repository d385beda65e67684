use proptest::prelude::*;
use setram_core::cover::exact_tree_cover;
use setram_core::random::{random_colouring, seeded_rng};
use setram_core::ryser::{
    colouring_to_hypergraph, hypergraph_to_colouring, is_transversal, matching_number, random_intersecting,
    ryser_transversal, saturate, transversal_exact, Hypergraph,
};
use setram_core::HostGraph;

/// Smallest transversal by trying every vertex subset in order of size.
fn brute_tau(h: &Hypergraph) -> usize {
    let vertices: Vec<(usize, usize)> = (0..h.parts())
        .flat_map(|c| (0..h.part_sizes()[c]).map(move |x| (c, x)))
        .collect();
    assert!(vertices.len() <= 20);
    let mut best = usize::MAX;
    for mask in 0u32..1 << vertices.len() {
        let size = mask.count_ones() as usize;
        if size >= best {
            continue;
        }
        let t: Vec<(usize, usize)> = (0..vertices.len()).filter(|&i| mask >> i & 1 == 1).map(|i| vertices[i]).collect();
        if h.edges().iter().all(|e| t.iter().any(|&(c, x)| e[c] == x)) {
            best = size;
        }
    }
    best
}

#[test]
fn tau_equals_tree_cover_of_intersection_graph() {
    let mut rng = seeded_rng(11);
    for round in 0..120 {
        let r = 3 + round % 2;
        let h = random_intersecting(&mut rng, r, 1, 4, 4 + round % 9, 2000);
        let g = hypergraph_to_colouring(&h).unwrap();
        let tc = exact_tree_cover(&g, 10_000_000).unwrap().value;
        let tau = transversal_exact(&h, 10_000_000).unwrap();
        assert!(is_transversal(&h, &tau.vertices));
        assert_eq!(tau.size, tc, "round {round}");
        assert_eq!(tau.size, brute_tau(&h), "round {round}");
        assert_eq!(matching_number(&h, 1_000_000).unwrap(), 1);
    }
}

#[test]
fn ryser_pipeline_is_valid_and_bounded() {
    let mut rng = seeded_rng(5);
    for round in 0..80 {
        let (r, k) = [(3, 1), (4, 2), (5, 2), (5, 3), (6, 3)][round % 5];
        let h = random_intersecting(&mut rng, r, k, 3, 10, 4000);
        let t = ryser_transversal(&h, k).unwrap();
        assert!(is_transversal(&h, &t.vertices), "round {round}");
        assert!(t.vertices.len() <= t.bound, "round {round}");
        assert!(t.vertices.len() >= transversal_exact(&h, 10_000_000).unwrap().size);
        if (r, k) == (5, 2) {
            assert!(t.vertices.len() <= 3);
        }
    }
}

#[test]
fn saturation_keeps_tree_cover() {
    for seed in 0..30 {
        let c = random_colouring(HostGraph::complete(8), 4, 2, seed).unwrap();
        let s = saturate(&c).unwrap();
        assert_eq!(
            exact_tree_cover(&c, 10_000_000).unwrap().value,
            exact_tree_cover(&s, 10_000_000).unwrap().value
        );
        // edges only gain colours
        for (u, v, set) in c.edges() {
            assert!(set.is_subset(s.colour(u, v)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn saturated_colourings_round_trip(n in 2usize..7, seed: u64) {
        let c = random_colouring(HostGraph::complete(n), 3, 2, seed).unwrap();
        let s = saturate(&c).unwrap();
        let h = colouring_to_hypergraph(&s).unwrap();
        prop_assert_eq!(hypergraph_to_colouring(&h).unwrap(), s);
    }

    #[test]
    fn intersecting_hypergraphs_round_trip(r in 2usize..5, count in 1usize..10, seed: u64) {
        let mut rng = seeded_rng(seed);
        let h = random_intersecting(&mut rng, r, 1, 3, count, 500);
        let g = hypergraph_to_colouring(&h).unwrap();
        let back = colouring_to_hypergraph(&g).unwrap();
        prop_assert_eq!(back.canonical(), h.canonical());
    }
}
