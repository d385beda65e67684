use setram_core::colour::{k_subsets, ColourSet};
use setram_core::constructions::{code_colouring, distance_code, hamming, turan_affine_colouring};
use setram_core::random::random_colouring;
use setram_core::ramsey::{
    has_mono_subgraph, ramsey_number, ramsey_search, trivial_ramsey_predicate, SearchOptions, SearchOutcome,
    TargetGraph,
};
use setram_core::{HostGraph, SetColouring};

/// Whether some (r,k)-colouring of K_n has no monochromatic triangle, by
/// plain enumeration of every colouring (odometer over edge choices).
fn brute_triangle_avoidable(r: usize, k: usize, n: usize) -> bool {
    let sets: Vec<u64> = k_subsets(ColourSet::full(r), k).into_iter().map(|s| s.0).collect();
    let edges: Vec<(usize, usize)> = HostGraph::complete(n).edges().collect();
    let id = |a: usize, b: usize| edges.iter().position(|&e| e == (a.min(b), a.max(b))).unwrap();
    let triangles: Vec<[usize; 3]> = (0..n)
        .flat_map(|a| (a + 1..n).flat_map(move |b| (b + 1..n).map(move |c| (a, b, c))))
        .map(|(a, b, c)| [id(a, b), id(a, c), id(b, c)])
        .collect();
    let mut choice = vec![0usize; edges.len()];
    loop {
        let mono = triangles
            .iter()
            .any(|t| sets[choice[t[0]]] & sets[choice[t[1]]] & sets[choice[t[2]]] != 0);
        if !mono {
            return true;
        }
        let mut i = 0;
        loop {
            if i == choice.len() {
                return false;
            }
            choice[i] += 1;
            if choice[i] < sets.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Backtracking with only the "no monochromatic triangle so far" check.
fn backtrack_triangle_avoidable(r: usize, k: usize, n: usize) -> bool {
    let sets: Vec<u64> = k_subsets(ColourSet::full(r), k).into_iter().map(|s| s.0).collect();
    let mut col = vec![vec![0u64; n]; n];
    fn go(sets: &[u64], col: &mut Vec<Vec<u64>>, n: usize, u: usize, v: usize) -> bool {
        if v == n {
            return if u + 2 >= n { true } else { go(sets, col, n, u + 1, u + 2) };
        }
        for &s in sets {
            if (0..n).any(|w| w != u && w != v && col[u][w] & col[v][w] & s != 0) {
                continue;
            }
            col[u][v] = s;
            col[v][u] = s;
            if go(sets, col, n, u, v + 1) {
                return true;
            }
        }
        col[u][v] = 0;
        col[v][u] = 0;
        false
    }
    n < 2 || go(&sets, &mut col, n, 0, 1)
}

fn avoidable(rep: &SearchOutcome) -> Option<bool> {
    match rep {
        SearchOutcome::Avoidable { .. } => Some(true),
        SearchOutcome::Unavoidable => Some(false),
        SearchOutcome::BudgetExceeded => None,
    }
}

#[test]
fn three_two_triangle_against_enumeration() {
    let o = SearchOptions::default();
    for n in 3..=5 {
        let rep = ramsey_search(3, 2, TargetGraph::Clique(3), n, &o).unwrap();
        assert_eq!(avoidable(&rep.outcome), Some(brute_triangle_avoidable(3, 2, n)), "n={n}");
    }
    assert!(brute_triangle_avoidable(3, 2, 4));
    assert!(!brute_triangle_avoidable(3, 2, 5));
}

#[test]
fn symmetry_breaking_agrees_with_plain_search() {
    let plain = SearchOptions { symmetry: false, degree_prune: false, ..Default::default() };
    let full = SearchOptions::default();
    for r in 1..=3 {
        for k in 1..=r.min(2) {
            for n in 2..=5 {
                for target in [TargetGraph::Clique(3), TargetGraph::OddCycle(3), TargetGraph::Clique(4)] {
                    let a = ramsey_search(r, k, target, n, &plain).unwrap();
                    let b = ramsey_search(r, k, target, n, &full).unwrap();
                    assert_eq!(avoidable(&a.outcome), avoidable(&b.outcome), "({r},{k},{target},{n})");
                    assert!(a.nodes >= b.nodes);
                }
            }
        }
    }
}

#[test]
fn pruned_search_agrees_with_backtracking() {
    let o = SearchOptions::default();
    for r in 2..=5 {
        for k in 1..=r {
            for n in 3..=6 {
                let rep = ramsey_search(r, k, TargetGraph::Clique(3), n, &o).unwrap();
                assert_eq!(
                    avoidable(&rep.outcome),
                    Some(backtrack_triangle_avoidable(r, k, n)),
                    "({r},{k},{n})"
                );
            }
        }
    }
}

#[test]
fn five_three_triangle_is_five() {
    assert!(backtrack_triangle_avoidable(5, 3, 4));
    assert!(!backtrack_triangle_avoidable(5, 3, 5));
    let v = ramsey_number(5, 3, TargetGraph::Clique(3), 10, &SearchOptions::default()).unwrap();
    assert_eq!(v.value, Some(5));
}

#[test]
fn trivial_predicate_matches_search_and_enumeration() {
    let o = SearchOptions::default();
    for r in 1..=6 {
        for k in 1..=r {
            let trivial = trivial_ramsey_predicate(r, k, 3);
            assert_eq!(trivial, !brute_triangle_avoidable(r, k, 3), "({r},{k})");
            let rep = ramsey_search(r, k, TargetGraph::Clique(3), 3, &o).unwrap();
            assert_eq!(avoidable(&rep.outcome), Some(!trivial), "({r},{k})");
        }
    }
}

#[test]
fn monotone_in_r_and_k() {
    let o = SearchOptions::default();
    let mut value = std::collections::HashMap::new();
    for (r, k) in [(2, 1), (2, 2), (3, 2), (3, 3), (4, 2), (4, 3), (4, 4), (5, 3), (5, 4), (5, 5)] {
        let v = ramsey_number(r, k, TargetGraph::Clique(3), 12, &o).unwrap();
        value.insert((r, k), v.value.unwrap_or_else(|| panic!("({r},{k}) not settled: {v:?}")));
    }
    assert_eq!(value[&(2, 1)], 6);
    assert_eq!(value[&(3, 2)], 5);
    assert_eq!(value[&(4, 2)], 9);
    for (&(r, k), &x) in &value {
        if let Some(&y) = value.get(&(r + 1, k)) {
            assert!(x <= y, "({r},{k}) vs ({},{k})", r + 1);
        }
        if let Some(&y) = value.get(&(r, k + 1)) {
            assert!(x >= y, "({r},{k}) vs ({r},{})", k + 1);
        }
    }
}

#[test]
fn witnesses_pass_independent_check() {
    let o = SearchOptions { threads: 3, ..Default::default() };
    for (r, k, n) in [(3, 2, 4), (2, 1, 5), (4, 2, 8), (5, 3, 4)] {
        let rep = ramsey_search(r, k, TargetGraph::Clique(3), n, &o).unwrap();
        let SearchOutcome::Avoidable { witness } = rep.outcome else {
            panic!("({r},{k},{n}) should be avoidable");
        };
        assert!(witness.validate().is_empty());
        assert_eq!(witness.uniform_k(), Some(k));
        // triangles by direct triple scan
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let common = witness.colour(a, b).intersection(witness.colour(a, c)).intersection(witness.colour(b, c));
                    assert!(common.is_empty());
                }
            }
        }
    }
}

#[test]
fn mono_detection_against_triple_scan() {
    for seed in 0..200 {
        let n = 3 + (seed as usize % 6);
        let c = random_colouring(HostGraph::complete(n), 3, 1 + (seed as usize % 2), seed).unwrap();
        let mut first = None;
        'outer: for col in 0..3 {
            for a in 0..n {
                for b in a + 1..n {
                    for d in b + 1..n {
                        if [(a, b), (a, d), (b, d)].iter().all(|&(x, y)| c.colour(x, y).contains(col)) {
                            first = Some((col, vec![a, b, d]));
                            break 'outer;
                        }
                    }
                }
            }
        }
        let got = has_mono_subgraph(&c, TargetGraph::Clique(3)).map(|w| (w.colour, w.vertices));
        assert_eq!(got, first, "seed {seed}");
        let cyc = has_mono_subgraph(&c, TargetGraph::OddCycle(3)).map(|w| (w.colour, w.vertices));
        assert_eq!(cyc, first, "seed {seed}");
    }
}

#[test]
fn construction_witnesses_avoid_targets() {
    let code = distance_code(4, 2).unwrap();
    let c = code_colouring(&code, 2).unwrap();
    assert_eq!(c.vertex_count(), 8);
    assert!(has_mono_subgraph(&c, TargetGraph::Clique(3)).is_none());
    assert!(has_mono_subgraph(&c, TargetGraph::OddCycle(5)).is_none());
    let t = turan_affine_colouring(3).unwrap();
    assert!(has_mono_subgraph(&t, TargetGraph::Clique(4)).is_none());
    assert!(has_mono_subgraph(&t, TargetGraph::Clique(3)).is_some());
    let t2 = turan_affine_colouring(2).unwrap();
    assert!(has_mono_subgraph(&t2, TargetGraph::Clique(3)).is_none());
}

#[test]
fn distance_codes_have_size_and_distance() {
    for k in 2..=3 {
        for r in k..=13 {
            if (r - 1) % (k - 1) != 0 {
                continue;
            }
            let code = distance_code(r, k).unwrap();
            assert_eq!(code.len(), 1 << ((r - 1) / (k - 1)));
            for (i, a) in code.iter().enumerate() {
                for b in &code[i + 1..] {
                    assert!(hamming(a, b) >= k);
                }
            }
        }
    }
}

#[test]
fn json_report_round_trip() {
    let rep = ramsey_search(3, 2, TargetGraph::Clique(3), 4, &SearchOptions::default()).unwrap();
    let text = serde_json::to_string(&rep).unwrap();
    let back: setram_core::ramsey::SearchReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, rep);
    let w: SetColouring = match back.outcome {
        SearchOutcome::Avoidable { witness } => witness,
        _ => unreachable!(),
    };
    assert_eq!(w.vertex_count(), 4);
}
