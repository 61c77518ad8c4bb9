use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;

use reach_core::format::{parse_digraph, write_digraph};
use reach_core::oracle::CliquePoset;
use reach_core::random::random_transitive;
use reach_core::witness::{verify_witness, witness, WitnessTrace};
use reach_core::{Digraph, Error, Tables};

fn tables() -> &'static Tables {
    static T: OnceLock<Tables> = OnceLock::new();
    T.get_or_init(|| Tables::prepared(20000).unwrap())
}

fn arbitrary_digraph(max_n: usize) -> impl Strategy<Value = Digraph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(proptest::bool::weighted(0.15), n * n).prop_map(move |bits| {
            let mut g = Digraph::new(n).unwrap();
            for u in 0..n {
                for v in 0..n {
                    if u != v && bits[u * n + v] {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            g
        })
    })
}

fn transitive_digraph(max_n: usize) -> impl Strategy<Value = Digraph> {
    (1..=max_n, any::<u64>(), 0.0..=1.0f64, 0.0..=1.0f64).prop_map(|(n, seed, split, p)| {
        random_transitive(&mut ChaCha8Rng::seed_from_u64(seed), n, split, p).unwrap()
    })
}

/// Transitive digraphs with weight above `3n²/4`.
fn dense_transitive(max_n: usize) -> impl Strategy<Value = Digraph> {
    (1..=max_n, any::<u64>(), 0.0..=0.4f64, 0.6..=1.0f64)
        .prop_map(|(n, seed, split, p)| {
            random_transitive(&mut ChaCha8Rng::seed_from_u64(seed), n, split, p).unwrap()
        })
        .prop_filter("weight above 3n^2/4", |g| {
            let n = g.vertex_count() as u64;
            4 * g.weight() > 3 * n * n
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn closure_is_idempotent_and_matches_warshall(g in arbitrary_digraph(20)) {
        let c = g.transitive_closure();
        prop_assert_eq!(c.transitive_closure(), c.clone());
        prop_assert_eq!(&c, &g.transitive_closure_naive());
        prop_assert!(c.is_transitive());
        prop_assert_eq!(c.weight(), g.weight());
    }

    #[test]
    fn weight_between_n_and_n_squared(g in arbitrary_digraph(20)) {
        let n = g.vertex_count() as u64;
        let w = g.weight();
        prop_assert!(n <= w && w <= n * n);
        prop_assert_eq!(w, n + g.transitive_closure().edge_count() as u64);
    }

    #[test]
    fn clique_chain_conditions(g in transitive_digraph(24)) {
        let chain = g.clique_chain_partition().unwrap();
        prop_assert!(chain.satisfies_conditions(&g));
        let covered: usize = chain.blocks().iter().map(Vec::len).sum();
        prop_assert_eq!(covered, g.vertex_count());
    }

    #[test]
    fn weight_at_most_n_times_n_plus_m_over_two(g in transitive_digraph(24)) {
        let n = g.vertex_count() as u64;
        let m = g.largest_clique().unwrap().len() as u64;
        prop_assert!(2 * g.weight() <= n * (n + m));
        if 2 * m <= n {
            prop_assert!(4 * g.weight() <= 3 * n * n);
        }
    }

    #[test]
    fn two_clique_cross_edges_all_or_nothing(
        a in 1..8usize,
        b in 1..8usize,
        cross in proptest::collection::vec(any::<bool>(), 128),
    ) {
        let n = a + b;
        let mut g = Digraph::new(n).unwrap();
        for u in 0..n {
            for v in 0..n {
                let same = (u < a) == (v < a);
                if u != v && (same || cross[(u * n + v) % cross.len()]) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        let g = g.transitive_closure();
        let forward = (0..a).flat_map(|u| (a..n).map(move |v| (u, v))).filter(|&(u, v)| g.has_edge(u, v)).count();
        let backward = (0..a).flat_map(|u| (a..n).map(move |v| (v, u))).filter(|&(u, v)| g.has_edge(u, v)).count();
        prop_assert!(forward == 0 || forward == a * b);
        prop_assert!(backward == 0 || backward == a * b);
    }

    #[test]
    fn rearrangement_preserves_weight_and_adds_mother(g in dense_transitive(24)) {
        let (h, report) = g.rearrange_to_mother_form().unwrap();
        prop_assert_eq!(h.weight(), g.weight());
        prop_assert_eq!(report.weight, g.weight());
        prop_assert!(h.is_transitive());
        prop_assert!(!h.mother_vertices().is_empty());
        prop_assert_eq!(h.vertex_count(), g.vertex_count());
    }

    #[test]
    fn preorder_and_open_sets_count_reachable_pairs(g in transitive_digraph(24)) {
        let w = g.weight() as usize;
        let pairs = g.to_preorder();
        prop_assert_eq!(pairs.len(), w);
        prop_assert_eq!(g.minimal_open_sets().iter().map(Vec::len).sum::<usize>(), w);
        prop_assert_eq!(Digraph::from_preorder(g.vertex_count(), &pairs).unwrap(), g);
    }

    #[test]
    fn text_format_round_trip(g in arbitrary_digraph(16)) {
        prop_assert_eq!(parse_digraph(&write_digraph(&g)).unwrap(), g);
    }

    #[test]
    fn mother_vertices_add_n_times_a(g in transitive_digraph(16), a in 1..6usize) {
        let m = g.vertex_count();
        let h = g.with_mother_vertices(a);
        prop_assert_eq!(h.weight(), ((a + m) * a) as u64 + g.weight());
        prop_assert!(h.mother_vertices().len() >= a);
    }

    #[test]
    fn witness_or_rejection(n in 1..=90u64, frac in 0.0..=1.0f64) {
        let t = tables();
        let k = n + ((n * n - n) as f64 * frac).round() as u64;
        match witness(t, n, k) {
            Ok(w) => {
                prop_assert!(t.contains(n, k).unwrap());
                prop_assert!(verify_witness(n, k, &w.graph));
                let json = serde_json::to_string(&w.trace).unwrap();
                let back: WitnessTrace = serde_json::from_str(&json).unwrap();
                prop_assert_eq!(back.replay().unwrap(), w.graph);
            }
            Err(Error::NotAchievable { below, above, .. }) => {
                prop_assert!(!t.contains(n, k).unwrap());
                prop_assert!(below.is_none_or(|b| b < k && t.contains(n, b).unwrap()));
                prop_assert!(above.is_none_or(|a| a > k && t.contains(n, a).unwrap()));
            }
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn b_table_lemmas(n in 8..20000u64, m in 1..5000u64) {
        let t = tables();
        let b = |x| t.b(x).unwrap();
        let step = b(n + 1) - b(n);
        prop_assert!(n < step && step <= 2 * n + 1);
        if n + m <= 20000 {
            prop_assert!(b(n) + m <= b(n + m));
        }
    }

    #[test]
    fn weight_set_membership_matches_contains(n in 1..=400u64, frac in 0.0..=1.0f64) {
        let t = tables();
        let k = n + ((n * n - n) as f64 * frac).round() as u64;
        let w = t.weight_set(n).unwrap();
        prop_assert_eq!(w.contains(k), t.contains(n, k).unwrap());
        prop_assert_eq!(w.len(), t.wsize(n).unwrap());
        prop_assert_eq!(t.gaps(n).unwrap().contains(k), !w.contains(k));
    }

    #[test]
    fn clique_poset_weight_is_closure_weight(
        sizes in proptest::collection::vec(1..4usize, 1..6),
        coins in proptest::collection::vec(any::<bool>(), 15),
    ) {
        let t = sizes.len();
        let mut reach = vec![0u32; t];
        for i in (0..t).rev() {
            reach[i] |= 1 << i;
            for j in i + 1..t {
                if coins[(i * t + j) % coins.len()] {
                    reach[i] |= reach[j];
                }
            }
        }
        let p = CliquePoset::new(sizes, reach).unwrap();
        let g = p.expand();
        prop_assert!(g.is_transitive());
        prop_assert_eq!(g.weight(), p.weight());
    }
}
