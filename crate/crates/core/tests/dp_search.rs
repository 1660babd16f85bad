//! The normalized adversary search and the coloring search, checked against
//! exhaustive enumeration over all partial matchings.

mod common;

use dpcolor::dp::{find_coloring, gauge_normalize, Color, ListAssignment, Matching, MatchingAssignment};
use dpcolor::families;
use dpcolor::graph6::parse_graph6;
use dpcolor::solver::{chi_dp, chi_list, is_dp_k_colorable, SearchOptions, Verdict};
use dpcolor::Graph;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn small_fixture(max_n: usize) -> Vec<Graph> {
    common::fixture_lines().iter().map(|l| parse_graph6(l).unwrap()).filter(|g| g.n() <= max_n).collect()
}

fn every_coloring(g: &Graph, lists: &ListAssignment) -> Vec<Vec<Color>> {
    let mut out = vec![Vec::new()];
    for v in 0..g.n() {
        out = out
            .into_iter()
            .flat_map(|c| {
                lists.list(v).iter().map(move |&x| {
                    let mut c = c.clone();
                    c.push(x);
                    c
                })
            })
            .collect();
    }
    out
}

#[test]
fn normalized_search_agrees_with_full_adversary_space() {
    let opts = SearchOptions::default();
    for g in small_fixture(5) {
        let got = is_dp_k_colorable(&g, 2, &opts).unwrap().is_colorable();
        assert_eq!(got, common::brute_dp_colorable(&g, 2), "k=2 on {:?}", g.edges());
    }
    for g in small_fixture(4) {
        let got = is_dp_k_colorable(&g, 3, &opts).unwrap().is_colorable();
        assert_eq!(got, common::brute_dp_colorable(&g, 3), "k=3 on {:?}", g.edges());
    }
}

#[test]
fn certificates_replay_by_enumeration() {
    let opts = SearchOptions::default();
    for (g, k) in [(families::cycle(4), 2), (families::cycle(6), 2), (families::complete(4), 3), (families::cycle(5), 2)] {
        let Verdict::Certificate(cert) = is_dp_k_colorable(&g, k, &opts).unwrap() else {
            panic!("{:?} should not be DP-{k}-colorable", g.edges());
        };
        assert!(cert.replay(&g).unwrap());
        assert!(every_coloring(&g, &cert.lists).iter().all(|c| !common::valid_dp(&g, &cert.lists, &cert.matching, c)));
    }
}

#[test]
fn known_values() {
    let opts = SearchOptions::default();
    for n in 1..=4 {
        assert_eq!(chi_dp(&families::complete(n), &opts).unwrap().value, n);
    }
    for m in 3..=8 {
        assert_eq!(chi_dp(&families::cycle(m), &opts).unwrap().value, 3, "C{m}");
    }
    for m in [4, 6, 8] {
        assert_eq!(chi_list(&families::cycle(m), &opts).unwrap().value, 2, "C{m}");
    }
}

#[test]
fn chain_on_small_connected_graphs() {
    let opts = SearchOptions::default();
    for g in small_fixture(5) {
        let chi = common::brute_chromatic(&g);
        let l = chi_list(&g, &opts).unwrap().value;
        let dp = chi_dp(&g, &opts).unwrap().value;
        assert!(chi <= l && l <= dp, "{:?}: {chi} {l} {dp}", g.edges());
        assert!(dp <= g.degeneracy() + 1);
    }
}

#[test]
fn coloring_search_agrees_with_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..400 {
        let n = rng.gen_range(1..=6);
        let g = common::random_graph(&mut rng, n, 0.5);
        let k = rng.gen_range(1..=3);
        let lists = common::random_lists(&mut rng, n, k, 4);
        let m = common::random_matchings(&mut rng, &g, &lists, 0.5);
        let brute = every_coloring(&g, &lists).iter().any(|c| common::valid_dp(&g, &lists, &m, c));
        let found = find_coloring(&g, &lists, &m).unwrap();
        assert_eq!(found.is_some(), brute);
        if let Some(c) = found {
            assert!(common::valid_dp(&g, &lists, &m, &c.0));
        }
    }
}

#[test]
fn gauge_preserves_colorability() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..300 {
        let n = rng.gen_range(2..=7);
        let g = common::random_graph(&mut rng, n, 0.45);
        let k = rng.gen_range(2..=3);
        let lists = ListAssignment::uniform(n, k);
        let m = common::random_matchings(&mut rng, &g, &lists, 1.0);
        let tree = g.spanning_forest();
        let norm = gauge_normalize(&g, k, &m, &tree).unwrap();
        for &e in &tree {
            assert_eq!(*norm.matching.matching(e), Matching::identity(k));
        }
        let before = find_coloring(&g, &lists, &m).unwrap();
        let after = find_coloring(&g, &lists, &norm.matching).unwrap();
        assert_eq!(before.is_some(), after.is_some());
        if let Some(c) = after {
            assert!(common::valid_dp(&g, &lists, &m, &norm.transport_back(&c).0));
        }
    }
}

#[test]
fn removing_pairs_keeps_colorings() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..300 {
        let n = rng.gen_range(2..=7);
        let g = common::random_graph(&mut rng, n, 0.5);
        let lists = common::random_lists(&mut rng, n, 3, 5);
        let m = common::random_matchings(&mut rng, &g, &lists, 0.7);
        let thinned = MatchingAssignment::from_matchings(
            m.matchings()
                .iter()
                .map(|x| {
                    let mut pairs = x.pairs();
                    pairs.shuffle(&mut rng);
                    pairs.truncate(rng.gen_range(0..=pairs.len()));
                    Matching::from_pairs(&pairs).unwrap()
                })
                .collect(),
        );
        assert!(thinned.is_subset_of(&m));
        if let Some(c) = find_coloring(&g, &lists, &m).unwrap() {
            assert!(common::valid_dp(&g, &lists, &thinned, &c.0));
            assert!(find_coloring(&g, &lists, &thinned).unwrap().is_some());
        }
    }
}

fn arb_small_graph() -> impl Strategy<Value = Graph> {
    (1usize..=6).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let all = (0..n).flat_map(|j| (0..j).map(move |i| (i, j)));
            Graph::new(n, all.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn identity_matchings_are_proper_coloring(g in arb_small_graph(), k in 1usize..=3) {
        let lists = ListAssignment::uniform(g.n(), k);
        let m = MatchingAssignment::identity(&g, k);
        let found = find_coloring(&g, &lists, &m).unwrap();
        prop_assert_eq!(found.is_some(), common::brute_chromatic(&g) <= k);
    }

    #[test]
    fn colorability_is_monotone_in_k(g in arb_small_graph()) {
        let opts = SearchOptions::default();
        let mut seen = false;
        // Keep the (k!)^cyclomatic space small.
        let top = if g.cyclomatic_number() <= 4 { 4 } else { 3 };
        for k in 1..=top {
            let ok = is_dp_k_colorable(&g, k, &opts).unwrap().is_colorable();
            prop_assert!(ok || !seen, "colorable at {} but not {}", k - 1, k);
            seen |= ok;
        }
    }

    #[test]
    fn parallel_search_matches_sequential(g in arb_small_graph()) {
        let seq = is_dp_k_colorable(&g, 2, &SearchOptions::default()).unwrap();
        let par = is_dp_k_colorable(&g, 2, &SearchOptions { jobs: 4, ..SearchOptions::default() }).unwrap();
        prop_assert_eq!(seq, par);
    }
}
