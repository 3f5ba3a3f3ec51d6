//! Property-level invariants that tie the modules together: the
//! separator/treewidth correspondences on a random corpus, the recognizer
//! against exact treewidth, and connector minimality against exhaustive
//! enumeration.

use layered_wheel::graph::Graph;
use layered_wheel::separators::treewidth::{exact_treewidth, separator_from_decomposition};
use layered_wheel::separators::{is_balanced_separator, min_balanced_separator, WeightFunction};
use layered_wheel::series_parallel::is_series_parallel;
use layered_wheel::theta::{minimal_connector, ConnectorError, ConnectorOutcome};
use num::BigUint;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

fn random_weights(n: usize, rng: &mut ChaCha8Rng) -> WeightFunction {
    let mut raw: Vec<u64> = (0..n).map(|_| rng.gen_range(0..64)).collect();
    if raw.iter().all(|&x| x == 0) {
        raw[0] = 1;
    }
    let den: u64 = raw.iter().sum();
    WeightFunction::new(raw.into_iter().map(BigUint::from).collect(), BigUint::from(den)).unwrap()
}

/// Small balanced separators for every weight function bound the treewidth:
/// if every one of 50 sampled weight functions admits a separator of size
/// at most m, then the treewidth is at most 2m.
#[test]
fn separators_bound_treewidth() {
    let mut rng = ChaCha8Rng::seed_from_u64(52);
    for trial in 0..20 {
        let n = rng.gen_range(4..=15);
        let g = random_graph(n, 0.3, &mut rng);
        let (tw, _) = exact_treewidth(&g, 25).unwrap();
        for m in 1..=3usize {
            let all_admit = (0..50).all(|_| {
                let w = random_weights(n, &mut rng);
                min_balanced_separator(&g, &w, m).is_some()
            });
            if all_admit {
                assert!(tw <= 2 * m as i64, "trial {trial}: tw {tw} > 2*{m} for n={n}");
            }
        }
    }
}

/// Any bag-based separator from an optimal decomposition is balanced and
/// has size at most treewidth + 1, for every sampled weak weight function.
#[test]
fn decomposition_bags_give_small_balanced_separators() {
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    for _ in 0..20 {
        let n = rng.gen_range(3..=15);
        let g = random_graph(n, 0.3, &mut rng);
        let (tw, td) = exact_treewidth(&g, 25).unwrap();
        for _ in 0..10 {
            let w = random_weights(n, &mut rng);
            let bag = separator_from_decomposition(&g, &w, &td).unwrap();
            assert!(bag.len() as i64 <= tw + 1);
            assert!(is_balanced_separator(&g, &w, &bag));
        }
    }
}

/// The reduction recognizer agrees with exact treewidth <= 2 on a random
/// plus structured corpus of up to 12 vertices.
#[test]
fn recognizer_agrees_with_exact_treewidth() {
    let mut rng = ChaCha8Rng::seed_from_u64(54);
    let mut corpus: Vec<Graph> = vec![
        Graph::empty(0),
        Graph::empty(5),
        Graph::path(12),
        Graph::cycle(9),
        Graph::complete(4),
        Graph::complete(5),
        Graph::wall(3),
        Graph::complete_bipartite(2, 6),
        Graph::complete_bipartite(3, 3),
    ];
    for _ in 0..60 {
        let n = rng.gen_range(1..=12);
        corpus.push(random_graph(n, 0.3, &mut rng));
    }
    for g in &corpus {
        let sp = is_series_parallel(g).is_series_parallel();
        let (tw, _) = exact_treewidth(g, 25).unwrap();
        assert_eq!(sp, tw <= 2, "n={} m={}", g.n(), g.m());
    }
}

/// Exhaustively enumerates all inclusion-minimal connectors of a small
/// graph and checks that ours is one of them; every minimal connector must
/// classify into one of the two outcomes.
#[test]
fn connector_minimality_matches_exhaustive_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    let mut tested = 0;
    'outer: for _ in 0..600 {
        let n = rng.gen_range(5..=8);
        let g = random_graph(n, 0.25, &mut rng);
        if !g.is_triangle_free() {
            continue;
        }
        let (v1, v2, v3) = (0, 1, 2);
        let rest: Vec<usize> = (3..n).collect();
        // all connected subsets of the rest seeing all three terminals
        let mut witnesses: Vec<Vec<usize>> = Vec::new();
        for mask in 1u32..(1 << rest.len()) {
            let set: Vec<usize> = rest
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect();
            if !g.is_connected_set(&set) {
                continue;
            }
            let sees_all = [v1, v2, v3]
                .iter()
                .all(|&x| g.neighbors(x).iter().any(|w| set.binary_search(w).is_ok()));
            if sees_all {
                witnesses.push(set);
            }
        }
        if witnesses.is_empty() {
            match minimal_connector(&g, v1, v2, v3) {
                Err(ConnectorError::NoConnector) => continue 'outer,
                other => panic!("expected no connector, got {other:?}"),
            }
        }
        let minimal: Vec<&Vec<usize>> = witnesses
            .iter()
            .filter(|w| !witnesses.iter().any(|o| o.len() < w.len() && o.iter().all(|v| w.contains(v))))
            .collect();
        let mc = minimal_connector(&g, v1, v2, v3).unwrap();
        assert!(
            minimal.iter().any(|m| **m == mc.f),
            "returned connector {:?} is not minimal; minimal family {minimal:?}",
            mc.f
        );
        match mc.outcome {
            ConnectorOutcome::PathForm { .. } | ConnectorOutcome::Tripod { .. } => {}
        }
        tested += 1;
    }
    assert!(tested >= 20, "too few triangle-free instances with connectors: {tested}");
}

/// The exact input from the five-vertex classification example: a path
/// between two terminals whose interior both sees the third terminal and
/// carries an edge. That graph contains a triangle, so the precondition
/// check must reject it.
#[test]
fn connector_example_with_triangle_is_rejected() {
    // v1=0, v2=1, v3=2; path 0-3-4-1; 2 adjacent to both 3 and 4
    let g = Graph::from_edges(5, &[(0, 3), (3, 4), (4, 1), (2, 3), (2, 4)]).unwrap();
    match minimal_connector(&g, 0, 1, 2) {
        Err(ConnectorError::NotTriangleFree(t)) => assert_eq!(t, [2, 3, 4]),
        other => panic!("expected a triangle rejection, got {other:?}"),
    }
}

mod properties {
    use super::*;
    use layered_wheel::model::contract_model;
    use proptest::prelude::*;

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..16).prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            let len = pairs.len();
            proptest::collection::vec(any::<bool>(), len).prop_map(move |mask| {
                let edges: Vec<(usize, usize)> =
                    pairs.iter().zip(&mask).filter(|(_, &m)| m).map(|(&e, _)| e).collect();
                Graph::from_edges(n, &edges).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        /// Contracting the all-singleton cover reproduces the host.
        #[test]
        fn singleton_contraction_is_identity(g in arb_graph()) {
            let sets: Vec<Vec<usize>> = (0..g.n()).map(|v| vec![v]).collect();
            let c = contract_model(&g, &sets, false).unwrap();
            prop_assert_eq!(c.graph, g);
        }

        /// An induced subgraph of an induced subgraph equals the direct one.
        #[test]
        fn induced_subgraphs_compose(g in arb_graph(), picks in proptest::collection::vec(any::<bool>(), 16)) {
            let x: Vec<usize> = (0..g.n()).filter(|&v| picks.get(v).copied().unwrap_or(false)).collect();
            let (gx, mx) = g.induced_subgraph(&x).unwrap();
            let y: Vec<usize> = x.iter().copied().filter(|&v| v % 2 == 0).collect();
            let y_in_x: Vec<usize> = y.iter().map(|&v| mx.to_new(v).unwrap()).collect();
            let (gxy, _) = gx.induced_subgraph(&y_in_x).unwrap();
            let (gy, _) = g.induced_subgraph(&y).unwrap();
            prop_assert_eq!(gxy, gy);
        }
    }
}
