use std::collections::HashSet;

use proptest::prelude::*;
use tokengraph::{
    build_token_graph, canonical_form, complement_iso, construct_disjoint_family, edge_connectivity, emit_graph6,
    min_token_degree, parse_graph6, vertex_connectivity, Graph, KappaStrategy, TokenConfig,
};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::from_edges(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
        })
    })
}

/// Random labelled trees from Prüfer sequences.
fn tree_strategy(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(0..n, n - 2).prop_map(move |seq| {
            let mut degree = vec![1usize; n];
            for &s in &seq {
                degree[s] += 1;
            }
            let mut edges = Vec::new();
            for &s in &seq {
                let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
                edges.push((leaf, s));
                degree[leaf] -= 1;
                degree[s] -= 1;
            }
            let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
            edges.push((rest[0], rest[1]));
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn kappa_lambda_delta_chain(g in graph_strategy(9)) {
        let kappa = vertex_connectivity(&g, KappaStrategy::General);
        let lambda = edge_connectivity(&g);
        prop_assert!(kappa <= lambda);
        prop_assert!(lambda <= g.min_degree());
        if g.is_connected() {
            prop_assert_eq!(vertex_connectivity(&g, KappaStrategy::DistanceTwo), kappa);
        }
    }

    #[test]
    fn token_graph_chain(g in graph_strategy(7), k_seed in 0usize..8) {
        prop_assume!(g.n() >= 2);
        let k = 1 + k_seed % (g.n() - 1);
        let fk = build_token_graph(&g, k).unwrap();
        let h = fk.graph();
        let kappa = vertex_connectivity(h, KappaStrategy::General);
        let lambda = edge_connectivity(h);
        prop_assert!(kappa <= lambda && lambda <= h.min_degree());
        prop_assert_eq!(h.min_degree(), min_token_degree(&g, k).unwrap());
    }

    #[test]
    fn complement_is_an_involution(n in 1usize..20, mask in any::<u64>()) {
        let a = TokenConfig::from_mask(mask & ((1 << n) - 1));
        let c = complement_iso(a, n);
        prop_assert_eq!(c.k(), n - a.k());
        prop_assert_eq!(c.mask() & a.mask(), 0);
        prop_assert_eq!(complement_iso(c, n), a);
    }

    #[test]
    fn graph6_round_trip(g in graph_strategy(12)) {
        let text = emit_graph6(&g).unwrap();
        prop_assert_eq!(parse_graph6(&text).unwrap(), g);
    }

    #[test]
    fn canonical_form_ignores_labels(g in graph_strategy(9), seed in any::<u64>()) {
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        prop_assert_eq!(canonical_form(&g), canonical_form(&g.permuted(&perm)));
    }

    #[test]
    fn trees_meet_min_degree(t in tree_strategy(2, 9), k_seed in 0usize..8) {
        let k = 1 + k_seed % (t.n() - 1);
        let fk = build_token_graph(&t, k).unwrap();
        let delta = fk.graph().min_degree();
        prop_assert_eq!(vertex_connectivity(fk.graph(), KappaStrategy::DistanceTwo), delta);
        prop_assert_eq!(edge_connectivity(fk.graph()), delta);
    }

    /// Families built for random pairs, including those that go through a
    /// complement or relabelling before construction, come back as disjoint
    /// paths between the original endpoints.
    #[test]
    fn families_survive_pullback(t in tree_strategy(4, 10), k_seed in 0usize..9, pick in any::<prop::sample::Index>()) {
        let k = 1 + k_seed % (t.n() - 1);
        let fk = build_token_graph(&t, k).unwrap();
        let pairs = fk.distance_two_pairs();
        prop_assume!(!pairs.is_empty());
        let (i, j) = pairs[pick.index(pairs.len())];
        let (x, y) = (fk.config(i), fk.config(j));
        let fam = construct_disjoint_family(&t, k, x, y).unwrap();
        prop_assert!(fam.len() >= fk.graph().min_degree());
        let mut inner = HashSet::new();
        for p in fam.token_paths() {
            let configs = p.configs();
            prop_assert_eq!((configs[0], *configs.last().unwrap()), (x, y));
            for w in configs.windows(2) {
                prop_assert!(fk.are_adjacent(w[0], w[1]));
            }
            for a in &configs[1..configs.len() - 1] {
                prop_assert!(inner.insert(*a));
            }
        }
    }
}
