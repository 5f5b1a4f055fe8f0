use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tokengraph::generators::gnp;
use tokengraph::{
    brute_force_connectivity, edge_connectivity, enumerate_graphs, local_vertex_connectivity, vertex_connectivity,
    Graph, KappaStrategy,
};

fn connected_within(g: &Graph, alive: u32) -> bool {
    let Some(start) = (0..g.n()).find(|&v| alive >> v & 1 == 1) else {
        return true;
    };
    let mut seen = 1u32 << start;
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            if alive >> w & 1 == 1 && seen >> w & 1 == 0 {
                seen |= 1 << w;
                stack.push(w);
            }
        }
    }
    seen == alive
}

/// Smallest number of vertices whose removal disconnects `g` or leaves one
/// vertex.
fn kappa_by_removal(g: &Graph) -> usize {
    let n = g.n();
    let full = (1u32 << n) - 1;
    (0..=n)
        .find(|&s| {
            (0u32..1 << n)
                .filter(|r| r.count_ones() as usize == s)
                .any(|r| n - s <= 1 || !connected_within(g, full & !r))
        })
        .unwrap()
}

/// Smallest edge cut over all bipartitions.
fn lambda_by_cuts(g: &Graph) -> usize {
    let n = g.n();
    if n == 1 {
        return 0;
    }
    (1u32..(1 << n) - 1)
        .map(|side| g.edges().filter(|&(u, v)| (side >> u & 1) != (side >> v & 1)).count())
        .min()
        .unwrap()
}

fn check(g: &Graph) {
    let kappa = kappa_by_removal(g);
    let lambda = lambda_by_cuts(g);
    assert_eq!(vertex_connectivity(g, KappaStrategy::General), kappa, "{g:?}");
    assert_eq!(edge_connectivity(g), lambda, "{g:?}");
    let brute = brute_force_connectivity(g).unwrap();
    assert_eq!((brute.kappa, brute.lambda), (kappa, lambda), "{g:?}");
    if g.is_connected() {
        assert_eq!(vertex_connectivity(g, KappaStrategy::DistanceTwo), kappa, "{g:?}");
    }
}

#[test]
fn flow_matches_removal_on_all_small_graphs() {
    for n in 1..=7 {
        for g in enumerate_graphs(n) {
            check(&g);
        }
    }
}

#[test]
fn flow_matches_removal_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x70c3);
    for _ in 0..200 {
        let n = rng.gen_range(2..=8);
        let p = rng.gen_range(0.15..0.9);
        check(&gnp(n, p, &mut rng));
    }
}

#[test]
fn distance_two_strategy_matches_general() {
    let mut checked = 0;
    for n in 3..=8 {
        for g in enumerate_graphs(n) {
            if g.is_connected() && !g.is_complete() {
                assert_eq!(
                    vertex_connectivity(&g, KappaStrategy::DistanceTwo),
                    vertex_connectivity(&g, KappaStrategy::General),
                    "{g:?}"
                );
                checked += 1;
            }
        }
    }
    // connected graphs on 3..=8 vertices, minus the six complete ones
    assert_eq!(checked, 2 + 6 + 21 + 112 + 853 + 11117 - 6);
}

#[test]
fn menger_witnesses_are_disjoint_paths_and_cuts() {
    for g in enumerate_graphs(6).into_iter().filter(Graph::is_connected) {
        for s in 0..g.n() {
            for t in s + 1..g.n() {
                if g.has_edge(s, t) {
                    continue;
                }
                let lc = local_vertex_connectivity(&g, s, t).unwrap();
                assert_eq!(lc.paths.len(), lc.value);
                assert_eq!(lc.cut.len(), lc.value);
                let mut used = 0u32;
                for p in &lc.paths {
                    assert_eq!((p[0], *p.last().unwrap()), (s, t));
                    assert!(p.windows(2).all(|w| g.has_edge(w[0], w[1])));
                    for &v in &p[1..p.len() - 1] {
                        assert_eq!(used >> v & 1, 0, "paths share {v}");
                        used |= 1 << v;
                    }
                }
                let alive = ((1u32 << g.n()) - 1) & !lc.cut.iter().fold(0, |m, &v| m | 1 << v);
                let mut seen = 1u32 << s;
                let mut stack = vec![s];
                while let Some(u) = stack.pop() {
                    for &w in g.neighbors(u) {
                        if alive >> w & 1 == 1 && seen >> w & 1 == 0 {
                            seen |= 1 << w;
                            stack.push(w);
                        }
                    }
                }
                assert_eq!(seen >> t & 1, 0, "cut does not separate");
            }
        }
    }
}
