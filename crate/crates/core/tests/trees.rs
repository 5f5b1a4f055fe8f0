use std::collections::HashSet;

use tokengraph::{canonical_form, enumerate_trees, CanonicalForm, Graph};

// OEIS A000055, n = 1..=12.
const FREE_TREES: [usize; 12] = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551];

fn prufer_decode(seq: &[usize], n: usize) -> Graph {
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::from_edges(n, edges).unwrap()
}

/// Every labelled tree via Prüfer sequences, deduplicated up to isomorphism.
fn prufer_classes(n: usize) -> HashSet<CanonicalForm> {
    if n <= 2 {
        let g = if n == 1 { Graph::empty(1).unwrap() } else { Graph::from_edges(2, [(0, 1)]).unwrap() };
        return HashSet::from([canonical_form(&g)]);
    }
    let len = n - 2;
    let mut seq = vec![0usize; len];
    let mut out = HashSet::new();
    loop {
        out.insert(canonical_form(&prufer_decode(&seq, n)));
        let mut i = 0;
        while i < len && seq[i] == n - 1 {
            seq[i] = 0;
            i += 1;
        }
        if i == len {
            break;
        }
        seq[i] += 1;
    }
    out
}

#[test]
fn counts_match_oeis() {
    for n in 1..=12 {
        let trees = enumerate_trees(n).unwrap();
        assert_eq!(trees.len(), FREE_TREES[n - 1], "n = {n}");
        for t in &trees {
            assert!(t.is_tree());
            assert_eq!(t.n(), n);
        }
    }
}

#[test]
fn agrees_with_prufer_enumeration() {
    for n in 1..=8 {
        let expected = prufer_classes(n);
        let got: HashSet<CanonicalForm> = enumerate_trees(n)
            .unwrap()
            .iter()
            .map(canonical_form)
            .collect();
        assert_eq!(got.len(), FREE_TREES[n - 1], "duplicates at n = {n}");
        assert_eq!(got, expected, "n = {n}");
    }
}
