//! Canonical forms for small graphs and enumeration of isomorphism classes.
//!
//! Labeling uses colour refinement plus individualisation. Two prunings:
//! twins (vertices whose neighbourhoods agree apart from each other) are
//! interchangeable, so only one per cell is branched on; and leaves with
//! equal certificates yield automorphisms, whose orbits (restricted to those
//! fixing the individualised prefix) cut sibling branches. Meant for graphs
//! of a few dozen vertices.

use std::collections::{BTreeMap, HashSet};

use crate::graph::Graph;

/// Certificate that is equal for two graphs iff they are isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: usize,
    bits: Vec<u64>,
}

/// Refines `colors` to the coarsest equitable partition finer than it.
/// Colours are renumbered `0..` by sorted signature, so the result is
/// isomorphism-invariant.
fn refine(g: &Graph, colors: &mut [usize]) {
    let n = g.n();
    let mut classes = count_classes(colors);
    loop {
        let signatures: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).iter().map(|&w| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut sorted: Vec<&(usize, Vec<usize>)> = signatures.iter().collect();
        sorted.sort();
        sorted.dedup();
        let rank: BTreeMap<&(usize, Vec<usize>), usize> =
            sorted.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        for v in 0..n {
            colors[v] = rank[&signatures[v]];
        }
        let now = sorted.len();
        if now == classes {
            return;
        }
        classes = now;
    }
}

fn count_classes(colors: &[usize]) -> usize {
    colors.iter().collect::<HashSet<_>>().len()
}

fn certificate(g: &Graph, colors: &[usize]) -> Vec<u64> {
    // `colors` is a bijection onto 0..n here.
    let n = g.n();
    let mut inv = vec![0; n];
    for (v, &c) in colors.iter().enumerate() {
        inv[c] = v;
    }
    let bits = n * n.saturating_sub(1) / 2;
    let mut out = vec![0u64; bits.div_ceil(64).max(1)];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if g.has_edge(inv[i], inv[j]) {
                out[k / 64] |= 1 << (k % 64);
            }
            k += 1;
        }
    }
    out
}

fn twins(g: &Graph, u: usize, v: usize) -> bool {
    let strip = |a: usize, b: usize| g.neighbors(a).iter().copied().filter(move |&w| w != b);
    g.degree(u) == g.degree(v) && strip(u, v).eq(strip(v, u))
}

/// Leaf labelling: vertex `v` gets position `labels[v]`.
struct Leaf {
    labels: Vec<usize>,
    cert: Vec<u64>,
}

#[derive(Default)]
struct Search {
    first: Option<Leaf>,
    best: Option<Leaf>,
    automorphisms: Vec<Vec<usize>>,
}

impl Search {
    fn leaf(&mut self, g: &Graph, labels: Vec<usize>) {
        let cert = certificate(g, &labels);
        for known in [&self.first, &self.best].into_iter().flatten() {
            if known.cert == cert {
                // labels_known^-1 ∘ labels maps the graph onto itself.
                let mut inv = vec![0; labels.len()];
                for (v, &c) in known.labels.iter().enumerate() {
                    inv[c] = v;
                }
                let gamma: Vec<usize> = labels.iter().map(|&c| inv[c]).collect();
                if gamma.iter().enumerate().any(|(v, &w)| v != w) {
                    self.automorphisms.push(gamma);
                }
                return;
            }
        }
        if self.first.is_none() {
            self.first = Some(Leaf { labels: labels.clone(), cert: cert.clone() });
        }
        if self.best.as_ref().is_none_or(|b| cert > b.cert) {
            self.best = Some(Leaf { labels, cert });
        }
    }

    /// Whether `v` lies in the orbit of a tried vertex under the known
    /// automorphisms that fix `prefix` pointwise.
    fn equivalent(&self, prefix: &[usize], tried: &[usize], v: usize) -> bool {
        let fixing: Vec<&Vec<usize>> =
            self.automorphisms.iter().filter(|a| prefix.iter().all(|&p| a[p] == p)).collect();
        if fixing.is_empty() {
            return false;
        }
        let n = fixing[0].len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for a in fixing {
            for (u, &w) in a.iter().enumerate() {
                let (ru, rw) = (find(&mut parent, u), find(&mut parent, w));
                parent[ru] = rw;
            }
        }
        let rv = find(&mut parent, v);
        tried.iter().any(|&u| find(&mut parent, u) == rv)
    }

    fn run(&mut self, g: &Graph, mut colors: Vec<usize>, prefix: &mut Vec<usize>) {
        refine(g, &mut colors);
        let n = g.n();
        let mut sizes = vec![0usize; n];
        for &c in &colors {
            sizes[c] += 1;
        }
        let Some(target) = (0..n).find(|&c| sizes[c] > 1) else {
            self.leaf(g, colors);
            return;
        };
        let mut tried: Vec<usize> = Vec::new();
        for v in 0..n {
            if colors[v] != target
                || tried.iter().any(|&u| twins(g, u, v))
                || self.equivalent(prefix, &tried, v)
            {
                continue;
            }
            tried.push(v);
            let child = colors
                .iter()
                .enumerate()
                .map(|(w, &c)| if w == v { 2 * c } else { 2 * c + 1 })
                .collect();
            prefix.push(v);
            self.run(g, child, prefix);
            prefix.pop();
        }
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let mut state = Search::default();
    state.run(g, vec![0; g.n()], &mut Vec::new());
    CanonicalForm {
        n: g.n(),
        bits: state.best.expect("search reaches at least one leaf").cert,
    }
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.edge_count() == b.edge_count() && canonical_form(a) == canonical_form(b)
}

/// One representative per isomorphism class of graphs on `n` vertices,
/// built by adding a vertex with every possible neighbourhood to each class
/// on `n - 1` vertices. Output is sorted by (edge count, canonical form).
pub fn enumerate_graphs(n: usize) -> Vec<Graph> {
    assert!((1..=9).contains(&n), "graph enumeration supports 1 <= n <= 9");
    let mut level = vec![Graph::empty(1).unwrap()];
    for order in 2..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &level {
            let prev = order - 1;
            for subset in 0u64..1 << prev {
                let mut adj: Vec<Vec<usize>> = (0..prev).map(|v| g.neighbors(v).to_vec()).collect();
                adj.push(Vec::new());
                for v in 0..prev {
                    if subset >> v & 1 == 1 {
                        adj[v].push(prev);
                        adj[prev].push(v);
                    }
                }
                let h = Graph::from_adjacency_unchecked(adj);
                let form = canonical_form(&h);
                if seen.insert(form.clone()) {
                    next.push((h.edge_count(), form, h));
                }
            }
        }
        next.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        level = next.into_iter().map(|(_, _, g)| g).collect();
    }
    level
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn relabelling_preserves_form() {
        let p = generators::petersen();
        let perm = [3, 7, 1, 9, 0, 2, 8, 4, 6, 5];
        assert_eq!(canonical_form(&p), canonical_form(&p.permuted(&perm)));
        assert!(!are_isomorphic(&generators::path(4), &generators::star(3)));
        assert!(are_isomorphic(&generators::cycle(6), &generators::cycle(6).permuted(&[5, 3, 1, 0, 2, 4])));
    }

    #[test]
    fn symmetric_token_graph() {
        let j73 = crate::token::build_token_graph(&generators::complete(7), 3).unwrap();
        let g = j73.graph();
        let perm: Vec<usize> = (0..g.n()).map(|v| (v * 11 + 4) % g.n()).collect();
        assert_eq!(canonical_form(g), canonical_form(&g.permuted(&perm)));
    }

    #[test]
    fn regular_non_isomorphic_pair() {
        // C6 vs two triangles: same degree sequence, not isomorphic.
        let two_triangles =
            Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(!are_isomorphic(&generators::cycle(6), &two_triangles));
    }

    #[test]
    fn class_counts_match_known_values() {
        // OEIS A000088
        let counts: Vec<usize> = (1..=6).map(|n| enumerate_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34, 156]);
    }
}
