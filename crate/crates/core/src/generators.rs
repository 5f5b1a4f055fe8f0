//! Named graph families.

use rand::Rng;

use crate::graph::Graph;

/// Path `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path")
}

/// Star with centre `0` and `leaves` leaves.
pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("star")
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs n >= 3");
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle")
}

pub fn complete(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::from_edges(n, edges).expect("complete")
}

/// `K_n` minus the edge `{0, 1}`.
pub fn complete_minus_edge(n: usize) -> Graph {
    let edges = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&e| e != (0, 1));
    Graph::from_edges(n, edges).expect("complete minus edge")
}

pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    Graph::from_edges(10, outer.chain(spokes).chain(inner)).expect("petersen")
}

/// Two copies of `K_m` on `0..m` and `m..2m`, joined by the edge `{m-1, m}`.
pub fn clique_pair_bridge(m: usize) -> Graph {
    assert!(m >= 2);
    let left = (0..m).flat_map(|u| (u + 1..m).map(move |v| (u, v)));
    let right = (0..m).flat_map(move |u| (u + 1..m).map(move |v| (m + u, m + v)));
    Graph::from_edges(2 * m, left.chain(right).chain([(m - 1, m)])).expect("clique pair")
}

/// Erdős–Rényi `G(n, p)`.
pub fn gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("gnp")
}

/// Spider: a centre `0` with legs of the given lengths.
pub fn spider(legs: &[usize]) -> Graph {
    let mut edges = Vec::new();
    let mut next = 1;
    for &len in legs {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    Graph::from_edges(next, edges).expect("spider")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(path(4).edge_count(), 3);
        assert_eq!(star(3).degree(0), 3);
        assert_eq!(complete(5).edge_count(), 10);
        assert_eq!(petersen().edge_count(), 15);
        assert!((0..10).all(|v| petersen().degree(v) == 3));
        let h = clique_pair_bridge(4);
        assert_eq!(h.n(), 8);
        assert_eq!(h.edge_count(), 13);
        assert_eq!(spider(&[2, 1, 3]).n(), 7);
        assert!(spider(&[2, 1, 3]).is_tree());
    }
}
