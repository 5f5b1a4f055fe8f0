//! Free-tree canonical forms (AHU encoding rooted at the centroid) and
//! enumeration of non-isomorphic trees.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::Graph;

pub const MAX_TREE_ORDER: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("tree order {0} outside supported range 1..={MAX_TREE_ORDER}")]
    OrderOutOfRange(usize),
    #[error("graph is not a tree")]
    NotATree,
}

fn rooted_code(g: &Graph, root: usize, parent: usize) -> String {
    let mut children: Vec<String> = g
        .neighbors(root)
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| rooted_code(g, w, root))
        .collect();
    children.sort_unstable();
    let mut s = String::with_capacity(2 + children.iter().map(String::len).sum::<usize>());
    s.push('(');
    children.iter().for_each(|c| s.push_str(c));
    s.push(')');
    s
}

/// The one or two centroids of a tree.
pub fn centroids(g: &Graph) -> Vec<usize> {
    let n = g.n();
    // iterative DFS order from 0, then subtree sizes bottom-up
    let mut order = Vec::with_capacity(n);
    let mut parent = vec![usize::MAX; n];
    let mut stack = vec![0];
    parent[0] = 0;
    while let Some(u) = stack.pop() {
        order.push(u);
        for &w in g.neighbors(u) {
            if parent[w] == usize::MAX {
                parent[w] = u;
                stack.push(w);
            }
        }
    }
    let mut size = vec![1usize; n];
    for &u in order.iter().rev().take(n - 1) {
        size[parent[u]] += size[u];
    }
    let heaviest = |v: usize| -> usize {
        g.neighbors(v)
            .iter()
            .filter(|&&w| w != 0 && parent[w] == v)
            .map(|&w| size[w])
            .fold(n - size[v], usize::max)
    };
    let weights: Vec<usize> = (0..n).map(heaviest).collect();
    let best = *weights.iter().min().unwrap();
    (0..n).filter(|&v| weights[v] == best).collect()
}

/// Canonical string of a free tree: the smallest AHU code over its centroids.
pub fn tree_canonical_string(g: &Graph) -> Result<String, TreeError> {
    if !g.is_tree() {
        return Err(TreeError::NotATree);
    }
    Ok(centroids(g)
        .into_iter()
        .map(|c| rooted_code(g, c, usize::MAX))
        .min()
        .unwrap())
}

/// Rebuilds a tree from an AHU code, numbering vertices in preorder.
pub fn tree_from_code(code: &str) -> Graph {
    let mut edges = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    let mut next = 0;
    for ch in code.chars() {
        match ch {
            '(' => {
                if let Some(&p) = stack.last() {
                    edges.push((p, next));
                }
                stack.push(next);
                next += 1;
            }
            ')' => {
                stack.pop();
            }
            _ => panic!("invalid AHU code"),
        }
    }
    Graph::from_edges(next, edges).expect("AHU code describes a tree")
}

/// One representative per isomorphism class of free trees on `n` vertices,
/// ordered by canonical string. Representatives are rebuilt from their
/// canonical code, so the root centroid is vertex 0.
pub fn enumerate_trees(n: usize) -> Result<Vec<Graph>, TreeError> {
    if !(1..=MAX_TREE_ORDER).contains(&n) {
        return Err(TreeError::OrderOutOfRange(n));
    }
    let mut codes: BTreeSet<String> = BTreeSet::from(["()".to_string()]);
    for order in 2..=n {
        let mut next = BTreeSet::new();
        for code in &codes {
            let t = tree_from_code(code);
            for v in 0..order - 1 {
                let edges = t.edges().chain([(v, order - 1)]);
                let grown = Graph::from_edges(order, edges).unwrap();
                next.insert(tree_canonical_string(&grown).unwrap());
            }
        }
        codes = next;
    }
    Ok(codes.iter().map(|c| tree_from_code(c)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn centroid_cases() {
        assert_eq!(centroids(&generators::path(5)), vec![2]);
        assert_eq!(centroids(&generators::path(4)), vec![1, 2]);
        assert_eq!(centroids(&generators::star(4)), vec![0]);
        assert_eq!(centroids(&Graph::empty(1).unwrap()), vec![0]);
    }

    #[test]
    fn canonical_string_is_label_invariant() {
        let t = generators::spider(&[1, 2, 3]);
        let perm: Vec<usize> = (0..t.n()).rev().collect();
        assert_eq!(
            tree_canonical_string(&t).unwrap(),
            tree_canonical_string(&t.permuted(&perm)).unwrap()
        );
        assert_eq!(tree_canonical_string(&generators::cycle(4)), Err(TreeError::NotATree));
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_trees(1).unwrap().len(), 1);
        assert_eq!(enumerate_trees(4).unwrap().len(), 2);
        assert_eq!(enumerate_trees(0), Err(TreeError::OrderOutOfRange(0)));
        assert_eq!(enumerate_trees(13), Err(TreeError::OrderOutOfRange(13)));
        for t in enumerate_trees(7).unwrap() {
            assert!(t.is_tree());
            assert_eq!(t.edge_count(), 6);
        }
    }
}
