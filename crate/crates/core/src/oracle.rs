//! Exact vertex and edge connectivity via unit-capacity max-flow, plus a
//! brute-force cut search used to cross-check it.

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;

/// Order limit of [`brute_force_connectivity`].
pub const MAX_BRUTE_FORCE_ORDER: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("endpoints coincide ({0})")]
    SameVertex(usize),
    #[error("endpoints {0} and {1} are adjacent")]
    Adjacent(usize, usize),
    #[error("brute force limited to {max} vertices, got {n}")]
    TooLarge { n: usize, max: usize },
}

/// Capacity standing in for "unbounded" on arcs that must never be cut.
const UNBOUNDED: u32 = u32::MAX / 2;

/// Residual network. Arc `e` and its reverse `e ^ 1` are stored together.
struct FlowNet {
    head: Vec<usize>,
    cap: Vec<u32>,
    initial: Vec<u32>,
    out: Vec<Vec<usize>>,
}

impl FlowNet {
    fn new(nodes: usize) -> Self {
        FlowNet { head: Vec::new(), cap: Vec::new(), initial: Vec::new(), out: vec![Vec::new(); nodes] }
    }

    fn arc(&mut self, u: usize, v: usize, cap: u32) {
        self.out[u].push(self.head.len());
        self.head.push(v);
        self.cap.push(cap);
        self.initial.push(cap);
        self.out[v].push(self.head.len());
        self.head.push(u);
        self.cap.push(0);
        self.initial.push(0);
    }

    fn flow_on(&self, e: usize) -> u32 {
        self.initial[e].saturating_sub(self.cap[e])
    }

    /// Augments until the flow reaches `limit` or no path remains.
    fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let nodes = self.out.len();
        let mut flow = 0;
        let mut pred = vec![usize::MAX; nodes];
        let mut queue = VecDeque::new();
        while flow < limit {
            pred.fill(usize::MAX);
            pred[s] = usize::MAX - 1;
            queue.clear();
            queue.push_back(s);
            'bfs: while let Some(u) = queue.pop_front() {
                for &e in &self.out[u] {
                    let v = self.head[e];
                    if self.cap[e] > 0 && pred[v] == usize::MAX {
                        pred[v] = e;
                        if v == t {
                            break 'bfs;
                        }
                        queue.push_back(v);
                    }
                }
            }
            if pred[t] == usize::MAX {
                break;
            }
            let mut v = t;
            while v != s {
                let e = pred[v];
                self.cap[e] -= 1;
                self.cap[e ^ 1] += 1;
                v = self.head[e ^ 1];
            }
            flow += 1;
        }
        flow
    }

    fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.out.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &e in &self.out[u] {
                let v = self.head[e];
                if self.cap[e] > 0 && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }
}

/// Vertex-split network: vertex `v` becomes `2v` (in) and `2v + 1` (out).
/// Only the in-out arcs are finite, so minimum cuts consist of vertices.
fn split_network(g: &Graph, s: usize, t: usize) -> FlowNet {
    let mut net = FlowNet::new(2 * g.n());
    for v in 0..g.n() {
        if v != s && v != t {
            net.arc(2 * v, 2 * v + 1, 1);
        }
    }
    for (u, v) in g.edges() {
        net.arc(2 * u + 1, 2 * v, UNBOUNDED);
        net.arc(2 * v + 1, 2 * u, UNBOUNDED);
    }
    net
}

fn check_pair(g: &Graph, u: usize, v: usize) -> Result<(), OracleError> {
    for w in [u, v] {
        if w >= g.n() {
            return Err(OracleError::VertexOutOfRange { vertex: w, n: g.n() });
        }
    }
    if u == v {
        return Err(OracleError::SameVertex(u));
    }
    if g.has_edge(u, v) {
        return Err(OracleError::Adjacent(u, v));
    }
    Ok(())
}

fn local_kappa_capped(g: &Graph, u: usize, v: usize, limit: usize) -> usize {
    split_network(g, u, v).max_flow(2 * u + 1, 2 * v, limit)
}

/// Menger witness for a non-adjacent pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalConnectivity {
    pub value: usize,
    /// `value` pairwise internally disjoint `u - v` paths.
    pub paths: Vec<Vec<usize>>,
    /// A `u, v`-separating vertex set of size `value`.
    pub cut: Vec<usize>,
}

/// Maximum number of internally disjoint `u - v` paths, with the paths and a
/// minimum separating set.
pub fn local_vertex_connectivity(g: &Graph, u: usize, v: usize) -> Result<LocalConnectivity, OracleError> {
    check_pair(g, u, v)?;
    let mut net = split_network(g, u, v);
    let (s, t) = (2 * u + 1, 2 * v);
    let value = net.max_flow(s, t, usize::MAX);

    let seen = net.reachable(s);
    let cut = (0..g.n()).filter(|&w| w != u && w != v && seen[2 * w] && !seen[2 * w + 1]).collect();

    // Follow arcs that carry flow out of u; each carries at most one unit.
    let mut used: Vec<bool> = (0..net.head.len()).map(|e| e % 2 == 0 && net.flow_on(e) > 0).collect();
    let mut paths = Vec::with_capacity(value);
    for _ in 0..value {
        let mut path = vec![u];
        let mut node = s;
        while node != t {
            let e = net.out[node]
                .iter()
                .copied()
                .find(|&e| used[e])
                .expect("flow conservation");
            used[e] = false;
            node = net.head[e];
            if node % 2 == 0 {
                // Drop any flow cycle the walk closed.
                match path.iter().position(|&p| p == node / 2) {
                    Some(i) => path.truncate(i + 1),
                    None => path.push(node / 2),
                }
            }
        }
        paths.push(path);
    }
    Ok(LocalConnectivity { value, paths, cut })
}

/// How [`vertex_connectivity`] chooses the pairs it runs flows on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KappaStrategy {
    /// Minimum over pairs at distance exactly 2 (valid for connected graphs).
    #[default]
    DistanceTwo,
    /// Minimum over all non-adjacent pairs.
    General,
}

fn pairs_for(g: &Graph, strategy: KappaStrategy) -> Vec<(usize, usize)> {
    let n = g.n();
    let mut out = Vec::new();
    let mut mark = vec![false; n];
    for u in 0..n {
        match strategy {
            KappaStrategy::General => {
                out.extend((u + 1..n).filter(|&w| !g.has_edge(u, w)).map(|w| (u, w)));
            }
            KappaStrategy::DistanceTwo => {
                mark.fill(false);
                for &a in g.neighbors(u) {
                    for &w in g.neighbors(a) {
                        mark[w] = true;
                    }
                }
                out.extend((u + 1..n).filter(|&w| mark[w] && !g.has_edge(u, w)).map(|w| (u, w)));
            }
        }
    }
    out
}

fn kappa_with_witness(g: &Graph, strategy: KappaStrategy) -> (usize, Option<Vec<usize>>) {
    let n = g.n();
    if n == 1 {
        return (0, None);
    }
    if !g.is_connected() {
        return (0, Some(Vec::new()));
    }
    let pairs = pairs_for(g, strategy);
    if pairs.is_empty() {
        return (n - 1, None);
    }
    let mut best = (usize::MAX, (0, 0));
    for (u, v) in pairs {
        let f = local_kappa_capped(g, u, v, best.0);
        if f < best.0 {
            best = (f, (u, v));
        }
    }
    let (u, v) = best.1;
    let witness = local_vertex_connectivity(g, u, v).expect("non-adjacent pair");
    (best.0, Some(witness.cut))
}

/// `κ(g)`: 0 if disconnected, `n - 1` if complete.
pub fn vertex_connectivity(g: &Graph, strategy: KappaStrategy) -> usize {
    kappa_with_witness(g, strategy).0
}

fn lambda_with_witness(g: &Graph) -> (usize, Option<Vec<(usize, usize)>>) {
    let n = g.n();
    if n == 1 {
        return (0, None);
    }
    let mut best = usize::MAX;
    let mut best_t = 1;
    for t in 1..n {
        let mut net = FlowNet::new(n);
        for (a, b) in g.edges() {
            net.arc(a, b, 1);
            net.arc(b, a, 1);
        }
        let f = net.max_flow(0, t, best);
        if f < best {
            best = f;
            best_t = t;
        }
        if best == 0 {
            break;
        }
    }
    let mut net = FlowNet::new(n);
    for (a, b) in g.edges() {
        net.arc(a, b, 1);
        net.arc(b, a, 1);
    }
    net.max_flow(0, best_t, usize::MAX);
    let side = net.reachable(0);
    let cut = g.edges().filter(|&(a, b)| side[a] != side[b]).collect();
    (best, Some(cut))
}

/// `λ(g)`: minimum over `t` of the edge-disjoint path count from vertex 0.
pub fn edge_connectivity(g: &Graph) -> usize {
    lambda_with_witness(g).0
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConnectivityReport {
    pub kappa: usize,
    pub lambda: usize,
    pub delta: usize,
    /// A minimum vertex cut; absent for complete graphs and `n = 1`.
    pub witness_cut: Option<Vec<usize>>,
    /// A minimum edge cut; absent for `n = 1`.
    pub witness_edge_cut: Option<Vec<(usize, usize)>>,
}

/// `κ`, `λ`, `δ` with witnesses, by max-flow.
pub fn connectivity_report(g: &Graph, strategy: KappaStrategy) -> ConnectivityReport {
    let (kappa, witness_cut) = kappa_with_witness(g, strategy);
    let (lambda, witness_edge_cut) = lambda_with_witness(g);
    ConnectivityReport { kappa, lambda, delta: g.min_degree(), witness_cut, witness_edge_cut }
}

fn connected_within(g: &Graph, alive: u32) -> bool {
    if alive == 0 {
        return true;
    }
    let start = alive.trailing_zeros() as usize;
    let mut seen = 1u32 << start;
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        let nb = (g.neighbor_mask(u) as u32) & alive & !seen;
        seen |= nb;
        let mut rest = nb;
        while rest != 0 {
            stack.push(rest.trailing_zeros() as usize);
            rest &= rest - 1;
        }
    }
    seen == alive
}

/// `κ` and `λ` by exhaustive search over vertex subsets (`n <= 16`).
pub fn brute_force_connectivity(g: &Graph) -> Result<ConnectivityReport, OracleError> {
    let n = g.n();
    if n > MAX_BRUTE_FORCE_ORDER {
        return Err(OracleError::TooLarge { n, max: MAX_BRUTE_FORCE_ORDER });
    }
    let full: u32 = (1u32 << n) - 1;

    let mut kappa = n.saturating_sub(1);
    let mut witness_cut = None;
    'size: for size in 0..n.saturating_sub(1) {
        for removed in 0..=full {
            if removed.count_ones() as usize != size {
                continue;
            }
            if !connected_within(g, full & !removed) {
                kappa = size;
                witness_cut = Some((0..n).filter(|&v| removed >> v & 1 == 1).collect());
                break 'size;
            }
        }
    }

    let (mut lambda, mut witness_edge_cut) = (0, None);
    if n > 1 {
        lambda = usize::MAX;
        for side in (0..=full).filter(|s| s & 1 == 1 && *s != full) {
            let crossing: Vec<(usize, usize)> =
                g.edges().filter(|&(a, b)| (side >> a & 1) != (side >> b & 1)).collect();
            if crossing.len() < lambda {
                lambda = crossing.len();
                witness_edge_cut = Some(crossing);
            }
        }
    }
    Ok(ConnectivityReport { kappa, lambda, delta: g.min_degree(), witness_cut, witness_edge_cut })
}
