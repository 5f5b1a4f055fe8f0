//! k-token graphs: configurations, materialisation, degrees, the
//! complementary isomorphism, and classification of distance-2 pairs.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

/// Materialisation guard: `F_k` is only built when `C(n, k)` is at most this.
pub const MAX_TOKEN_VERTICES: u64 = 500_000;

/// Base graphs are limited to 62 vertices so configurations fit a `u64`.
pub const MAX_BASE_ORDER: usize = 62;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TokenError {
    #[error("k = {k} outside 1..={max} for a base graph on {n} vertices")]
    KOutOfRange { k: usize, n: usize, max: usize },
    #[error("base graph has {0} vertices; token graphs support at most {MAX_BASE_ORDER}")]
    BaseTooLarge(usize),
    #[error("F_{k} of a graph on {n} vertices has {count} vertices, above the limit {MAX_TOKEN_VERTICES}")]
    TooLarge { n: usize, k: usize, count: u64 },
    #[error("configuration {config} is invalid for a base graph on {n} vertices with k = {k}")]
    InvalidConfig { config: TokenConfig, n: usize, k: usize },
    #[error("configurations {x} and {y} are at distance {distance:?} in F_k, not 2")]
    NotAtDistanceTwo {
        x: TokenConfig,
        y: TokenConfig,
        distance: Option<usize>,
    },
}

/// A set of token positions, stored as a vertex bitmask. Members iterate in
/// ascending order, so equality, hashing and ordering are canonical.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct TokenConfig(u64);

impl TokenConfig {
    pub fn from_mask(mask: u64) -> Self {
        TokenConfig(mask)
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Self {
        TokenConfig(vertices.into_iter().fold(0, |m, v| {
            assert!(v < 64, "vertex {v} does not fit a token configuration");
            m | 1 << v
        }))
    }

    #[inline]
    pub fn mask(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn k(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn members(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            (m != 0).then(|| {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                v
            })
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.members().collect()
    }

    #[inline]
    pub fn with_move(self, from: usize, to: usize) -> Self {
        TokenConfig(self.0 & !(1 << from) | 1 << to)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        TokenConfig(self.0 & other.0)
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        TokenConfig(self.0 | other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        TokenConfig(self.0 & !other.0)
    }

    pub fn is_valid_for(self, n: usize, k: usize) -> bool {
        n <= 64 && (n == 64 || self.0 >> n == 0) && self.k() == k && (1..n).contains(&k)
    }
}

impl fmt::Debug for TokenConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TokenConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.members().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl From<TokenConfig> for Vec<usize> {
    fn from(c: TokenConfig) -> Self {
        c.to_vec()
    }
}

impl TryFrom<Vec<usize>> for TokenConfig {
    type Error = String;

    fn try_from(v: Vec<usize>) -> Result<Self, Self::Error> {
        let mut mask = 0u64;
        for x in v {
            if x >= 64 || mask >> x & 1 == 1 {
                return Err(format!("invalid token position {x}"));
            }
            mask |= 1 << x;
        }
        Ok(TokenConfig(mask))
    }
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}

fn check_k(g: &Graph, k: usize) -> Result<(), TokenError> {
    let n = g.n();
    if n > MAX_BASE_ORDER {
        return Err(TokenError::BaseTooLarge(n));
    }
    if k == 0 || k >= n {
        return Err(TokenError::KOutOfRange { k, n, max: n.saturating_sub(1) });
    }
    Ok(())
}

fn check_config(g: &Graph, a: TokenConfig, k: usize) -> Result<(), TokenError> {
    if a.is_valid_for(g.n(), k) {
        Ok(())
    } else {
        Err(TokenError::InvalidConfig { config: a, n: g.n(), k })
    }
}

/// All k-subsets of `0..n` in colexicographic mask order (Gosper's hack).
pub fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = TokenConfig> {
    let limit = if n >= 64 { u64::MAX } else { 1u64 << n };
    let first = if k == 0 { 0 } else { (1u64 << k) - 1 };
    let mut cur = (k <= n).then_some(first);
    std::iter::from_fn(move || {
        let c = cur?;
        cur = if c == 0 {
            None
        } else {
            let low = c & c.wrapping_neg();
            let ripple = c + low;
            let next = (((ripple ^ c) >> 2) / low) | ripple;
            (ripple != 0 && next < limit).then_some(next)
        };
        Some(TokenConfig(c))
    })
}

/// Degree of `a` in `F_k(g)`: base edges with exactly one end in `a`.
/// Computed directly on `g`.
pub fn token_degree(g: &Graph, a: TokenConfig) -> Result<usize, TokenError> {
    check_k(g, a.k())?;
    check_config(g, a, a.k())?;
    Ok(token_degree_unchecked(g, a))
}

pub(crate) fn token_degree_unchecked(g: &Graph, a: TokenConfig) -> usize {
    a.members()
        .map(|u| (g.neighbor_mask(u) & !a.mask()).count_ones() as usize)
        .sum()
}

/// Minimum degree of `F_k(g)`, without materialising it.
pub fn min_token_degree(g: &Graph, k: usize) -> Result<usize, TokenError> {
    check_k(g, k)?;
    Ok(k_subsets(g.n(), k)
        .map(|a| token_degree_unchecked(g, a))
        .min()
        .unwrap())
}

/// The complementary map `A -> V \ A`, an isomorphism `F_k -> F_{n-k}`.
pub fn complement_iso(a: TokenConfig, n: usize) -> TokenConfig {
    let full = if n >= 64 { u64::MAX } else { (1u64 << n) - 1 };
    TokenConfig(full & !a.0)
}

/// An explicitly materialised `F_k(G)`.
#[derive(Debug, Clone)]
pub struct TokenGraph {
    base: Graph,
    k: usize,
    configs: Vec<TokenConfig>,
    index: HashMap<TokenConfig, usize>,
    graph: Graph,
}

pub fn build_token_graph(g: &Graph, k: usize) -> Result<TokenGraph, TokenError> {
    check_k(g, k)?;
    let count = binomial(g.n(), k);
    if count > MAX_TOKEN_VERTICES {
        return Err(TokenError::TooLarge { n: g.n(), k, count });
    }
    let mut configs: Vec<TokenConfig> = k_subsets(g.n(), k).collect();
    configs.sort_unstable();
    let index: HashMap<TokenConfig, usize> =
        configs.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let adj = configs
        .iter()
        .map(|&a| {
            let mut out = Vec::new();
            for u in a.members() {
                let mut free = g.neighbor_mask(u) & !a.mask();
                while free != 0 {
                    let v = free.trailing_zeros() as usize;
                    free &= free - 1;
                    out.push(index[&a.with_move(u, v)]);
                }
            }
            out
        })
        .collect();
    Ok(TokenGraph {
        base: g.clone(),
        k,
        configs,
        index,
        graph: Graph::from_adjacency_unchecked(adj),
    })
}

impl TokenGraph {
    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Configurations in ascending mask order; position `i` is vertex `i`
    /// of [`TokenGraph::graph`].
    pub fn configs(&self) -> &[TokenConfig] {
        &self.configs
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn index_of(&self, a: TokenConfig) -> Option<usize> {
        self.index.get(&a).copied()
    }

    pub fn config(&self, i: usize) -> TokenConfig {
        self.configs[i]
    }

    pub fn are_adjacent(&self, a: TokenConfig, b: TokenConfig) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.graph.has_edge(i, j),
            _ => false,
        }
    }

    /// Unordered pairs `(i, j)`, `i < j`, at distance exactly 2, in
    /// lexicographic order of configuration indices.
    pub fn distance_two_pairs(&self) -> Vec<(usize, usize)> {
        let g = &self.graph;
        let mut out = Vec::new();
        let mut mark = vec![usize::MAX; g.n()];
        for i in 0..g.n() {
            mark[i] = i;
            for &j in g.neighbors(i) {
                mark[j] = i;
            }
            let mut found = Vec::new();
            for &j in g.neighbors(i) {
                for &l in g.neighbors(j) {
                    if mark[l] != i {
                        mark[l] = i;
                        if l > i {
                            found.push(l);
                        }
                    }
                }
            }
            found.sort_unstable();
            out.extend(found.into_iter().map(|l| (i, l)));
        }
        out
    }
}

/// How a distance-2 pair `X, Y` of `F_k(G)` arises.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag")]
pub enum Distance2Class {
    /// `X \ Y = {x}`, `Y \ X = {y}`, and `x - v - y` is a path in `G`.
    Case1 { x: usize, y: usize, v: usize },
    /// `X \ Y = {x1, x2}`, `Y \ X = {y1, y2}`, with `x1y1`, `x2y2`
    /// independent edges of `G`.
    Case2 {
        x1: usize,
        y1: usize,
        x2: usize,
        y2: usize,
    },
}

/// Classifies a pair at distance 2 in `F_k(g)`. The distance is decided from
/// the base graph: one or two token moves suffice exactly when the shapes
/// below exist. For Case 1 the smallest common neighbour is reported; for
/// Case 2 the matching with the smaller `x1`-partner is preferred.
pub fn classify_distance2(
    g: &Graph,
    x_cfg: TokenConfig,
    y_cfg: TokenConfig,
) -> Result<Distance2Class, TokenError> {
    let k = x_cfg.k();
    check_k(g, k)?;
    check_config(g, x_cfg, k)?;
    check_config(g, y_cfg, k)?;
    let only_x: Vec<usize> = x_cfg.difference(y_cfg).members().collect();
    let only_y: Vec<usize> = y_cfg.difference(x_cfg).members().collect();
    let not_two = |distance| TokenError::NotAtDistanceTwo { x: x_cfg, y: y_cfg, distance };
    match (only_x.as_slice(), only_y.as_slice()) {
        ([], []) => Err(not_two(Some(0))),
        (&[x], &[y]) => {
            if g.has_edge(x, y) {
                return Err(not_two(Some(1)));
            }
            let common = g.neighbor_mask(x) & g.neighbor_mask(y);
            if common == 0 {
                return Err(not_two(None));
            }
            Ok(Distance2Class::Case1 { x, y, v: common.trailing_zeros() as usize })
        }
        (&[p, q], &[r, s]) => {
            if g.has_edge(p, r) && g.has_edge(q, s) {
                Ok(Distance2Class::Case2 { x1: p, y1: r, x2: q, y2: s })
            } else if g.has_edge(p, s) && g.has_edge(q, r) {
                Ok(Distance2Class::Case2 { x1: p, y1: s, x2: q, y2: r })
            } else {
                Err(not_two(None))
            }
        }
        _ => Err(not_two(None)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn cfg(v: &[usize]) -> TokenConfig {
        TokenConfig::from_vertices(v.iter().copied())
    }

    #[test]
    fn subsets_enumerate_binomially() {
        for n in 1..=8 {
            for k in 0..=n {
                let all: Vec<_> = k_subsets(n, k).collect();
                assert_eq!(all.len() as u64, binomial(n, k), "n={n} k={k}");
                assert!(all.iter().all(|c| c.k() == k && c.mask() >> n == 0));
                assert!(all.windows(2).all(|w| w[0] < w[1]));
            }
        }
        assert_eq!(k_subsets(3, 4).count(), 0);
    }

    #[test]
    fn path_three_is_its_own_two_token_graph() {
        let f = build_token_graph(&generators::path(3), 2).unwrap();
        assert_eq!(f.graph().n(), 3);
        let ab = cfg(&[0, 1]);
        let ac = cfg(&[0, 2]);
        let bc = cfg(&[1, 2]);
        assert!(f.are_adjacent(ab, ac));
        assert!(f.are_adjacent(ac, bc));
        assert!(!f.are_adjacent(ab, bc));
    }

    #[test]
    fn p4_and_k4() {
        let f = build_token_graph(&generators::path(4), 2).unwrap();
        assert_eq!(f.graph().edge_count(), 6);
        let mut degs: Vec<usize> = (0..6).map(|i| f.graph().degree(i)).collect();
        degs.sort();
        assert_eq!(degs, vec![1, 1, 2, 2, 3, 3]);

        let j = build_token_graph(&generators::complete(4), 2).unwrap();
        assert_eq!(j.graph().n(), 6);
        assert!((0..6).all(|i| j.graph().degree(i) == 4));
    }

    #[test]
    fn degrees_without_materialising() {
        let p4 = generators::path(4);
        assert_eq!(token_degree(&p4, cfg(&[0, 1])), Ok(1));
        assert_eq!(token_degree(&p4, cfg(&[0, 3])), Ok(2));
        assert!(matches!(
            token_degree(&p4, cfg(&[0, 1, 2, 3])),
            Err(TokenError::KOutOfRange { .. })
        ));
        assert!(token_degree(&p4, cfg(&[0, 5])).is_err());
        assert_eq!(min_token_degree(&p4, 2), Ok(1));
        assert_eq!(min_token_degree(&generators::complete(4), 2), Ok(4));
        assert_eq!(min_token_degree(&generators::clique_pair_bridge(4), 2), Ok(4));
        assert!(min_token_degree(&p4, 0).is_err());
        assert!(min_token_degree(&p4, 4).is_err());
    }

    #[test]
    fn complement_map() {
        assert_eq!(complement_iso(cfg(&[0, 1]), 4), cfg(&[2, 3]));
        let p4 = generators::path(4);
        let f = build_token_graph(&p4, 2).unwrap();
        // edge ab-ac maps to cd-bd
        assert!(f.are_adjacent(cfg(&[0, 1]), cfg(&[0, 2])));
        assert_eq!(complement_iso(cfg(&[0, 1]), 4), cfg(&[2, 3]));
        assert_eq!(complement_iso(cfg(&[0, 2]), 4), cfg(&[1, 3]));
        assert!(f.are_adjacent(cfg(&[2, 3]), cfg(&[1, 3])));
    }

    #[test]
    fn classification_on_p4() {
        let p4 = generators::path(4);
        assert_eq!(
            classify_distance2(&p4, cfg(&[0, 1]), cfg(&[0, 3])),
            Ok(Distance2Class::Case1 { x: 1, y: 3, v: 2 })
        );
        assert_eq!(
            classify_distance2(&p4, cfg(&[0, 2]), cfg(&[1, 3])),
            Ok(Distance2Class::Case2 { x1: 0, y1: 1, x2: 2, y2: 3 })
        );
        // 0 and 2 are not adjacent; 1 -> 2 then 0 -> 1 is a 2-step path.
        assert_eq!(
            classify_distance2(&p4, cfg(&[0, 1]), cfg(&[1, 2])),
            Ok(Distance2Class::Case1 { x: 0, y: 2, v: 1 })
        );
        assert!(matches!(
            classify_distance2(&p4, cfg(&[0, 1]), cfg(&[0, 2])),
            Err(TokenError::NotAtDistanceTwo { distance: Some(1), .. })
        ));
        assert!(classify_distance2(&p4, cfg(&[0, 1]), cfg(&[2, 3])).is_err());
    }

    #[test]
    fn smallest_common_neighbour_wins() {
        let c4 = generators::cycle(4);
        assert_eq!(
            classify_distance2(&c4, cfg(&[0]), cfg(&[2])),
            Ok(Distance2Class::Case1 { x: 0, y: 2, v: 1 })
        );
    }

    #[test]
    fn config_serde_shape() {
        let c = cfg(&[4, 1, 7]);
        assert_eq!(c.to_vec(), vec![1, 4, 7]);
        assert_eq!(c.to_string(), "{1,4,7}");
        assert!(TokenConfig::try_from(vec![1, 1]).is_err());
    }
}
