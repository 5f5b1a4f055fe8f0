//! Token moves and the paths of `F_k(G)` they generate.
//!
//! A [`TokenPath`] is a start configuration plus a list of admissible
//! moves. Configurations along the path are derived on demand. Every path
//! is validated when it is built: each move must be admissible where it is
//! applied and no configuration may repeat.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::token::TokenConfig;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("move {step} ({mv}) is not admissible from {config}: {reason}")]
    Inadmissible {
        step: usize,
        mv: TokenMove,
        config: TokenConfig,
        reason: &'static str,
    },
    #[error("configuration {config} repeats at step {step}; paths must be simple")]
    RepeatedConfig { step: usize, config: TokenConfig },
    #[error("vertex sequence is not a path of the base graph at position {0}")]
    NotAPath(usize),
    #[error("lifted path must meet the start configuration exactly in its first vertex")]
    LiftOverlap,
    #[error("distractor precondition violated: {0}")]
    Distractor(&'static str),
    #[error("path {index} runs {found_start}..{found_end}, expected {start}..{end}")]
    EndpointMismatch {
        index: usize,
        start: TokenConfig,
        end: TokenConfig,
        found_start: TokenConfig,
        found_end: TokenConfig,
    },
    #[error("base graph has {0} vertices; token paths support at most 62")]
    BaseTooLarge(usize),
}

/// Slide the token at `from` to the adjacent empty vertex `to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TokenMove {
    pub from: usize,
    pub to: usize,
}

impl TokenMove {
    pub fn new(from: usize, to: usize) -> Self {
        TokenMove { from, to }
    }

    /// Why this move cannot be applied to `c` in `g`, if it cannot.
    pub fn inadmissibility(self, g: &Graph, c: TokenConfig) -> Option<&'static str> {
        if self.from == self.to {
            Some("source equals target")
        } else if !c.contains(self.from) {
            Some("no token at the source")
        } else if c.contains(self.to) {
            Some("target is occupied")
        } else if !g.has_edge(self.from, self.to) {
            Some("source and target are not adjacent")
        } else {
            None
        }
    }
}

impl fmt::Display for TokenMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.from, self.to)
    }
}

/// The moves `p[0] -> p[1] -> ... -> p[m]`: one token walking along `p`.
pub fn slide(p: &[usize]) -> Vec<TokenMove> {
    p.windows(2).map(|w| TokenMove::new(w[0], w[1])).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenPath {
    start: TokenConfig,
    moves: Vec<TokenMove>,
}

impl TokenPath {
    /// Validates admissibility and simplicity.
    pub fn new(g: &Graph, start: TokenConfig, moves: Vec<TokenMove>) -> Result<Self, PathError> {
        if g.n() > 62 {
            return Err(PathError::BaseTooLarge(g.n()));
        }
        let mut seen = HashMap::with_capacity(moves.len() + 1);
        seen.insert(start, 0usize);
        let mut cur = start;
        for (i, &mv) in moves.iter().enumerate() {
            if let Some(reason) = mv.inadmissibility(g, cur) {
                return Err(PathError::Inadmissible { step: i, mv, config: cur, reason });
            }
            cur = cur.with_move(mv.from, mv.to);
            if seen.insert(cur, i + 1).is_some() {
                return Err(PathError::RepeatedConfig { step: i + 1, config: cur });
            }
        }
        Ok(TokenPath { start, moves })
    }

    pub fn start(&self) -> TokenConfig {
        self.start
    }

    pub fn end(&self) -> TokenConfig {
        self.moves
            .iter()
            .fold(self.start, |c, m| c.with_move(m.from, m.to))
    }

    pub fn moves(&self) -> &[TokenMove] {
        &self.moves
    }

    /// Number of moves (edges of `F_k`).
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// `A_0, A_1, ..., A_m`.
    pub fn configs(&self) -> Vec<TokenConfig> {
        let mut out = Vec::with_capacity(self.moves.len() + 1);
        let mut cur = self.start;
        out.push(cur);
        for m in &self.moves {
            cur = cur.with_move(m.from, m.to);
            out.push(cur);
        }
        out
    }

    /// Configurations strictly between the endpoints.
    pub fn inner_configs(&self) -> Vec<TokenConfig> {
        let mut all = self.configs();
        if all.len() <= 2 {
            return Vec::new();
        }
        all.pop();
        all.remove(0);
        all
    }

    /// Same vertices, traversed from the end back to the start.
    pub fn reversed(&self) -> TokenPath {
        TokenPath {
            start: self.end(),
            moves: self.moves.iter().rev().map(|m| TokenMove::new(m.to, m.from)).collect(),
        }
    }

    /// Image under the complementary isomorphism on an `n`-vertex base: a
    /// token moving `u -> v` becomes the hole moving `v -> u`.
    pub fn complemented(&self, n: usize) -> TokenPath {
        TokenPath {
            start: crate::token::complement_iso(self.start, n),
            moves: self.moves.iter().map(|m| TokenMove::new(m.to, m.from)).collect(),
        }
    }
}

impl fmt::Display for TokenPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.start)?;
        for m in &self.moves {
            write!(f, " [{m}]")?;
        }
        Ok(())
    }
}

/// The path of `F_k(g)` induced by sliding the token at `p[0]` along `p`.
pub fn lift_path(g: &Graph, p: &[usize], a: TokenConfig) -> Result<TokenPath, PathError> {
    if p.len() < 2 {
        return Err(PathError::NotAPath(0));
    }
    for (i, w) in p.windows(2).enumerate() {
        if w[1] >= g.n() || !g.has_edge(w[0], w[1]) {
            return Err(PathError::NotAPath(i + 1));
        }
    }
    for (i, &v) in p.iter().enumerate() {
        if p[..i].contains(&v) {
            return Err(PathError::NotAPath(i));
        }
    }
    if !a.contains(p[0]) || p[1..].iter().any(|&v| a.contains(v)) {
        return Err(PathError::LiftOverlap);
    }
    TokenPath::new(g, a, slide(p))
}

/// Semicolon concatenation: apply each segment in turn from `start`.
pub fn concat(
    g: &Graph,
    start: TokenConfig,
    segments: &[Vec<TokenMove>],
) -> Result<TokenPath, PathError> {
    TokenPath::new(g, start, segments.concat())
}

/// `u -> v ; inner ; v -> u`: the token at `u` steps aside onto the
/// distractor `v` while `inner` runs, then returns.
pub fn distractor_wrap(
    g: &Graph,
    inner: &[TokenMove],
    u: usize,
    v: usize,
    a: TokenConfig,
) -> Result<TokenPath, PathError> {
    let base = TokenPath::new(g, a, inner.to_vec())?;
    let b = base.end();
    if !g.has_edge(u, v) {
        return Err(PathError::Distractor("u and v are not adjacent"));
    }
    if !(a.contains(u) && b.contains(u)) {
        return Err(PathError::Distractor("u must lie in both endpoints"));
    }
    if a.contains(v) || b.contains(v) {
        return Err(PathError::Distractor("v must avoid both endpoints"));
    }
    if base.inner_configs().iter().any(|i| !i.contains(u) || i.contains(v)) {
        return Err(PathError::Distractor(
            "every inner configuration of the wrapped path must hold u and not v",
        ));
    }
    let mut moves = Vec::with_capacity(inner.len() + 2);
    moves.push(TokenMove::new(u, v));
    moves.extend_from_slice(inner);
    moves.push(TokenMove::new(v, u));
    TokenPath::new(g, a, moves)
}

/// `k` minus the number of vertices held by every configuration on the path.
pub fn path_type(p: &TokenPath) -> usize {
    let common = p
        .configs()
        .into_iter()
        .fold(p.start(), |acc, c| acc.intersection(c));
    p.start().k() - common.k()
}

/// Two paths sharing an inner configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overlap {
    pub first: usize,
    pub second: usize,
    pub config: TokenConfig,
}

/// `Ok(None)` when no inner configuration appears on two different paths;
/// otherwise the first clash in path order.
pub fn pairwise_internally_disjoint(paths: &[TokenPath]) -> Result<Option<Overlap>, PathError> {
    let Some(first) = paths.first() else {
        return Ok(None);
    };
    let (start, end) = (first.start(), first.end());
    let mut owner: HashMap<TokenConfig, usize> = HashMap::new();
    for (i, p) in paths.iter().enumerate() {
        let (s, e) = (p.start(), p.end());
        if s != start || e != end {
            return Err(PathError::EndpointMismatch {
                index: i,
                start,
                end,
                found_start: s,
                found_end: e,
            });
        }
        for c in p.inner_configs() {
            if let Some(&j) = owner.get(&c) {
                return Ok(Some(Overlap { first: j, second: i, config: c }));
            }
            owner.insert(c, i);
        }
    }
    Ok(None)
}
