//! Constructive disjoint-path engine for token graphs of trees.
//!
//! Given a tree `T`, `k`, and configurations `X`, `Y` at distance 2 in
//! `F_k(T)`, the engine builds at least `δ(F_k(T))` pairwise internally
//! disjoint `X - Y` paths. The pair is first normalised (see
//! [`normalize`]); step 1 then builds a fixed family of `m` paths from the
//! neighbourhoods of the moved tokens, and step 2 adds the one or two extra
//! paths needed when `δ > m`. Every path is replayed, every family is
//! re-checked for internal disjointness, and every inner configuration is
//! checked against the trace condition of the construction that produced it.
//! A failed check is reported as an error, never repaired.

mod case1;
mod case2;
mod context;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use case1::{build_case1_step1, build_case1_step2};
pub use case2::{build_case2_step1, build_case2_step2};
pub use context::{normalize, Case1Context, Case2Context, NormalizedPair};

use crate::graph::Graph;
use crate::moves::{pairwise_internally_disjoint, PathError, TokenMove, TokenPath};
use crate::token::{min_token_degree, TokenConfig, TokenError};
use crate::trace::{ConditionId, TraceCondition, TraceError, TraceFrame};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("base graph is not a tree")]
    NotATree,
    #[error(transparent)]
    Token(#[from] TokenError),
    #[error("replaying a {label} path failed: {source}")]
    Replay { label: Provenance, source: PathError },
    #[error("{first} and {second} paths share the inner configuration {config}")]
    Overlap {
        first: Provenance,
        second: Provenance,
        config: TokenConfig,
    },
    #[error(transparent)]
    Family(#[from] PathError),
    #[error("{label} path breaks condition {condition} at {config}")]
    TraceViolation {
        label: Provenance,
        condition: ConditionId,
        config: TokenConfig,
    },
    #[error(transparent)]
    Trace(#[from] TraceError),
    #[error("step 1 produced {found} paths, expected m = {expected}")]
    StepOneSize { expected: usize, found: usize },
    #[error("δ - m = {gap} exceeds the bound {bound} for case {case}")]
    GapTooLarge { case: u8, gap: usize, bound: usize },
    #[error("δ = m + {gap} but no supplemental path applies ({detail})")]
    NoSupplementalPath { gap: usize, detail: String },
    #[error("table row 1 reached; it is excluded by deg X <= deg Y")]
    ImpossibleTableCase,
    #[error("table reductions did not settle (row {case} after two relabellings)")]
    ReductionDepth { case: u8 },
    #[error("family has {found} paths but δ = {delta}")]
    TooFewPaths { found: usize, delta: usize },
}

/// Which construction produced a path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Provenance {
    T1,
    T2,
    T3,
    T4,
    P,
    PPrime,
    L1,
    L2,
    L3,
    L4,
    L3Star,
    L4Star,
    P1,
    P2,
    P3,
    P4,
}

impl Provenance {
    /// Paths added in step 2, when `δ > m`.
    pub fn is_supplemental(self) -> bool {
        matches!(
            self,
            Provenance::P | Provenance::PPrime | Provenance::P1 | Provenance::P2 | Provenance::P3 | Provenance::P4
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            Provenance::T1 => "T1",
            Provenance::T2 => "T2",
            Provenance::T3 => "T3",
            Provenance::T4 => "T4",
            Provenance::P => "P",
            Provenance::PPrime => "P'",
            Provenance::L1 => "L1",
            Provenance::L2 => "L2",
            Provenance::L3 => "L3",
            Provenance::L4 => "L4",
            Provenance::L3Star => "L3*",
            Provenance::L4Star => "L4*",
            Provenance::P1 => "P1",
            Provenance::P2 => "P2",
            Provenance::P3 => "P3",
            Provenance::P4 => "P4",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyPath {
    pub path: TokenPath,
    pub label: Provenance,
    /// Trace conditions the path's inner configurations satisfy, in the
    /// normalised frame.
    pub conditions: Vec<TraceCondition>,
}

/// Pairwise internally disjoint `X - Y` paths with their provenance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathFamily {
    pub x: TokenConfig,
    pub y: TokenConfig,
    pub paths: Vec<FamilyPath>,
}

impl PathFamily {
    pub fn new(x: TokenConfig, y: TokenConfig) -> Self {
        PathFamily { x, y, paths: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn token_paths(&self) -> Vec<TokenPath> {
        self.paths.iter().map(|p| p.path.clone()).collect()
    }

    pub fn count(&self, label: Provenance) -> usize {
        self.paths.iter().filter(|p| p.label == label).count()
    }

    /// Replays `moves` from `x` on `tree` and appends the path.
    pub(crate) fn push(
        &mut self,
        tree: &Graph,
        label: Provenance,
        segments: &[Vec<TokenMove>],
        conditions: Vec<TraceCondition>,
    ) -> Result<(), EngineError> {
        let path = TokenPath::new(tree, self.x, segments.concat())
            .map_err(|source| EngineError::Replay { label, source })?;
        if path.end() != self.y {
            return Err(EngineError::Replay {
                label,
                source: PathError::EndpointMismatch {
                    index: self.paths.len(),
                    start: self.x,
                    end: self.y,
                    found_start: path.start(),
                    found_end: path.end(),
                },
            });
        }
        self.paths.push(FamilyPath { path, label, conditions });
        Ok(())
    }

    /// Endpoints and pairwise internal disjointness.
    pub fn check_disjoint(&self) -> Result<(), EngineError> {
        if self.paths.is_empty() {
            return Ok(());
        }
        if let Some(o) = pairwise_internally_disjoint(&self.token_paths())? {
            return Err(EngineError::Overlap {
                first: self.paths[o.first].label,
                second: self.paths[o.second].label,
                config: o.config,
            });
        }
        Ok(())
    }

    /// Checks every path against its recorded trace conditions.
    pub fn check_traces(&self, frame: &TraceFrame) -> Result<(), EngineError> {
        for p in &self.paths {
            for cond in &p.conditions {
                if let Some(config) = cond.first_violation(&p.path, frame)? {
                    return Err(EngineError::TraceViolation {
                        label: p.label,
                        condition: cond.id,
                        config,
                    });
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReductionStep {
    /// Work with `ψ(X), ψ(Y)` in `F_{n-k}`.
    Complement,
    /// Exchange the roles of `X` and `Y`.
    SwapXY,
    /// Exchange the labels of the two matching edges (Case 2).
    SwapIndices12,
    /// Complement with `x'_i = y_i`, `y'_i = x_i` (Case 2).
    ComplementWithRelabel,
}

/// Relabellings applied during normalisation, in order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reduction {
    n: usize,
    pub steps: Vec<ReductionStep>,
}

impl Reduction {
    pub fn new(n: usize) -> Self {
        Reduction { n, steps: Vec::new() }
    }

    pub(crate) fn push(&mut self, step: ReductionStep) {
        self.steps.push(step);
    }

    pub fn is_identity(&self) -> bool {
        self.steps.is_empty()
    }

    /// Maps a path of the normalised frame back to the original frame.
    pub fn pull_back_path(&self, path: &TokenPath) -> TokenPath {
        self.steps.iter().rev().fold(path.clone(), |p, step| match step {
            ReductionStep::Complement | ReductionStep::ComplementWithRelabel => p.complemented(self.n),
            ReductionStep::SwapXY => p.reversed(),
            ReductionStep::SwapIndices12 => p,
        })
    }

    /// Maps a whole family back, re-validating every path on `tree`, the
    /// endpoints, and internal disjointness.
    pub fn pull_back(&self, tree: &Graph, family: &PathFamily) -> Result<PathFamily, EngineError> {
        let mut paths = Vec::with_capacity(family.len());
        let mut ends: Option<(TokenConfig, TokenConfig)> = None;
        for fp in &family.paths {
            let mapped = self.pull_back_path(&fp.path);
            let path = TokenPath::new(tree, mapped.start(), mapped.moves().to_vec())
                .map_err(|source| EngineError::Replay { label: fp.label, source })?;
            ends.get_or_insert((path.start(), path.end()));
            paths.push(FamilyPath { path, label: fp.label, conditions: fp.conditions.clone() });
        }
        let (x, y) = ends.unwrap_or_else(|| {
            let a = self.pull_back_path(&TokenPath::new(tree, family.x, vec![]).expect("empty path"));
            let b = self.pull_back_path(&TokenPath::new(tree, family.y, vec![]).expect("empty path"));
            if self.steps.iter().filter(|s| **s == ReductionStep::SwapXY).count() % 2 == 1 {
                (b.start(), a.start())
            } else {
                (a.start(), b.start())
            }
        });
        let out = PathFamily { x, y, paths };
        out.check_disjoint()?;
        Ok(out)
    }
}

/// Which half of the proof handled a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseKind {
    Case1,
    Case2,
}

/// Everything the engine learned while building a family.
#[derive(Debug, Clone)]
pub struct Construction {
    pub normalized: NormalizedPair,
    pub reduction: Reduction,
    pub delta: usize,
    pub m: usize,
    pub step1_size: usize,
    /// Family in the normalised frame (where trace conditions apply).
    pub normalized_family: PathFamily,
    /// Family between the caller's `X` and `Y`.
    pub family: PathFamily,
}

impl Construction {
    pub fn case(&self) -> CaseKind {
        match self.normalized {
            NormalizedPair::Case1(_) => CaseKind::Case1,
            NormalizedPair::Case2(_) => CaseKind::Case2,
        }
    }

    /// `δ - m`, possibly negative.
    pub fn slack(&self) -> i64 {
        self.delta as i64 - self.m as i64
    }
}

/// Builds the family with `δ` supplied by the caller (it only depends on
/// `tree` and `k`, so sweeps compute it once).
pub fn construct_with_delta(
    tree: &Graph,
    x: TokenConfig,
    y: TokenConfig,
    delta: usize,
) -> Result<Construction, EngineError> {
    let (normalized, reduction) = normalize(tree, x, y)?;
    let frame = normalized.frame();
    let (step1, family) = match &normalized {
        NormalizedPair::Case1(ctx) => {
            let s1 = build_case1_step1(ctx)?;
            let size = s1.len();
            (size, build_case1_step2(ctx, s1, delta)?)
        }
        NormalizedPair::Case2(ctx) => {
            let s1 = build_case2_step1(ctx)?;
            let size = s1.len();
            (size, build_case2_step2(ctx, s1, delta)?)
        }
    };
    family.check_traces(&frame)?;
    let pulled = reduction.pull_back(tree, &family)?;
    if pulled.x != x || pulled.y != y {
        return Err(EngineError::Family(PathError::EndpointMismatch {
            index: 0,
            start: x,
            end: y,
            found_start: pulled.x,
            found_end: pulled.y,
        }));
    }
    if pulled.len() < delta {
        return Err(EngineError::TooFewPaths { found: pulled.len(), delta });
    }
    Ok(Construction {
        m: normalized.m(),
        normalized,
        reduction,
        delta,
        step1_size: step1,
        normalized_family: family,
        family: pulled,
    })
}

/// At least `δ(F_k(tree))` pairwise internally disjoint `X - Y` paths for a
/// pair at distance 2 in `F_k(tree)`, where `k = |X|`.
pub fn construct_disjoint_family(
    tree: &Graph,
    k: usize,
    x: TokenConfig,
    y: TokenConfig,
) -> Result<PathFamily, EngineError> {
    if x.k() != k || y.k() != k {
        let n = tree.n();
        return Err(TokenError::InvalidConfig { config: if x.k() != k { x } else { y }, n, k }.into());
    }
    if !tree.is_tree() {
        return Err(EngineError::NotATree);
    }
    let delta = min_token_degree(tree, k)?;
    construct_with_delta(tree, x, y, delta).map(|c| c.family)
}

/// Checks a step-1 family: size `m`, disjointness, trace conditions.
pub(crate) fn finish_step1(family: &PathFamily, m: usize, frame: &TraceFrame) -> Result<(), EngineError> {
    if family.len() != m {
        return Err(EngineError::StepOneSize { expected: m, found: family.len() });
    }
    family.check_disjoint()?;
    family.check_traces(frame)
}
