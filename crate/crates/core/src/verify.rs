//! Batch verification sweeps producing self-contained records.
//!
//! Every sweep is split into independent `(graph, k)` units that run on the
//! ambient rayon pool; results are collected in input order, so output is
//! identical for any thread count.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::engine::{construct_with_delta, CaseKind};
use crate::generators::clique_pair_bridge;
use crate::graph::Graph;
use crate::graph6::emit_graph6;
use crate::oracle::{edge_connectivity, vertex_connectivity, KappaStrategy};
use crate::token::{build_token_graph, min_token_degree, TokenConfig, TokenError};
use crate::trace::check_trace;
use crate::trees::enumerate_trees;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("{what} = {value} outside {min}..={max}")]
    OutOfRange {
        what: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },
    #[error("m_min = {m_min} exceeds m_max = {m_max}")]
    EmptyRange { m_min: usize, m_max: usize },
}

fn in_range(what: &'static str, value: usize, min: usize, max: usize) -> Result<(), VerifyError> {
    if (min..=max).contains(&value) {
        Ok(())
    } else {
        Err(VerifyError::OutOfRange { what, value, min, max })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Theorem,
    Paths,
    Hfamily,
    Conjecture,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Confirmed,
    Violated,
    Skipped,
}

/// Reproduction data for a failed engine run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailureDump {
    pub x: TokenConfig,
    pub y: TokenConfig,
    pub error: String,
}

/// Engine statistics over all distance-2 pairs of one `F_k(T)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PathStats {
    pub pairs: usize,
    pub case1_pairs: usize,
    pub case2_pairs: usize,
    pub min_family_size: Option<usize>,
    /// Histograms of `δ - m` per case.
    pub slack_case1: BTreeMap<i64, usize>,
    pub slack_case2: BTreeMap<i64, usize>,
    /// Paths whose trace conditions were re-audited, and how many failed.
    pub traced_paths: usize,
    pub trace_failures: usize,
    /// Pairs whose step-1 family size differed from `m`.
    pub step1_mismatches: usize,
    /// How often each step-2 path was used.
    pub supplemental: BTreeMap<String, usize>,
    pub failure: Option<FailureDump>,
}

impl PathStats {
    pub fn max_slack(&self, case: CaseKind) -> Option<i64> {
        let h = match case {
            CaseKind::Case1 => &self.slack_case1,
            CaseKind::Case2 => &self.slack_case2,
        };
        h.keys().next_back().copied()
    }

    fn merge(&mut self, other: &PathStats) {
        self.pairs += other.pairs;
        self.case1_pairs += other.case1_pairs;
        self.case2_pairs += other.case2_pairs;
        self.min_family_size = match (self.min_family_size, other.min_family_size) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        for (s, c) in &other.slack_case1 {
            *self.slack_case1.entry(*s).or_default() += c;
        }
        for (s, c) in &other.slack_case2 {
            *self.slack_case2.entry(*s).or_default() += c;
        }
        self.traced_paths += other.traced_paths;
        self.trace_failures += other.trace_failures;
        self.step1_mismatches += other.step1_mismatches;
        for (l, c) in &other.supplemental {
            *self.supplemental.entry(l.clone()).or_default() += c;
        }
        if self.failure.is_none() {
            self.failure = other.failure.clone();
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub kappa: usize,
    pub lambda: usize,
    pub delta: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationRecord {
    pub mode: Mode,
    /// graph6 encoding of the base graph.
    pub graph_id: String,
    pub n: usize,
    pub k: usize,
    pub delta: Option<usize>,
    pub kappa: Option<usize>,
    pub lambda: Option<usize>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub paths: Option<PathStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
    /// Clique order of the `hfamily` graph.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
}

impl VerificationRecord {
    fn new(mode: Mode, g: &Graph, k: usize) -> Self {
        VerificationRecord {
            mode,
            graph_id: emit_graph6(g).unwrap_or_else(|_| String::from("?")),
            n: g.n(),
            k,
            delta: None,
            kappa: None,
            lambda: None,
            status: Status::Skipped,
            reason: None,
            paths: None,
            expected: None,
            m: None,
        }
    }

    fn skip(mut self, reason: impl Into<String>) -> Self {
        self.status = Status::Skipped;
        self.reason = Some(reason.into());
        self
    }
}

fn trees_up_to(n_max: usize) -> Vec<Graph> {
    (2..=n_max).flat_map(|n| enumerate_trees(n).expect("order checked")).collect()
}

fn units(graphs: &[Graph], ks: impl Fn(&Graph) -> Vec<usize>) -> Vec<(&Graph, usize)> {
    graphs.iter().flat_map(|g| ks(g).into_iter().map(move |k| (g, k))).collect()
}

/// `κ`, `λ`, `δ` of `F_k(g)`, or the reason it cannot be materialised.
fn token_connectivity(g: &Graph, k: usize, lambda: bool) -> Result<(usize, Option<usize>, usize), TokenError> {
    let tg = build_token_graph(g, k)?;
    let delta = min_token_degree(g, k)?;
    let f = tg.graph();
    let strategy = if f.is_connected() { KappaStrategy::DistanceTwo } else { KappaStrategy::General };
    let kappa = vertex_connectivity(f, strategy);
    Ok((kappa, lambda.then(|| edge_connectivity(f)), delta))
}

/// One theorem unit: `κ = λ = δ` for `F_k(tree)`.
pub fn theorem_record(tree: &Graph, k: usize) -> VerificationRecord {
    let rec = VerificationRecord::new(Mode::Theorem, tree, k);
    match token_connectivity(tree, k, true) {
        Err(e) => rec.skip(e.to_string()),
        Ok((kappa, lambda, delta)) => {
            let lambda = lambda.expect("requested");
            let ok = kappa == delta && lambda == delta;
            VerificationRecord {
                kappa: Some(kappa),
                lambda: Some(lambda),
                delta: Some(delta),
                status: if ok { Status::Confirmed } else { Status::Violated },
                ..rec
            }
        }
    }
}

/// Every tree with `2 <= n <= n_max` and every `k` in `1..n`.
pub fn cmd_theorem(n_max: usize) -> Result<Vec<VerificationRecord>, VerifyError> {
    in_range("n_max", n_max, 2, 10)?;
    let trees = trees_up_to(n_max);
    let work = units(&trees, |t| (1..t.n()).collect());
    Ok(work.par_iter().map(|&(t, k)| theorem_record(t, k)).collect())
}

/// One engine unit: every distance-2 pair of `F_k(tree)`.
pub fn paths_record(tree: &Graph, k: usize) -> VerificationRecord {
    let mut rec = VerificationRecord::new(Mode::Paths, tree, k);
    let tg = match build_token_graph(tree, k) {
        Ok(tg) => tg,
        Err(e) => return rec.skip(e.to_string()),
    };
    let delta = min_token_degree(tree, k).expect("k checked by build");
    rec.delta = Some(delta);
    let mut stats = PathStats::default();
    for (i, j) in tg.distance_two_pairs() {
        let (x, y) = (tg.config(i), tg.config(j));
        stats.pairs += 1;
        let c = match construct_with_delta(tree, x, y, delta) {
            Ok(c) => c,
            Err(e) => {
                stats.failure = Some(FailureDump { x, y, error: e.to_string() });
                break;
            }
        };
        match c.case() {
            CaseKind::Case1 => {
                stats.case1_pairs += 1;
                *stats.slack_case1.entry(c.slack()).or_default() += 1;
            }
            CaseKind::Case2 => {
                stats.case2_pairs += 1;
                *stats.slack_case2.entry(c.slack()).or_default() += 1;
            }
        }
        if c.step1_size != c.m {
            stats.step1_mismatches += 1;
        }
        let frame = c.normalized.frame();
        for fp in &c.normalized_family.paths {
            if fp.label.is_supplemental() {
                *stats.supplemental.entry(fp.label.name().to_string()).or_default() += 1;
            }
            stats.traced_paths += 1;
            let ok = fp.conditions.iter().all(|cond| check_trace(&fp.path, cond, &frame) == Ok(true));
            if !ok || fp.conditions.is_empty() {
                stats.trace_failures += 1;
            }
        }
        let size = c.family.len();
        stats.min_family_size = Some(stats.min_family_size.map_or(size, |s| s.min(size)));
    }
    let ok = stats.failure.is_none()
        && stats.trace_failures == 0
        && stats.step1_mismatches == 0
        && stats.min_family_size.is_none_or(|s| s >= delta)
        && stats.max_slack(CaseKind::Case1).is_none_or(|s| s <= 2)
        && stats.max_slack(CaseKind::Case2).is_none_or(|s| s <= 1);
    rec.status = if ok { Status::Confirmed } else { Status::Violated };
    if let Some(f) = &stats.failure {
        rec.reason = Some(format!("X = {}, Y = {}: {}", f.x, f.y, f.error));
    }
    rec.paths = Some(stats);
    rec
}

/// Engine check over every tree with `2 <= n <= n_max`, every `k`.
pub fn cmd_paths(n_max: usize) -> Result<Vec<VerificationRecord>, VerifyError> {
    in_range("n_max", n_max, 2, 8)?;
    let trees = trees_up_to(n_max);
    let work = units(&trees, |t| (1..t.n()).collect());
    Ok(work.par_iter().map(|&(t, k)| paths_record(t, k)).collect())
}

/// Sums the path statistics of a sweep.
pub fn aggregate_paths(records: &[VerificationRecord]) -> PathStats {
    let mut total = PathStats::default();
    for s in records.iter().filter_map(|r| r.paths.as_ref()) {
        total.merge(s);
    }
    total
}

/// `F_2` of two `K_m` joined by an edge: expects `κ = λ = m - 1`, `δ = 2(m - 2)`.
pub fn hfamily_record(m: usize) -> VerificationRecord {
    let h = clique_pair_bridge(m);
    let mut rec = VerificationRecord::new(Mode::Hfamily, &h, 2);
    rec.m = Some(m);
    let expected = Expected { kappa: m - 1, lambda: m - 1, delta: 2 * (m - 2) };
    match token_connectivity(&h, 2, true) {
        Err(e) => rec.skip(e.to_string()),
        Ok((kappa, lambda, delta)) => {
            let lambda = lambda.expect("requested");
            let ok = kappa == expected.kappa && lambda == expected.lambda && delta == expected.delta;
            VerificationRecord {
                kappa: Some(kappa),
                lambda: Some(lambda),
                delta: Some(delta),
                status: if ok { Status::Confirmed } else { Status::Violated },
                expected: Some(expected),
                ..rec
            }
        }
    }
}

pub fn cmd_hfamily(m_min: usize, m_max: usize) -> Result<Vec<VerificationRecord>, VerifyError> {
    in_range("m_min", m_min, 3, 6)?;
    in_range("m_max", m_max, 3, 6)?;
    if m_min > m_max {
        return Err(VerifyError::EmptyRange { m_min, m_max });
    }
    Ok((m_min..=m_max).into_par_iter().map(hfamily_record).collect())
}

/// Which `k` a conjecture scan visits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KSelection {
    /// `k ∈ {2, ..., n - 2}`.
    All,
    Single(usize),
}

/// One conjecture unit: `κ(F_k(g)) = δ(F_k(g))`.
pub fn conjecture_record(g: &Graph, k: usize) -> VerificationRecord {
    let rec = VerificationRecord::new(Mode::Conjecture, g, k);
    if !g.is_connected() {
        return rec.skip("disconnected");
    }
    if g.girth().is_some_and(|girth| girth < 5) {
        return rec.skip(format!("girth {} < 5", g.girth().expect("checked")));
    }
    if k < 2 || k + 2 > g.n() {
        return rec.skip(format!("k = {k} outside 2..=n-2"));
    }
    match token_connectivity(g, k, false) {
        Err(e) => rec.skip(e.to_string()),
        Ok((kappa, _, delta)) => VerificationRecord {
            kappa: Some(kappa),
            delta: Some(delta),
            status: if kappa == delta { Status::Confirmed } else { Status::Violated },
            ..rec
        },
    }
}

/// Scans `graphs`; graphs with no eligible `k` get one skipped record.
pub fn cmd_conjecture(graphs: &[Graph], ks: KSelection) -> Vec<VerificationRecord> {
    let work: Vec<(&Graph, usize)> = graphs
        .iter()
        .flat_map(|g| {
            let list: Vec<usize> = match ks {
                KSelection::All if g.n() >= 4 => (2..=g.n() - 2).collect(),
                KSelection::All => vec![0],
                KSelection::Single(k) => vec![k],
            };
            list.into_iter().map(move |k| (g, k))
        })
        .collect();
    work.par_iter().map(|&(g, k)| conjecture_record(g, k)).collect()
}

/// Connected graphs of girth at least 5 on `n` vertices, up to isomorphism.
pub fn girth5_catalog(n: usize) -> Vec<Graph> {
    crate::canon::enumerate_graphs(n)
        .into_iter()
        .filter(|g| g.is_connected() && g.girth().is_none_or(|girth| girth >= 5))
        .collect()
}

/// Record counts by status.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub records: usize,
    pub confirmed: usize,
    pub violated: usize,
    pub skipped: usize,
}

pub fn summarize(records: &[VerificationRecord]) -> Summary {
    let mut s = Summary { records: records.len(), ..Summary::default() };
    for r in records {
        match r.status {
            Status::Confirmed => s.confirmed += 1,
            Status::Violated => s.violated += 1,
            Status::Skipped => s.skipped += 1,
        }
    }
    s
}
