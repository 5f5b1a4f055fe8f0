//! Named quantities of a distance-2 pair, and the normalisation that puts a
//! pair into the configuration the constructions expect.

use serde::Serialize;

use super::{EngineError, Reduction, ReductionStep};
use crate::graph::Graph;
use crate::token::{classify_distance2, complement_iso, token_degree_unchecked, Distance2Class, TokenConfig};
use crate::trace::TraceFrame;

fn sorted_members(set: u64) -> Vec<usize> {
    TokenConfig::from_mask(set).to_vec()
}

/// Edges `zw` of the tree with `z ∈ Z`, `w ∈ W`, sorted.
fn zw_edges(tree: &Graph, z: TokenConfig, w: TokenConfig) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for zi in z.members() {
        for wj in TokenConfig::from_mask(tree.neighbor_mask(zi) & w.mask()).members() {
            out.push((zi, wj));
        }
    }
    out
}

/// A pair with `X \ Y = {x}`, `Y \ X = {y}`, `x - v - y` in the tree and
/// `v ∉ X ∪ Y`. Neighbour lists are sorted ascending; the `i`-th element of
/// `w_x` is the proof's `w_x^{i+1}`, and so on.
#[derive(Debug, Clone, Serialize)]
pub struct Case1Context {
    #[serde(skip)]
    pub tree: Graph,
    pub k: usize,
    pub x_cfg: TokenConfig,
    pub y_cfg: TokenConfig,
    pub z: TokenConfig,
    pub w: TokenConfig,
    pub w_circ: TokenConfig,
    pub x: usize,
    pub y: usize,
    pub v: usize,
    pub w_x: Vec<usize>,
    pub w_y: Vec<usize>,
    pub z_x: Vec<usize>,
    pub z_y: Vec<usize>,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
    pub e_zw: Vec<(usize, usize)>,
    pub eta: usize,
    pub m_x: usize,
    pub m_y: usize,
    pub m: usize,
}

impl Case1Context {
    pub fn new(tree: &Graph, x_cfg: TokenConfig, y_cfg: TokenConfig, v: usize) -> Self {
        let n = tree.n();
        let z = x_cfg.intersection(y_cfg);
        let w = complement_iso(x_cfg.union(y_cfg), n);
        let w_circ = w.difference(TokenConfig::from_vertices([v]));
        let x = x_cfg.difference(y_cfg).members().next().expect("x");
        let y = y_cfg.difference(x_cfg).members().next().expect("y");
        let w_x = sorted_members(tree.neighbor_mask(x) & w_circ.mask());
        let w_y = sorted_members(tree.neighbor_mask(y) & w_circ.mask());
        let z_x = sorted_members(tree.neighbor_mask(x) & z.mask());
        let z_y = sorted_members(tree.neighbor_mask(y) & z.mask());
        let e_zw = zw_edges(tree, z, w);
        let (a, b, c, d) = (w_x.len(), z_y.len(), z_x.len(), w_y.len());
        let eta = e_zw.len();
        let (m_x, m_y) = (a.min(c), b.min(d));
        Case1Context {
            tree: tree.clone(),
            k: x_cfg.k(),
            x_cfg,
            y_cfg,
            z,
            w,
            w_circ,
            x,
            y,
            v,
            w_x,
            w_y,
            z_x,
            z_y,
            a,
            b,
            c,
            d,
            e_zw,
            eta,
            m_x,
            m_y,
            m: m_x + m_y + eta + 1,
        }
    }

    pub fn frame(&self) -> TraceFrame {
        TraceFrame { z: self.z, w: self.w, w_circ: Some(self.w_circ) }
    }

    pub fn deg_x(&self) -> usize {
        self.a + self.b + self.eta + 1
    }

    pub fn deg_y(&self) -> usize {
        self.c + self.d + self.eta + 1
    }
}

/// A pair with `X \ Y = {x1, x2}`, `Y \ X = {y1, y2}` and tree edges
/// `x1y1`, `x2y2`. Index `0` of each array is the proof's index 1.
#[derive(Debug, Clone, Serialize)]
pub struct Case2Context {
    #[serde(skip)]
    pub tree: Graph,
    pub k: usize,
    pub x_cfg: TokenConfig,
    pub y_cfg: TokenConfig,
    pub z: TokenConfig,
    pub w: TokenConfig,
    pub x: [usize; 2],
    pub y: [usize; 2],
    pub w_x: [Vec<usize>; 2],
    pub w_y: [Vec<usize>; 2],
    pub z_x: [Vec<usize>; 2],
    pub z_y: [Vec<usize>; 2],
    pub a: [usize; 2],
    pub b: [usize; 2],
    pub c: [usize; 2],
    pub d: [usize; 2],
    pub e_zw: Vec<(usize, usize)>,
    pub eta: usize,
    pub m_x: [usize; 2],
    pub m_y: [usize; 2],
    pub m: usize,
    /// The unique tree edge between `{x1, y1}` and `{x2, y2}`, if any, as
    /// (end in `{x1, y1}`, end in `{x2, y2}`).
    pub cross_edge: Option<(usize, usize)>,
}

impl Case2Context {
    pub fn new(tree: &Graph, x_cfg: TokenConfig, y_cfg: TokenConfig, x: [usize; 2], y: [usize; 2]) -> Self {
        let n = tree.n();
        let z = x_cfg.intersection(y_cfg);
        let w = complement_iso(x_cfg.union(y_cfg), n);
        let nb = |u: usize, set: TokenConfig| sorted_members(tree.neighbor_mask(u) & set.mask());
        let w_x = [nb(x[0], w), nb(x[1], w)];
        let w_y = [nb(y[0], w), nb(y[1], w)];
        let z_x = [nb(x[0], z), nb(x[1], z)];
        let z_y = [nb(y[0], z), nb(y[1], z)];
        let a = [w_x[0].len(), w_x[1].len()];
        let b = [z_y[0].len(), z_y[1].len()];
        let c = [z_x[0].len(), z_x[1].len()];
        let d = [w_y[0].len(), w_y[1].len()];
        let m_x = [a[0].min(c[0]), a[1].min(c[1])];
        let m_y = [b[0].min(d[0]), b[1].min(d[1])];
        let e_zw = zw_edges(tree, z, w);
        let eta = e_zw.len();
        let cross_edge = [x[0], y[0]]
            .into_iter()
            .flat_map(|p| [x[1], y[1]].into_iter().map(move |q| (p, q)))
            .find(|&(p, q)| tree.has_edge(p, q));
        Case2Context {
            tree: tree.clone(),
            k: x_cfg.k(),
            x_cfg,
            y_cfg,
            z,
            w,
            x,
            y,
            w_x,
            w_y,
            z_x,
            z_y,
            a,
            b,
            c,
            d,
            e_zw,
            eta,
            m_x,
            m_y,
            m: m_x[0] + m_x[1] + m_y[0] + m_y[1] + eta + 2,
            cross_edge,
        }
    }

    pub fn frame(&self) -> TraceFrame {
        TraceFrame { z: self.z, w: self.w, w_circ: None }
    }

    fn degree_base(&self) -> usize {
        self.eta + if self.has_xy_cross() { 3 } else { 2 }
    }

    /// Whether the cross edge is `x1y2` or `x2y1`.
    pub fn has_xy_cross(&self) -> bool {
        let [x1, x2] = self.x;
        let [y1, y2] = self.y;
        matches!(self.cross_edge, Some(e) if e == (x1, y2) || e == (y1, x2))
    }

    pub fn deg_x(&self) -> usize {
        self.a[0] + self.a[1] + self.b[0] + self.b[1] + self.degree_base()
    }

    pub fn deg_y(&self) -> usize {
        self.c[0] + self.c[1] + self.d[0] + self.d[1] + self.degree_base()
    }

    /// Row of the 16-case table: `1 + 8[a1<=c1] + 4[a2<=c2] + 2[b1<=d1] + [b2<=d2]`.
    pub fn table_case(&self) -> u8 {
        1 + 8 * (self.a[0] <= self.c[0]) as u8
            + 4 * (self.a[1] <= self.c[1]) as u8
            + 2 * (self.b[0] <= self.d[0]) as u8
            + (self.b[1] <= self.d[1]) as u8
    }

    /// Same pair with the labels of the two edges exchanged.
    pub fn swap_indices(&self) -> Self {
        Case2Context::new(&self.tree, self.x_cfg, self.y_cfg, [self.x[1], self.x[0]], [self.y[1], self.y[0]])
    }

    /// The complementary pair in `F_{n-k}` with `x'_i = y_i`, `y'_i = x_i`.
    pub fn complement_relabel(&self) -> Self {
        let n = self.tree.n();
        Case2Context::new(
            &self.tree,
            complement_iso(self.x_cfg, n),
            complement_iso(self.y_cfg, n),
            self.y,
            self.x,
        )
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "case")]
pub enum NormalizedPair {
    Case1(Case1Context),
    Case2(Case2Context),
}

impl NormalizedPair {
    pub fn m(&self) -> usize {
        match self {
            NormalizedPair::Case1(c) => c.m,
            NormalizedPair::Case2(c) => c.m,
        }
    }

    pub fn frame(&self) -> TraceFrame {
        match self {
            NormalizedPair::Case1(c) => c.frame(),
            NormalizedPair::Case2(c) => c.frame(),
        }
    }
}

/// Table rows that are relabelled before use, and how.
fn table_reduction(case: u8) -> Option<ReductionStep> {
    match case {
        3 | 9 | 10 | 11 | 12 | 15 => Some(ReductionStep::SwapIndices12),
        5 | 13 | 14 => Some(ReductionStep::ComplementWithRelabel),
        _ => None,
    }
}

/// Puts a distance-2 pair of `F_k(tree)` into normal form:
///
/// * Case 1: `v ∉ X ∪ Y` (complementing if needed) and `deg X <= deg Y`.
/// * Case 2: `deg X <= deg Y`; the table row is one of 2, 4, 6, 7, 8, 16.
///
/// The returned [`Reduction`] maps paths of the normal form back to paths
/// between the original `X` and `Y`.
pub fn normalize(
    tree: &Graph,
    x_cfg: TokenConfig,
    y_cfg: TokenConfig,
) -> Result<(NormalizedPair, Reduction), EngineError> {
    if !tree.is_tree() {
        return Err(EngineError::NotATree);
    }
    let n = tree.n();
    let mut reduction = Reduction::new(n);
    match classify_distance2(tree, x_cfg, y_cfg)? {
        Distance2Class::Case1 { v, .. } => {
            let (mut xc, mut yc) = (x_cfg, y_cfg);
            if x_cfg.union(y_cfg).contains(v) {
                xc = complement_iso(x_cfg, n);
                yc = complement_iso(y_cfg, n);
                reduction.push(ReductionStep::Complement);
            }
            let mut ctx = Case1Context::new(tree, xc, yc, v);
            debug_assert_eq!(ctx.deg_x(), token_degree_unchecked(tree, xc));
            if ctx.deg_x() > ctx.deg_y() {
                ctx = Case1Context::new(tree, yc, xc, v);
                reduction.push(ReductionStep::SwapXY);
            }
            Ok((NormalizedPair::Case1(ctx), reduction))
        }
        Distance2Class::Case2 { x1, y1, x2, y2 } => {
            let mut ctx = Case2Context::new(tree, x_cfg, y_cfg, [x1, x2], [y1, y2]);
            debug_assert_eq!(ctx.deg_x(), token_degree_unchecked(tree, x_cfg));
            debug_assert_eq!(ctx.deg_y(), token_degree_unchecked(tree, y_cfg));
            if ctx.deg_x() > ctx.deg_y() {
                ctx = Case2Context::new(tree, y_cfg, x_cfg, [y1, y2], [x1, x2]);
                reduction.push(ReductionStep::SwapXY);
            }
            let mut depth = 0;
            loop {
                let case = ctx.table_case();
                if case == 1 {
                    return Err(EngineError::ImpossibleTableCase);
                }
                let Some(step) = table_reduction(case) else { break };
                depth += 1;
                if depth > 2 {
                    return Err(EngineError::ReductionDepth { case });
                }
                ctx = match step {
                    ReductionStep::SwapIndices12 => ctx.swap_indices(),
                    _ => ctx.complement_relabel(),
                };
                reduction.push(step);
            }
            Ok((NormalizedPair::Case2(ctx), reduction))
        }
    }
}
