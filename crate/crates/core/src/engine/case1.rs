//! Constructions for pairs with `|X ∩ Y| = k - 1`.

use super::{finish_step1, Case1Context, EngineError, PathFamily, Provenance};
use crate::moves::slide;
use crate::trace::{ConditionId, Symbol, TraceCondition};

fn cond(id: ConditionId) -> TraceCondition {
    TraceCondition::new(id)
}

/// The families `T1..T4`: exactly `m` paths.
pub fn build_case1_step1(ctx: &Case1Context) -> Result<PathFamily, EngineError> {
    let t = &ctx.tree;
    let (x, y, v) = (ctx.x, ctx.y, ctx.v);
    let mut fam = PathFamily::new(ctx.x_cfg, ctx.y_cfg);

    fam.push(t, Provenance::T1, &[slide(&[x, v, y])], vec![cond(ConditionId::C1)])?;

    for &(z, w) in &ctx.e_zw {
        let c2 = cond(ConditionId::C2).bind(Symbol::Z1, z);
        if w != v {
            let c21 = cond(ConditionId::C2_1).bind(Symbol::W1, w);
            fam.push(t, Provenance::T2, &[slide(&[z, w]), slide(&[x, v, y]), slide(&[w, z])], vec![c2, c21])?;
        } else {
            let c22 = cond(ConditionId::C2_2);
            fam.push(t, Provenance::T2, &[slide(&[z, v, y]), slide(&[x, v, z])], vec![c2, c22])?;
        }
    }

    for i in 0..ctx.m_x {
        let (w, z) = (ctx.w_x[i], ctx.z_x[i]);
        let c3 = cond(ConditionId::C3).bind(Symbol::Z1, z).bind(Symbol::W1, w);
        fam.push(
            t,
            Provenance::T3,
            &[slide(&[x, w]), slide(&[z, x, v, y]), slide(&[w, x, z])],
            vec![c3],
        )?;
    }

    for j in 0..ctx.m_y {
        let (w, z) = (ctx.w_y[j], ctx.z_y[j]);
        let c4 = cond(ConditionId::C4).bind(Symbol::Z1, z).bind(Symbol::W1, w);
        fam.push(
            t,
            Provenance::T4,
            &[slide(&[z, y, w]), slide(&[x, v, y, z]), slide(&[w, y])],
            vec![c4],
        )?;
    }

    finish_step1(&fam, ctx.m, &ctx.frame())?;
    Ok(fam)
}

/// Adds `P` (and `P'` when `b >= d + 2`) if `δ > m`.
pub fn build_case1_step2(ctx: &Case1Context, mut fam: PathFamily, delta: usize) -> Result<PathFamily, EngineError> {
    if delta <= ctx.m {
        return Ok(fam);
    }
    let gap = delta - ctx.m;
    if gap > 2 {
        return Err(EngineError::GapTooLarge { case: 1, gap, bound: 2 });
    }
    let (a, b, c, d) = (ctx.a, ctx.b, ctx.c, ctx.d);
    if b < d + 1 || c < a + 1 {
        return Err(EngineError::NoSupplementalPath {
            gap,
            detail: format!("needs b >= d+1 and c >= a+1, have a={a} b={b} c={c} d={d}"),
        });
    }
    let extra = if b >= d + 2 { 2 } else { 1 };
    if extra < gap {
        return Err(EngineError::NoSupplementalPath {
            gap,
            detail: format!("b = d+1 allows one extra path, have a={a} b={b} c={c} d={d}"),
        });
    }
    if extra == 2 && c < a + 2 {
        return Err(EngineError::NoSupplementalPath {
            gap,
            detail: format!("b >= d+2 needs c >= a+2, have a={a} b={b} c={c} d={d}"),
        });
    }
    let (x, y, v) = (ctx.x, ctx.y, ctx.v);
    for (s, label) in [Provenance::P, Provenance::PPrime].into_iter().take(extra).enumerate() {
        let zy = ctx.z_y[b - 1 - s];
        let zx = ctx.z_x[c - 1 - s];
        let c5 = cond(ConditionId::C5).bind(Symbol::Z1, zy).bind(Symbol::Z2, zx);
        fam.push(
            &ctx.tree,
            label,
            &[
                slide(&[zy, y]),
                slide(&[x, v]),
                slide(&[zx, x]),
                slide(&[y, zy]),
                slide(&[v, y]),
                slide(&[x, zx]),
            ],
            vec![c5],
        )?;
    }
    fam.check_disjoint()?;
    fam.check_traces(&ctx.frame())?;
    Ok(fam)
}
