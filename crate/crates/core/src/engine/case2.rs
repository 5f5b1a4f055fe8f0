//! Constructions for pairs with `|X ∩ Y| = k - 2`.

use super::{finish_step1, Case2Context, EngineError, PathFamily, Provenance};
use crate::moves::slide;
use crate::trace::{ConditionId, Symbol, TraceCondition};

fn cond(id: ConditionId) -> TraceCondition {
    TraceCondition::new(id)
}

/// The families `L1..L4`, `L3*`, `L4*`: exactly `m` paths.
pub fn build_case2_step1(ctx: &Case2Context) -> Result<PathFamily, EngineError> {
    let t = &ctx.tree;
    let [x1, x2] = ctx.x;
    let [y1, y2] = ctx.y;
    let mut fam = PathFamily::new(ctx.x_cfg, ctx.y_cfg);

    let d1 = || vec![cond(ConditionId::D1)];
    fam.push(t, Provenance::L1, &[slide(&[x1, y1]), slide(&[x2, y2])], d1())?;
    fam.push(t, Provenance::L1, &[slide(&[x2, y2]), slide(&[x1, y1])], d1())?;

    for &(z, w) in &ctx.e_zw {
        let d2 = cond(ConditionId::D2).bind(Symbol::Z1, z).bind(Symbol::W1, w);
        fam.push(
            t,
            Provenance::L2,
            &[slide(&[z, w]), slide(&[x1, y1]), slide(&[x2, y2]), slide(&[w, z])],
            vec![d2],
        )?;
    }

    // L3 / L3*: through a W- and a Z-neighbour of x_i.
    for (i, label, id) in [(0, Provenance::L3, ConditionId::D3), (1, Provenance::L3Star, ConditionId::D3Star)] {
        let (xi, yi) = (ctx.x[i], ctx.y[i]);
        let (xo, yo) = (ctx.x[1 - i], ctx.y[1 - i]);
        for s in 0..ctx.m_x[i] {
            let (w, z) = (ctx.w_x[i][s], ctx.z_x[i][s]);
            let c = cond(id).bind(Symbol::Z1, z).bind(Symbol::W1, w);
            fam.push(
                t,
                label,
                &[slide(&[xi, w]), slide(&[z, xi, yi]), slide(&[xo, yo]), slide(&[w, xi, z])],
                vec![c],
            )?;
        }
    }

    // L4 / L4*: through a Z- and a W-neighbour of y_i.
    for (i, label, id) in [(0, Provenance::L4, ConditionId::D4), (1, Provenance::L4Star, ConditionId::D4Star)] {
        let (xi, yi) = (ctx.x[i], ctx.y[i]);
        let (xo, yo) = (ctx.x[1 - i], ctx.y[1 - i]);
        for s in 0..ctx.m_y[i] {
            let (w, z) = (ctx.w_y[i][s], ctx.z_y[i][s]);
            let c = cond(id).bind(Symbol::Z1, z).bind(Symbol::W1, w);
            fam.push(
                t,
                label,
                &[slide(&[z, yi, w]), slide(&[xo, yo]), slide(&[xi, yi, z]), slide(&[w, yi])],
                vec![c],
            )?;
        }
    }

    finish_step1(&fam, ctx.m, &ctx.frame())?;
    Ok(fam)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Supplement {
    P1,
    P2,
    P3,
    P4,
}

fn choose(ctx: &Case2Context) -> Result<Supplement, String> {
    let (a, c) = (ctx.a, ctx.c);
    let (b, d) = (ctx.b, ctx.d);
    let row = ctx.table_case();
    let pick = match row {
        2 | 8 => Supplement::P1,
        6 if c[1] > a[1] => Supplement::P2,
        6 => Supplement::P1,
        16 if c[0] > a[0] => Supplement::P3,
        16 => Supplement::P4,
        _ => return Err(format!("table row {row} has no supplemental path")),
    };
    let x1y2 = ctx.cross_edge == Some((ctx.x[0], ctx.y[1]));
    let ok = match pick {
        Supplement::P1 => a[0] > c[0] && d[1] > b[1],
        Supplement::P2 => a[0] > c[0] && c[1] > a[1],
        Supplement::P3 => c[0] > a[0] && x1y2,
        Supplement::P4 => d[1] > b[1] && x1y2,
    };
    if ok {
        Ok(pick)
    } else {
        Err(format!(
            "row {row} picked {pick:?} but its hypotheses fail (a={a:?} b={b:?} c={c:?} d={d:?}, x1y2 edge: {x1y2})"
        ))
    }
}

/// Adds one of `P1..P4` if `δ = m + 1`.
pub fn build_case2_step2(ctx: &Case2Context, mut fam: PathFamily, delta: usize) -> Result<PathFamily, EngineError> {
    if delta <= ctx.m {
        return Ok(fam);
    }
    let gap = delta - ctx.m;
    if gap > 1 {
        return Err(EngineError::GapTooLarge { case: 2, gap, bound: 1 });
    }
    // Row 16 wants the cross edge as x1y2; exchanging the two matching
    // edges relabels without changing X, Y or any path.
    let swapped;
    let ctx = if ctx.table_case() == 16 && ctx.cross_edge == Some((ctx.y[0], ctx.x[1])) {
        swapped = ctx.swap_indices();
        &swapped
    } else {
        ctx
    };
    let pick = choose(ctx).map_err(|detail| EngineError::NoSupplementalPath { gap, detail })?;
    let t = &ctx.tree;
    let [x1, x2] = ctx.x;
    let [y1, y2] = ctx.y;
    let last = |v: &Vec<usize>| *v.last().expect("nonempty by the path's hypotheses");
    match pick {
        Supplement::P1 => {
            let (wx, wy) = (last(&ctx.w_x[0]), last(&ctx.w_y[1]));
            let e1 = cond(ConditionId::E1).bind(Symbol::W1, wx).bind(Symbol::W2, wy);
            fam.push(
                t,
                Provenance::P1,
                &[slide(&[x1, wx]), slide(&[x2, y2, wy]), slide(&[wx, x1, y1]), slide(&[wy, y2])],
                vec![e1],
            )?;
        }
        Supplement::P2 => {
            let (wx, z) = (last(&ctx.w_x[0]), last(&ctx.z_x[1]));
            let e2 = cond(ConditionId::E2).bind(Symbol::Z1, z).bind(Symbol::W1, wx);
            fam.push(
                t,
                Provenance::P2,
                &[
                    slide(&[x1, wx]),
                    slide(&[x2, y2]),
                    slide(&[z, x2]),
                    slide(&[wx, x1, y1]),
                    slide(&[x2, z]),
                ],
                vec![e2],
            )?;
        }
        Supplement::P3 => {
            let z = last(&ctx.z_x[0]);
            let e3 = cond(ConditionId::E3).bind(Symbol::Z1, z);
            fam.push(
                t,
                Provenance::P3,
                &[
                    slide(&[x1, y2]),
                    slide(&[z, x1, y1]),
                    slide(&[y2, x1]),
                    slide(&[x2, y2]),
                    slide(&[x1, z]),
                ],
                vec![e3],
            )?;
        }
        Supplement::P4 => {
            let w = last(&ctx.w_y[1]);
            let e4 = cond(ConditionId::E4).bind(Symbol::W1, w);
            fam.push(
                t,
                Provenance::P4,
                &[slide(&[x1, y2, w]), slide(&[x2, y2, x1, y1]), slide(&[w, y2])],
                vec![e4],
            )?;
        }
    }
    fam.check_disjoint()?;
    fam.check_traces(&ctx.frame())?;
    Ok(fam)
}
