//! Inner-vertex trace conditions.
//!
//! Each constructed path promises a fixed shape for its inner
//! configurations `A`: which vertices of `Z` it may have given up, and which
//! vertices of `W` (or `W°`, i.e. `W` without the middle vertex `v`) it may
//! hold. The seventeen shapes live in one table, [`ConditionId::predicate`].
//! Concrete vertices are supplied per path through symbol bindings.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::moves::TokenPath;
use crate::token::TokenConfig;

/// Role placeholders a predicate refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Symbol {
    Z1,
    Z2,
    W1,
    W2,
}

impl Symbol {
    fn slot(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConditionId {
    C1,
    C2,
    C2_1,
    C2_2,
    C3,
    C4,
    C5,
    D1,
    D2,
    D3,
    D4,
    D3Star,
    D4Star,
    E1,
    E2,
    E3,
    E4,
}

impl ConditionId {
    pub const ALL: [ConditionId; 17] = [
        ConditionId::C1,
        ConditionId::C2,
        ConditionId::C2_1,
        ConditionId::C2_2,
        ConditionId::C3,
        ConditionId::C4,
        ConditionId::C5,
        ConditionId::D1,
        ConditionId::D2,
        ConditionId::D3,
        ConditionId::D4,
        ConditionId::D3Star,
        ConditionId::D4Star,
        ConditionId::E1,
        ConditionId::E2,
        ConditionId::E3,
        ConditionId::E4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConditionId::C1 => "C1",
            ConditionId::C2 => "C2",
            ConditionId::C2_1 => "C2.1",
            ConditionId::C2_2 => "C2.2",
            ConditionId::C3 => "C3",
            ConditionId::C4 => "C4",
            ConditionId::C5 => "C5",
            ConditionId::D1 => "D1",
            ConditionId::D2 => "D2",
            ConditionId::D3 => "D3",
            ConditionId::D4 => "D4",
            ConditionId::D3Star => "D3*",
            ConditionId::D4Star => "D4*",
            ConditionId::E1 => "E1",
            ConditionId::E2 => "E2",
            ConditionId::E3 => "E3",
            ConditionId::E4 => "E4",
        }
    }

    pub fn predicate(self) -> &'static Predicate {
        use Symbol::*;
        use WSet::*;
        const ANY: Option<&[&[Symbol]]> = None;
        const NONE: &[Symbol] = &[];
        macro_rules! p {
            ($w:expr, $z:expr, $ws:expr, $change:expr) => {
                &Predicate { w_set: $w, z_missing: $z, w_held: $ws, requires_change: $change }
            };
        }
        // Both "one of" conditions (C3, C4, D3, D4, D3*, D4*, E2) share a shape:
        // Z missing nothing or {z}, W holding nothing or {w}, not both empty.
        const ONE_OF_Z: Option<&[&[Symbol]]> = Some(&[NONE, &[Z1]]);
        const ONE_OF_W: Option<&[&[Symbol]]> = Some(&[NONE, &[W1]]);
        match self {
            ConditionId::C1 => p!(WCirc, Some(&[NONE]), Some(&[NONE]), false),
            ConditionId::C2 => p!(WCirc, Some(&[&[Z1]]), ANY, false),
            ConditionId::C2_1 => p!(WCirc, ANY, Some(&[&[W1]]), false),
            ConditionId::C2_2 => p!(WCirc, ANY, Some(&[NONE]), false),
            ConditionId::C3 | ConditionId::C4 => p!(WCirc, ONE_OF_Z, ONE_OF_W, true),
            ConditionId::C5 => p!(WCirc, Some(&[&[Z1], &[Z2], &[Z1, Z2]]), Some(&[NONE]), false),
            ConditionId::D1 => p!(Full, Some(&[NONE]), Some(&[NONE]), false),
            ConditionId::D2 => p!(Full, Some(&[&[Z1]]), Some(&[&[W1]]), false),
            ConditionId::D3
            | ConditionId::D4
            | ConditionId::D3Star
            | ConditionId::D4Star
            | ConditionId::E2 => p!(Full, ONE_OF_Z, ONE_OF_W, true),
            ConditionId::E1 => p!(Full, Some(&[NONE]), Some(&[&[W1], &[W2], &[W1, W2]]), false),
            ConditionId::E3 => p!(Full, ONE_OF_Z, Some(&[NONE]), false),
            ConditionId::E4 => p!(Full, Some(&[NONE]), ONE_OF_W, false),
        }
    }
}

impl fmt::Display for ConditionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which "outside" set a predicate inspects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WSet {
    /// `W = V \ (X ∪ Y)`.
    Full,
    /// `W° = W \ {v}` (Case 1 only).
    WCirc,
}

/// Shape of an inner configuration `A`, relative to `Z` and a `W`-set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Predicate {
    pub w_set: WSet,
    /// Allowed values of `Z \ A`; `None` leaves it unconstrained.
    pub z_missing: Option<&'static [&'static [Symbol]]>,
    /// Allowed values of `A ∩ W`; `None` leaves it unconstrained.
    pub w_held: Option<&'static [&'static [Symbol]]>,
    /// At least one of `Z \ A`, `A ∩ W` must be nonempty.
    pub requires_change: bool,
}

/// The sets `Z`, `W` and (Case 1) `W°` of a normalised pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceFrame {
    pub z: TokenConfig,
    pub w: TokenConfig,
    pub w_circ: Option<TokenConfig>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceCondition {
    pub id: ConditionId,
    bindings: [Option<usize>; 4],
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("condition {id} mentions {symbol:?}, which is not bound")]
    Unbound { id: ConditionId, symbol: Symbol },
    #[error("condition {0} refers to W°, which this context does not define")]
    NoWCirc(ConditionId),
}

impl TraceCondition {
    pub fn new(id: ConditionId) -> Self {
        TraceCondition { id, bindings: [None; 4] }
    }

    pub fn bind(mut self, symbol: Symbol, vertex: usize) -> Self {
        self.bindings[symbol.slot()] = Some(vertex);
        self
    }

    pub fn binding(&self, symbol: Symbol) -> Option<usize> {
        self.bindings[symbol.slot()]
    }

    fn resolve(&self, options: &[&[Symbol]]) -> Result<Vec<TokenConfig>, TraceError> {
        options
            .iter()
            .map(|syms| {
                syms.iter()
                    .map(|&s| {
                        self.binding(s)
                            .ok_or(TraceError::Unbound { id: self.id, symbol: s })
                    })
                    .collect::<Result<Vec<_>, _>>()
                    .map(TokenConfig::from_vertices)
            })
            .collect()
    }

    /// The first inner configuration of `p` violating the condition, if any.
    pub fn first_violation(
        &self,
        p: &TokenPath,
        frame: &TraceFrame,
    ) -> Result<Option<TokenConfig>, TraceError> {
        let pred = self.id.predicate();
        let w = match pred.w_set {
            WSet::Full => frame.w,
            WSet::WCirc => frame.w_circ.ok_or(TraceError::NoWCirc(self.id))?,
        };
        let z_allowed = pred.z_missing.map(|o| self.resolve(o)).transpose()?;
        let w_allowed = pred.w_held.map(|o| self.resolve(o)).transpose()?;
        for a in p.inner_configs() {
            let missing = frame.z.difference(a);
            let held = a.intersection(w);
            let ok = z_allowed.as_ref().is_none_or(|s| s.contains(&missing))
                && w_allowed.as_ref().is_none_or(|s| s.contains(&held))
                && (!pred.requires_change || missing.k() + held.k() > 0);
            if !ok {
                return Ok(Some(a));
            }
        }
        Ok(None)
    }
}

/// True iff every inner configuration of `p` satisfies `cond`.
pub fn check_trace(p: &TokenPath, cond: &TraceCondition, frame: &TraceFrame) -> Result<bool, TraceError> {
    cond.first_violation(p, frame).map(|v| v.is_none())
}
