//! The built-in equivalence relations, checked directly from their
//! definitions.
//!
//! These checks do not go through any encoding and serve as ground truth
//! for the encoders and the matcher.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::Symbol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    /// Symbol-by-symbol identity.
    Exact,
    /// Equal up to a bijective renaming of symbols.
    Parameterized,
    /// Equal relative order of every pair of positions, ties included.
    OrderPreserving,
}

impl Relation {
    pub const ALL: [Relation; 3] = [
        Relation::Exact,
        Relation::Parameterized,
        Relation::OrderPreserving,
    ];

    pub fn equiv(self, x: &[Symbol], y: &[Symbol]) -> bool {
        match self {
            Relation::Exact => exact_equiv(x, y),
            Relation::Parameterized => param_equiv(x, y),
            Relation::OrderPreserving => op_equiv(x, y),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Relation::Exact => "exact",
            Relation::Parameterized => "param",
            Relation::OrderPreserving => "op",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Relation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Relation::Exact),
            "param" | "parameterized" => Ok(Relation::Parameterized),
            "op" | "order-preserving" => Ok(Relation::OrderPreserving),
            other => Err(format!("unknown relation `{other}`")),
        }
    }
}

pub fn exact_equiv(x: &[Symbol], y: &[Symbol]) -> bool {
    x == y
}

/// True iff some bijection on symbols maps `x` onto `y` position by position.
///
/// Both the forward map `x -> y` and the backward map `y -> x` induced by the
/// aligned positions must be functions.
pub fn param_equiv(x: &[Symbol], y: &[Symbol]) -> bool {
    if x.len() != y.len() {
        return false;
    }
    let mut forward = HashMap::new();
    let mut backward = HashMap::new();
    x.iter()
        .zip(y)
        .all(|(&a, &b)| *forward.entry(a).or_insert(b) == b && *backward.entry(b).or_insert(a) == a)
}

/// True iff `x` and `y` are order-isomorphic: every pair of positions
/// compares the same way in both strings, ties included.
pub fn op_equiv(x: &[Symbol], y: &[Symbol]) -> bool {
    if x.len() != y.len() {
        return false;
    }
    (0..x.len()).all(|p| (0..p).all(|q| x[p].cmp(&x[q]) == y[p].cmp(&y[q])))
}
