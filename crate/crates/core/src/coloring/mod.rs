//! Coloring of triangle-free digraphs within a factorial budget.
//!
//! The driver is [`color_c3_free`]: given a digraph with no directed
//! triangle it produces a valid coloring using at most
//! `g(a) = 35^(a-1) * a!` colors, `a` being the independence number of the
//! underlying graph. The procedure never takes `a` as an input; the budget
//! is a consequence of the structure, not a parameter.
//!
//! The building blocks are exported individually: dominating-set
//! constructions ([`stable_dominating_set`], [`acyclic_dominating_set`],
//! [`out_quasi_dominating_set`]), the bag predicates ([`is_bag`],
//! [`is_poor_bag`], [`split_non_bag`]), the chain machinery
//! ([`find_chain`], [`assign_zones`]) and the poor-bag coloring step
//! ([`color_poor_bag`]).

mod bags;
mod chain;
mod domsets;
mod engine;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub use bags::{bag_violation, is_bag, is_poor_bag, split_non_bag};
pub use chain::{assign_zones, find_chain, ChainKind, ChainResult, ZonePartition};
pub use domsets::{acyclic_dominating_set, out_quasi_dominating_set, stable_dominating_set};
pub use engine::{color_c3_free, color_poor_bag, ColorConfig, RunStats, SubsetColoring};

/// Errors from the coloring procedures and their preconditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColorError {
    /// The input contains a directed triangle (witness in arc order).
    ContainsTriangle { triangle: (u32, u32, u32) },
    /// The input must be acyclic; a cycle witness is attached.
    NotAcyclic { cycle: Vec<u32> },
    /// The set is not a bag; the violating triple is attached.
    NotABag { triple: (u32, u32, u32) },
    /// The set is a bag where a non-bag was required.
    IsABag,
    /// The bag is not poor.
    NotPoor { rich_vertex: u32 },
    /// The color budget is defined for independence bounds >= 1 only.
    AlphaZero,
    /// `35^(a-1) * a!` exceeds 128-bit integer range.
    BudgetOverflow { alpha: u32 },
    /// An internal structural invariant failed. Never expected; reported
    /// rather than silently ignored.
    Internal(String),
}

impl fmt::Display for ColorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColorError::ContainsTriangle { triangle: (u, v, w) } => {
                write!(f, "input contains the directed triangle ({u}, {v}, {w})")
            }
            ColorError::NotAcyclic { cycle } => {
                write!(f, "input is not acyclic (cycle through {cycle:?})")
            }
            ColorError::NotABag { triple: (x, y, z) } => {
                write!(f, "set is not a bag: triple ({x}, {y}, {z}) has no common neighbor in it")
            }
            ColorError::IsABag => write!(f, "set is a bag, expected a non-bag"),
            ColorError::NotPoor { rich_vertex } => {
                write!(f, "bag is not poor: both halves of vertex {rich_vertex} are bags")
            }
            ColorError::AlphaZero => write!(f, "independence bound must be at least 1"),
            ColorError::BudgetOverflow { alpha } => {
                write!(f, "color budget for alpha = {alpha} exceeds 128-bit range")
            }
            ColorError::Internal(msg) => write!(f, "internal invariant violated: {msg}"),
        }
    }
}

/// The certified color budget `g(a) = 35^(a-1) * a!`, in exact integer
/// arithmetic: `g(1) = 1` and `g(a) = 35 * a * g(a-1)`.
pub fn color_budget(alpha: u32) -> Result<u128, ColorError> {
    if alpha == 0 {
        return Err(ColorError::AlphaZero);
    }
    let mut g: u128 = 1;
    for a in 2..=alpha as u128 {
        g = g
            .checked_mul(35)
            .and_then(|g| g.checked_mul(a))
            .ok_or(ColorError::BudgetOverflow { alpha })?;
    }
    Ok(g)
}
