//! Automorphism groups of the integral-distance graph, canonical forms of
//! point sets, and an independent individualization–refinement engine.

pub mod affine;
pub mod canon;
pub mod group;
pub mod ir;
pub mod lines;

use crate::field::FieldError;
use crate::igraph::GraphError;
use crate::plane::PlaneError;
use thiserror::Error;

pub use affine::{h_generators, semilinear_stabilizer, AffMap};
pub use canon::{aut_order_of_set, canonical_form, canonize, is_canonical, normalize_pair, CanonicalForm, Canonized};
pub use group::{close_group, close_perms, AffineGroup, PlaneGroup};
pub use ir::{graph_aut_order, AutResult, DEFAULT_IR_MAX_Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymmetryError {
    #[error("map does not preserve integral distances: {0}")]
    NotAnAutomorphism(String),
    #[error("group order exceeds the cap {cap}")]
    CapExceeded { cap: u64 },
    #[error("group does not act transitively on the plane")]
    NotTransitive,
    #[error("the two points are not at integral distance")]
    NotIntegralPair,
    #[error("the two points coincide")]
    SamePoint,
    #[error("no group element normalizes the pair")]
    NoNormalizer,
    #[error("q = {q} exceeds the bound {bound} for the refinement engine")]
    TooLarge { q: u32, bound: u32 },
    #[error("time budget exhausted")]
    Timeout,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Plane(#[from] PlaneError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Published `|H|`: `q²(q−1)(q+1)r` for `q ≡ 3 (mod 4)`, `q²(q−1)²r` for
/// `q ≡ 1 (mod 4)`, with the exceptions 800 (`q = 5`) and 31104 (`q = 9`).
pub fn expected_h_order(q: u32, r: u32) -> u64 {
    let (q, r) = (q as u64, r as u64);
    match q {
        5 => 800,
        9 => 31104,
        _ if q % 4 == 3 => q * q * (q - 1) * (q + 1) * r,
        _ => q * q * (q - 1) * (q - 1) * r,
    }
}

/// Published `|G|`: the `|H|` formula with `r²` in place of `r`, and 28800
/// (`q = 5`), 186624 (`q = 9`).
pub fn expected_g_order(q: u32, r: u32) -> u128 {
    match q {
        5 => 28800,
        9 => 186624,
        _ => expected_h_order(q, r) as u128 * r as u128,
    }
}

/// How the group used for classification was obtained.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct GroupInfo {
    /// Order of the closure of [`h_generators`].
    pub h_order: u64,
    /// Order reported by the refinement engine, when it was run.
    pub ir_order: Option<u128>,
    pub order: u64,
}

/// The full automorphism group of `𝔊` as a [`PlaneGroup`].
///
/// Starts from `H`. Where `H` is known to be smaller than the graph group
/// (`q ∈ {5, 9}`) or may be (`q` a proper prime power), the refinement engine
/// supplies extra generators and the origin stabilizer is recomputed.
pub fn classification_group(
    ctx: &crate::field::FieldCtx,
    deadline: Option<std::time::Instant>,
) -> Result<(PlaneGroup, GroupInfo), SymmetryError> {
    let h = close_group(ctx, &h_generators(ctx)?, u64::MAX)?;
    let mut group = PlaneGroup::from_affine(ctx, &h)?;
    let mut info = GroupInfo { h_order: h.order(), ir_order: None, order: h.order() };
    if matches!(ctx.q(), 5 | 9) || ctx.r() > 1 {
        let graph = crate::igraph::build_graph(ctx)?;
        let aut = ir::automorphism_group(graph.graph(), deadline)?;
        info.ir_order = Some(aut.order);
        if aut.order > h.order() as u128 {
            group.augment(ctx, &aut.generators, u64::MAX)?;
        }
        info.order = group.order();
        if group.order() as u128 != aut.order {
            return Err(SymmetryError::NotAnAutomorphism(format!(
                "closure has order {} but the graph group has order {}",
                group.order(),
                aut.order
            )));
        }
    }
    Ok((group, info))
}
