//! The effective Burnside category of finite sets and of finite G-sets.
//!
//! Morphisms are spans `X <- A -> Y` stored concretely and compared through
//! canonical forms: fiber-count matrices for plain spans, orbit-type vectors
//! for equivariant spans. Group completion turns the hom-monoids into
//! integer matrices, and the endomorphisms of the point in the equivariant
//! case give the Burnside ring.

mod biproduct;
mod distributivity;
mod equivariant;
mod matrix;
mod ring;
mod span;

pub use biproduct::{check_biproduct, BiproductReport, ConeCounterexample, ConeKind};
pub use distributivity::{check_distributivity, check_distributivity_equivariant};
pub use equivariant::{
    compose_gburn, gspan_canonical, gspan_compose, BasisElement, GBurnBasis, GBurnHom, GSpan,
};
pub use matrix::{group_complete_hom, hom_add, hom_basis, IntMatrix, Matrix, NatMatrix};
pub use ring::{burnside_ring, mark_hom, table_of_marks, BurnsideRing, BurnsideRingElement, TableOfMarks};
pub use span::{span_canonical, span_compose, Span};

use crate::cat::{mat_category, FinCat, FiniteSemiring, ObjMonoid};
use crate::error::Result;

/// Entry-bounded truncation of the effective Burnside category on the sets
/// `0..=max_object`.
///
/// Hom-sets are fiber-count matrices with entries in `ℕ / (bound = bound + 1)`,
/// a finite quotient semiring of `ℕ`, so composition stays inside the
/// truncation and the result is an honest finite category.
pub fn effective_truncation(max_object: usize, bound: u8) -> Result<(FinCat, ObjMonoid)> {
    mat_category(FiniteSemiring::Saturating(bound), max_object)
}
