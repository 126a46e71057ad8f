//! Finite shadows of semiring categories.
//!
//! Spans of finite sets and finite G-sets composed by pullback, the effective
//! and group-completed Burnside categories as matrix categories, Burnside
//! rings and tables of marks, finite commutative monoids with group
//! completion and tensor product, checkers for the four categorical
//! properties (cocartesian, cartesian, semiadditive, additive) on finite
//! categories, and finite models of a handful of Lawvere theories.

pub mod burnside;
pub mod cat;
pub mod cmon;
pub mod error;
pub mod finset;
pub mod groups;
pub mod theories;
pub mod verify;

pub use error::{Error, Result};
