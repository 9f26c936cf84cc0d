//! Exact computations with finite-dimensional bound quiver algebras:
//! representations, homological algebra, standardly stratified structure,
//! characteristic tilting modules, good filtration dimensions, Ringel duals
//! and exact Borel subalgebras.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod borel;
pub mod decompose;
pub mod error;
pub mod field;
pub mod homological;
pub mod matrix;
pub mod module;
pub mod poly;
pub mod rational;
pub mod strat;
pub mod tilting;
pub mod verify;

pub use algebra::{build_algebra, opposite_algebra, PathAlgebra, Path, QuiverSpec};
pub use error::{Error, Result};
pub use field::Field;
pub use matrix::Matrix;
pub use module::{Morphism, Rep, Submodule};
pub use rational::Rational;
