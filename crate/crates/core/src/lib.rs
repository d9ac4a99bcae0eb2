//! Numerical toolkit for finite-dimensional real division algebras.
//!
//! Algebras are stored as structure constants ([`Algebra`]). On top of that the
//! crate provides the Hurwitz algebras and their isotopes ([`hurwitz`]), a
//! quasigroup identity checker ([`identity`]), linear invariants such as
//! ternary derivations and nuclei ([`structure`]), and normal forms for the
//! SO(3) classification data of four-dimensional algebras with inversion
//! ([`normal_form`]).

pub mod algebra;
pub mod error;
pub mod hurwitz;
pub mod identity;
pub mod json;
pub mod linalg;
pub mod normal_form;
pub mod structure;

pub use algebra::{Algebra, Element, LinearMap};
pub use error::{Error, Result};
