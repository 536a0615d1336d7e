//! Exact computations with quasi-twilled associative algebras.
//!
//! A quasi-twilled associative algebra is an associative product on `A ⊕ B`
//! for which `B` is a subalgebra. This crate validates such structures, checks
//! strong (`A → B`) and weak (`B → A`) deformation maps, builds the induced
//! algebras and bimodules, computes the associated cohomology dimensions and
//! tabulates the curved L∞ algebras whose Maurer–Cartan elements are these
//! maps. Twisted Rota–Baxter operators and twisted tridendriform algebras are
//! covered as a special case.
//!
//! All arithmetic is exact, over ℚ or a prime field chosen at runtime.

pub mod bigraded;
pub mod defmap;
pub mod linalg;
pub mod linf;
pub mod multilinear;
pub mod qta;
pub mod scalar;
pub mod tridend;

mod error;

pub use error::Error;
pub use scalar::{Field, Scalar};
