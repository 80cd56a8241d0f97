//! Exact-rational computations with finitely presented commutative
//! differential graded algebras.
//!
//! The crate is `no_std` and only needs `alloc`. Everything is computed over
//! arbitrary precision rationals; there is no floating point anywhere.
//!
//! Layout:
//!
//! * [`algebra`]: free graded-commutative algebras, elements, morphisms.
//! * [`complex`]: cochain complexes by coordinates, cohomology, quasi-isomorphism checks.
//! * [`thom`]: the twisted-product model `A[e]` of a Thom space.
//! * [`weight`]: weight decompositions, purity truncation, bigraded minimal models.
//! * [`massey`]: triple products and higher Massey systems.
//! * [`lie`] and [`quillen`]: free graded Lie algebras and Quillen models over a formal base.
//! * [`hodge`]: split mixed Hodge bookkeeping and Tate-twisted Thom models.
#![no_std]

extern crate alloc;

pub mod algebra;
pub mod complex;
mod error;
pub mod expr;
pub mod hodge;
pub mod lie;
pub mod linalg;
pub mod massey;
pub mod quillen;
pub mod thom;
pub mod weight;

pub use algebra::{Cdga, CdgaBuilder, CdgaMorphism, Element, Generator, Monomial, Truncation};
pub use complex::{CohomologySpace, Cochains, DgAlgebra, GradedReport, QuasiIsoReport};
pub use error::Error;
pub use linalg::SparseVec;

/// Exact coefficient type.
pub type Rational = num_rational::BigRational;

pub type Result<T, E = Error> = core::result::Result<T, E>;
