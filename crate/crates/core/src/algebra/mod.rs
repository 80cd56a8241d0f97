//! Free graded-commutative algebras with a differential, their elements and morphisms.

mod cdga;
mod element;
mod morphism;

pub use cdga::{ratio, Cdga, CdgaBuilder, Generator, Truncation};
pub use element::{Element, Monomial};
pub use morphism::CdgaMorphism;

pub(crate) use cdga::fmt_rational;
