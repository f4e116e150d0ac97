//! Truncated homogeneous Gröbner bases and the graded algebras they present.

mod algebra;
mod automaton;
mod gb;

pub use algebra::{AlgebraRef, GradedAlgebra};
pub use gb::{complete, TruncatedGB};
