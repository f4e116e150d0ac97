//! Exact dense linear algebra over the rationals and prime fields.

mod matrix;
mod scalar;
mod subspace;

pub use matrix::{
    axpy, intersect_rowspaces, is_zero_vec, kernel_basis, left_kernel_basis, row_reduce, scale_vec, solve_left,
    unit_vec, zero_vec, Matrix, RowEchelon,
};
pub use scalar::{Field, Scalar};
pub use subspace::Subspace;
