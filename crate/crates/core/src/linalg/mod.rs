//! Exact sparse linear algebra over the rationals and the integers.

pub mod matrix;
pub mod scalar;
pub mod smith;

pub use matrix::{dense_to_sparse, sparse_to_dense, Rref, SparseMatrix, SparseRow};
pub use scalar::{format_scalar, frac, int, parse_scalar, sign, Rational, Ring};
pub use smith::{smith_normal_form, smith_normal_form_with_transforms, SmithForm};
