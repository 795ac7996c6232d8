//! Finite fields, polynomials over them, and dense matrices.

mod field;
mod matrix;
mod poly;

pub use field::{make_field, FieldCtx};
pub(crate) use matrix::{row, stride_for, Krylov};
pub use matrix::{char_poly, min_poly, nullspace, Echelon, FieldMatrix};
pub use poly::{distinct_degree, equal_degree, equal_degree_one, poly_factor, small_degree_factors, squarefree, Poly};
