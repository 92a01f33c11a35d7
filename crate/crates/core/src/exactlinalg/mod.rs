//! Exact scalar fields and dense exact linear algebra.

pub mod elim;
mod engel;
mod matrix;
mod scalar;

pub use elim::{Rref, SparseEliminator, SparseRow};
pub use engel::engel_all_nilpotent;
pub use matrix::{is_nilpotent_matrix, Matrix};
pub use scalar::{common_field, format_rational, is_square_free, parse_rational, Field, Scalar};

/// Kernel basis of `a`; see [`Matrix::nullspace_basis`].
pub fn nullspace_basis(a: &Matrix) -> crate::error::Result<Vec<Vec<Scalar>>> {
    a.nullspace_basis()
}

/// Reduced echelon rows spanning the same space as `vectors`.
pub fn echelon_span(vectors: &[Vec<Scalar>], len: usize) -> crate::error::Result<Matrix> {
    if vectors.is_empty() {
        return Ok(Matrix::zeros(0, len));
    }
    Ok(Matrix::from_rows(vectors.to_vec())?.rref()?.matrix)
}
