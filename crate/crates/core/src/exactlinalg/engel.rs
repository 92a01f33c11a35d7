//! All-nilpotent decision for a matrix Lie algebra via an Engel flag.
//!
//! If every element of a Lie algebra of operators on `V` is nilpotent, the
//! operators have a common kernel `K != 0`, and the induced action on `V/K`
//! is again all-nilpotent. Conversely a flag built this way makes every
//! operator strictly triangular. So: take the common kernel, quotient,
//! repeat; an empty kernel on a nonzero space means some element is not
//! nilpotent.

use super::{Matrix, Scalar};
use crate::error::{Error, Result};

/// True iff every matrix in the span of `basis` is nilpotent.
///
/// The span must be closed under commutators (it is for any derivation
/// algebra); that is the caller's responsibility and is not checked.
pub fn engel_all_nilpotent(basis: &[Matrix]) -> Result<bool> {
    let Some(first) = basis.first() else {
        return Ok(true);
    };
    let n = first.rows();
    if basis.iter().any(|m| m.rows() != n || m.cols() != n) {
        return Err(Error::Shape(
            "Engel flag needs square matrices of one size".into(),
        ));
    }

    let mut ops: Vec<Matrix> = basis.to_vec();
    let mut size = n;
    loop {
        ops.retain(|m| !m.is_zero());
        if size == 0 || ops.is_empty() {
            return Ok(true);
        }
        let kernel = Matrix::vstack(&ops)?.nullspace_basis()?;
        if kernel.is_empty() {
            return Ok(false);
        }
        if kernel.len() == size {
            return Ok(true);
        }

        // Basis adapted to K: kernel vectors first, then standard vectors for
        // the columns that are not pivots of K's echelon form.
        let k_mat = Matrix::from_rows(kernel)?;
        let k_rref = k_mat.rref()?;
        let mut is_pivot = vec![false; size];
        for &p in &k_rref.pivots {
            is_pivot[p] = true;
        }
        let mut change = Matrix::zeros(size, size);
        for (c, v) in (0..k_mat.rows()).map(|r| k_mat.row(r)).enumerate() {
            for (i, x) in v.iter().enumerate() {
                change.set(i, c, x.clone());
            }
        }
        for (c, j) in (k_mat.rows()..).zip((0..size).filter(|&j| !is_pivot[j])) {
            change.set(j, c, Scalar::one());
        }
        let inv = change.inverse()?;
        let kdim = k_mat.rows();
        ops = ops
            .iter()
            .map(|m| {
                let conj = inv.matmul(m)?.matmul(&change)?;
                Ok(conj.block(kdim..size, kdim..size))
            })
            .collect::<Result<_>>()?;
        size -= kdim;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(n: usize, i: usize, j: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        m.set(i, j, Scalar::one());
        m
    }

    #[test]
    fn jordan_block() {
        let j = Matrix::from_ints(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]).unwrap();
        assert!(engel_all_nilpotent(&[j]).unwrap());
    }

    #[test]
    fn identity_is_not() {
        assert!(!engel_all_nilpotent(&[Matrix::identity(3)]).unwrap());
    }

    #[test]
    fn strictly_upper_triangular() {
        let basis: Vec<Matrix> = (0..4)
            .flat_map(|i| (i + 1..4).map(move |j| unit(4, i, j)))
            .collect();
        assert_eq!(basis.len(), 6);
        assert!(engel_all_nilpotent(&basis).unwrap());
    }

    #[test]
    fn borel_is_not() {
        // upper triangular incl. diagonal
        let basis: Vec<Matrix> = (0..3)
            .flat_map(|i| (i..3).map(move |j| unit(3, i, j)))
            .collect();
        assert!(!engel_all_nilpotent(&basis).unwrap());
    }

    #[test]
    fn size_mismatch() {
        let r = engel_all_nilpotent(&[Matrix::identity(2), Matrix::identity(3)]);
        assert!(matches!(r, Err(Error::Shape(_))));
    }

    #[test]
    fn empty_and_zero() {
        assert!(engel_all_nilpotent(&[]).unwrap());
        assert!(engel_all_nilpotent(&[Matrix::zeros(3, 3)]).unwrap());
    }
}
