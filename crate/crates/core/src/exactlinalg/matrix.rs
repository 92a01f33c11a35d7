use std::fmt;

use super::elim::{self, Rref};
use super::scalar::{common_field, Field, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix of exact scalars.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let n = rows.len();
        Matrix::new(n, cols, rows.into_iter().flatten().collect())
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Matrix> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
                .collect(),
        )
    }

    pub fn diagonal(values: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Scalar> {
        self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn diagonal_entries(&self) -> Vec<Scalar> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn field(&self) -> Result<Field> {
        common_field(&self.data)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    fn same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        self.field()?.join(other.field()?)?;
        Ok(())
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        self.field()?.join(other.field()?)?;
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.rows {
            return Err(Error::Shape(format!(
                "vector of length {} against {} rows",
                v.len(),
                self.rows
            )));
        }
        let mut out = vec![Scalar::zero(); self.cols];
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let m = self.get(i, j);
                if !m.is_zero() {
                    *o += &(x * m);
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &Matrix) -> Result<Matrix> {
        self.matmul(other)?.sub(&other.matmul(self)?)
    }

    pub fn pow(&self, k: u32) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Shape("power of a non-square matrix".into()));
        }
        let mut acc = Matrix::identity(self.rows);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.matmul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.matmul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn rref(&self) -> Result<Rref> {
        elim::rref(self)
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.rref()?.rank())
    }

    /// Basis of `{x : A x = 0}` in the canonical free-variable normalisation.
    pub fn nullspace_basis(&self) -> Result<Vec<Vec<Scalar>>> {
        Ok(self.rref()?.nullspace())
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Scalar::one());
        }
        let r = aug.rref()?;
        if r.pivots.len() < n || r.pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.matrix.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    /// `M^n = 0` for an `n x n` matrix.
    pub fn is_nilpotent(&self) -> Result<bool> {
        if !self.is_square() {
            return Err(Error::Shape("nilpotency of a non-square matrix".into()));
        }
        if self.rows == 0 {
            return Ok(true);
        }
        Ok(self.pow(self.rows as u32)?.is_zero())
    }

    /// Stack matrices with equal column counts on top of each other.
    pub fn vstack(blocks: &[Matrix]) -> Result<Matrix> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        if blocks.iter().any(|b| b.cols != cols) {
            return Err(Error::Shape(
                "vstack of blocks with different widths".into(),
            ));
        }
        let rows = blocks.iter().map(|b| b.rows).sum();
        let data = blocks.iter().flat_map(|b| b.data.iter().cloned()).collect();
        Matrix::new(rows, cols, data)
    }

    /// Sub-matrix on the given row and column ranges.
    pub fn block(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let data = rows
            .clone()
            .flat_map(|i| cols.clone().map(move |j| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        Matrix {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Nilpotency test: `M^n = 0`.
pub fn is_nilpotent_matrix(m: &Matrix) -> Result<bool> {
    m.is_nilpotent()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_has_trivial_kernel() {
        assert!(Matrix::identity(2).nullspace_basis().unwrap().is_empty());
    }

    #[test]
    fn row_of_ones_kernel() {
        let m = Matrix::from_ints(&[&[1, 1]]).unwrap();
        let k = m.nullspace_basis().unwrap();
        assert_eq!(k, vec![vec![Scalar::from_int(-1), Scalar::one()]]);
        assert_eq!(m.rank().unwrap(), 1);
    }

    #[test]
    fn empty_shapes() {
        let m = Matrix::zeros(0, 3);
        let k = m.nullspace_basis().unwrap();
        assert_eq!(k.len(), 3);
        for (i, v) in k.iter().enumerate() {
            for (j, x) in v.iter().enumerate() {
                assert_eq!(x.is_one(), i == j);
            }
        }
        assert!(Matrix::zeros(0, 0).is_nilpotent().unwrap());
        assert!(Matrix::zeros(0, 0).nullspace_basis().unwrap().is_empty());
    }

    #[test]
    fn nilpotency() {
        let j = Matrix::from_ints(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]).unwrap();
        assert!(j.is_nilpotent().unwrap());
        assert!(!Matrix::identity(3).is_nilpotent().unwrap());
        let d = Matrix::diagonal(&(1..=6).map(Scalar::from_int).collect::<Vec<_>>());
        assert!(!d.is_nilpotent().unwrap());
        assert!(matches!(
            Matrix::zeros(2, 3).is_nilpotent(),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn inverse_and_singular() {
        assert_eq!(Matrix::identity(4).inverse().unwrap(), Matrix::identity(4));
        let m = Matrix::from_ints(&[&[2, 1], &[1, 1]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.matmul(&inv).unwrap(), Matrix::identity(2));
        let s = Matrix::from_ints(&[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(s.inverse(), Err(Error::Singular));
    }

    #[test]
    fn mixed_fields_rejected() {
        use num_rational::BigRational;
        let r2 = Scalar::quadratic(
            BigRational::from_integer(0.into()),
            BigRational::from_integer(1.into()),
            2,
        )
        .unwrap();
        let r3 = Scalar::quadratic(
            BigRational::from_integer(0.into()),
            BigRational::from_integer(1.into()),
            3,
        )
        .unwrap();
        let m = Matrix::from_rows(vec![vec![r2, r3]]).unwrap();
        assert!(matches!(
            m.nullspace_basis(),
            Err(Error::FieldMismatch { .. })
        ));
    }

    #[test]
    fn power_and_rank() {
        let j = Matrix::from_ints(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]).unwrap();
        assert_eq!(j.pow(2).unwrap().rank().unwrap(), 1);
        assert!(j.pow(3).unwrap().is_zero());
        assert_eq!(j.pow(0).unwrap(), Matrix::identity(3));
    }
}
