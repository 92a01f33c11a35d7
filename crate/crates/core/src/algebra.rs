//! Finite-dimensional algebras given by structure constants.
//!
//! The basis is `e_0, ..., e_{dim-1}` and `[e_i, e_j] = sum_k c[i][j][k] e_k`.
//! Nothing here assumes antisymmetry; Leibniz algebras are the target.

use crate::error::{Error, Result};
use crate::exactlinalg::{Field, Matrix, Scalar};

pub type SparseVec = Vec<(usize, Scalar)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    dim: usize,
    field: Field,
    // products[i * dim + j] = [e_i, e_j], sorted by basis index, zeros dropped
    products: Vec<SparseVec>,
}

/// The first basis triple on which the Leibniz identity fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeibnizViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    /// `[[e_i,e_j],e_k] - [[e_i,e_k],e_j] - [e_i,[e_j,e_k]]`
    pub residual: Vec<Scalar>,
}

impl From<LeibnizViolation> for Error {
    fn from(v: LeibnizViolation) -> Error {
        Error::LeibnizViolation {
            i: v.i,
            j: v.j,
            k: v.k,
        }
    }
}

impl Algebra {
    /// The abelian (zero product) algebra.
    pub fn abelian(dim: usize, field: Field) -> Algebra {
        Algebra {
            dim,
            field,
            products: vec![Vec::new(); dim * dim],
        }
    }

    /// Builds an algebra from `((i, j), [(k, c)])` entries; repeated `(i, j, k)`
    /// entries are summed and absent products are zero.
    pub fn from_products<I>(dim: usize, field: Field, entries: I) -> Result<Algebra>
    where
        I: IntoIterator<Item = ((usize, usize), Vec<(usize, Scalar)>)>,
    {
        let mut dense: Vec<Vec<Scalar>> = vec![Vec::new(); dim * dim];
        for ((i, j), coeffs) in entries {
            if i >= dim || j >= dim {
                return Err(Error::Shape(format!(
                    "product [e{i}, e{j}] outside dimension {dim}"
                )));
            }
            let slot = &mut dense[i * dim + j];
            if slot.is_empty() {
                *slot = vec![Scalar::zero(); dim];
            }
            for (k, c) in coeffs {
                if k >= dim {
                    return Err(Error::Shape(format!(
                        "basis index e{k} outside dimension {dim}"
                    )));
                }
                if !field.contains(&c) {
                    return Err(Error::FieldMismatch {
                        left: field.radicand(),
                        right: c.radicand(),
                    });
                }
                slot[k] += &c;
            }
        }
        let products = dense
            .into_iter()
            .map(|v| {
                v.into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect()
            })
            .collect();
        Ok(Algebra {
            dim,
            field,
            products,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// `[e_i, e_j]` as a sparse vector.
    pub fn product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.products[i * self.dim + j]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.product(i, j)
            .iter()
            .find(|(idx, _)| *idx == k)
            .map(|(_, c)| c.clone())
            .unwrap_or_default()
    }

    /// Nonzero products in `(i, j)` order.
    pub fn nonzero_products(&self) -> impl Iterator<Item = ((usize, usize), &[(usize, Scalar)])> {
        self.products
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_empty())
            .map(move |(idx, p)| ((idx / self.dim, idx % self.dim), p.as_slice()))
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim];
        v[i] = Scalar::one();
        v
    }

    /// Bilinear extension of the table.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        if x.len() != self.dim || y.len() != self.dim {
            return Err(Error::Shape(format!(
                "bracket of vectors of length {} and {} in dimension {}",
                x.len(),
                y.len(),
                self.dim
            )));
        }
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let p = self.product(i, j);
                if p.is_empty() {
                    continue;
                }
                let w = xi * yj;
                for (k, c) in p {
                    out[*k] += &(&w * c);
                }
            }
        }
        out
    }

    fn add_scaled(out: &mut [Scalar], s: &Scalar, v: &[(usize, Scalar)]) {
        for (k, c) in v {
            out[*k] += &(s * c);
        }
    }

    /// Exhaustive check of `[[x,y],z] = [[x,z],y] + [x,[y,z]]` on basis triples.
    pub fn check_leibniz(&self) -> std::result::Result<(), LeibnizViolation> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut r = vec![Scalar::zero(); n];
                    for (l, c) in self.product(i, j) {
                        Self::add_scaled(&mut r, c, self.product(*l, k));
                    }
                    for (l, c) in self.product(i, k) {
                        Self::add_scaled(&mut r, &-c, self.product(*l, j));
                    }
                    for (l, c) in self.product(j, k) {
                        Self::add_scaled(&mut r, &-c, self.product(i, *l));
                    }
                    if r.iter().any(|x| !x.is_zero()) {
                        return Err(LeibnizViolation {
                            i,
                            j,
                            k,
                            residual: r,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_leibniz(&self) -> bool {
        self.check_leibniz().is_ok()
    }

    /// `[e_i, e_j] = -[e_j, e_i]` for all `i, j` (including `[e_i, e_i] = 0`).
    pub fn is_anticommutative(&self) -> bool {
        (0..self.dim).all(|i| {
            (i..self.dim).all(|j| {
                (0..self.dim).all(|k| {
                    (self.structure_constant(i, j, k) + self.structure_constant(j, i, k)).is_zero()
                })
            })
        })
    }

    /// `L^1 = L, L^{k+1} = [L^k, L]`, ending at zero or where the series stalls.
    pub fn lower_central_series(&self) -> Result<Vec<Subspace>> {
        let mut series = vec![Subspace::whole(self.dim)];
        loop {
            let last = series.last().expect("nonempty");
            if last.dim() == 0 {
                break;
            }
            let mut gens = Vec::new();
            for x in last.basis_vectors() {
                for j in 0..self.dim {
                    let mut v = vec![Scalar::zero(); self.dim];
                    for (i, xi) in x.iter().enumerate() {
                        if !xi.is_zero() {
                            Self::add_scaled(&mut v, xi, self.product(i, j));
                        }
                    }
                    if v.iter().any(|c| !c.is_zero()) {
                        gens.push(v);
                    }
                }
            }
            let next = Subspace::span(self.dim, &gens)?;
            if next.dim() >= last.dim() {
                break;
            }
            series.push(next);
        }
        Ok(series)
    }

    pub fn lower_central_dims(&self) -> Result<Vec<usize>> {
        Ok(self
            .lower_central_series()?
            .iter()
            .map(Subspace::dim)
            .collect())
    }

    pub fn is_nilpotent(&self) -> Result<bool> {
        Ok(self.lower_central_dims()?.last() == Some(&0))
    }

    /// Nilpotent with `dim L^i = dim L - i` for `2 <= i <= dim L`.
    pub fn is_filiform(&self) -> Result<bool> {
        let dims = self.lower_central_dims()?;
        if dims.last() != Some(&0) {
            return Ok(false);
        }
        let n = self.dim;
        Ok((2..=n).all(|i| dims.get(i - 1) == Some(&(n - i))))
    }
}

/// A subspace of `F^ambient` stored as reduced echelon rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn whole(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient),
        }
    }

    pub fn zero(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Matrix::zeros(0, ambient),
        }
    }

    pub fn span(ambient: usize, vectors: &[Vec<Scalar>]) -> Result<Subspace> {
        if vectors.is_empty() {
            return Ok(Subspace::zero(ambient));
        }
        if vectors.iter().any(|v| v.len() != ambient) {
            return Err(Error::Shape("spanning vector of wrong length".into()));
        }
        let m = Matrix::from_rows(vectors.to_vec())?;
        Ok(Subspace {
            ambient,
            basis: m.rref()?.matrix,
        })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn echelon_basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.basis.rows())
            .map(|r| self.basis.row(r).to_vec())
            .collect()
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        let mut vs = self.basis_vectors();
        vs.push(v.to_vec());
        Ok(Subspace::span(self.ambient, &vs)?.dim() == self.dim())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_dim_idempotent() -> Algebra {
        Algebra::from_products(1, Field::Rational, [((0, 0), vec![(0, Scalar::one())])]).unwrap()
    }

    #[test]
    fn abelian_basics() {
        let l = Algebra::abelian(4, Field::Rational);
        assert!(l.is_leibniz());
        assert_eq!(l.lower_central_dims().unwrap(), vec![4, 0]);
        assert!(l.is_nilpotent().unwrap());
        assert!(!l.is_filiform().unwrap());
        let zero = vec![Scalar::zero(); 4];
        let y = l.basis_vector(2);
        assert_eq!(l.bracket(&zero, &y).unwrap(), zero);
    }

    #[test]
    fn idempotent_is_not_nilpotent() {
        let l = one_dim_idempotent();
        assert!(!l.is_nilpotent().unwrap());
        assert!(!l.is_filiform().unwrap());
        assert_eq!(l.lower_central_dims().unwrap(), vec![1]);
    }

    #[test]
    fn bracket_length_mismatch() {
        let l = Algebra::abelian(3, Field::Rational);
        let r = l.bracket(&[Scalar::one()], &l.basis_vector(0));
        assert!(matches!(r, Err(Error::Shape(_))));
    }

    #[test]
    fn out_of_range_entries() {
        let r = Algebra::from_products(2, Field::Rational, [((0, 2), vec![])]);
        assert!(r.is_err());
        let r = Algebra::from_products(2, Field::Rational, [((0, 1), vec![(5, Scalar::one())])]);
        assert!(r.is_err());
    }

    #[test]
    fn subspace_membership() {
        let s = Subspace::span(3, &[vec![Scalar::one(), Scalar::one(), Scalar::zero()]]).unwrap();
        assert!(s
            .contains(&[Scalar::from_int(2), Scalar::from_int(2), Scalar::zero()])
            .unwrap());
        assert!(!s
            .contains(&[Scalar::one(), Scalar::zero(), Scalar::zero()])
            .unwrap());
    }
}
