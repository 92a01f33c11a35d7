//! Row reduction to reduced echelon form.
//!
//! Rational matrices go through a fraction-free Gauss-Jordan pass over the
//! integers (Bareiss); every intermediate entry is a minor of the scaled
//! input, so no gcd work is done until the final normalisation. Matrices over
//! a quadratic field use plain Gauss-Jordan, which is also kept as the
//! reference the fraction-free path is tested against.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Matrix, Scalar};
use crate::error::Result;

/// A matrix in reduced row echelon form together with its pivot columns.
/// Zero rows are dropped, so `matrix.rows() == pivots.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Kernel basis: one vector per free column, in ascending column order,
    /// with that free variable set to 1 and the other free variables 0.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let cols = self.matrix.cols();
        let mut is_pivot = vec![false; cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![Scalar::zero(); cols];
                v[free] = Scalar::one();
                for (r, &p) in self.pivots.iter().enumerate() {
                    v[p] = -self.matrix.get(r, free);
                }
                v
            })
            .collect()
    }
}

/// Reduced row echelon form, dispatching on the field.
pub fn rref(m: &Matrix) -> Result<Rref> {
    m.field()?;
    if m.data().iter().all(Scalar::is_rational) {
        Ok(rref_fraction_free(m))
    } else {
        Ok(rref_gauss_jordan(m))
    }
}

/// Textbook Gauss-Jordan: normalise the pivot row, clear the column, repeat.
pub fn rref_gauss_jordan(m: &Matrix) -> Rref {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<Scalar>> = (0..rows).map(|r| m.row(r).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inverse().expect("nonzero pivot");
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in c..cols {
                let t = &f * &a[r][j];
                a[i][j] -= &t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(pivots.len());
    let data = a.into_iter().flatten().collect();
    Rref {
        matrix: Matrix::new(pivots.len(), cols, data).expect("consistent shape"),
        pivots,
    }
}

/// Fraction-free Gauss-Jordan over the integers.
///
/// Each row is first scaled by the lcm of its denominators. At the step with
/// pivot `p` and previous pivot `q`, every other row is replaced by
/// `(p * row_i - row_i[c] * row_r) / q`, and the division is exact.
pub fn rref_fraction_free(m: &Matrix) -> Rref {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|r| {
            let row = m.row(r);
            let l = row.iter().fold(BigInt::one(), |l, x| {
                l.lcm(x.as_rational().expect("rational").denom())
            });
            row.iter()
                .map(|x| {
                    let q = x.as_rational().expect("rational");
                    q.numer() * (&l / q.denom())
                })
                .collect()
        })
        .collect();

    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let piv = a[r][c].clone();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = a[i][c].clone();
            for j in 0..cols {
                let num = &piv * &a[i][j] - &f * &a[r][j];
                let (quo, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                a[i][j] = quo;
            }
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }

    let out: Vec<Vec<Scalar>> = pivots
        .iter()
        .enumerate()
        .map(|(r, &c)| {
            let lead = a[r][c].clone();
            a[r].iter()
                .map(|x| Scalar::from_rational(BigRational::new(x.clone(), lead.clone())))
                .collect()
        })
        .collect();
    let data = out.into_iter().flatten().collect();
    Rref {
        matrix: Matrix::new(pivots.len(), cols, data).expect("consistent shape"),
        pivots,
    }
}

/// Sparse row used by [`SparseEliminator`]; entries sorted by column, no zeros.
pub type SparseRow = Vec<(usize, Scalar)>;

fn axpy(row: &SparseRow, f: &Scalar, pivot_row: &SparseRow) -> SparseRow {
    // row - f * pivot_row
    let mut out = Vec::with_capacity(row.len() + pivot_row.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot_row.len() {
        let ci = row.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cj = pivot_row.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if ci < cj {
            out.push(row[i].clone());
            i += 1;
        } else if cj < ci {
            out.push((cj, -(f * &pivot_row[j].1)));
            j += 1;
        } else {
            let v = &row[i].1 - &(f * &pivot_row[j].1);
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental elimination for tall, very sparse systems (the derivation
/// equations have `dim^3` rows but only a handful of nonzeros each).
/// Rows are streamed in, reduced against the current pivots, and kept only
/// when independent; [`SparseEliminator::finish`] back-substitutes to the
/// same canonical reduced echelon form the dense routines produce.
#[derive(Debug, Clone)]
pub struct SparseEliminator {
    cols: usize,
    pivots: BTreeMap<usize, SparseRow>,
}

impl SparseEliminator {
    pub fn new(cols: usize) -> Self {
        SparseEliminator {
            cols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Returns true when the row was independent of the rows seen so far.
    pub fn push(&mut self, mut row: SparseRow) -> bool {
        row.retain(|(_, v)| !v.is_zero());
        row.sort_by_key(|e| e.0);
        loop {
            let Some((lead, lead_val)) = row.first().cloned() else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(p) => row = axpy(&row, &lead_val, p),
                None => {
                    let inv = lead_val.inverse().expect("nonzero lead");
                    for e in row.iter_mut() {
                        e.1 = &e.1 * &inv;
                    }
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
    }

    pub fn finish(mut self) -> Rref {
        let keys: Vec<usize> = self.pivots.keys().rev().copied().collect();
        for &k in &keys {
            // clear column k from every pivot row above it
            let pivot_row = self.pivots[&k].clone();
            for (_, row) in self.pivots.range_mut(..k) {
                if let Ok(pos) = row.binary_search_by_key(&k, |e| e.0) {
                    let f = row[pos].1.clone();
                    *row = axpy(row, &f, &pivot_row);
                }
            }
        }
        let pivots: Vec<usize> = self.pivots.keys().copied().collect();
        let mut data = Vec::with_capacity(pivots.len() * self.cols);
        for row in self.pivots.values() {
            let mut dense = vec![Scalar::zero(); self.cols];
            for (c, v) in row {
                dense[*c] = v.clone();
            }
            data.extend(dense);
        }
        Rref {
            matrix: Matrix::new(pivots.len(), self.cols, data).expect("consistent shape"),
            pivots,
        }
    }
}
