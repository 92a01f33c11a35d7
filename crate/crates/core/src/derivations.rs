//! Derivation algebras and characteristic nilpotency.
//!
//! A derivation `d` is stored as a matrix whose row `i` is `d(e_i)`, so entry
//! `(i, k)` is the coefficient of `e_k` in `d(e_i)` and `d(x) = x * D` for a
//! row vector `x`.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactlinalg::{engel_all_nilpotent, Matrix, Scalar, SparseEliminator};
use crate::families::{F1Params, F2Params};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DerivationSource {
    GeneralSolver,
    F1Template,
    F2Template,
}

impl DerivationSource {
    pub fn as_str(self) -> &'static str {
        match self {
            DerivationSource::GeneralSolver => "general-solver",
            DerivationSource::F1Template => "f1-template",
            DerivationSource::F2Template => "f2-template",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationSpace {
    pub dim_algebra: usize,
    pub basis: Vec<Matrix>,
    pub source: DerivationSource,
}

impl DerivationSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Reduced echelon form of the basis matrices flattened into rows; two
    /// spaces are equal iff these agree.
    pub fn echelon_form(&self) -> Result<Matrix> {
        let n2 = self.dim_algebra * self.dim_algebra;
        let rows: Vec<Vec<Scalar>> = self.basis.iter().map(|m| m.data().to_vec()).collect();
        crate::exactlinalg::echelon_span(&rows, n2)
    }

    pub fn same_span(&self, other: &DerivationSpace) -> Result<bool> {
        Ok(
            self.dim_algebra == other.dim_algebra
                && self.echelon_form()? == other.echelon_form()?,
        )
    }
}

fn merge_into(row: &mut BTreeMap<usize, Scalar>, col: usize, v: &Scalar) {
    let e = row.entry(col).or_default();
    *e += v;
}

/// `Der(L)`: the kernel of the `dim^3 x dim^2` system
/// `d([e_i,e_j]) = [d(e_i), e_j] + [e_i, d(e_j)]`, unknown `(l, m)` at `l * dim + m`.
pub fn derivation_space(l: &Algebra) -> DerivationSpace {
    let n = l.dim();
    // right[j][m] = [(p, c)] with c = coefficient of e_m in [e_p, e_j]
    // left[i][m]  = [(p, c)] with c = coefficient of e_m in [e_i, e_p]
    let mut right = vec![vec![Vec::new(); n]; n];
    let mut left = vec![vec![Vec::new(); n]; n];
    for ((p, q), prod) in l.nonzero_products() {
        for (m, c) in prod {
            right[q][*m].push((p, c.clone()));
            left[p][*m].push((q, c.clone()));
        }
    }
    let mut elim = SparseEliminator::new(n * n);
    for i in 0..n {
        for j in 0..n {
            let prod = l.product(i, j);
            for m in 0..n {
                let mut row = BTreeMap::new();
                for (lidx, c) in prod {
                    merge_into(&mut row, lidx * n + m, c);
                }
                for (p, c) in &right[j][m] {
                    merge_into(&mut row, i * n + p, &-c);
                }
                for (p, c) in &left[i][m] {
                    merge_into(&mut row, j * n + p, &-c);
                }
                let row: Vec<_> = row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                if !row.is_empty() {
                    elim.push(row);
                }
            }
        }
    }
    let basis = elim
        .finish()
        .nullspace()
        .into_iter()
        .map(|v| Matrix::new(n, n, v).expect("dim^2 entries"))
        .collect();
    DerivationSpace {
        dim_algebra: n,
        basis,
        source: DerivationSource::GeneralSolver,
    }
}

/// Direct check of the derivation identity on all basis pairs.
pub fn is_derivation(l: &Algebra, d: &Matrix) -> Result<bool> {
    let n = l.dim();
    if d.rows() != n || d.cols() != n {
        return Err(Error::Shape(format!(
            "{}x{} matrix is not an operator on a {n}-dimensional algebra",
            d.rows(),
            d.cols()
        )));
    }
    let images: Vec<Vec<Scalar>> = (0..n).map(|i| d.row(i).to_vec()).collect();
    for i in 0..n {
        for j in 0..n {
            let xy = l.bracket(&l.basis_vector(i), &l.basis_vector(j))?;
            let lhs = d.left_apply(&xy)?;
            let a = l.bracket(&images[i], &l.basis_vector(j))?;
            let b = l.bracket(&l.basis_vector(i), &images[j])?;
            if lhs
                .iter()
                .zip(a.iter().zip(&b))
                .any(|(x, (y, z))| *x != y + z)
            {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictMethod {
    Engel,
    TemplateConstraints,
}

impl VerdictMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictMethod::Engel => "engel",
            VerdictMethod::TemplateConstraints => "template-constraints",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharNilpotencyVerdict {
    pub is_char_nilpotent: bool,
    /// A non-nilpotent derivation; present iff the verdict is negative and
    /// the search found one.
    pub witness: Option<Matrix>,
    pub method: VerdictMethod,
    pub der_dim: usize,
    /// Negative verdict but the bounded scan found no witness.
    pub witness_search_exhausted: bool,
}

/// Controls the bounded search for a non-nilpotent derivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessOptions {
    /// Integer coefficients are drawn from `[-range, range]`.
    pub range: i64,
    /// Upper bound on the number of combinations tried after the basis.
    pub max_candidates: usize,
    /// `None` scans lexicographically; `Some(seed)` samples combinations
    /// from a seeded generator instead.
    pub seed: Option<u64>,
}

impl Default for WitnessOptions {
    fn default() -> Self {
        WitnessOptions {
            range: 3,
            max_candidates: 100_000,
            seed: None,
        }
    }
}

impl WitnessOptions {
    pub const SEED_VAR: &'static str = "LEIBNIZ_LAB_SEED";

    /// Defaults, with the seed taken from `LEIBNIZ_LAB_SEED` when set.
    pub fn from_env() -> Self {
        let seed = std::env::var(Self::SEED_VAR)
            .ok()
            .and_then(|s| s.trim().parse().ok());
        WitnessOptions {
            seed,
            ..Default::default()
        }
    }
}

/// Scales `m` so its first nonzero diagonal entry is 1 (when there is one).
fn normalize_witness(m: Matrix) -> Matrix {
    match m.diagonal_entries().into_iter().find(|x| !x.is_zero()) {
        Some(d) => m.scale(&d.inverse().expect("nonzero")),
        None => m,
    }
}

fn combination(basis: &[Matrix], coeffs: &[i64]) -> Matrix {
    let n = basis[0].rows();
    let mut acc = Matrix::zeros(n, n);
    for (b, &c) in basis.iter().zip(coeffs) {
        if c != 0 {
            acc = acc.add(&b.scale(&Scalar::from_int(c))).expect("same shape");
        }
    }
    acc
}

/// Basis elements first, then integer combinations.
pub fn find_non_nilpotent(basis: &[Matrix], opts: &WitnessOptions) -> Result<Option<Matrix>> {
    for b in basis {
        if !b.is_nilpotent()? {
            return Ok(Some(b.clone()));
        }
    }
    let k = basis.len();
    if k < 2 || opts.range <= 0 {
        return Ok(None);
    }
    let r = opts.range;
    match opts.seed {
        None => {
            let mut coeffs = vec![-r; k];
            for _ in 0..opts.max_candidates {
                if coeffs.iter().any(|&c| c != 0) {
                    let m = combination(basis, &coeffs);
                    if !m.is_nilpotent()? {
                        return Ok(Some(m));
                    }
                }
                // odometer, last coordinate fastest
                let mut pos = k;
                loop {
                    if pos == 0 {
                        return Ok(None);
                    }
                    pos -= 1;
                    if coeffs[pos] < r {
                        coeffs[pos] += 1;
                        break;
                    }
                    coeffs[pos] = -r;
                }
            }
        }
        Some(seed) => {
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
            let mut order: Vec<usize> = (0..k).collect();
            for _ in 0..opts.max_candidates {
                order.shuffle(&mut rng);
                let mut coeffs = vec![0; k];
                for &i in &order {
                    coeffs[i] = rng.gen_range(-r..=r);
                }
                if coeffs.iter().all(|&c| c == 0) {
                    continue;
                }
                let m = combination(basis, &coeffs);
                if !m.is_nilpotent()? {
                    return Ok(Some(m));
                }
            }
        }
    }
    Ok(None)
}

/// Engel-flag decision on `Der(L)` plus a witness search for negative verdicts.
pub fn is_characteristically_nilpotent(
    l: &Algebra,
    opts: &WitnessOptions,
) -> Result<CharNilpotencyVerdict> {
    let space = derivation_space(l);
    let all_nil = engel_all_nilpotent(&space.basis)?;
    let (witness, exhausted) = if all_nil {
        (None, false)
    } else {
        match find_non_nilpotent(&space.basis, opts)? {
            Some(w) => (Some(normalize_witness(w)), false),
            None => (None, true),
        }
    };
    Ok(CharNilpotencyVerdict {
        is_char_nilpotent: all_nil,
        witness,
        method: VerdictMethod::Engel,
        der_dim: space.dim(),
        witness_search_exhausted: exhausted,
    })
}

// ---------------------------------------------------------------------------
// Parametrized templates
// ---------------------------------------------------------------------------

/// One linear equation `coeffs . u = 0` over the template unknowns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub label: String,
    pub coeffs: Vec<Scalar>,
}

fn check_constraints(cs: &[Constraint], u: &[Scalar]) -> Result<()> {
    for c in cs {
        let v: Scalar = c.coeffs.iter().zip(u).map(|(x, y)| x * y).sum();
        if !v.is_zero() {
            return Err(Error::ConstraintViolation(c.label.clone()));
        }
    }
    Ok(())
}

/// `(k/2) * sum_{j=4}^{k} x_{j-1} x_{k-j+3}`
fn half_k_convolution(k: usize, x: impl Fn(usize) -> Scalar) -> Scalar {
    let s: Scalar = (4..=k).map(|j| &x(j - 1) * &x(k - j + 3)).sum();
    &s * &Scalar::ratio(k as i64, 2)
}

/// Free parameters of a first-family derivation: `a_0..a_n`, `b_{n-1}`, `b_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F1DerivationAssignment {
    pub a: Vec<Scalar>,
    pub b_n_minus_1: Scalar,
    pub b_n: Scalar,
}

impl F1DerivationAssignment {
    pub fn zero(n: usize) -> Self {
        F1DerivationAssignment {
            a: vec![Scalar::zero(); n + 1],
            b_n_minus_1: Scalar::zero(),
            b_n: Scalar::zero(),
        }
    }

    /// Layout `(a_0, ..., a_n, b_{n-1}, b_n)`.
    pub fn to_vec(&self) -> Vec<Scalar> {
        let mut v = self.a.clone();
        v.push(self.b_n_minus_1.clone());
        v.push(self.b_n.clone());
        v
    }

    pub fn from_vec(n: usize, v: &[Scalar]) -> Result<Self> {
        if v.len() != n + 3 {
            return Err(Error::Shape(format!(
                "expected {} template unknowns",
                n + 3
            )));
        }
        Ok(F1DerivationAssignment {
            a: v[..=n].to_vec(),
            b_n_minus_1: v[n + 1].clone(),
            b_n: v[n + 2].clone(),
        })
    }
}

/// Linear constraints on `(a_0, ..., a_n, b_{n-1}, b_n)` for the first family.
pub fn f1_constraints(p: &F1Params) -> Vec<Constraint> {
    let n = p.n();
    let len = n + 3;
    let zero = || vec![Scalar::zero(); len];
    let an = p.alpha(n);
    let mut out = Vec::new();

    let mut c = zero();
    c[0] = &p.theta - &an;
    out.push(Constraint {
        label: "a_0(theta - alpha_n) = 0".into(),
        coeffs: c,
    });

    let mut c = zero();
    c[1] = &an - &p.theta;
    c[n - 1] -= &Scalar::one();
    c[n + 1] += &Scalar::one();
    out.push(Constraint {
        label: "a_1(alpha_n - theta) = a_{n-1} - b_{n-1}".into(),
        coeffs: c,
    });

    let mut c = zero();
    c[0] = -p.alpha(3);
    c[1] = p.alpha(3);
    out.push(Constraint {
        label: "alpha_3(a_1 - a_0) = 0".into(),
        coeffs: c,
    });

    for k in 4..=n {
        let mut c = zero();
        let ak = p.alpha(k);
        c[0] = -(&ak * &Scalar::from_int(k as i64 - 2));
        c[1] = &ak - &half_k_convolution(k, |i| p.alpha(i));
        out.push(Constraint {
            label: format!(
                "alpha_{k}(a_1 - {}a_0) = ({k}/2) a_1 sum alpha_(j-1) alpha_({k}-j+3)",
                k - 2
            ),
            coeffs: c,
        });
    }
    out
}

fn f1_matrix_unchecked(p: &F1Params, u: &[Scalar]) -> Matrix {
    let n = p.n();
    let a = |k: usize| u[k].clone();
    let mut m = Matrix::zeros(n + 1, n + 1);
    for k in 0..=n {
        m.set(0, k, a(k));
    }
    m.set(1, 1, &a(0) + &a(1));
    for k in 2..=n.saturating_sub(2) {
        m.set(1, k, a(k));
    }
    m.set(1, n - 1, u[n + 1].clone());
    m.set(1, n, u[n + 2].clone());
    m.set(2, 2, &(&a(0) * &Scalar::from_int(2)) + &a(1));
    for k in 3..n {
        m.set(2, k, &a(k - 1) + &(&a(1) * &p.alpha(k)));
    }
    m.set(2, n, &a(n - 1) + &(&a(1) * &p.theta));
    for i in 3..=n {
        m.set(i, i, &(&a(0) * &Scalar::from_int(i as i64)) + &a(1));
        let w = &a(1) * &Scalar::from_int(i as i64 - 1);
        for k in i + 1..=n {
            m.set(i, k, &a(k - i + 1) + &(&w * &p.alpha(k - i + 2)));
        }
    }
    m
}

/// The parametrized first-family derivation, after checking its constraints.
pub fn f1_derivation_matrix(p: &F1Params, asn: &F1DerivationAssignment) -> Result<Matrix> {
    let u = asn.to_vec();
    if u.len() != p.n() + 3 {
        return Err(Error::Shape(format!("assignment needs a_0..a_{}", p.n())));
    }
    check_constraints(&f1_constraints(p), &u)?;
    Ok(f1_matrix_unchecked(p, &u))
}

/// Free parameters of a second-family derivation: `a_0..a_n`, `b_1`, `b_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2DerivationAssignment {
    pub a: Vec<Scalar>,
    pub b_1: Scalar,
    pub b_n: Scalar,
}

impl F2DerivationAssignment {
    pub fn zero(n: usize) -> Self {
        F2DerivationAssignment {
            a: vec![Scalar::zero(); n + 1],
            b_1: Scalar::zero(),
            b_n: Scalar::zero(),
        }
    }

    /// Layout `(a_0, ..., a_n, b_1, b_n)`.
    pub fn to_vec(&self) -> Vec<Scalar> {
        let mut v = self.a.clone();
        v.push(self.b_1.clone());
        v.push(self.b_n.clone());
        v
    }

    pub fn from_vec(n: usize, v: &[Scalar]) -> Result<Self> {
        if v.len() != n + 3 {
            return Err(Error::Shape(format!(
                "expected {} template unknowns",
                n + 3
            )));
        }
        Ok(F2DerivationAssignment {
            a: v[..=n].to_vec(),
            b_1: v[n + 1].clone(),
            b_n: v[n + 2].clone(),
        })
    }
}

/// Linear constraints on `(a_0, ..., a_n, b_1, b_n)` for the second family.
pub fn f2_constraints(p: &F2Params) -> Vec<Constraint> {
    let n = p.n();
    let len = n + 3;
    let b1 = n + 1;
    let zero = || vec![Scalar::zero(); len];
    let mut out = Vec::new();

    let mut c = zero();
    c[b1] = &p.gamma * &Scalar::from_int(2);
    c[0] = -(&p.gamma * &Scalar::from_int(n as i64));
    out.push(Constraint {
        label: "gamma(2b_1 - n a_0) = 0".into(),
        coeffs: c,
    });

    let mut c = zero();
    c[b1] = p.beta(3);
    c[0] = -(&p.beta(3) * &Scalar::from_int(2));
    // for n = 3 the e_3 coefficient of d([e_0,e_1]) also picks up a_1 gamma
    let label = if n == 3 {
        c[1] = p.gamma.clone();
        "beta_3(b_1 - 2a_0) = -a_1 gamma".into()
    } else {
        "beta_3(b_1 - 2a_0) = 0".into()
    };
    out.push(Constraint { label, coeffs: c });

    for k in 4..=n {
        let mut c = zero();
        let bk = p.beta(k);
        c[b1] = bk.clone();
        c[0] = -(&bk * &Scalar::from_int(k as i64 - 1));
        c[1] = -half_k_convolution(k, |i| p.beta(i));
        let label = if k == n {
            c[1] += &p.gamma;
            format!(
                "beta_{k}(b_1 - {}a_0) = -a_1 gamma + ({k}/2) a_1 sum beta_(j-1) beta_({k}-j+3)",
                k - 1
            )
        } else {
            format!(
                "beta_{k}(b_1 - {}a_0) = ({k}/2) a_1 sum beta_(j-1) beta_({k}-j+3)",
                k - 1
            )
        };
        out.push(Constraint { label, coeffs: c });
    }
    out
}

fn f2_matrix_unchecked(p: &F2Params, u: &[Scalar]) -> Matrix {
    let n = p.n();
    let a = |k: usize| u[k].clone();
    let mut m = Matrix::zeros(n + 1, n + 1);
    for k in 0..=n {
        m.set(0, k, a(k));
    }
    m.set(1, 1, u[n + 1].clone());
    m.set(1, n - 1, -(&a(1) * &p.gamma));
    m.set(1, n, u[n + 2].clone());
    for i in 2..=n {
        m.set(i, i, &a(0) * &Scalar::from_int(i as i64));
        let w = &a(1) * &Scalar::from_int(i as i64 - 1);
        for k in i + 1..=n {
            m.set(i, k, &a(k + 1 - i) + &(&w * &p.beta(k + 2 - i)));
        }
    }
    m
}

/// The parametrized second-family derivation, after checking its constraints.
pub fn f2_derivation_matrix(p: &F2Params, asn: &F2DerivationAssignment) -> Result<Matrix> {
    let u = asn.to_vec();
    if u.len() != p.n() + 3 {
        return Err(Error::Shape(format!("assignment needs a_0..a_{}", p.n())));
    }
    check_constraints(&f2_constraints(p), &u)?;
    Ok(f2_matrix_unchecked(p, &u))
}

fn template_solutions(cs: &[Constraint], len: usize) -> Result<Vec<Vec<Scalar>>> {
    let rows: Vec<Vec<Scalar>> = cs.iter().map(|c| c.coeffs.clone()).collect();
    if rows.is_empty() {
        return Ok(Matrix::identity(len)
            .data()
            .chunks(len)
            .map(<[Scalar]>::to_vec)
            .collect());
    }
    Matrix::from_rows(rows)?.nullspace_basis()
}

/// Span of the template matrices over a basis of the constraint solutions.
pub fn f1_template_space(p: &F1Params) -> Result<DerivationSpace> {
    let sols = template_solutions(&f1_constraints(p), p.n() + 3)?;
    Ok(DerivationSpace {
        dim_algebra: p.n() + 1,
        basis: sols.iter().map(|u| f1_matrix_unchecked(p, u)).collect(),
        source: DerivationSource::F1Template,
    })
}

pub fn f2_template_space(p: &F2Params) -> Result<DerivationSpace> {
    let sols = template_solutions(&f2_constraints(p), p.n() + 3)?;
    Ok(DerivationSpace {
        dim_algebra: p.n() + 1,
        basis: sols.iter().map(|u| f2_matrix_unchecked(p, u)).collect(),
        source: DerivationSource::F2Template,
    })
}

/// A subspace of a coordinate plane: everything, a line, or the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairLocus {
    Plane,
    /// Spanned by `(x, y)`, scaled so the first nonzero coordinate is 1.
    Line(Scalar, Scalar),
    Origin,
}

impl PairLocus {
    pub fn contains(&self, x: &Scalar, y: &Scalar) -> bool {
        match self {
            PairLocus::Plane => true,
            PairLocus::Origin => x.is_zero() && y.is_zero(),
            PairLocus::Line(dx, dy) => (x * dy - y * dx).is_zero(),
        }
    }
}

fn project_locus(sols: &[Vec<Scalar>], i: usize, j: usize) -> Result<PairLocus> {
    let proj: Vec<Vec<Scalar>> = sols
        .iter()
        .map(|u| vec![u[i].clone(), u[j].clone()])
        .collect();
    let ech = crate::exactlinalg::echelon_span(&proj, 2)?;
    Ok(match ech.rows() {
        0 => PairLocus::Origin,
        1 => PairLocus::Line(ech.get(0, 0).clone(), ech.get(0, 1).clone()),
        _ => PairLocus::Plane,
    })
}

/// The `(a_0, a_1)` pairs that extend to a first-family derivation.
pub fn f1_constraint_solutions(p: &F1Params) -> Result<PairLocus> {
    let sols = template_solutions(&f1_constraints(p), p.n() + 3)?;
    project_locus(&sols, 0, 1)
}

/// The `(a_0, b_1)` pairs that extend to a second-family derivation.
pub fn f2_constraint_solutions(p: &F2Params) -> Result<PairLocus> {
    let sols = template_solutions(&f2_constraints(p), p.n() + 3)?;
    project_locus(&sols, 0, p.n() + 1)
}

fn template_verdict(space: DerivationSpace, locus: PairLocus) -> Result<CharNilpotencyVerdict> {
    let is_cn = locus == PairLocus::Origin;
    let witness = if is_cn {
        None
    } else {
        // triangular templates: non-nilpotent iff some diagonal entry is nonzero
        space
            .basis
            .iter()
            .find(|m| m.diagonal_entries().iter().any(|x| !x.is_zero()))
            .cloned()
            .map(normalize_witness)
    };
    Ok(CharNilpotencyVerdict {
        is_char_nilpotent: is_cn,
        witness_search_exhausted: !is_cn && witness.is_none(),
        witness,
        method: VerdictMethod::TemplateConstraints,
        der_dim: space.dim(),
    })
}

/// Verdict read off the first-family constraint system alone.
pub fn f1_template_verdict(p: &F1Params) -> Result<CharNilpotencyVerdict> {
    template_verdict(f1_template_space(p)?, f1_constraint_solutions(p)?)
}

/// Verdict read off the second-family constraint system alone.
pub fn f2_template_verdict(p: &F2Params) -> Result<CharNilpotencyVerdict> {
    template_verdict(f2_template_space(p)?, f2_constraint_solutions(p)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlinalg::Field;
    use crate::families::{build_example, build_f1, build_f2};

    #[test]
    fn abelian_everything_is_a_derivation() {
        let l = Algebra::abelian(3, Field::Rational);
        let s = derivation_space(&l);
        assert_eq!(s.dim(), 9);
        let v = is_characteristically_nilpotent(&l, &WitnessOptions::default()).unwrap();
        assert!(!v.is_char_nilpotent);
        assert!(v.witness.is_some());
    }

    #[test]
    fn example_space_and_witness() {
        let l = build_example();
        let s = derivation_space(&l);
        assert_eq!(s.dim(), 6);
        for d in &s.basis {
            assert!(is_derivation(&l, d).unwrap());
        }
        let v = is_characteristically_nilpotent(&l, &WitnessOptions::default()).unwrap();
        assert!(!v.is_char_nilpotent);
        let w = v.witness.unwrap();
        let diag: Vec<_> = (1..=6).map(Scalar::from_int).collect();
        assert_eq!(w.diagonal_entries(), diag);
        assert!(is_derivation(&l, &w).unwrap());
    }

    #[test]
    fn f1_example_template_matrix() {
        let p = F1Params::from_ints(5, &[1, -2, 5], 5).unwrap();
        let mut asn = F1DerivationAssignment::zero(5);
        asn.a[0] = Scalar::one();
        asn.a[1] = Scalar::one();
        let m = f1_derivation_matrix(&p, &asn).unwrap();
        let diag: Vec<_> = (1..=6).map(Scalar::from_int).collect();
        assert_eq!(m.diagonal_entries(), diag);
        // row 2 carries the alphas, row 3 the doubled alphas
        assert_eq!(m.get(2, 5), &Scalar::from_int(5));
        assert_eq!(m.get(3, 5), &Scalar::from_int(-4));
        assert!(is_derivation(&build_f1(&p).unwrap(), &m).unwrap());
        assert!(f1_derivation_matrix(&p, &F1DerivationAssignment::zero(5))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn f1_constraint_rejection() {
        let p = F1Params::from_ints(5, &[1, -2, 5], 5).unwrap();
        let mut asn = F1DerivationAssignment::zero(5);
        asn.a[0] = Scalar::one();
        asn.a[1] = Scalar::from_int(2);
        match f1_derivation_matrix(&p, &asn) {
            Err(Error::ConstraintViolation(s)) => assert!(s.starts_with("alpha_3")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn f1_loci() {
        let nat = F1Params::from_ints(5, &[0, 0, 0], 0).unwrap();
        assert_eq!(f1_constraint_solutions(&nat).unwrap(), PairLocus::Plane);
        let ex = F1Params::from_ints(5, &[1, -2, 5], 5).unwrap();
        assert_eq!(
            f1_constraint_solutions(&ex).unwrap(),
            PairLocus::Line(Scalar::one(), Scalar::one())
        );
        let cn = F1Params::from_ints(5, &[1, -2, 5], 0).unwrap();
        assert_eq!(f1_constraint_solutions(&cn).unwrap(), PairLocus::Origin);
        let v =
            is_characteristically_nilpotent(&build_f1(&cn).unwrap(), &Default::default()).unwrap();
        assert!(v.is_char_nilpotent);
        assert!(v.witness.is_none());
    }

    #[test]
    fn f2_template_matrix() {
        let p = F2Params::from_ints(5, &[0, 0, 0], 1).unwrap();
        let mut asn = F2DerivationAssignment::zero(5);
        asn.a[0] = Scalar::from_int(2);
        asn.b_1 = Scalar::from_int(5);
        let m = f2_derivation_matrix(&p, &asn).unwrap();
        let diag: Vec<_> = [2, 5, 4, 6, 8, 10]
            .into_iter()
            .map(Scalar::from_int)
            .collect();
        assert_eq!(m.diagonal_entries(), diag);
        assert!(is_derivation(&build_f2(&p).unwrap(), &m).unwrap());
        asn.b_1 = Scalar::one();
        match f2_derivation_matrix(&p, &asn) {
            Err(Error::ConstraintViolation(s)) => assert!(s.starts_with("gamma")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn seeded_scan_finds_witness() {
        let l = Algebra::abelian(2, Field::Rational);
        let opts = WitnessOptions {
            seed: Some(7),
            ..Default::default()
        };
        let v = is_characteristically_nilpotent(&l, &opts).unwrap();
        assert!(v.witness.is_some());
    }

    #[test]
    fn combination_scan_when_basis_is_nilpotent() {
        // span{E12, E21}: both nilpotent, E12 + E21 is not
        let a = Matrix::from_ints(&[&[0, 1], &[0, 0]]).unwrap();
        let b = Matrix::from_ints(&[&[0, 0], &[1, 0]]).unwrap();
        let w = find_non_nilpotent(&[a, b], &WitnessOptions::default())
            .unwrap()
            .unwrap();
        assert!(!w.is_nilpotent().unwrap());
    }
}
