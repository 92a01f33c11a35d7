//! Parameter transforms under adapted basis changes and explicit isomorphisms.
//!
//! A change `(A, B)` of an algebra `L = F_1(p)` picks new generators
//! `f_0 = A e_0 + B e_1 + ...`, `f_1 = (A + B) e_1 + ...`; in the basis they
//! generate, `L` has the table `F_1(p')` with `p' = transform_f1(p, c)`. The
//! verifiers realize this as a homomorphism `phi: F_1(p') -> F_1(p)` sending
//! `e_0, e_1` to `f_0, f_1` and check it exactly.

use crate::algebra::Algebra;
use crate::classification::{classify_f1, classify_f2, classify_f3};
use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::exactlinalg::{Matrix, Scalar};
use crate::families::{build_f1, build_f2, build_f3, F1Params, F2Params, F3Params};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisChangeF1 {
    pub a: Scalar,
    pub b: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisChangeF2 {
    pub a: Scalar,
    pub b: Scalar,
    pub d: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisChangeF3 {
    pub a0: Scalar,
    pub a1: Scalar,
    pub b1: Scalar,
}

impl BasisChangeF1 {
    pub fn from_ints(a: i64, b: i64) -> Self {
        BasisChangeF1 {
            a: Scalar::from_int(a),
            b: Scalar::from_int(b),
        }
    }

    fn validate(&self) -> Result<()> {
        if (&self.a * &(&self.a + &self.b)).is_zero() {
            return Err(Error::ConstraintViolation("A(A+B) != 0".into()));
        }
        Ok(())
    }
}

impl BasisChangeF2 {
    pub fn from_ints(a: i64, b: i64, d: i64) -> Self {
        BasisChangeF2 {
            a: Scalar::from_int(a),
            b: Scalar::from_int(b),
            d: Scalar::from_int(d),
        }
    }

    fn validate(&self) -> Result<()> {
        if (&self.a * &self.d).is_zero() {
            return Err(Error::ConstraintViolation("AD != 0".into()));
        }
        Ok(())
    }
}

impl BasisChangeF3 {
    pub fn from_ints(a0: i64, a1: i64, b1: i64) -> Self {
        BasisChangeF3 {
            a0: Scalar::from_int(a0),
            a1: Scalar::from_int(a1),
            b1: Scalar::from_int(b1),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.a0.is_zero() || self.b1.is_zero() {
            return Err(Error::ConstraintViolation("A0 != 0 and B1 != 0".into()));
        }
        Ok(())
    }

    /// The change undoing `self` on the generator leading terms.
    pub fn inverse(&self) -> Result<BasisChangeF3> {
        self.validate()?;
        let ia0 = self.a0.inverse().expect("nonzero");
        let ib1 = self.b1.inverse().expect("nonzero");
        Ok(BasisChangeF3 {
            a1: -(&(&self.a1 * &ia0) * &ib1),
            a0: ia0,
            b1: ib1,
        })
    }
}

/// `S_m(t, k)`: the `m`-fold nested sum attached to `B^m` in the coefficient
/// of `x'_k` inside the formula for `x'_t`, with indices starting at `k + m`.
pub fn nested_sum(x: &dyn Fn(usize) -> Scalar, m: usize, t: usize, k: usize) -> Scalar {
    fn level(
        x: &dyn Fn(usize) -> Scalar,
        r: usize,
        upper: usize,
        lo: usize,
        last_shift: isize,
    ) -> Scalar {
        let mut acc = Scalar::zero();
        for i in lo..=upper {
            let head = x(upper + 3 - i);
            if head.is_zero() {
                continue;
            }
            let tail = if r == 1 {
                let idx = i as isize + last_shift;
                if idx < 0 {
                    continue;
                }
                x(idx as usize)
            } else {
                level(x, r - 1, i, lo, last_shift)
            };
            acc += &(&head * &tail);
        }
        acc
    }
    if m == 0 || t + 2 < k {
        return Scalar::zero();
    }
    if m == 1 {
        return x(t + 2 - k);
    }
    level(x, m - 1, t, k + m, 3 - (k + m) as isize)
}

/// `sum_{m=1}^{k-1} binom(k-1, m) A^{k-1-m} B^m S_m(t, k)`
fn correction_coefficient(
    x: &dyn Fn(usize) -> Scalar,
    a: &Scalar,
    b: &Scalar,
    t: usize,
    k: usize,
) -> Scalar {
    let mut acc = Scalar::zero();
    for m in 1..k {
        let s = nested_sum(x, m, t, k);
        if s.is_zero() {
            continue;
        }
        let c = Scalar::from_bigint(binomial((k - 1) as u64, m as u64));
        acc += &(&(&c * &a.pow((k - 1 - m) as u32)) * &(&b.pow(m as u32) * &s));
    }
    acc
}

/// `(1/A^{t-1}) (lead - sum_{k=3}^{t-1} coeff(t, k) x'_k)`
fn primed(
    x: &dyn Fn(usize) -> Scalar,
    primes: &[Scalar],
    a: &Scalar,
    b: &Scalar,
    t: usize,
    lead: Scalar,
) -> Scalar {
    let mut acc = lead;
    for k in 3..t {
        let xk = &primes[k - 3];
        if xk.is_zero() {
            continue;
        }
        acc -= &(&correction_coefficient(x, a, b, t, k) * xk);
    }
    &acc * &a.pow(t as u32 - 1).inverse().expect("A != 0")
}

pub fn transform_f1(p: &F1Params, c: &BasisChangeF1) -> Result<F1Params> {
    c.validate()?;
    let n = p.n();
    let alpha = |k: usize| p.alpha(k);
    let apb = &c.a + &c.b;
    let mut primes: Vec<Scalar> = Vec::with_capacity(n - 2);
    for t in 3..=n {
        let v = primed(&alpha, &primes, &c.a, &c.b, t, &apb * &p.alpha(t));
        primes.push(v);
    }
    let lead = &(&c.a * &p.theta) + &(&c.b * &p.alpha(n));
    let theta = primed(&alpha, &primes[..n - 3], &c.a, &c.b, n, lead);
    F1Params::new(n, primes, theta)
}

pub fn transform_f2(p: &F2Params, c: &BasisChangeF2) -> Result<F2Params> {
    c.validate()?;
    let n = p.n();
    let beta = |k: usize| p.beta(k);
    let mut primes: Vec<Scalar> = Vec::with_capacity(n - 2);
    for t in 3..=n {
        let mut v = primed(&beta, &primes, &c.a, &c.b, t, &c.d * &p.beta(t));
        if t == n {
            let extra =
                &(&(&c.b * &c.d) * &p.gamma) * &c.a.pow(n as u32).inverse().expect("A != 0");
            v += &extra;
        }
        primes.push(v);
    }
    let gamma = &(&(&c.d * &c.d) * &p.gamma) * &c.a.pow(n as u32).inverse().expect("A != 0");
    F2Params::new(n, primes, gamma)
}

pub fn transform_f3(p: &F3Params, c: &BasisChangeF3) -> Result<F3Params> {
    c.validate()?;
    let n = p.n() as u32;
    let inv = c.a0.pow(n - 1).inverse().expect("A0 != 0");
    let (t1, t2, t3) = (&p.theta1, &p.theta2, &p.theta3);
    let num1 = &(&(&c.a0 * &c.a0) * t1) + &(&(&(&c.a0 * &c.a1) * t2) + &(&(&c.a1 * &c.a1) * t3));
    let theta1 = &(&num1 * &inv) * &c.b1.inverse().expect("B1 != 0");
    let theta2 = &(&(&c.a0 * t2) + &(&(&c.a1 * &Scalar::from_int(2)) * t3)) * &inv;
    let theta3 = &(&c.b1 * t3) * &inv;
    F3Params::new(p.n(), theta1, theta2, theta3, p.alpha_flag())
}

/// How `e_2` is produced from the generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorConvention {
    /// `e_2 = [e_0, e_0]` (first and second families).
    Square,
    /// `e_2 = [e_1, e_0]` (third family).
    Mixed,
}

impl GeneratorConvention {
    pub fn for_family(family: u8) -> Result<Self> {
        match family {
            1 | 2 => Ok(GeneratorConvention::Square),
            3 => Ok(GeneratorConvention::Mixed),
            f => Err(Error::InvalidParams(format!("unknown family {f}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorImages {
    pub v0: Vec<Scalar>,
    pub v1: Vec<Scalar>,
}

/// Rows `phi(e_0), ..., phi(e_{dim-1})` obtained by extending the generator
/// images along `e_{i+1} = [e_i, e_0]`.
fn extension(dst: &Algebra, g: &GeneratorImages, conv: GeneratorConvention) -> Vec<Vec<Scalar>> {
    let n = dst.dim();
    let mut rows = vec![g.v0.clone(), g.v1.clone()];
    if n > 2 {
        rows.push(match conv {
            GeneratorConvention::Square => dst.bracket_unchecked(&g.v0, &g.v0),
            GeneratorConvention::Mixed => dst.bracket_unchecked(&g.v1, &g.v0),
        });
    }
    while rows.len() < n {
        let next = dst.bracket_unchecked(rows.last().expect("nonempty"), &g.v0);
        rows.push(next);
    }
    rows.truncate(n);
    rows
}

/// All entries of `[phi e_i, phi e_j] - phi([e_i, e_j])`, concatenated.
fn homomorphism_residual(src: &Algebra, dst: &Algebra, rows: &[Vec<Scalar>]) -> Vec<Scalar> {
    let n = src.dim();
    let mut out = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            let mut r = dst.bracket_unchecked(&rows[i], &rows[j]);
            for (k, c) in src.product(i, j) {
                for (slot, x) in r.iter_mut().zip(&rows[*k]) {
                    *slot -= &(c * x);
                }
            }
            out.extend(r);
        }
    }
    out
}

fn check_pair(src: &Algebra, dst: &Algebra, g: &GeneratorImages) -> Result<()> {
    if src.dim() != dst.dim() {
        return Err(Error::Shape(format!(
            "dimensions differ: {} vs {}",
            src.dim(),
            dst.dim()
        )));
    }
    if src.field() != dst.field() {
        return Err(Error::FieldMismatch {
            left: src.field().radicand(),
            right: dst.field().radicand(),
        });
    }
    if g.v0.len() != dst.dim() || g.v1.len() != dst.dim() {
        return Err(Error::Shape("generator image of wrong length".into()));
    }
    Ok(())
}

/// The matrix of `phi: src -> dst` (row `i` is `phi(e_i)`) when the extended
/// map is invertible and multiplicative; `None` otherwise.
pub fn extend_generators(
    src: &Algebra,
    dst: &Algebra,
    g: &GeneratorImages,
    conv: GeneratorConvention,
) -> Result<Option<Matrix>> {
    check_pair(src, dst, g)?;
    let rows = extension(dst, g, conv);
    if homomorphism_residual(src, dst, &rows)
        .iter()
        .any(|x| !x.is_zero())
    {
        return Ok(None);
    }
    let m = Matrix::from_rows(rows)?;
    if m.rank()? < m.rows() {
        return Ok(None);
    }
    Ok(Some(m))
}

/// Searches for `phi: src -> dst` with `phi(e_0) = lead0 + X`,
/// `phi(e_1) = lead1 + Y`, `X, Y` in `span(e_2, ..., e_n)`.
///
/// Products inside `span(e_2, ...)` vanish in the reduced tables, so the
/// residual is affine in the tail coordinates: it is sampled at the origin and
/// at each unit vector, the linear system is solved with free coordinates set
/// to zero, and the candidate is then checked exactly.
pub fn solve_generator_tails(
    src: &Algebra,
    dst: &Algebra,
    lead0: &[Scalar],
    lead1: &[Scalar],
    conv: GeneratorConvention,
) -> Result<Option<Matrix>> {
    let n = dst.dim();
    let tail = n.saturating_sub(2);
    let images = |u: &[Scalar]| {
        let mut v0 = lead0.to_vec();
        let mut v1 = lead1.to_vec();
        for k in 0..tail {
            v0[k + 2] += &u[k];
            v1[k + 2] += &u[tail + k];
        }
        GeneratorImages { v0, v1 }
    };
    let zero = vec![Scalar::zero(); 2 * tail];
    check_pair(src, dst, &images(&zero))?;
    let eval = |u: &[Scalar]| homomorphism_residual(src, dst, &extension(dst, &images(u), conv));
    let r0 = eval(&zero);
    let unknowns = 2 * tail;
    let mut columns = Vec::with_capacity(unknowns);
    for c in 0..unknowns {
        let mut u = zero.clone();
        u[c] = Scalar::one();
        let rc = eval(&u);
        columns.push(rc.iter().zip(&r0).map(|(x, y)| x - y).collect::<Vec<_>>());
    }
    // augmented rows [J | -R0], dropping identically zero equations
    let rows: Vec<Vec<Scalar>> = (0..r0.len())
        .filter_map(|e| {
            let mut row: Vec<Scalar> = columns.iter().map(|col| col[e].clone()).collect();
            row.push(-r0[e].clone());
            row.iter().any(|x| !x.is_zero()).then_some(row)
        })
        .collect();
    let mut u = zero.clone();
    if !rows.is_empty() {
        let rref = Matrix::from_rows(rows)?.rref()?;
        if rref.pivots.last() == Some(&unknowns) {
            return Ok(None);
        }
        for (r, &p) in rref.pivots.iter().enumerate() {
            u[p] = rref.matrix.get(r, unknowns).clone();
        }
    }
    extend_generators(src, dst, &images(&u), conv)
}

/// Outcome of an end-to-end criterion check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionCheck<P> {
    pub transformed: P,
    /// `phi: build(transformed) -> build(original)`, when found.
    pub phi: Option<Matrix>,
    /// Representative class of the original and transformed parameters agree.
    pub class_preserved: bool,
}

impl<P> CriterionCheck<P> {
    pub fn ok(&self) -> bool {
        self.phi.is_some()
    }
}

fn lead(dim: usize, c0: &Scalar, c1: &Scalar) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); dim];
    v[0] = c0.clone();
    v[1] = c1.clone();
    v
}

pub fn verify_criterion_f1(p: &F1Params, c: &BasisChangeF1) -> Result<CriterionCheck<F1Params>> {
    let q = transform_f1(p, c)?;
    let dim = p.n() + 1;
    let phi = solve_generator_tails(
        &build_f1(&q)?,
        &build_f1(p)?,
        &lead(dim, &c.a, &c.b),
        &lead(dim, &Scalar::zero(), &(&c.a + &c.b)),
        GeneratorConvention::Square,
    )?;
    Ok(CriterionCheck {
        class_preserved: classify_f1(p) == classify_f1(&q),
        transformed: q,
        phi,
    })
}

pub fn verify_criterion_f2(p: &F2Params, c: &BasisChangeF2) -> Result<CriterionCheck<F2Params>> {
    let q = transform_f2(p, c)?;
    let dim = p.n() + 1;
    let phi = solve_generator_tails(
        &build_f2(&q)?,
        &build_f2(p)?,
        &lead(dim, &c.a, &c.b),
        &lead(dim, &Scalar::zero(), &c.d),
        GeneratorConvention::Square,
    )?;
    Ok(CriterionCheck {
        class_preserved: classify_f2(p) == classify_f2(&q),
        transformed: q,
        phi,
    })
}

pub fn verify_criterion_f3(p: &F3Params, c: &BasisChangeF3) -> Result<CriterionCheck<F3Params>> {
    let q = transform_f3(p, c)?;
    let dim = p.n() + 1;
    let phi = solve_generator_tails(
        &build_f3(&q)?,
        &build_f3(p)?,
        &lead(dim, &c.a0, &c.a1),
        &lead(dim, &Scalar::zero(), &c.b1),
        GeneratorConvention::Mixed,
    )?;
    let class_preserved = match (classify_f3(p), classify_f3(&q)) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    };
    Ok(CriterionCheck {
        class_preserved,
        transformed: q,
        phi,
    })
}
