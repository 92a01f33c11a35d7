//! The three parametric families of filiform Leibniz algebras of dimension
//! `n + 1` on the adapted basis `e_0, ..., e_n`.

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactlinalg::{common_field, Field, Scalar};

type Entry = ((usize, usize), Vec<(usize, Scalar)>);

fn check_n(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::InvalidParams(format!(
            "top index n must be >= 3, got {n}"
        )));
    }
    Ok(())
}

fn check_len(name: &str, n: usize, v: &[Scalar]) -> Result<()> {
    if v.len() != n - 2 {
        return Err(Error::InvalidParams(format!(
            "{name} needs {} entries (indices 3..={n}), got {}",
            n - 2,
            v.len()
        )));
    }
    Ok(())
}

/// Parameters `(alpha_3, ..., alpha_n, theta)` of the first family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F1Params {
    n: usize,
    alpha: Vec<Scalar>,
    pub theta: Scalar,
}

impl F1Params {
    /// `alpha[0]` is `alpha_3`.
    pub fn new(n: usize, alpha: Vec<Scalar>, theta: Scalar) -> Result<F1Params> {
        check_n(n)?;
        check_len("alpha", n, &alpha)?;
        let p = F1Params { n, alpha, theta };
        p.field()?;
        Ok(p)
    }

    pub fn from_ints(n: usize, alpha: &[i64], theta: i64) -> Result<F1Params> {
        F1Params::new(
            n,
            alpha.iter().map(|&a| Scalar::from_int(a)).collect(),
            Scalar::from_int(theta),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `alpha_k`, zero outside `3..=n`.
    pub fn alpha(&self, k: usize) -> Scalar {
        if (3..=self.n).contains(&k) {
            self.alpha[k - 3].clone()
        } else {
            Scalar::zero()
        }
    }

    pub fn alphas(&self) -> &[Scalar] {
        &self.alpha
    }

    pub fn field(&self) -> Result<Field> {
        common_field(self.alpha.iter().chain([&self.theta]))
    }
}

/// Parameters `(beta_3, ..., beta_n, gamma)` of the second family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2Params {
    n: usize,
    beta: Vec<Scalar>,
    pub gamma: Scalar,
}

impl F2Params {
    /// `beta[0]` is `beta_3`.
    pub fn new(n: usize, beta: Vec<Scalar>, gamma: Scalar) -> Result<F2Params> {
        check_n(n)?;
        check_len("beta", n, &beta)?;
        let p = F2Params { n, beta, gamma };
        p.field()?;
        Ok(p)
    }

    pub fn from_ints(n: usize, beta: &[i64], gamma: i64) -> Result<F2Params> {
        F2Params::new(
            n,
            beta.iter().map(|&b| Scalar::from_int(b)).collect(),
            Scalar::from_int(gamma),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `beta_k`, zero outside `3..=n`.
    pub fn beta(&self, k: usize) -> Scalar {
        if (3..=self.n).contains(&k) {
            self.beta[k - 3].clone()
        } else {
            Scalar::zero()
        }
    }

    pub fn betas(&self) -> &[Scalar] {
        &self.beta
    }

    pub fn field(&self) -> Result<Field> {
        common_field(self.beta.iter().chain([&self.gamma]))
    }
}

/// Parameters of the reduced third family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F3Params {
    n: usize,
    pub theta1: Scalar,
    pub theta2: Scalar,
    pub theta3: Scalar,
    alpha_flag: u8,
}

impl F3Params {
    pub fn new(
        n: usize,
        theta1: Scalar,
        theta2: Scalar,
        theta3: Scalar,
        alpha_flag: u8,
    ) -> Result<F3Params> {
        check_n(n)?;
        if alpha_flag > 1 {
            return Err(Error::InvalidParams(format!(
                "alpha_flag must be 0 or 1, got {alpha_flag}"
            )));
        }
        if alpha_flag == 1 && n.is_multiple_of(2) {
            return Err(Error::InvalidParams(
                "alpha_flag = 1 is only allowed for odd n".into(),
            ));
        }
        let p = F3Params {
            n,
            theta1,
            theta2,
            theta3,
            alpha_flag,
        };
        p.field()?;
        Ok(p)
    }

    pub fn from_ints(n: usize, theta: [i64; 3], alpha_flag: u8) -> Result<F3Params> {
        let [a, b, c] = theta.map(Scalar::from_int);
        F3Params::new(n, a, b, c, alpha_flag)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha_flag(&self) -> u8 {
        self.alpha_flag
    }

    pub fn thetas(&self) -> [&Scalar; 3] {
        [&self.theta1, &self.theta2, &self.theta3]
    }

    pub fn field(&self) -> Result<Field> {
        common_field(self.thetas())
    }
}

/// Any family member, tagged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyParams {
    F1(F1Params),
    F2(F2Params),
    F3(F3Params),
}

impl FamilyParams {
    pub fn family(&self) -> u8 {
        match self {
            FamilyParams::F1(_) => 1,
            FamilyParams::F2(_) => 2,
            FamilyParams::F3(_) => 3,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            FamilyParams::F1(p) => p.n(),
            FamilyParams::F2(p) => p.n(),
            FamilyParams::F3(p) => p.n(),
        }
    }

    pub fn build(&self) -> Result<Algebra> {
        match self {
            FamilyParams::F1(p) => build_f1(p),
            FamilyParams::F2(p) => build_f2(p),
            FamilyParams::F3(p) => build_f3(p),
        }
    }
}

fn unit(k: usize) -> Vec<(usize, Scalar)> {
    vec![(k, Scalar::one())]
}

pub fn build_f1(p: &F1Params) -> Result<Algebra> {
    let n = p.n;
    let mut t: Vec<Entry> = vec![((0, 0), unit(2))];
    for i in 1..n {
        t.push(((i, 0), unit(i + 1)));
    }
    let mut e01: Vec<_> = (3..n).map(|k| (k, p.alpha(k))).collect();
    e01.push((n, p.theta.clone()));
    t.push(((0, 1), e01));
    for i in 1..=n - 2 {
        t.push((
            (i, 1),
            (i + 2..=n).map(|k| (k, p.alpha(k + 1 - i))).collect(),
        ));
    }
    Algebra::from_products(n + 1, p.field()?, t)
}

pub fn build_f2(p: &F2Params) -> Result<Algebra> {
    let n = p.n;
    let mut t: Vec<Entry> = vec![((0, 0), unit(2))];
    for i in 2..n {
        t.push(((i, 0), unit(i + 1)));
    }
    t.push(((0, 1), (3..=n).map(|k| (k, p.beta(k))).collect()));
    t.push(((1, 1), vec![(n, p.gamma.clone())]));
    for i in 2..=n - 2 {
        t.push((
            (i, 1),
            (i + 2..=n).map(|k| (k, p.beta(k + 1 - i))).collect(),
        ));
    }
    Algebra::from_products(n + 1, p.field()?, t)
}

/// The reduced third-family table; the result is re-checked against the
/// Leibniz identity.
pub fn build_f3(p: &F3Params) -> Result<Algebra> {
    let n = p.n;
    let minus = |k: usize| vec![(k, -Scalar::one())];
    let mut t: Vec<Entry> = Vec::new();
    for i in 1..n {
        t.push(((i, 0), unit(i + 1)));
    }
    for i in 2..n {
        t.push(((0, i), minus(i + 1)));
    }
    t.push(((0, 0), vec![(n, p.theta1.clone())]));
    t.push(((0, 1), vec![(2, -Scalar::one()), (n, p.theta2.clone())]));
    t.push(((1, 1), vec![(n, p.theta3.clone())]));
    if p.alpha_flag == 1 {
        for i in 1..n {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            t.push(((i, n - i), vec![(n, Scalar::from_int(sign))]));
        }
    }
    let l = Algebra::from_products(n + 1, p.field()?, t)?;
    l.check_leibniz()?;
    Ok(l)
}

/// The 6-dimensional algebra with `[e_0,e_1] = [e_1,e_1] = e_3 - 2e_4 + 5e_5`,
/// written out product by product.
pub fn build_example() -> Algebra {
    let c = |pairs: &[(usize, i64)]| -> Vec<(usize, Scalar)> {
        pairs
            .iter()
            .map(|&(k, v)| (k, Scalar::from_int(v)))
            .collect()
    };
    let t: Vec<Entry> = vec![
        ((0, 0), c(&[(2, 1)])),
        ((1, 0), c(&[(2, 1)])),
        ((2, 0), c(&[(3, 1)])),
        ((3, 0), c(&[(4, 1)])),
        ((4, 0), c(&[(5, 1)])),
        ((0, 1), c(&[(3, 1), (4, -2), (5, 5)])),
        ((1, 1), c(&[(3, 1), (4, -2), (5, 5)])),
        ((2, 1), c(&[(4, 1), (5, -2)])),
        ((3, 1), c(&[(5, 1)])),
    ];
    Algebra::from_products(6, Field::Rational, t).expect("static table")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn e(dim: usize, k: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); dim];
        v[k] = Scalar::one();
        v
    }

    #[test]
    fn example_matches_f1() {
        let p = F1Params::from_ints(5, &[1, -2, 5], 5).unwrap();
        let l = build_f1(&p).unwrap();
        assert_eq!(l, build_example());
        assert_eq!(l.product(3, 1), &[(5, Scalar::one())][..]);
    }

    #[test]
    fn f1_small_cases() {
        let l = build_f1(&F1Params::from_ints(4, &[0, 0], 0).unwrap()).unwrap();
        let nz: Vec<_> = l.nonzero_products().map(|(ij, _)| ij).collect();
        assert_eq!(nz, vec![(0, 0), (1, 0), (2, 0), (3, 0)]);

        let l = build_f1(&F1Params::from_ints(3, &[1], 0).unwrap()).unwrap();
        assert_eq!(l.product(1, 1), &[(3, Scalar::one())][..]);
        assert!(l.product(0, 1).is_empty());
    }

    #[test]
    fn f2_small_cases() {
        let l = build_f2(&F2Params::from_ints(5, &[0, 0, 0], 1).unwrap()).unwrap();
        assert_eq!(l.product(1, 1), &[(5, Scalar::one())][..]);
        assert!(l.product(1, 0).is_empty());
        let l = build_f2(&F2Params::from_ints(4, &[0, 0], 0).unwrap()).unwrap();
        assert_eq!(
            l.bracket(&e(5, 1), &e(5, 0)).unwrap(),
            vec![Scalar::zero(); 5]
        );
    }

    #[test]
    fn f3_cases() {
        let l = build_f3(&F3Params::from_ints(5, [1, 0, 0], 0).unwrap()).unwrap();
        assert_eq!(l.product(0, 0), &[(5, Scalar::one())][..]);
        let lie = build_f3(&F3Params::from_ints(4, [0, 0, 0], 0).unwrap()).unwrap();
        assert!(lie.is_anticommutative());
        assert!(F3Params::from_ints(4, [1, 2, 3], 1).is_err());
        assert!(F3Params::from_ints(5, [0, 0, 0], 2).is_err());
    }

    #[test]
    fn param_validation() {
        assert!(F1Params::from_ints(2, &[], 0).is_err());
        assert!(F1Params::from_ints(5, &[1, 2], 0).is_err());
        let mixed = F1Params::new(
            3,
            vec![Scalar::sqrt_of_rational(&BigRational::from_integer(2.into())).unwrap()],
            Scalar::sqrt_of_rational(&BigRational::from_integer(3.into())).unwrap(),
        );
        assert!(matches!(mixed, Err(Error::FieldMismatch { .. })));
    }
}
