//! Non-characteristically nilpotent representatives of the three families and
//! decision trees sending a family member to its representative class.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::combinatorics::p_catalan;
use crate::derivations::{is_characteristically_nilpotent, WitnessOptions};
use crate::error::{Error, Result};
use crate::exactlinalg::Scalar;
use crate::families::{F1Params, F2Params, F3Params, FamilyParams};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepresentativeLabel {
    /// `F_1^s`: first nonzero `alpha_s`, Fuss-Catalan tail, `theta = alpha_n`.
    F1s {
        s: usize,
    },
    /// `F_1(0, ..., 0, theta)` with `theta != 0`.
    F1Theta,
    /// `F_2(0, ..., 0, 1)`, odd `n`.
    F2Odd,
    /// `F_2(0, .., beta_m, .., 0, 0, 1)` with `m = (n+2)/2`; the payload is the
    /// invariant `beta_m^2 / gamma`.
    F2Even1 {
        beta_squared: Scalar,
    },
    /// `F_2(0, .., sqrt(2/n), .., 0, 1, 1)`.
    F2Even2,
    /// `F_2^j`: a single 1 in slot `j`, `gamma = 0`.
    F2j {
        j: usize,
    },
    F3One,
    F3Two,
    F3Three,
    NatGraded,
    CharNilpotent,
}

impl RepresentativeLabel {
    pub fn name(&self) -> &'static str {
        match self {
            RepresentativeLabel::F1s { .. } => "F1^s",
            RepresentativeLabel::F1Theta => "F1-theta",
            RepresentativeLabel::F2Odd => "F2-odd",
            RepresentativeLabel::F2Even1 { .. } => "F2-even-1",
            RepresentativeLabel::F2Even2 => "F2-even-2",
            RepresentativeLabel::F2j { .. } => "F2-j",
            RepresentativeLabel::F3One => "F3-1",
            RepresentativeLabel::F3Two => "F3-2",
            RepresentativeLabel::F3Three => "F3-3",
            RepresentativeLabel::NatGraded => "NatGraded",
            RepresentativeLabel::CharNilpotent => "CharNilpotent",
        }
    }

    pub fn is_char_nilpotent(&self) -> bool {
        *self == RepresentativeLabel::CharNilpotent
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentativeTag {
    pub family: u8,
    pub label: RepresentativeLabel,
}

impl RepresentativeTag {
    fn new(family: u8, label: RepresentativeLabel) -> Self {
        RepresentativeTag { family, label }
    }
}

impl fmt::Display for RepresentativeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.label {
            RepresentativeLabel::F1s { s } => write!(f, "F1^{s}"),
            RepresentativeLabel::F2j { j } => write!(f, "F2^{j}"),
            RepresentativeLabel::F2Even1 { beta_squared } => {
                write!(f, "F2-even-1(beta^2={beta_squared})")
            }
            RepresentativeLabel::NatGraded | RepresentativeLabel::CharNilpotent => {
                write!(f, "F{}:{}", self.family, self.label.name())
            }
            other => f.write_str(other.name()),
        }
    }
}

fn big(n: BigInt) -> Scalar {
    Scalar::from_bigint(n)
}

/// `(-1)^t C^{s-1}_{t+1}` when `k = s + t(s-2)`, zero otherwise.
fn catalan_pattern(s: usize, k: usize) -> Result<Scalar> {
    if k < s || !(k - s).is_multiple_of(s - 2) {
        return Ok(Scalar::zero());
    }
    let t = (k - s) / (s - 2);
    let c = big(p_catalan(s as i64 - 1, t as i64 + 1)?);
    Ok(if t.is_multiple_of(2) { c } else { -c })
}

/// The representative `F_1^s` of dimension `n + 1` (normalized `alpha_s = 1`).
pub fn f1_representative(n: usize, s: usize) -> Result<F1Params> {
    if n < 3 || !(3..=n).contains(&s) {
        return Err(Error::InvalidParams(format!(
            "need 3 <= s <= n, got s={s}, n={n}"
        )));
    }
    let alpha: Vec<Scalar> = (3..=n)
        .map(|k| catalan_pattern(s, k))
        .collect::<Result<_>>()?;
    let theta = alpha[n - 3].clone();
    F1Params::new(n, alpha, theta)
}

/// `sum_{j=4}^{k} alpha_{j-1} alpha_{k-j+3}`
fn convolution(k: usize, x: impl Fn(usize) -> Scalar) -> Scalar {
    (4..=k).map(|j| &x(j - 1) * &x(k - j + 3)).sum()
}

/// Checks `alpha_k = k(s-2) / (2(s-k)) * sum_{j=4}^k alpha_{j-1} alpha_{k-j+3}`
/// for every `s < k <= n`. False when `alpha_s` is not the first nonzero entry.
pub fn verify_recurrence_ak(p: &F1Params, s: usize) -> bool {
    if !(3..=p.n()).contains(&s) || p.alpha(s).is_zero() || (3..s).any(|k| !p.alpha(k).is_zero()) {
        return false;
    }
    (s + 1..=p.n()).all(|k| {
        let f = Scalar::ratio((k * (s - 2)) as i64, 2 * (s as i64 - k as i64));
        p.alpha(k) == &f * &convolution(k, |i| p.alpha(i))
    })
}

/// Default instances of the one-parameter `F_2^1` family.
pub fn default_f2_samples() -> Vec<Scalar> {
    (0..=2).map(Scalar::from_int).collect()
}

/// `sqrt(2/n)`, rational when `2/n` is a rational square.
pub fn sqrt_two_over_n(n: usize) -> Result<Scalar> {
    Scalar::sqrt_of_rational(&BigRational::new(2.into(), (n as i64).into()))
}

fn single(n: usize, j: usize, v: Scalar) -> Vec<Scalar> {
    let mut b = vec![Scalar::zero(); n - 2];
    b[j - 3] = v;
    b
}

/// Representatives of the second family for top index `n`; `samples` are the
/// `beta_{(n+2)/2}` values used for the one-parameter even family.
pub fn f2_representatives(
    n: usize,
    samples: &[Scalar],
) -> Result<Vec<(F2Params, RepresentativeTag)>> {
    if n < 3 {
        return Err(Error::InvalidParams(format!("n must be >= 3, got {n}")));
    }
    let tag = |l| RepresentativeTag::new(2, l);
    let mut out = Vec::new();
    if n % 2 == 1 {
        out.push((
            F2Params::new(n, vec![Scalar::zero(); n - 2], Scalar::one())?,
            tag(RepresentativeLabel::F2Odd),
        ));
    } else {
        let m = (n + 2) / 2;
        for b in samples {
            out.push((
                F2Params::new(n, single(n, m, b.clone()), Scalar::one())?,
                tag(RepresentativeLabel::F2Even1 {
                    beta_squared: b * b,
                }),
            ));
        }
        let mut beta = single(n, m, sqrt_two_over_n(n)?);
        beta[n - 3] = Scalar::one();
        out.push((
            F2Params::new(n, beta, Scalar::one())?,
            tag(RepresentativeLabel::F2Even2),
        ));
    }
    for j in 3..=n {
        out.push((
            F2Params::new(n, single(n, j, Scalar::one()), Scalar::zero())?,
            tag(RepresentativeLabel::F2j { j }),
        ));
    }
    Ok(out)
}

pub fn f3_representatives(n: usize) -> Result<Vec<(F3Params, RepresentativeTag)>> {
    [
        ([1, 0, 0], RepresentativeLabel::F3One),
        ([0, 1, 0], RepresentativeLabel::F3Two),
        ([0, 0, 1], RepresentativeLabel::F3Three),
    ]
    .into_iter()
    .map(|(t, l)| Ok((F3Params::from_ints(n, t, 0)?, RepresentativeTag::new(3, l))))
    .collect()
}

pub fn classify_f1(p: &F1Params) -> RepresentativeTag {
    use RepresentativeLabel::*;
    let tag = |l| RepresentativeTag::new(1, l);
    let n = p.n();
    let Some(s) = (3..=n).find(|&k| !p.alpha(k).is_zero()) else {
        return tag(if p.theta.is_zero() {
            NatGraded
        } else {
            F1Theta
        });
    };
    if p.theta != p.alpha(n) {
        return tag(CharNilpotent);
    }
    let a_s = p.alpha(s);
    let fits = (s..=n).all(|k| {
        let expected = catalan_pattern(s, k).expect("s >= 3");
        if expected.is_zero() {
            return p.alpha(k).is_zero();
        }
        let t = ((k - s) / (s - 2)) as u32;
        p.alpha(k) == &expected * &a_s.pow(t + 1)
    });
    tag(if fits { F1s { s } } else { CharNilpotent })
}

pub fn classify_f2(p: &F2Params) -> RepresentativeTag {
    use RepresentativeLabel::*;
    let tag = |l| RepresentativeTag::new(2, l);
    let n = p.n();
    let b = |k: usize| p.beta(k);
    if !p.gamma.is_zero() {
        if n % 2 == 1 {
            let clean = (3..n).all(|i| b(i).is_zero());
            return tag(if clean { F2Odd } else { CharNilpotent });
        }
        let m = (n + 2) / 2;
        if (3..n).any(|k| k != m && !b(k).is_zero()) {
            return tag(CharNilpotent);
        }
        let bm2 = &b(m) * &b(m);
        let critical = &bm2 * &Scalar::ratio(n as i64, 2);
        if p.gamma != critical {
            let inv = p.gamma.inverse().expect("gamma != 0");
            return tag(F2Even1 {
                beta_squared: &bm2 * &inv,
            });
        }
        // On the critical curve gamma = (n/2) beta_m^2 the beta_n equation
        // reads (2-n)/2 beta_n a_0 = 0, so beta_n != 0 kills a_0 and b_1.
        return tag(if b(n).is_zero() {
            F2Even1 {
                beta_squared: Scalar::ratio(2, n as i64),
            }
        } else {
            CharNilpotent
        });
    }
    let Some(j) = (3..=n).find(|&k| !b(k).is_zero()) else {
        return tag(NatGraded);
    };
    // b_1 = (j-1)a_0 and, with a_0 = 1, a_1 = r is fixed by the 2j-2 equation
    let r = if 2 * j - 2 <= n {
        let num = &b(2 * j - 2) * &Scalar::from_int(2 - j as i64);
        let den = &(&b(j) * &b(j)) * &Scalar::from_int(j as i64 - 1);
        &num * &den.inverse().expect("beta_j != 0")
    } else {
        Scalar::zero()
    };
    let ok = (j + 1..=n).filter(|&k| k != 2 * j - 2).all(|k| {
        let lhs = &b(k) * &Scalar::from_int(j as i64 - k as i64);
        let rhs = &(&r * &Scalar::ratio(k as i64, 2)) * &convolution(k, b);
        lhs == rhs
    });
    tag(if ok { F2j { j } } else { CharNilpotent })
}

/// Decision tree for the reduced third family with `alpha = 0`.
pub fn classify_f3(p: &F3Params) -> Result<RepresentativeTag> {
    use RepresentativeLabel::*;
    if p.alpha_flag() == 1 {
        return Err(Error::Unsupported(
            "the theta normal forms only cover alpha_flag = 0; use the Engel verdict".into(),
        ));
    }
    let tag = |l| RepresentativeTag::new(3, l);
    let (t1, t2, t3) = (&p.theta1, &p.theta2, &p.theta3);
    Ok(if !t3.is_zero() {
        let target = &(t2 * t2) * &(t3 * &Scalar::from_int(4)).inverse().expect("theta3 != 0");
        tag(if *t1 == target {
            F3Three
        } else {
            CharNilpotent
        })
    } else if !t2.is_zero() {
        tag(F3Two)
    } else if !t1.is_zero() {
        tag(F3One)
    } else {
        tag(NatGraded)
    })
}

pub fn classify(p: &FamilyParams) -> Result<RepresentativeTag> {
    match p {
        FamilyParams::F1(p) => Ok(classify_f1(p)),
        FamilyParams::F2(p) => Ok(classify_f2(p)),
        FamilyParams::F3(p) => classify_f3(p),
    }
}

/// The criterion "some `alpha_i alpha_j != 0` with `i != j`", taken literally.
pub fn tnil_hypothesis(p: &F1Params) -> bool {
    p.alphas().iter().filter(|a| !a.is_zero()).count() >= 2
}

/// Whether the tree's verdict matches the Engel verdict on the built algebra.
pub fn engel_agrees(
    p: &FamilyParams,
    tag: &RepresentativeTag,
    opts: &WitnessOptions,
) -> Result<bool> {
    let v = is_characteristically_nilpotent(&p.build()?, opts)?;
    Ok(v.is_char_nilpotent == tag.label.is_char_nilpotent())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn f1_representatives_closed_form() {
        let p = f1_representative(5, 3).unwrap();
        assert_eq!(p.alphas(), &ints(&[1, -2, 5])[..]);
        assert_eq!(p.theta, Scalar::from_int(5));
        let p = f1_representative(7, 3).unwrap();
        assert_eq!(p.alphas(), &ints(&[1, -2, 5, -14, 42])[..]);
        let p = f1_representative(7, 4).unwrap();
        assert_eq!(p.alphas(), &ints(&[0, 1, 0, -3, 0])[..]);
        assert!(p.theta.is_zero());
        assert!(f1_representative(5, 6).is_err());
        assert!(f1_representative(5, 2).is_err());
    }

    #[test]
    fn recurrence() {
        assert!(verify_recurrence_ak(&f1_representative(5, 3).unwrap(), 3));
        assert!(verify_recurrence_ak(&f1_representative(12, 3).unwrap(), 3));
        let mut a = f1_representative(5, 3).unwrap().alphas().to_vec();
        a[2] += &Scalar::one();
        assert!(!verify_recurrence_ak(
            &F1Params::new(5, a, Scalar::from_int(6)).unwrap(),
            3
        ));
    }

    #[test]
    fn classify_f1_cases() {
        let ex = F1Params::from_ints(5, &[1, -2, 5], 5).unwrap();
        assert_eq!(classify_f1(&ex).label, RepresentativeLabel::F1s { s: 3 });
        let cn = F1Params::from_ints(5, &[1, -2, 5], 0).unwrap();
        assert_eq!(classify_f1(&cn).label, RepresentativeLabel::CharNilpotent);
        let th = F1Params::from_ints(6, &[0, 0, 0, 0], 7).unwrap();
        assert_eq!(classify_f1(&th).label, RepresentativeLabel::F1Theta);
        // alpha_s = 2 scales the tail by 2^{t+1}
        let scaled = F1Params::from_ints(5, &[2, -8, 40], 40).unwrap();
        assert_eq!(
            classify_f1(&scaled).label,
            RepresentativeLabel::F1s { s: 3 }
        );
    }

    #[test]
    fn classify_f2_and_f3_cases() {
        let odd = F2Params::from_ints(5, &[0, 0, 0], 1).unwrap();
        assert_eq!(classify_f2(&odd).label, RepresentativeLabel::F2Odd);
        let t = classify_f3(&F3Params::from_ints(5, [1, 2, 1], 0).unwrap()).unwrap();
        assert_eq!(t.label, RepresentativeLabel::F3Three);
        let t = classify_f3(&F3Params::from_ints(5, [2, 2, 1], 0).unwrap()).unwrap();
        assert_eq!(t.label, RepresentativeLabel::CharNilpotent);
        assert!(classify_f3(&F3Params::from_ints(5, [1, 0, 0], 1).unwrap()).is_err());
    }

    #[test]
    fn tnil_predicate() {
        assert!(tnil_hypothesis(
            &F1Params::from_ints(5, &[1, -2, 5], 5).unwrap()
        ));
        assert!(!tnil_hypothesis(
            &F1Params::from_ints(5, &[0, 3, 0], 5).unwrap()
        ));
        assert!(tnil_hypothesis(
            &F1Params::from_ints(5, &[1, 0, 5], 5).unwrap()
        ));
    }

    #[test]
    fn f2_generator_fields() {
        let reps = f2_representatives(8, &default_f2_samples()).unwrap();
        let (p, _) = reps
            .iter()
            .find(|(_, t)| t.label == RepresentativeLabel::F2Even2)
            .unwrap();
        assert_eq!(p.beta(5), Scalar::ratio(1, 2));
        let reps = f2_representatives(6, &[]).unwrap();
        let (p, _) = &reps[0];
        assert_eq!(p.beta(4).radicand(), 3);
        assert_eq!(f2_representatives(5, &[]).unwrap().len(), 4);
    }
}
