//! Catalan, Fuss-Catalan and Rothe numbers with their convolution identities.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

fn non_negative(name: &str, v: i64) -> Result<u64> {
    u64::try_from(v).map_err(|_| Error::InvalidParams(format!("{name} must be >= 0, got {v}")))
}

/// `binom(n, k)` for non-negative integers, built multiplicatively so every
/// intermediate value is itself a binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `binom(y, n) = y (y-1) ... (y-n+1) / n!` for rational `y`.
pub fn binomial_rational(y: &BigRational, n: u64) -> BigRational {
    let mut acc = BigRational::one();
    for i in 0..n {
        acc = acc * (y - BigRational::from_integer(i.into()))
            / BigRational::from_integer((i + 1).into());
    }
    acc
}

pub fn catalan(n: i64) -> Result<BigInt> {
    let n = non_negative("n", n)?;
    Ok(binomial(2 * n, n) / BigInt::from(n + 1))
}

/// `C^p_n = binom(pn, n) / ((p-1)n + 1)`.
pub fn p_catalan(p: i64, n: i64) -> Result<BigInt> {
    if p < 2 {
        return Err(Error::InvalidParams(format!("p must be >= 2, got {p}")));
    }
    let n = non_negative("n", n)?;
    let p = p as u64;
    let (q, r) = binomial(p * n, n).div_rem(&BigInt::from((p - 1) * n + 1));
    assert!(r.is_zero(), "Fuss-Catalan division must be exact");
    Ok(q)
}

/// `A_n(x, z) = x / (x + zn) * binom(x + zn, n)`.
///
/// Evaluated as written, so `x + zn = 0` is reported as a pole even where the
/// singularity is removable.
pub fn rothe(x: &BigRational, z: &BigRational, n: i64) -> Result<BigRational> {
    let n = non_negative("n", n)?;
    let y = x + z * BigRational::from_integer(n.into());
    if y.is_zero() {
        return Err(Error::Pole(format!("x + z*n = 0 at n = {n}")));
    }
    Ok(x / &y * binomial_rational(&y, n))
}

/// `sum_{k=0}^{n} A_k(x,z) A_{n-k}(y,z) = A_n(x+y,z)` for every `n <= n_max`.
pub fn verify_convolution(
    x: &BigRational,
    y: &BigRational,
    z: &BigRational,
    n_max: i64,
) -> Result<bool> {
    let n_max = non_negative("n_max", n_max)? as i64;
    let ax: Vec<_> = (0..=n_max).map(|k| rothe(x, z, k)).collect::<Result<_>>()?;
    let ay: Vec<_> = (0..=n_max).map(|k| rothe(y, z, k)).collect::<Result<_>>()?;
    let xy = x + y;
    for n in 0..=n_max as usize {
        let lhs: BigRational = (0..=n).map(|k| &ax[k] * &ay[n - k]).sum();
        if lhs != rothe(&xy, z, n as i64)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The convolution with the first factor frozen at index `n`:
/// `sum_{k=0}^{n} A_n(x,z) A_{n-k}(y,z) = A_n(x+y,z)`. Kept to show it is not
/// an identity.
pub fn verify_convolution_as_printed(
    x: &BigRational,
    y: &BigRational,
    z: &BigRational,
    n_max: i64,
) -> Result<bool> {
    let n_max = non_negative("n_max", n_max)? as i64;
    let xy = x + y;
    for n in 0..=n_max {
        let an = rothe(x, z, n)?;
        let mut lhs = BigRational::zero();
        for k in 0..=n {
            lhs += &an * rothe(y, z, n - k)?;
        }
        if lhs != rothe(&xy, z, n)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Both sides of `sum_{k=1}^{t} C^p_k C^p_{t+1-k} = 2t/((p-1)t+p+1) C^p_{t+1}`.
pub fn catalan_convolution_sides(p: i64, t: i64) -> Result<(BigRational, BigRational)> {
    let c: Vec<BigInt> = (0..=t + 1)
        .map(|k| p_catalan(p, k))
        .collect::<Result<_>>()?;
    let lhs: BigInt = (1..=t)
        .map(|k| &c[k as usize] * &c[(t + 1 - k) as usize])
        .sum();
    let rhs = BigRational::new(
        BigInt::from(2 * t) * &c[(t + 1) as usize],
        BigInt::from((p - 1) * t + p + 1),
    );
    Ok((BigRational::from_integer(lhs), rhs))
}

/// The Fuss-Catalan convolution for `1 <= t <= t_max`.
pub fn verify_catalan_convolution(p: i64, t_max: i64) -> Result<bool> {
    for t in 1..=t_max {
        let (l, r) = catalan_convolution_sides(p, t)?;
        if l != r {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Both sides of `sum_{k=1}^{n} C^p_k C^p_{n-k} = 2n/((p-1)n+p+1) C^p_{n+1}`,
/// whose left indices sum to `n` rather than `n + 1`.
pub fn catalan_convolution_as_printed_sides(p: i64, n: i64) -> Result<(BigRational, BigRational)> {
    let c: Vec<BigInt> = (0..=n + 1)
        .map(|k| p_catalan(p, k))
        .collect::<Result<_>>()?;
    let lhs: BigInt = (1..=n).map(|k| &c[k as usize] * &c[(n - k) as usize]).sum();
    let rhs = BigRational::new(
        BigInt::from(2 * n) * &c[(n + 1) as usize],
        BigInt::from((p - 1) * n + p + 1),
    );
    Ok((BigRational::from_integer(lhs), rhs))
}

pub fn verify_catalan_convolution_as_printed(p: i64, n_max: i64) -> Result<bool> {
    for n in 1..=n_max {
        let (l, r) = catalan_convolution_as_printed_sides(p, n)?;
        if l != r {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    /// Balanced bracket strings of length 2n, counted by brute force.
    fn dyck_count(n: u32) -> u64 {
        (0u64..1 << (2 * n))
            .filter(|&bits| {
                let mut depth = 0i32;
                for i in 0..2 * n {
                    depth += if bits >> i & 1 == 1 { 1 } else { -1 };
                    if depth < 0 {
                        return false;
                    }
                }
                depth == 0
            })
            .count() as u64
    }

    #[test]
    fn catalan_against_dyck_paths() {
        for n in 0..=7 {
            assert_eq!(catalan(n as i64).unwrap(), BigInt::from(dyck_count(n)));
        }
        assert!(catalan(-1).is_err());
    }

    #[test]
    fn fuss_catalan_values() {
        assert_eq!(p_catalan(2, 3).unwrap(), BigInt::from(5));
        assert_eq!(p_catalan(3, 3).unwrap(), BigInt::from(12));
        for p in 2..7 {
            assert_eq!(p_catalan(p, 0).unwrap(), BigInt::one());
        }
        assert!(p_catalan(1, 3).is_err());
        assert!(p_catalan(2, -1).is_err());
    }

    #[test]
    fn rothe_values() {
        assert_eq!(rothe(&q(5), &q(7), 0).unwrap(), q(1));
        assert_eq!(rothe(&q(1), &q(2), 4).unwrap(), q(14));
        assert_eq!(rothe(&q(2), &q(2), 2).unwrap(), q(5));
        assert!(matches!(rothe(&q(2), &q(-1), 2), Err(Error::Pole(_))));
    }

    #[test]
    fn convolutions() {
        assert!(verify_convolution(&q(1), &q(1), &q(2), 10).unwrap());
        assert!(verify_convolution(&q(1), &q(1), &q(2), 0).unwrap());
        assert!(verify_convolution(&q(1), &q(2), &q(3), 8).unwrap());
        assert!(!verify_convolution_as_printed(&q(1), &q(1), &q(2), 3).unwrap());
    }

    #[test]
    fn catalan_convolution_small_cases() {
        assert_eq!(catalan_convolution_sides(2, 2).unwrap(), (q(4), q(4)));
        assert_eq!(catalan_convolution_sides(2, 3).unwrap(), (q(14), q(14)));
        assert_eq!(catalan_convolution_sides(3, 2).unwrap(), (q(6), q(6)));
        let (l, r) = catalan_convolution_as_printed_sides(2, 2).unwrap();
        assert_eq!((l, r), (q(3), q(4)));
    }

    #[test]
    fn generalized_binomial() {
        assert_eq!(binomial_rational(&q(5), 2), q(10));
        assert_eq!(binomial_rational(&q(-1), 3), q(-1));
        assert_eq!(binomial(6, 7), BigInt::zero());
    }
}
