//! Silverman's lower bound for generator heights and the table of
//! discriminant exponents.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::as_string;
use crate::error::{Error, Result};
use crate::heights::PowerProduct;

fn rq(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Lower bound for `H(α)` over generators `α` of `K/F`:
/// `n^(-1/(2(n-1))) N(D(K/F))^(1/(2d(n-1)))` with `N(D(K/F)) = |Δ_K| / |Δ_F|^n`
/// and `n = [K : F]`. Without `F`-data, `F = Q` and `n = d`.
pub fn silverman_lower_bound(
    d: usize,
    disc_k: &BigInt,
    f_data: Option<(usize, &BigInt)>,
) -> Result<PowerProduct> {
    if d < 2 {
        return Err(Error::DegreeTooSmall { min: 2, got: d });
    }
    let (n, norm) = match f_data {
        None => (d, BigRational::from_integer(disc_k.abs())),
        Some((n, disc_f)) => {
            if n <= 1 {
                return Err(Error::InvalidArgument(
                    "relative degree must exceed 1".into(),
                ));
            }
            if !d.is_multiple_of(n) {
                return Err(Error::InvalidArgument(format!("{n} does not divide {d}")));
            }
            if disc_f.is_zero() {
                return Err(Error::DivisionByZero);
            }
            (
                n,
                BigRational::new(disc_k.abs(), disc_f.abs().pow(n as u32)),
            )
        }
    };
    if !norm.is_positive() {
        return Err(Error::InvalidArgument(
            "discriminant must be nonzero".into(),
        ));
    }
    let (n, d) = (n as i64, d as i64);
    let head = PowerProduct::rational_pow(BigRational::from_integer(n.into()), -1, 2 * (n - 1));
    let tail = PowerProduct::rational_pow(norm, 1, 2 * d * (n - 1));
    Ok(&head * &tail)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilyExponent {
    pub n: usize,
    #[serde(serialize_with = "as_string")]
    pub exponent: BigRational,
}

/// Exponents of `|Δ_K|` in the known and conjectured bounds for `δ(K)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExponentTable {
    pub d: usize,
    #[serde(serialize_with = "as_string")]
    pub ruppert: BigRational,
    #[serde(serialize_with = "as_string")]
    pub ruppert_strong: BigRational,
    #[serde(serialize_with = "as_string")]
    pub silverman: BigRational,
    /// Smallest divisor `b > 1` of `d`.
    pub b: usize,
    #[serde(serialize_with = "as_string")]
    pub vw_threshold: BigRational,
    /// Defined for odd `d` only.
    #[serde(serialize_with = "super::as_opt_string")]
    pub dubickas: Option<BigRational>,
    pub family: Vec<FamilyExponent>,
}

pub fn exponent_table(d: usize) -> Result<ExponentTable> {
    if d < 2 {
        return Err(Error::DegreeTooSmall { min: 2, got: d });
    }
    let di = d as i64;
    let b = (2..=d)
        .find(|k| d.is_multiple_of(*k))
        .expect("d divides itself");
    let bi = b as i64;
    let vw_threshold = if b <= 3 {
        rq(1, (bi + 1) * di)
    } else {
        rq(1, 2 * (bi + 1) * di) + rq(1, bi * bi * (bi + 1) * di)
    };
    let dubickas = (d % 2 == 1).then(|| rq(di + 1, 2 * di * di * (di - 1)));
    let family = (2..=d)
        .filter(|n| d.is_multiple_of(*n))
        .map(|n| FamilyExponent {
            n,
            exponent: rq(1, 2 * di * (n as i64 - 1)),
        })
        .collect();
    Ok(ExponentTable {
        d,
        ruppert: rq(1, 2 * di),
        ruppert_strong: rq(1, 2 * di * (di - 1)),
        silverman: rq(1, 2 * di * (di - 1)),
        b,
        vw_threshold,
        dubickas,
        family,
    })
}

impl ExponentTable {
    pub fn family_exponent(&self, n: usize) -> Option<&BigRational> {
        self.family.iter().find(|f| f.n == n).map(|f| &f.exponent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn silverman_examples() {
        let b = silverman_lower_bound(2, &BigInt::from(-20), None).unwrap();
        assert!((b.to_f64() - 1.4953).abs() < 1e-4);
        assert!(b.le(&PowerProduct::rational_pow(rq(3, 1), 1, 2)).unwrap());
        let b = silverman_lower_bound(2, &BigInt::from(-4), None).unwrap();
        assert_eq!(
            b.compare(&PowerProduct::one()).unwrap(),
            std::cmp::Ordering::Equal
        );
        let b = silverman_lower_bound(2, &BigInt::from(5), None).unwrap();
        assert!((b.to_f64() - 1.0574).abs() < 1e-4);
        assert!(
            silverman_lower_bound(4, &BigInt::from(1600), Some((1, &BigInt::from(5)))).is_err()
        );
        assert!(silverman_lower_bound(4, &BigInt::from(1600), Some((2, &BigInt::from(5)))).is_ok());
    }

    #[test]
    fn exponent_examples() {
        let t = exponent_table(4).unwrap();
        assert_eq!((t.b, t.vw_threshold.clone()), (2, rq(1, 12)));
        assert_eq!(t.family_exponent(2), Some(&rq(1, 8)));
        assert_eq!(t.family_exponent(4), Some(&rq(1, 24)));
        assert_eq!(t.dubickas, None);
        assert_eq!(exponent_table(9).unwrap().dubickas, Some(rq(5, 648)));
        let t = exponent_table(25).unwrap();
        assert_eq!((t.b, t.vw_threshold), (5, rq(27, 7500)));
        assert!(exponent_table(1).is_err());
    }
}
