//! Products `∏ b_i^(e_i)` of positive rationals and heights raised to
//! rational exponents, compared exactly when every base is rational or has
//! an integral Mahler measure.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use super::height::LogHeight;
use crate::error::{Error, Result};
use crate::exactalg::real::ln_rational;
use crate::exactalg::RealEnclosure;

/// Precision ceiling for numeric comparisons.
pub const COMPARE_MAX_BITS: u32 = 256;

/// Exact powers are only expanded below this many bits.
const EXACT_BIT_BUDGET: u64 = 1 << 22;

#[derive(Clone, Debug)]
pub enum Base {
    Rational(BigRational),
    Height(Box<LogHeight>),
}

#[derive(Clone, Debug)]
pub struct PowerProduct {
    terms: Vec<(Base, BigRational)>,
}

fn rq(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl PowerProduct {
    pub fn one() -> PowerProduct {
        PowerProduct { terms: Vec::new() }
    }

    /// A positive rational.
    pub fn rational(q: BigRational) -> PowerProduct {
        assert!(q.is_positive(), "power product bases are positive");
        PowerProduct {
            terms: vec![(Base::Rational(q), BigRational::one())],
        }
    }

    pub fn integer(n: impl Into<BigInt>) -> PowerProduct {
        PowerProduct::rational(BigRational::from_integer(n.into()))
    }

    /// `b^(num/den)` for a positive rational `b`.
    pub fn rational_pow(b: BigRational, num: i64, den: i64) -> PowerProduct {
        PowerProduct::rational(b).pow(&rq(num, den))
    }

    pub fn height(h: &LogHeight) -> PowerProduct {
        PowerProduct {
            terms: vec![(Base::Height(Box::new(h.clone())), BigRational::one())],
        }
    }

    pub fn pow(&self, e: &BigRational) -> PowerProduct {
        PowerProduct {
            terms: self.terms.iter().map(|(b, x)| (b.clone(), x * e)).collect(),
        }
    }

    pub fn inv(&self) -> PowerProduct {
        self.pow(&-BigRational::one())
    }

    pub fn div(&self, o: &PowerProduct) -> PowerProduct {
        self * &o.inv()
    }

    /// Enclosure of the logarithm with absolute width about `2^-bits`.
    pub fn log_enclosure(&self, bits: u32) -> Result<RealEnclosure> {
        let mut acc = RealEnclosure::zero();
        let extra = self
            .terms
            .iter()
            .map(|(_, e)| e.abs().ceil().to_integer().bits() as u32)
            .max()
            .unwrap_or(0)
            + 4
            + (self.terms.len() as u32).max(2).ilog2();
        let w = bits + extra;
        for (b, e) in &self.terms {
            let l = match b {
                Base::Rational(q) => ln_rational(q, w),
                Base::Height(h) => {
                    if h.exact_one {
                        continue;
                    }
                    let limit = BigRational::new(BigInt::one(), BigInt::one() << w);
                    if h.log_value.width() <= limit {
                        h.log_value.clone()
                    } else {
                        h.refined(w)?.log_value
                    }
                }
            };
            acc = &acc + &l.scale(e);
        }
        Ok(acc)
    }

    pub fn value(&self, bits: u32) -> Result<RealEnclosure> {
        Ok(self.log_enclosure(bits + 8)?.exp(bits))
    }

    /// The product as `∏ q_i^(e_i)` with rational bases, when available.
    fn rational_terms(&self) -> Option<Vec<(BigRational, BigRational)>> {
        let mut out = Vec::new();
        for (b, e) in &self.terms {
            match b {
                Base::Rational(q) => out.push((q.clone(), e.clone())),
                Base::Height(h) => {
                    if h.exact_one {
                        continue;
                    }
                    let m = h.exact_mahler()?;
                    let d = BigInt::from(h.degree());
                    out.push((
                        BigRational::from_integer(m.clone()),
                        e / BigRational::from_integer(d),
                    ));
                }
            }
        }
        Some(out)
    }

    /// Exact sign of `log(self) - log(other)` when both sides are products of
    /// rational powers of moderate size.
    fn compare_exact(&self, o: &PowerProduct) -> Option<Ordering> {
        let mut terms = self.rational_terms()?;
        terms.extend(o.rational_terms()?.into_iter().map(|(b, e)| (b, -e)));
        let l = terms
            .iter()
            .fold(BigInt::one(), |acc, (_, e)| acc.lcm(e.denom()));
        let mut size = 0u64;
        for (b, e) in &terms {
            let k = (e * BigRational::from_integer(l.clone()))
                .to_integer()
                .abs()
                .to_u64()?;
            size = size.checked_add(k.checked_mul(b.numer().bits() + b.denom().bits())?)?;
        }
        if size > EXACT_BIT_BUDGET {
            return None;
        }
        let (mut lhs, mut rhs) = (BigRational::one(), BigRational::one());
        for (b, e) in &terms {
            let k = (e * BigRational::from_integer(l.clone())).to_integer();
            let kk = k.abs().to_u32()?;
            let pw = BigRational::new(b.numer().pow(kk), b.denom().pow(kk));
            if k.is_positive() {
                lhs *= pw;
            } else if k.is_negative() {
                rhs *= pw;
            }
        }
        Some(lhs.cmp(&rhs))
    }

    /// Certified comparison; numeric refinement stops at `2^-256`.
    pub fn compare(&self, o: &PowerProduct) -> Result<Ordering> {
        if let Some(c) = self.compare_exact(o) {
            return Ok(c);
        }
        let mut bits = 64;
        loop {
            let diff = &self.log_enclosure(bits)? - &o.log_enclosure(bits)?;
            if diff.lo().is_positive() {
                return Ok(Ordering::Greater);
            }
            if diff.hi().is_negative() {
                return Ok(Ordering::Less);
            }
            if bits >= COMPARE_MAX_BITS {
                return Err(Error::Undecided(bits));
            }
            bits = (bits * 2).min(COMPARE_MAX_BITS);
        }
    }

    pub fn le(&self, o: &PowerProduct) -> Result<bool> {
        Ok(self.compare(o)? != Ordering::Greater)
    }

    pub fn to_f64(&self) -> f64 {
        self.log_enclosure(64)
            .map(|l| l.to_f64().exp())
            .unwrap_or(f64::NAN)
    }
}

impl Mul for &PowerProduct {
    type Output = PowerProduct;
    fn mul(self, o: &PowerProduct) -> PowerProduct {
        let mut terms = self.terms.clone();
        terms.extend(o.terms.iter().cloned());
        PowerProduct { terms }
    }
}

impl fmt::Display for PowerProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(b, e)| {
                let base = match b {
                    Base::Rational(q) => format!("{q}"),
                    Base::Height(h) => format!("H({})", h.minpoly),
                };
                if e.is_one() {
                    base
                } else {
                    format!("({base})^({e})")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" * "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::IntPoly;
    use crate::heights::height_algebraic;

    #[test]
    fn exact_comparisons() {
        let a = PowerProduct::rational_pow(rq(8, 1), 1, 3);
        let b = PowerProduct::integer(2);
        assert_eq!(a.compare(&b).unwrap(), Ordering::Equal);
        let c = PowerProduct::rational_pow(rq(9, 1), 1, 3);
        assert_eq!(c.compare(&b).unwrap(), Ordering::Greater);
        let h = height_algebraic(&IntPoly::from_i64s(&[-5, 0, 7])).unwrap();
        let bound = PowerProduct::rational_pow(rq(7, 1), 1, 2);
        assert_eq!(
            h.to_power_product().compare(&bound).unwrap(),
            Ordering::Equal
        );
    }

    #[test]
    fn numeric_comparisons() {
        let phi = height_algebraic(&IntPoly::from_i64s(&[-1, -1, 1])).unwrap();
        let b = PowerProduct::rational_pow(rq(127, 100), 1, 1);
        assert_eq!(
            phi.to_power_product().compare(&b).unwrap(),
            Ordering::Greater
        );
        let phi2 = phi.to_power_product().pow(&rq(2, 1));
        let same =
            PowerProduct::height(&height_algebraic(&IntPoly::from_i64s(&[-1, 1, 1])).unwrap())
                .pow(&rq(2, 1));
        assert!(matches!(phi2.compare(&same), Err(Error::Undecided(256))));
    }
}
