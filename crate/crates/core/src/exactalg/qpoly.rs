//! Polynomials over the rationals, used wherever exact field division is needed.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::IntPoly;

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::new(vec![BigRational::one()])
    }

    pub fn from_int(p: &IntPoly) -> Self {
        QPoly::new(p.to_rational())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn lead(&self) -> BigRational {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        QPoly::new(self.coeffs.iter().map(|c| c / &l).collect())
    }

    pub fn scale(&self, k: &BigRational) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn divrem(&self, b: &QPoly) -> (QPoly, QPoly) {
        assert!(!b.is_zero(), "division by zero polynomial");
        if self.degree() < b.degree() || self.is_zero() {
            return (QPoly::zero(), self.clone());
        }
        let db = b.degree();
        let lb = b.lead();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigRational::zero(); r.len() - db];
        for k in (0..q.len()).rev() {
            let t = &r[k + db] / &lb;
            if t.is_zero() {
                continue;
            }
            for (i, bc) in b.coeffs.iter().enumerate() {
                r[i + k] -= &t * bc;
            }
            q[k] = t;
        }
        r.truncate(db);
        (QPoly::new(q), QPoly::new(r))
    }

    pub fn rem(&self, b: &QPoly) -> QPoly {
        self.divrem(b).1
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn xgcd(&self, other: &QPoly) -> (QPoly, QPoly, QPoly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (QPoly::one(), QPoly::zero());
        let (mut t0, mut t1) = (QPoly::zero(), QPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let l = r0.lead().recip();
        (r0.scale(&l), s0.scale(&l), t0.scale(&l))
    }

    /// Yun's squarefree decomposition: `(a_i, i)` with `f = lc * prod a_i^i`,
    /// every `a_i` monic, squarefree and non-constant.
    pub fn squarefree_decomposition(&self) -> Vec<(QPoly, usize)> {
        let mut out = Vec::new();
        if self.degree() == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.divrem(&a0).0;
        let c = fp.divrem(&a0).0;
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while b.degree() > 0 {
            let a = b.gcd(&d);
            if a.degree() > 0 {
                out.push((a.clone(), i));
            }
            b = b.divrem(&a).0;
            let c = d.divrem(&a).0;
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// Primitive integer polynomial with the same roots.
    pub fn to_int_primitive(&self) -> IntPoly {
        IntPoly::from_rational(&self.coeffs)
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xgcd_identity() {
        let a = QPoly::from_int(&IntPoly::from_i64s(&[-2, 0, 1]));
        let b = QPoly::from_int(&IntPoly::from_i64s(&[1, 3]));
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(g, QPoly::one());
        assert_eq!(&(&s * &a) + &(&t * &b), QPoly::one());
    }
}
