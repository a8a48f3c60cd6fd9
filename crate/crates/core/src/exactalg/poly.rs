//! Dense univariate polynomials with arbitrary-precision integer coefficients.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::qpoly::QPoly;
use crate::error::{Error, Result};

/// Integer polynomial, constant term first. Trailing zeros are never stored,
/// so the zero polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(from = "Coeffs", into = "Coeffs")]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
#[serde(transparent)]
struct Coeffs(#[serde(with = "super::decimal::vec")] Vec<BigInt>);

impl From<Coeffs> for IntPoly {
    fn from(c: Coeffs) -> Self {
        IntPoly::new(c.0)
    }
}

impl From<IntPoly> for Coeffs {
    fn from(p: IntPoly) -> Self {
        Coeffs(p.coeffs)
    }
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `x`
    pub fn x() -> Self {
        Self::from_i64s(&[0, 1])
    }

    /// `c * x^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn lead(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Content 1 and positive leading coefficient.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.lead().is_negative() {
            c = -c;
        }
        IntPoly::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    pub fn is_primitive(&self) -> bool {
        !self.is_zero() && self.lead().is_positive() && self.content().is_one()
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|a| a * k).collect())
    }

    /// Divides every coefficient by `k`; the caller guarantees exactness.
    pub fn div_scalar_exact(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|a| a / k).collect())
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| {
                acc * x + BigRational::from_integer(c.clone())
            })
    }

    /// `x^d f(1/x)`; for `f(0) != 0` the roots are inverted.
    pub fn reversed(&self) -> IntPoly {
        let mut v = self.coeffs.clone();
        v.reverse();
        IntPoly::new(v)
    }

    /// `f(-x)`
    pub fn negate_x(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, a)| if i % 2 == 1 { -a } else { a.clone() })
                .collect(),
        )
    }

    /// `f(c x)`
    pub fn scale_x(&self, c: &BigInt) -> IntPoly {
        let mut pw = BigInt::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pw);
            pw *= c;
        }
        IntPoly::new(out)
    }

    /// `f(x + c)` by repeated synthetic division.
    pub fn shift(&self, c: &BigInt) -> IntPoly {
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &a[j + 1] * c;
                a[j] += t;
            }
        }
        IntPoly::new(a)
    }

    /// `f(g(x))`
    pub fn compose(&self, g: &IntPoly) -> IntPoly {
        self.coeffs.iter().rev().fold(IntPoly::zero(), |acc, c| {
            &(&acc * g) + &IntPoly::constant(c.clone())
        })
    }

    pub fn pow(&self, mut e: u32) -> IntPoly {
        let mut base = self.clone();
        let mut acc = IntPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default()
    }

    /// Number of leading zero roots, i.e. the largest `k` with `x^k | f`.
    pub fn x_valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// `f / x^k`
    pub fn shift_down(&self, k: usize) -> IntPoly {
        IntPoly::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) a mod b`.
    pub fn pseudo_rem(&self, b: &IntPoly) -> IntPoly {
        assert!(!b.is_zero());
        let db = b.degree();
        let lb = b.lead();
        let mut r = self.coeffs.clone();
        while r.len() > db && !r.is_empty() {
            let k = r.len() - 1 - db;
            let lr = r.last().unwrap().clone();
            for c in r.iter_mut() {
                *c *= &lb;
            }
            for (i, bc) in b.coeffs.iter().enumerate() {
                r[i + k] -= &lr * bc;
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        IntPoly::new(r)
    }

    /// Exact quotient over Z, or `None` when `b` does not divide `self`.
    pub fn div_exact(&self, b: &IntPoly) -> Option<IntPoly> {
        if b.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if self.degree() < b.degree() {
            return None;
        }
        let db = b.degree();
        let lb = b.lead();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); r.len() - db];
        for k in (0..q.len()).rev() {
            let top = r[k + db].clone();
            if top.is_zero() {
                continue;
            }
            let (qt, rem) = top.div_rem(&lb);
            if !rem.is_zero() {
                return None;
            }
            for (i, bc) in b.coeffs.iter().enumerate() {
                r[i + k] -= &qt * bc;
            }
            q[k] = qt;
        }
        if r.iter().all(|c| c.is_zero()) {
            Some(IntPoly::new(q))
        } else {
            None
        }
    }

    /// Division by a monic polynomial, returning (quotient, remainder).
    pub fn divrem_monic(&self, b: &IntPoly) -> (IntPoly, IntPoly) {
        assert!(b.is_monic(), "divisor must be monic");
        if self.degree() < b.degree() || self.is_zero() {
            return (IntPoly::zero(), self.clone());
        }
        let db = b.degree();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); r.len() - db];
        for k in (0..q.len()).rev() {
            let top = r[k + db].clone();
            if top.is_zero() {
                continue;
            }
            for (i, bc) in b.coeffs.iter().enumerate() {
                r[i + k] -= &top * bc;
            }
            q[k] = top;
        }
        r.truncate(db);
        (IntPoly::new(q), IntPoly::new(r))
    }

    /// Primitive gcd with positive leading coefficient (primitive PRS).
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        let cont = self.content().gcd(&other.content());
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = if r.is_zero() { r } else { r.primitive_part() };
        }
        let g = a.primitive_part();
        if g.is_constant() {
            return IntPoly::constant(cont);
        }
        g.scale(&cont)
    }

    pub fn is_squarefree(&self) -> bool {
        if self.degree() == 0 {
            return true;
        }
        self.gcd(&self.derivative()).degree() == 0
    }

    /// Squarefree decomposition of the primitive part: `(s_i, i)` with
    /// `pp(f) = prod s_i^i`, each `s_i` primitive, squarefree and pairwise
    /// coprime.
    pub fn squarefree_decomposition(&self) -> Vec<(IntPoly, usize)> {
        QPoly::from_int(self)
            .squarefree_decomposition()
            .into_iter()
            .map(|(a, i)| (a.to_int_primitive(), i))
            .collect()
    }

    /// Lexicographic order from the leading coefficient down, after degree.
    pub fn cmp_canonical(&self, other: &IntPoly) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }

    pub fn to_rational(&self) -> Vec<BigRational> {
        self.coeffs
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect()
    }

    /// Primitive integer polynomial proportional to a nonzero rational one.
    pub fn from_rational(coeffs: &[BigRational]) -> IntPoly {
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        IntPoly::new(
            coeffs
                .iter()
                .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
                .collect(),
        )
        .primitive_part()
    }

    /// Coefficients as `i64` when they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !a.is_one();
            if show_coeff {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}x", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}x^{i}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Rejects degree-0 and zero polynomials where a root is required.
pub fn require_degree(f: &IntPoly, min: usize) -> Result<()> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.degree() < min {
        return Err(Error::DegreeTooSmall {
            min,
            got: f.degree(),
        });
    }
    Ok(())
}

/// Binomial coefficient as a big integer.
pub fn binomial(n: usize, k: usize) -> BigInt {
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

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn display_and_normalization() {
        assert_eq!(p(&[-1, -1, 1, 0, 0]).to_string(), "x^2 - x - 1");
        assert_eq!(p(&[3, -2, 2]).to_string(), "2*x^2 - 2*x + 3");
        assert_eq!(p(&[]).to_string(), "0");
        assert_eq!(p(&[0, 0, 0]).degree(), 0);
    }

    #[test]
    fn gcd_and_exact_division() {
        let a = &p(&[-2, 0, 1]) * &p(&[1, 1]);
        let b = &p(&[-2, 0, 1]) * &p(&[5, 0, 3]);
        assert_eq!(a.gcd(&b), p(&[-2, 0, 1]));
        assert_eq!(a.div_exact(&p(&[1, 1])), Some(p(&[-2, 0, 1])));
        assert_eq!(a.div_exact(&p(&[1, 2])), None);
        assert_eq!(p(&[2, 4]).gcd(&p(&[6, 12])), p(&[2, 4]));
    }

    #[test]
    fn squarefree_decomposition_recovers_powers() {
        // (x - 1)^2 (x + 2)^3 (3x + 1)
        let f = &(&p(&[-1, 1]).pow(2) * &p(&[2, 1]).pow(3)) * &p(&[1, 3]);
        let dec = f.squarefree_decomposition();
        let mut prod = IntPoly::one();
        for (s, i) in &dec {
            assert!(s.is_squarefree());
            prod = &prod * &s.pow(*i as u32);
        }
        assert_eq!(prod.primitive_part(), f.primitive_part());
        assert!(dec.iter().any(|(s, i)| *i == 3 && *s == p(&[2, 1])));
    }

    #[test]
    fn shift_and_symmetries() {
        let f = p(&[-1, -1, 1]);
        assert_eq!(f.shift(&BigInt::from(1)), p(&[-1, 1, 1]));
        assert_eq!(f.negate_x(), p(&[-1, 1, 1]));
        assert_eq!(f.reversed(), p(&[1, -1, -1]));
        assert_eq!(f.compose(&p(&[1, 1])), f.shift(&BigInt::from(1)));
    }
}
