//! Resultants, discriminants and the bivariate norm resultant
//! `Res_y(a(y), b(x - s*y))`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{require_degree, IntPoly};
use crate::error::Result;

/// Determinant of a square integer matrix by fraction-free Bareiss elimination.
pub fn det_bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Sylvester resultant `Res(a, b)`.
pub fn resultant(a: &IntPoly, b: &IntPoly) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    let (m, n) = (a.degree(), b.degree());
    if m == 0 {
        return a.lead().pow(n as u32);
    }
    if n == 0 {
        return b.lead().pow(m as u32);
    }
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![BigInt::zero(); size];
        for (j, c) in a.coeffs().iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![BigInt::zero(); size];
        for (j, c) in b.coeffs().iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    det_bareiss(rows)
}

/// `disc(f) = (-1)^(d(d-1)/2) Res(f, f') / lc(f)`.
pub fn poly_discriminant(f: &IntPoly) -> Result<BigInt> {
    require_degree(f, 1)?;
    let d = f.degree();
    let r = resultant(f, &f.derivative()) / f.lead();
    Ok(if (d * (d - 1) / 2) % 2 == 1 { -r } else { r })
}

/// `Res_y(a(y), b(x - s*y))` as a polynomial in `x`, by evaluation at
/// `deg a * deg b + 1` integer points and exact interpolation.
pub fn norm_resultant(a: &IntPoly, b: &IntPoly, s: &BigInt) -> IntPoly {
    let n = a.degree() * b.degree();
    let points: Vec<BigInt> = (0..=n as i64).map(BigInt::from).collect();
    let values: Vec<BigInt> = points
        .iter()
        .map(|x0| {
            // b(x0 - s*y) as a polynomial in y
            let lin = IntPoly::new(vec![x0.clone(), -s.clone()]);
            resultant(a, &b.compose(&lin))
        })
        .collect();
    interpolate(&points, &values)
}

/// Newton interpolation through integer points; the result must be an
/// integer polynomial (asserted).
pub fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> IntPoly {
    let n = xs.len();
    let mut dd: Vec<BigRational> = ys
        .iter()
        .map(|y| BigRational::from_integer(y.clone()))
        .collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = BigRational::from_integer(&xs[i] - &xs[i - level]);
            dd[i] = num / den;
        }
    }
    // Expand Newton form.
    let mut acc: Vec<BigRational> = vec![dd[n - 1].clone()];
    for i in (0..n - 1).rev() {
        // acc = acc * (x - xs[i]) + dd[i]
        let mut next = vec![BigRational::zero(); acc.len() + 1];
        let xi = BigRational::from_integer(xs[i].clone());
        for (k, c) in acc.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * &xi;
        }
        next[0] += &dd[i];
        acc = next;
    }
    IntPoly::new(
        acc.into_iter()
            .map(|c| {
                assert!(c.is_integer(), "interpolant is not integral");
                c.to_integer()
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(
            poly_discriminant(&p(&[-5, 0, 1])).unwrap(),
            BigInt::from(20)
        );
        assert_eq!(poly_discriminant(&p(&[-1, 1, 1])).unwrap(), BigInt::from(5));
        // x^3 + a x + b: -4a^3 - 27b^2 with a = 0, b = -2
        assert_eq!(
            poly_discriminant(&p(&[-2, 0, 0, 1])).unwrap(),
            BigInt::from(-108)
        );
        assert!(poly_discriminant(&p(&[7])).is_err());
    }

    #[test]
    fn cubic_discriminant_formula_agrees() {
        for a in -4i64..=4 {
            for b in -4i64..=4 {
                let f = p(&[b, a, 0, 1]);
                let expect = -4 * a * a * a - 27 * b * b;
                assert_eq!(poly_discriminant(&f).unwrap(), BigInt::from(expect));
            }
        }
    }

    #[test]
    fn norm_of_sqrt2_plus_sqrt3() {
        // Res_y(y^2 - 2, (x - y)^2 - 3) = x^4 - 10x^2 + 1
        let h = norm_resultant(&p(&[-2, 0, 1]), &p(&[-3, 0, 1]), &BigInt::from(1));
        assert_eq!(h, p(&[1, 0, -10, 0, 1]));
    }
}
