//! Certified complex root enclosures.
//!
//! Roots are approximated by Aberth iteration in fixed-point Gaussian-integer
//! arithmetic and certified exactly with Weierstrass inclusion discs
//! `r_i = n |f(z_i)| / (|a_n| prod_{j≠i} |z_i - z_j|)`: when the discs are
//! pairwise disjoint each contains exactly one root.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::poly::{require_degree, IntPoly};
use super::real::RealEnclosure;
use crate::error::{Error, Result};

/// Default target box width `2^-80`.
pub const DEFAULT_TARGET_BITS: u32 = 80;
const MAX_BITS: u32 = 1 << 16;

/// A certified box around one complex root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexEnclosure {
    pub re: RealEnclosure,
    pub im: RealEnclosure,
    /// Working precision in bits used for the certificate.
    pub precision: u32,
    /// True when the root is certified real.
    pub real: bool,
}

impl ComplexEnclosure {
    pub fn width(&self) -> BigRational {
        self.re.width().max(self.im.width())
    }

    /// Enclosure of `|z|` over the box.
    pub fn abs(&self, bits: u32) -> RealEnclosure {
        let (xl, xh) = abs_range(&self.re);
        let (yl, yh) = abs_range(&self.im);
        let lo2 = &xl * &xl + &yl * &yl;
        let hi2 = &xh * &xh + &yh * &yh;
        let lo = RealEnclosure::exact(lo2).sqrt(bits);
        let hi = RealEnclosure::exact(hi2).sqrt(bits);
        RealEnclosure::new(lo.lo().clone(), hi.hi().clone())
    }

    /// `Some(true)` if the box lies strictly outside the unit circle,
    /// `Some(false)` strictly inside, `None` if it touches the circle.
    pub fn outside_unit_circle(&self) -> Option<bool> {
        let (xl, xh) = abs_range(&self.re);
        let (yl, yh) = abs_range(&self.im);
        let one = BigRational::one();
        if &xl * &xl + &yl * &yl > one {
            Some(true)
        } else if &xh * &xh + &yh * &yh < one {
            Some(false)
        } else {
            None
        }
    }

    pub fn contains(&self, re: &BigRational, im: &BigRational) -> bool {
        self.re.contains(re) && self.im.contains(im)
    }

    pub fn midpoint_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

/// Range of `|x|` for `x` in the interval.
fn abs_range(e: &RealEnclosure) -> (BigRational, BigRational) {
    let (lo, hi) = (e.lo(), e.hi());
    if !lo.is_negative() {
        (lo.clone(), hi.clone())
    } else if !hi.is_positive() {
        (-hi, -lo)
    } else {
        (BigRational::zero(), (-lo).max(hi.clone()))
    }
}

/// Gaussian integer interpreted as `(re + i im) / 2^W`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Cx {
    re: BigInt,
    im: BigInt,
}

impl Cx {
    fn zero() -> Cx {
        Cx {
            re: BigInt::zero(),
            im: BigInt::zero(),
        }
    }

    fn add(&self, o: &Cx) -> Cx {
        Cx {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    fn sub(&self, o: &Cx) -> Cx {
        Cx {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    /// Exact Gaussian product (no rescaling).
    fn mul_exact(&self, o: &Cx) -> Cx {
        Cx {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn mul(&self, o: &Cx, w: u32) -> Cx {
        let p = self.mul_exact(o);
        Cx {
            re: p.re >> w,
            im: p.im >> w,
        }
    }

    fn norm2(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    fn div(&self, o: &Cx, w: u32) -> Option<Cx> {
        let den = o.norm2();
        if den.is_zero() {
            return None;
        }
        let re = &self.re * &o.re + &self.im * &o.im;
        let im = &self.im * &o.re - &self.re * &o.im;
        Some(Cx {
            re: (re << w).div_floor(&den),
            im: (im << w).div_floor(&den),
        })
    }

    fn max_abs_component(&self) -> BigInt {
        self.re.abs().max(self.im.abs())
    }

    fn conj(&self) -> Cx {
        Cx {
            re: self.re.clone(),
            im: -&self.im,
        }
    }
}

fn eval_fx(coeffs: &[BigInt], z: &Cx, w: u32) -> (Cx, Cx) {
    let n = coeffs.len() - 1;
    let mut v = Cx {
        re: &coeffs[n] << w,
        im: BigInt::zero(),
    };
    let mut d = Cx::zero();
    for k in (0..n).rev() {
        d = d.mul(z, w).add(&v);
        v = v.mul(z, w).add(&Cx {
            re: &coeffs[k] << w,
            im: BigInt::zero(),
        });
    }
    (v, d)
}

fn initial_points(f: &IntPoly, w: u32) -> Vec<Cx> {
    let n = f.degree();
    let an = f.lead().to_f64().unwrap_or(1.0).abs();
    let mut radius: f64 = 0.0;
    for k in 0..n {
        let ak = f.coeff(k).to_f64().unwrap_or(f64::MAX).abs();
        if ak > 0.0 {
            radius = radius.max((ak / an).powf(1.0 / (n - k) as f64));
        }
    }
    let radius = if radius.is_finite() && radius > 0.0 {
        radius
    } else {
        1.0
    };
    (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            let (re, im) = (radius * t.cos(), radius * t.sin());
            let to = |x: f64| -> BigInt {
                BigInt::from_f64(x * 2f64.powi(40)).unwrap_or_default() << (w - 40)
            };
            Cx {
                re: to(re),
                im: to(im),
            }
        })
        .collect()
}

/// Gauss–Seidel Aberth sweeps; returns true when all corrections are tiny.
fn aberth(coeffs: &[BigInt], zs: &mut [Cx], w: u32, max_iter: usize) -> bool {
    let n = zs.len();
    let one = Cx {
        re: BigInt::one() << w,
        im: BigInt::zero(),
    };
    let tiny = BigInt::from(1u32 << 6);
    for _ in 0..max_iter {
        let mut converged = true;
        for i in 0..n {
            let (v, d) = eval_fx(coeffs, &zs[i], w);
            if v.re.is_zero() && v.im.is_zero() {
                continue;
            }
            let Some(ratio) = v.div(&d, w) else {
                zs[i].re += BigInt::one() << (w / 2);
                converged = false;
                continue;
            };
            let mut s = Cx::zero();
            for j in 0..n {
                if j != i {
                    match one.div(&zs[i].sub(&zs[j]), w) {
                        Some(q) => s = s.add(&q),
                        None => {
                            zs[i].im += BigInt::one() << (w / 2);
                        }
                    }
                }
            }
            let denom = one.sub(&ratio.mul(&s, w));
            let step = ratio.div(&denom, w).unwrap_or(ratio);
            if step.max_abs_component() > tiny {
                converged = false;
            }
            zs[i] = zs[i].sub(&step);
        }
        if converged {
            return true;
        }
    }
    false
}

/// Makes centres exactly conjugate-symmetric; near-real centres move onto
/// the real axis. Returns the real flags, or `None` if pairing fails.
fn symmetrize(zs: &mut [Cx], w: u32) -> Option<Vec<bool>> {
    let n = zs.len();
    let tol = BigInt::one() << (w / 2);
    let mut real = vec![false; n];
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for (i, z) in zs.iter_mut().enumerate() {
        let scale = z.re.abs() + (BigInt::one() << w);
        if (&z.im.abs() << w) <= &tol * &scale {
            z.im = BigInt::zero();
            real[i] = true;
        } else if z.im.is_positive() {
            pos.push(i);
        } else {
            neg.push(i);
        }
    }
    if pos.len() != neg.len() {
        return None;
    }
    let mut used = vec![false; neg.len()];
    for &i in &pos {
        let target = zs[i].conj();
        let (k, _) = neg
            .iter()
            .enumerate()
            .filter(|(k, _)| !used[*k])
            .map(|(k, &j)| (k, zs[j].sub(&target).norm2()))
            .min_by(|a, b| a.1.cmp(&b.1))?;
        used[k] = true;
        zs[neg[k]] = target;
    }
    Some(real)
}

fn ceil_sqrt(x: &BigInt) -> BigInt {
    let r = x.sqrt();
    if &r * &r < *x {
        r + 1
    } else {
        r
    }
}

/// Exact disc radii (upper bounds as dyadics with `w + 8` bits), or `None`
/// when two centres coincide.
fn inclusion_radii(f: &IntPoly, zs: &[Cx], w: u32) -> Option<Vec<BigRational>> {
    let n = zs.len();
    let an = f.lead();
    let rb = w + 8;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut h = Cx {
            re: an.clone(),
            im: BigInt::zero(),
        };
        for j in 1..=n {
            h = h.mul_exact(&zs[i]);
            h.re += f.coeff(n - j) << (w as usize * j);
        }
        let mut prod = BigInt::one();
        for j in 0..n {
            if j != i {
                let d = zs[i].sub(&zs[j]).norm2();
                if d.is_zero() {
                    return None;
                }
                prod *= d;
            }
        }
        // r^2 = n^2 |H|^2 / (2^(2W) a_n^2 prod |D|^2)
        let num = BigInt::from(n * n) * h.norm2();
        let den = (&an * &an * prod) << (2 * w as usize);
        let r2 = BigRational::new(num, den);
        let scaled = (r2.numer() << (2 * rb as usize)).div_ceil(r2.denom());
        out.push(BigRational::new(ceil_sqrt(&scaled), BigInt::one() << rb));
    }
    Some(out)
}

fn discs_disjoint(zs: &[Cx], radii: &[BigRational], w: u32) -> bool {
    let scale = BigRational::from_integer(BigInt::one() << (2 * w as usize));
    for i in 0..zs.len() {
        for j in i + 1..zs.len() {
            let d2 = BigRational::from_integer(zs[i].sub(&zs[j]).norm2()) / &scale;
            let s = &radii[i] + &radii[j];
            if &s * &s >= d2 {
                return false;
            }
        }
    }
    true
}

/// Certified enclosures of all complex roots of a squarefree polynomial,
/// each box of width at most `2^-target_bits`, sorted by real then
/// imaginary part.
pub fn complex_roots(f: &IntPoly, target_bits: u32) -> Result<Vec<ComplexEnclosure>> {
    require_degree(f, 1)?;
    if !f.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let n = f.degree();
    if n == 1 {
        let r = BigRational::new(-f.coeff(0), f.coeff(1));
        return Ok(vec![ComplexEnclosure {
            re: RealEnclosure::exact(r),
            im: RealEnclosure::zero(),
            precision: 0,
            real: true,
        }]);
    }
    let coeffs = f.coeffs().to_vec();
    let target = BigRational::new(BigInt::one(), BigInt::one() << target_bits);
    let mut w: u32 = 64.max(target_bits + 16);
    let mut zs = initial_points(f, w);
    let mut first = true;
    loop {
        let iters = if first { 200 + 20 * n } else { 40 + 2 * n };
        first = false;
        aberth(&coeffs, &mut zs, w, iters);
        let mut centres = zs.clone();
        if let Some(real) = symmetrize(&mut centres, w) {
            if let Some(radii) = inclusion_radii(f, &centres, w) {
                let narrow = radii.iter().all(|r| r + r <= target);
                if narrow && discs_disjoint(&centres, &radii, w) {
                    return Ok(assemble(&centres, &radii, &real, w));
                }
            }
        }
        if w >= MAX_BITS {
            return Err(Error::PrecisionExhausted(w));
        }
        for z in zs.iter_mut() {
            z.re <<= w as usize;
            z.im <<= w as usize;
        }
        w *= 2;
    }
}

fn assemble(zs: &[Cx], radii: &[BigRational], real: &[bool], w: u32) -> Vec<ComplexEnclosure> {
    let denom = BigInt::one() << w;
    let mut out: Vec<(BigInt, BigInt, ComplexEnclosure)> = zs
        .iter()
        .zip(radii)
        .zip(real)
        .map(|((z, r), &is_real)| {
            let cx = BigRational::new(z.re.clone(), denom.clone());
            let cy = BigRational::new(z.im.clone(), denom.clone());
            let re = RealEnclosure::new(&cx - r, &cx + r);
            let im = if is_real {
                RealEnclosure::zero()
            } else {
                RealEnclosure::new(&cy - r, &cy + r)
            };
            let key_re = grid_key(&z.re, w);
            let key_im = grid_key(&z.im, w);
            (
                key_re,
                key_im,
                ComplexEnclosure {
                    re,
                    im,
                    precision: w,
                    real: is_real,
                },
            )
        })
        .collect();
    out.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
    out.into_iter().map(|t| t.2).collect()
}

/// `floor(x / 2^W * 2^64)`
fn grid_key(x: &BigInt, w: u32) -> BigInt {
    if w >= 64 {
        x >> (w - 64)
    } else {
        x << (64 - w)
    }
}

/// Convenience wrapper with the default target width.
pub fn complex_roots_default(f: &IntPoly) -> Result<Vec<ComplexEnclosure>> {
    complex_roots(f, DEFAULT_TARGET_BITS)
}

/// Number of certified real roots.
pub fn real_root_count(roots: &[ComplexEnclosure]) -> usize {
    roots.iter().filter(|r| r.real).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn spec_examples() {
        let r = complex_roots_default(&p(&[1, 0, 1])).unwrap();
        assert_eq!(r.len(), 2);
        assert!(!r[0].real && !r[1].real);
        assert!(r[0].im.hi() < &BigRational::zero() && r[1].im.lo() > &BigRational::zero());

        let r = complex_roots_default(&p(&[-1, -1, 1])).unwrap();
        assert!(r.iter().all(|z| z.real));
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((r[1].re.to_f64() - phi).abs() < 1e-15);
        assert!((r[0].re.to_f64() + 1.0 / phi).abs() < 1e-15);

        let r = complex_roots_default(&p(&[-2, 0, 0, 1])).unwrap();
        assert_eq!(real_root_count(&r), 1);
        let real = r.iter().find(|z| z.real).unwrap();
        assert!((real.re.to_f64() - 2f64.cbrt()).abs() < 1e-15);
        assert!(r
            .iter()
            .all(|z| z.width() <= BigRational::new(1.into(), BigInt::one() << 80)));
    }

    #[test]
    fn rejects_repeated_roots() {
        assert_eq!(
            complex_roots_default(&p(&[1, 2, 1])),
            Err(Error::NotSquarefree)
        );
    }

    #[test]
    fn roots_of_unity_and_close_roots() {
        let mut c = vec![0i64; 13];
        c[0] = -1;
        c[12] = 1;
        let r = complex_roots_default(&p(&c)).unwrap();
        assert_eq!(r.len(), 12);
        assert_eq!(real_root_count(&r), 2);
        for z in &r {
            assert!(z.outside_unit_circle().is_none());
        }
        // (x - 1/1000)(x - 2/1000)(x^2 + 1) scaled
        let f = &(&p(&[-1, 1000]) * &p(&[-2, 1000])) * &p(&[1, 0, 1]);
        let r = complex_roots(&f, 100).unwrap();
        for k in [1, 2] {
            let x = BigRational::new(BigInt::from(k), BigInt::from(1000));
            assert!(r.iter().any(|z| z.real && z.re.contains(&x)));
        }
        assert_eq!(real_root_count(&r), 2);
    }

    #[test]
    fn wilkinson_like() {
        let mut f = p(&[1]);
        for k in 1..=12 {
            f = &f * &p(&[-k, 1]);
        }
        let r = complex_roots_default(&f).unwrap();
        for (k, z) in r.iter().enumerate() {
            assert!(z.real);
            assert!(z
                .re
                .contains(&BigRational::from_integer(BigInt::from(k + 1))));
        }
    }
}
