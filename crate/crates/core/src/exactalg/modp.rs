//! Polynomials over prime fields and their factorization
//! (squarefree, distinct-degree, then seeded Cantor–Zassenhaus splitting).

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::IntPoly;
use crate::error::{Error, Result};
use crate::primes::is_prime_u64;

/// Seed for equal-degree splitting; recorded in reports for reproducibility.
pub const DEFAULT_SPLIT_SEED: u64 = 0x5eed_0f_5a11_9e75;

#[inline]
pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

pub fn invmod(a: u64, p: u64) -> u64 {
    // p prime
    powmod(a, p - 2, p)
}

/// Polynomial over `F_p`, constant term first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolyFp {
    p: u64,
    c: Vec<u64>,
}

impl PolyFp {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        PolyFp { p, c }
    }

    pub fn from_int(f: &IntPoly, p: u64) -> Self {
        let pb = BigInt::from(p);
        PolyFp::new(
            p,
            f.coeffs()
                .iter()
                .map(|a| a.mod_floor(&pb).to_u64().unwrap())
                .collect(),
        )
    }

    pub fn zero(p: u64) -> Self {
        PolyFp { p, c: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        PolyFp::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        PolyFp::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lead(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn monic(&self) -> PolyFp {
        if self.is_zero() {
            return self.clone();
        }
        let inv = invmod(self.lead(), self.p);
        self.scale(inv)
    }

    pub fn scale(&self, k: u64) -> PolyFp {
        PolyFp::new(
            self.p,
            self.c.iter().map(|&a| mulmod(a, k, self.p)).collect(),
        )
    }

    pub fn add(&self, o: &PolyFp) -> PolyFp {
        let n = self.c.len().max(o.c.len());
        PolyFp::new(
            self.p,
            (0..n)
                .map(|i| {
                    let a = self.c.get(i).copied().unwrap_or(0);
                    let b = o.c.get(i).copied().unwrap_or(0);
                    ((a as u128 + b as u128) % self.p as u128) as u64
                })
                .collect(),
        )
    }

    pub fn sub(&self, o: &PolyFp) -> PolyFp {
        let n = self.c.len().max(o.c.len());
        PolyFp::new(
            self.p,
            (0..n)
                .map(|i| {
                    let a = self.c.get(i).copied().unwrap_or(0);
                    let b = o.c.get(i).copied().unwrap_or(0);
                    ((a as u128 + self.p as u128 - b as u128) % self.p as u128) as u64
                })
                .collect(),
        )
    }

    pub fn mul(&self, o: &PolyFp) -> PolyFp {
        if self.is_zero() || o.is_zero() {
            return PolyFp::zero(self.p);
        }
        let p = self.p as u128;
        let mut out = vec![0u128; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u128 * b as u128) % p;
            }
        }
        PolyFp::new(self.p, out.into_iter().map(|v| v as u64).collect())
    }

    pub fn divrem(&self, b: &PolyFp) -> (PolyFp, PolyFp) {
        assert!(!b.is_zero(), "division by zero polynomial");
        if self.degree() < b.degree() || self.is_zero() {
            return (PolyFp::zero(self.p), self.clone());
        }
        let p = self.p;
        let db = b.degree();
        let inv = invmod(b.lead(), p);
        let mut r = self.c.clone();
        let mut q = vec![0u64; r.len() - db];
        for k in (0..q.len()).rev() {
            let t = mulmod(r[k + db], inv, p);
            if t == 0 {
                continue;
            }
            for (i, &bc) in b.c.iter().enumerate() {
                r[i + k] = (r[i + k] + p - mulmod(t, bc, p)) % p;
            }
            q[k] = t;
        }
        r.truncate(db);
        (PolyFp::new(p, q), PolyFp::new(p, r))
    }

    pub fn rem(&self, b: &PolyFp) -> PolyFp {
        self.divrem(b).1
    }

    pub fn gcd(&self, o: &PolyFp) -> PolyFp {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*o = g` monic.
    pub fn xgcd(&self, o: &PolyFp) -> (PolyFp, PolyFp, PolyFp) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (PolyFp::one(p), PolyFp::zero(p));
        let (mut t0, mut t1) = (PolyFp::zero(p), PolyFp::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let inv = invmod(r0.lead(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> PolyFp {
        PolyFp::new(
            self.p,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &a)| mulmod(a, i as u64 % self.p, self.p))
                .collect(),
        )
    }

    /// `self^e mod m`
    pub fn powmod(&self, e: &BigUint, m: &PolyFp) -> PolyFp {
        let mut acc = PolyFp::one(self.p).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(m);
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
        }
        acc
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.c
            .iter()
            .rev()
            .fold(0u64, |acc, &c| (mulmod(acc, x, self.p) + c) % self.p)
    }

    /// Lifts to the symmetric residue system `(-p/2, p/2]`.
    pub fn to_int_symmetric(&self) -> IntPoly {
        let half = self.p / 2;
        IntPoly::new(
            self.c
                .iter()
                .map(|&a| {
                    if a > half {
                        BigInt::from(a) - BigInt::from(self.p)
                    } else {
                        BigInt::from(a)
                    }
                })
                .collect(),
        )
    }

    /// Lifts with coefficients in `[0, p)`.
    pub fn to_int(&self) -> IntPoly {
        IntPoly::new(self.c.iter().map(|&a| BigInt::from(a)).collect())
    }

    /// Inverse of the Frobenius on coefficients: requires `f' = 0`.
    fn pth_root(&self) -> PolyFp {
        let p = self.p as usize;
        PolyFp::new(self.p, self.c.iter().step_by(p).copied().collect())
    }

    fn cmp_key(&self) -> (usize, Vec<u64>) {
        (self.degree(), self.c.iter().rev().copied().collect())
    }
}

impl std::fmt::Display for PolyFp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_int())
    }
}

/// Squarefree factorization of a monic polynomial over `F_p`.
pub fn squarefree_fp(f: &PolyFp) -> Vec<(PolyFp, usize)> {
    let mut out = Vec::new();
    sqf_rec(&f.monic(), 1, &mut out);
    out
}

fn sqf_rec(f: &PolyFp, mult: usize, out: &mut Vec<(PolyFp, usize)>) {
    if f.degree() == 0 {
        return;
    }
    let p = f.modulus();
    let fp = f.derivative();
    if fp.is_zero() {
        sqf_rec(&f.pth_root(), mult * p as usize, out);
        return;
    }
    let mut c = f.gcd(&fp);
    let mut w = f.divrem(&c).0;
    let mut i = 1;
    while w.degree() > 0 {
        let y = w.gcd(&c);
        let fac = w.divrem(&y).0;
        if fac.degree() > 0 {
            out.push((fac.monic(), i * mult));
        }
        w = y;
        c = c.divrem(&w).0;
        i += 1;
    }
    if c.degree() > 0 {
        sqf_rec(&c.pth_root(), mult * p as usize, out);
    }
}

/// Distinct-degree factorization of a monic squarefree polynomial:
/// pairs `(g_d, d)` where `g_d` is the product of all degree-`d` factors.
pub fn distinct_degree(f: &PolyFp) -> Vec<(PolyFp, usize)> {
    let p = f.modulus();
    let pe = BigUint::from(p);
    let mut out = Vec::new();
    let mut rest = f.monic();
    let x = PolyFp::x(p);
    let mut h = x.rem(&rest);
    let mut d = 0;
    while rest.degree() >= 2 * (d + 1) {
        d += 1;
        h = h.powmod(&pe, &rest);
        let g = h.sub(&x).gcd(&rest);
        if g.degree() > 0 {
            rest = rest.divrem(&g).0;
            h = h.rem(&rest);
            out.push((g, d));
        }
    }
    if rest.degree() > 0 {
        let deg = rest.degree();
        out.push((rest, deg));
    }
    out
}

/// Splits a monic squarefree product of degree-`d` irreducibles.
pub fn equal_degree(f: &PolyFp, d: usize, rng: &mut ChaCha8Rng) -> Vec<PolyFp> {
    let n = f.degree();
    if n == d {
        return vec![f.monic()];
    }
    let p = f.modulus();
    loop {
        let a = PolyFp::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.degree() == 0 {
            continue;
        }
        let b = if p == 2 {
            // Trace map a + a^2 + ... + a^(2^(d-1)).
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(f);
                acc = acc.add(&t);
            }
            acc
        } else {
            let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
            a.powmod(&e, f).sub(&PolyFp::one(p))
        };
        let g = b.gcd(f);
        if g.degree() > 0 && g.degree() < n {
            let h = f.divrem(&g).0;
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h.monic(), d, rng));
            return out;
        }
    }
}

/// Factorization of a monic-normalized squarefree polynomial into monic
/// irreducibles, deterministic for a given seed.
pub fn factor_squarefree_fp(f: &PolyFp, rng: &mut ChaCha8Rng) -> Vec<PolyFp> {
    let mut out = Vec::new();
    for (g, d) in distinct_degree(f) {
        out.extend(equal_degree(&g, d, rng));
    }
    out.sort_by_key(|a| a.cmp_key());
    out
}

/// Factorization of `f mod p` into monic irreducible factors with
/// multiplicities, returned together with the leading-coefficient unit.
pub fn factor_mod_p_seeded(f: &IntPoly, p: u64, seed: u64) -> Result<(u64, Vec<(PolyFp, usize)>)> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let fp = PolyFp::from_int(f, p);
    if fp.is_zero() {
        return Err(Error::VanishesModP(p));
    }
    let unit = fp.lead();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<(PolyFp, usize)> = Vec::new();
    for (s, m) in squarefree_fp(&fp) {
        for g in factor_squarefree_fp(&s, &mut rng) {
            out.push((g, m));
        }
    }
    out.sort_by(|a, b| a.0.cmp_key().cmp(&b.0.cmp_key()).then(a.1.cmp(&b.1)));
    Ok((unit, out))
}

/// [`factor_mod_p_seeded`] with the fixed default seed.
pub fn factor_mod_p(f: &IntPoly, p: u64) -> Result<Vec<(PolyFp, usize)>> {
    Ok(factor_mod_p_seeded(f, p, DEFAULT_SPLIT_SEED)?.1)
}

/// Number of distinct roots of `f` in `F_p`, i.e. `deg gcd(x^p - x, f)`.
pub fn count_roots_fp(f: &PolyFp) -> usize {
    let p = f.modulus();
    if f.degree() == 0 {
        return 0;
    }
    let m = f.monic();
    let xp = PolyFp::x(p).powmod(&BigUint::from(p), &m);
    xp.sub(&PolyFp::x(p)).gcd(&m).degree()
}

/// Reduces the integer `a` modulo `p`.
pub fn reduce(a: &BigInt, p: u64) -> u64 {
    a.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

/// True when `f mod p` is squarefree of the same degree.
pub fn is_squarefree_mod(f: &IntPoly, p: u64) -> bool {
    let fp = PolyFp::from_int(f, p);
    if fp.degree() != f.degree() || fp.is_zero() {
        return false;
    }
    fp.gcd(&fp.derivative()).degree() == 0
}

impl PolyFp {
    pub fn is_monic(&self) -> bool {
        self.lead() == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn product(p: u64, fs: &[(PolyFp, usize)]) -> PolyFp {
        fs.iter().fold(PolyFp::one(p), |acc, (g, m)| {
            (0..*m).fold(acc, |a, _| a.mul(g))
        })
    }

    #[test]
    fn spec_examples() {
        let f = factor_mod_p(&ip(&[-2, 0, 1]), 7).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f[0].0.coeffs(), &[3, 1]); // x - 4
        assert_eq!(f[1].0.coeffs(), &[4, 1]); // x - 3
        let f = factor_mod_p(&ip(&[-2, 0, 1]), 5).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].0.degree(), 2);
        let f = factor_mod_p(&ip(&[1, 0, 1]), 2).unwrap();
        assert_eq!(f, vec![(PolyFp::new(2, vec![1, 1]), 2)]);
        assert!(matches!(
            factor_mod_p(&ip(&[1, 1]), 9),
            Err(Error::NotPrime(_))
        ));
        assert!(matches!(
            factor_mod_p(&ip(&[7, 7]), 7),
            Err(Error::VanishesModP(7))
        ));
    }

    #[test]
    fn inseparable_input_in_char_p() {
        // x^6 + 1 over F_3 is (x^2 + 1)^3
        let f = factor_mod_p(&ip(&[1, 0, 0, 0, 0, 0, 1]), 3).unwrap();
        assert_eq!(f, vec![(PolyFp::new(3, vec![1, 0, 1]), 3)]);
    }

    #[test]
    fn x4_plus_1_splits_everywhere() {
        for p in [3u64, 5, 7, 11, 13, 17] {
            let f = factor_mod_p(&ip(&[1, 0, 0, 0, 1]), p).unwrap();
            assert!(f.len() >= 2, "p = {p}");
            let (unit, fs) = factor_mod_p_seeded(&ip(&[1, 0, 0, 0, 1]), p, 1).unwrap();
            assert_eq!(
                product(p, &fs).scale(unit),
                PolyFp::from_int(&ip(&[1, 0, 0, 0, 1]), p)
            );
        }
    }
}
