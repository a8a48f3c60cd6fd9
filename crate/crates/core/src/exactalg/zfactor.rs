//! Factorization over the rationals: squarefree decomposition, a good prime,
//! Hensel lifting and subset recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::modp::{factor_squarefree_fp, PolyFp, DEFAULT_SPLIT_SEED};
use super::poly::IntPoly;
use crate::error::{Error, Result};
use crate::primes::is_prime_u64;

/// `f = content * prod factor_i^mult_i` with primitive factors of positive
/// leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    #[serde(with = "super::decimal")]
    pub content: BigInt,
    pub factors: Vec<(IntPoly, usize)>,
}

impl Factorization {
    pub fn expand(&self) -> IntPoly {
        self.factors
            .iter()
            .fold(IntPoly::constant(self.content.clone()), |acc, (g, m)| {
                &acc * &g.pow(*m as u32)
            })
    }
}

pub fn factor_over_q(f: &IntPoly) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut content = f.content();
    if f.lead().is_negative() {
        content = -content;
    }
    let pp = f.primitive_part();
    let mut factors = Vec::new();
    let v = pp.x_valuation();
    if v > 0 {
        factors.push((IntPoly::x(), v));
    }
    let rest = pp.shift_down(v);
    for (part, mult) in rest.squarefree_decomposition() {
        for g in factor_squarefree(&part) {
            factors.push((g, mult));
        }
    }
    factors.sort_by(|a, b| a.0.cmp_canonical(&b.0).then(a.1.cmp(&b.1)));
    Ok(Factorization { content, factors })
}

/// True for non-constant polynomials irreducible over the rationals.
pub fn is_irreducible(f: &IntPoly) -> bool {
    if f.degree() == 0 || f.is_zero() {
        return false;
    }
    match factor_over_q(f) {
        Ok(fac) => fac.factors.len() == 1 && fac.factors[0].1 == 1,
        Err(_) => false,
    }
}

/// Irreducible primitive factors of a primitive squarefree polynomial
/// with positive leading coefficient and nonzero constant term.
pub fn factor_squarefree(f: &IntPoly) -> Vec<IntPoly> {
    let f = f.primitive_part();
    let n = f.degree();
    if n <= 1 {
        return vec![f];
    }
    let lc = f.lead();
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SPLIT_SEED);
    let mut best: Option<(u64, Vec<PolyFp>)> = None;
    let mut tried = 0;
    let mut p = 2u64;
    while tried < 8 {
        p += 1;
        if !is_prime_u64(p) || (&lc % p).is_zero() {
            continue;
        }
        let fp = PolyFp::from_int(&f, p);
        if fp.gcd(&fp.derivative()).degree() > 0 {
            continue;
        }
        tried += 1;
        let facs = factor_squarefree_fp(&fp.monic(), &mut rng);
        if facs.len() == 1 {
            return vec![f];
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
    }
    let (p, modular) = best.expect("good prime exists for squarefree input");

    // p^k > 2 |lc| 2^n ||f||_2
    let norm2 = f.coeffs().iter().map(|c| c * c).sum::<BigInt>().sqrt() + 1;
    let bound = BigInt::from(2) * lc.abs() * (BigInt::one() << n) * norm2;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut pk = pb.clone();
    while pk <= bound {
        pk *= &pb;
        k += 1;
    }
    let lc_inv = mod_inverse(&lc, &pk);
    let monic_f = reduce_mod(&f.scale(&lc_inv), &pk);
    let lifted = hensel_tree(&monic_f, &modular, p, k);
    recombine(&f, lifted, &pk)
}

fn reduce_mod(f: &IntPoly, m: &BigInt) -> IntPoly {
    IntPoly::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

fn symmetric_mod(f: &IntPoly, m: &BigInt) -> IntPoly {
    let half = m / 2;
    IntPoly::new(
        f.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

pub fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    assert!(e.gcd.is_one(), "not invertible");
    e.x.mod_floor(m)
}

fn product_fp(p: u64, fs: &[PolyFp]) -> PolyFp {
    fs.iter().fold(PolyFp::one(p), |acc, g| acc.mul(g))
}

/// Lifts `F = prod factors (mod p)` (all monic) to monic factors mod p^k.
fn hensel_tree(big_f: &IntPoly, factors: &[PolyFp], p: u64, k: u32) -> Vec<IntPoly> {
    if factors.len() == 1 {
        return vec![big_f.clone()];
    }
    let mid = factors.len() / 2;
    let g = product_fp(p, &factors[..mid]);
    let h = product_fp(p, &factors[mid..]);
    let (gl, hl) = hensel_lift_pair(big_f, &g, &h, p, k);
    let mut out = hensel_tree(&gl, &factors[..mid], p, k);
    out.extend(hensel_tree(&hl, &factors[mid..], p, k));
    out
}

/// Linear Hensel lifting of `F ≡ g h (mod p)` with `g`, `h` monic coprime.
fn hensel_lift_pair(big_f: &IntPoly, g: &PolyFp, h: &PolyFp, p: u64, k: u32) -> (IntPoly, IntPoly) {
    let (one, _, t) = g.xgcd(h);
    debug_assert!(one.is_one());
    let pb = BigInt::from(p);
    let mut gi = g.to_int();
    let mut hi = h.to_int();
    let mut m = pb.clone();
    for _ in 1..k {
        let diff = big_f - &(&gi * &hi);
        let e = IntPoly::new(
            diff.coeffs()
                .iter()
                .map(|c| {
                    debug_assert!((c % &m).is_zero());
                    c / &m
                })
                .collect(),
        );
        let e = PolyFp::from_int(&e, p);
        let dg = t.mul(&e).rem(g);
        let dh = e.sub(&dg.mul(h)).divrem(g).0;
        gi = &gi + &dg.to_int().scale(&m);
        hi = &hi + &dh.to_int().scale(&m);
        m *= &pb;
    }
    (reduce_mod(&gi, &m), reduce_mod(&hi, &m))
}

fn recombine(f: &IntPoly, mut lifted: Vec<IntPoly>, pk: &BigInt) -> Vec<IntPoly> {
    let mut f = f.clone();
    let mut out = Vec::new();
    let mut s = 1;
    while 2 * s <= lifted.len() {
        let lc = f.lead();
        let mut found = None;
        for subset in Subsets::new(lifted.len(), s) {
            // constant-term filter before the full product
            let c0 = subset.iter().fold(lc.clone(), |acc, &i| {
                (acc * lifted[i].coeff(0)).mod_floor(pk)
            });
            let half = pk / 2;
            let c0 = if c0 > half { c0 - pk } else { c0 };
            if c0.is_zero() || !(&lc * f.coeff(0) % &c0).is_zero() {
                continue;
            }
            let g = subset
                .iter()
                .fold(IntPoly::constant(lc.clone()), |acc, &i| {
                    reduce_mod(&(&acc * &lifted[i]), pk)
                });
            let g = symmetric_mod(&g, pk).primitive_part();
            if let Some(q) = f.div_exact(&g) {
                found = Some((subset, g, q));
                break;
            }
        }
        match found {
            Some((subset, g, q)) => {
                out.push(g);
                f = q.primitive_part();
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
            }
            None => s += 1,
        }
    }
    if f.degree() > 0 {
        out.push(f);
    }
    out
}

/// k-subsets of `0..n` in lexicographic order.
struct Subsets {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Subsets {
    fn new(n: usize, k: usize) -> Self {
        Subsets {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let cur = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(cur)
    }
}
