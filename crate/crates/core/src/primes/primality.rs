//! Miller–Rabin primality and integer factorization by trial division and
//! Pollard–Brent rho.

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

#[inline]
fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic for all `u64` (first twelve prime bases).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality of an arbitrary integer. Returns `(is_prime, proven)`: below
/// 2^64 the answer is proven, above it 64 seeded random witnesses are used.
pub fn is_probable_prime(n: &BigInt) -> (bool, bool) {
    if n.is_negative() {
        return (false, true);
    }
    if let Some(small) = n.to_u64() {
        return (is_prime_u64(small), true);
    }
    let n = n.magnitude();
    for &p in &MR_BASES {
        if (n % p).is_zero() {
            return (false, true);
        }
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e37_79b9_7f4a_7c15);
    let two = BigUint::from(2u32);
    'witness: for _ in 0..64 {
        let a = rng.gen_biguint_range(&two, &nm1);
        let mut x = a.modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == nm1 {
                continue 'witness;
            }
        }
        return (false, true);
    }
    (true, false)
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

fn rho_u64(n: u64, c: u64) -> Option<u64> {
    let f = |x: u64| (mulmod(x, x, n) + c) % n;
    let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
    let mut q = 1u64;
    let mut r = 1u64;
    let mut ys = 0u64;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..(128.min(r - k)) {
                y = f(y);
                q = mulmod(q, x.abs_diff(y), n);
            }
            g = gcd_u64(q, n);
            k += 128;
        }
        r *= 2;
        if r > 1 << 26 {
            return None;
        }
    }
    if g == n {
        loop {
            ys = f(ys);
            g = gcd_u64(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

fn split_u64(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        out.push(n);
        return;
    }
    let r = n.sqrt();
    if r * r == n {
        split_u64(r, out);
        split_u64(r, out);
        return;
    }
    for c in 1.. {
        if let Some(d) = rho_u64(n, c) {
            split_u64(d, out);
            split_u64(n / d, out);
            return;
        }
    }
}

/// Prime factorization of `n ≥ 1` as sorted `(prime, exponent)` pairs.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut primes = Vec::new();
    for p in [2u64, 3, 5, 7, 11, 13] {
        while n.is_multiple_of(p) {
            primes.push(p);
            n /= p;
        }
    }
    let mut p = 17u64;
    while p < 1 << 12 && p * p <= n {
        while n.is_multiple_of(p) {
            primes.push(p);
            n /= p;
        }
        p += 2;
    }
    split_u64(n, &mut primes);
    collect_powers(primes)
}

fn collect_powers<T: Ord + Clone>(mut primes: Vec<T>) -> Vec<(T, u32)> {
    primes.sort();
    let mut out: Vec<(T, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

fn rho_big(n: &BigUint, c: u64, max_iter: u64) -> Option<BigUint> {
    let c = BigUint::from(c);
    let f = |x: &BigUint| (x * x + &c) % n;
    let mut x = BigUint::from(2u32);
    let mut y = x.clone();
    let mut q = BigUint::one();
    let mut r = 1u64;
    let mut ys = y.clone();
    let mut g = BigUint::one();
    let mut spent = 0u64;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..(128.min(r - k)) {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += 128;
        }
        spent += r;
        r *= 2;
        if spent > max_iter {
            return None;
        }
    }
    if &g == n {
        loop {
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    (&g != n).then_some(g)
}

/// Factorization of `|n| ≥ 1`. Returns the prime powers found and an
/// unfactored cofactor (1 when the factorization is complete). Factors of
/// the cofactor are only proven composite; primes above 2^64 are probable.
pub fn factor_bigint(n: &BigInt) -> (Vec<(BigInt, u32)>, BigInt) {
    let mut n = n.magnitude().clone();
    let mut primes: Vec<BigUint> = Vec::new();
    if n.is_zero() {
        return (Vec::new(), BigInt::zero());
    }
    let mut p = 2u64;
    while p < 1 << 16 {
        let pb = BigUint::from(p);
        if &pb * &pb > n {
            break;
        }
        while (&n % p).is_zero() {
            primes.push(pb.clone());
            n /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut stack = vec![n];
    let mut stuck = BigUint::one();
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if let Some(small) = m.to_u64() {
            for (q, e) in factor_u64(small) {
                for _ in 0..e {
                    primes.push(BigUint::from(q));
                }
            }
            continue;
        }
        if is_probable_prime(&BigInt::from(m.clone())).0 {
            primes.push(m);
            continue;
        }
        let r = m.sqrt();
        if &r * &r == m {
            stack.push(r.clone());
            stack.push(r);
            continue;
        }
        let mut found = None;
        for c in 1..8u64 {
            if let Some(d) = rho_big(&m, c, 1 << 22) {
                found = Some(d);
                break;
            }
        }
        match found {
            Some(d) => {
                stack.push(&m / &d);
                stack.push(d);
            }
            None => stuck *= m,
        }
    }
    let pairs = collect_powers(primes)
        .into_iter()
        .map(|(p, e)| (BigInt::from(p), e))
        .collect();
    (pairs, BigInt::from(stuck))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_prime(n: u64) -> bool {
        n >= 2
            && (2..)
                .take_while(|d| d * d <= n)
                .all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn agrees_with_trial_division() {
        for n in 0..5000u64 {
            assert_eq!(is_prime_u64(n), naive_prime(n), "{n}");
        }
        assert!(is_prime_u64(18_446_744_073_709_551_557));
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to 2,3,5,7
    }

    #[test]
    fn factors_multiply_back() {
        for n in [1u64, 2, 360, 999_983 * 1_000_003, 1 << 40, 600_851_475_143] {
            let f = factor_u64(n);
            let prod: u64 = f.iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(prod, n);
            assert!(f.iter().all(|&(p, _)| is_prime_u64(p)));
        }
    }

    #[test]
    fn big_factorization() {
        let p = BigInt::from(1_000_000_007u64);
        let q = BigInt::from(998_244_353u64);
        let n = &p * &p * &q * BigInt::from(-12);
        let (f, rest) = factor_bigint(&n);
        assert!(rest.is_one());
        assert_eq!(
            f,
            vec![
                (BigInt::from(2), 2),
                (BigInt::from(3), 1),
                (q.clone(), 1),
                (p.clone(), 2)
            ]
        );
        let big_prime = BigInt::from(2).pow(89) - 1;
        assert_eq!(is_probable_prime(&big_prime), (true, false));
    }
}
