//! Segmented sieve of Eratosthenes and prime counts in progressions.

use num_integer::Roots;
use rayon::prelude::*;

use super::primality::is_prime_u64;
use super::progression::APSpec;

pub const SEGMENT: u64 = 1 << 20;

/// Values of `x` at or below this are counted by direct testing.
const DIRECT_LIMIT: u64 = 1 << 12;

/// Primes `≤ n` by a plain sieve.
pub fn small_primes(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Primality flags for `[lo, hi)`, given all primes up to `sqrt(hi)`.
fn sieve_segment(lo: u64, hi: u64, base: &[u64]) -> Vec<bool> {
    let mut prime = vec![true; (hi - lo) as usize];
    for &p in base {
        if p * p >= hi {
            break;
        }
        let start = (p * p).max(lo.div_ceil(p) * p);
        let mut m = start;
        while m < hi {
            prime[(m - lo) as usize] = false;
            m += p;
        }
    }
    for n in lo..hi.min(2) {
        prime[(n - lo) as usize] = false;
    }
    prime
}

fn segments(x: u64) -> Vec<(u64, u64)> {
    let end = x + 1;
    (0..end.div_ceil(SEGMENT))
        .map(|k| (k * SEGMENT, ((k + 1) * SEGMENT).min(end)))
        .collect()
}

/// Primes `≤ x` in increasing order.
pub fn primes_up_to(x: u64) -> Vec<u64> {
    if x < DIRECT_LIMIT {
        return small_primes(x);
    }
    let base = small_primes(x.sqrt() + 1);
    segments(x)
        .into_par_iter()
        .map(|(lo, hi)| {
            sieve_segment(lo, hi, &base)
                .iter()
                .enumerate()
                .filter(|(_, &p)| p)
                .map(|(i, _)| lo + i as u64)
                .collect::<Vec<u64>>()
        })
        .collect::<Vec<_>>()
        .concat()
}

/// `π(x; q, a)` by the segmented sieve, reading only the progression.
pub fn pi_qa_sieve(x: u64, spec: &APSpec) -> u64 {
    let (q, a) = (spec.modulus(), spec.residue());
    let base = small_primes(x.sqrt() + 1);
    segments(x)
        .into_par_iter()
        .map(|(lo, hi)| {
            let flags = sieve_segment(lo, hi, &base);
            // first n ≥ lo with n ≡ a mod q
            let mut n = lo + (a + q - lo % q) % q;
            let mut count = 0;
            while n < hi {
                if flags[(n - lo) as usize] {
                    count += 1;
                }
                n += q;
            }
            count
        })
        .sum()
}

/// `π(x; q, a)` by testing every member of the progression.
pub fn pi_qa_direct(x: u64, spec: &APSpec) -> u64 {
    let (q, a) = (spec.modulus(), spec.residue());
    let first = if a == 0 { q } else { a };
    if first > x {
        return 0;
    }
    let terms = (x - first) / q + 1;
    (0..terms)
        .into_par_iter()
        .filter(|k| is_prime_u64(first + k * q))
        .count() as u64
}

/// `π(x; q, a)`: sieve for large `x`, direct testing for small.
pub fn pi_qa(x: u64, spec: &APSpec) -> u64 {
    if x <= DIRECT_LIMIT {
        pi_qa_direct(x, spec)
    } else {
        pi_qa_sieve(x, spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ap(q: u64, a: u64) -> APSpec {
        APSpec::new(q, a).unwrap()
    }

    #[test]
    fn counts() {
        assert_eq!(pi_qa(100, &ap(4, 1)), 11);
        assert_eq!(pi_qa(10, &ap(3, 2)), 2);
        assert_eq!(pi_qa(1, &ap(7, 3)), 0);
        assert_eq!(pi_qa_sieve(100, &ap(4, 1)), 11);
        assert_eq!(pi_qa_sieve(10, &ap(3, 2)), 2);
        assert_eq!(primes_up_to(30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn sieve_crosses_segments() {
        let x = 3 * SEGMENT + 12345;
        let all = primes_up_to(x);
        assert_eq!(all.len() as u64, pi_qa_sieve(x, &ap(1, 0)));
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        for (q, a) in [(4, 3), (7, 2), (30, 1)] {
            assert_eq!(pi_qa_sieve(x, &ap(q, a)), pi_qa_direct(x, &ap(q, a)));
        }
        // pi(10^6) = 78498
        assert_eq!(primes_up_to(1_000_000).len(), 78498);
    }
}
