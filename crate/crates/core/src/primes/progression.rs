//! Arithmetic progressions: `ψ(x; q, a)`, the `π`–`ψ` sandwich, least primes
//! and interval searches.

use std::time::Instant;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::primality::{is_prime_u64, is_probable_prime};
use super::sieve::{pi_qa, primes_up_to};
use crate::error::{Error, Result};
use crate::exactalg::real::{ln_int, RealEnclosure};

/// Residue class `a mod q` with `gcd(a, q) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "(u64, u64)", into = "(u64, u64)")]
pub struct APSpec {
    q: u64,
    a: u64,
}

impl APSpec {
    pub fn new(q: u64, a: u64) -> Result<APSpec> {
        if q == 0 {
            return Err(Error::InvalidArgument("modulus must be positive".into()));
        }
        if a.gcd(&q) != 1 {
            return Err(Error::NotCoprime {
                gen: a.to_string(),
                modulus: q.to_string(),
            });
        }
        Ok(APSpec { q, a: a % q })
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    /// The residue, reduced into `[0, q)`.
    pub fn residue(&self) -> u64 {
        self.a
    }

    pub fn contains(&self, n: u64) -> bool {
        n % self.q == self.a
    }

    /// All residues coprime to `q`.
    pub fn all(q: u64) -> Vec<APSpec> {
        (0..q)
            .filter(|a| a.gcd(&q) == 1)
            .map(|a| APSpec { q, a })
            .collect()
    }
}

impl TryFrom<(u64, u64)> for APSpec {
    type Error = Error;
    fn try_from((q, a): (u64, u64)) -> Result<APSpec> {
        APSpec::new(q, a)
    }
}

impl From<APSpec> for (u64, u64) {
    fn from(s: APSpec) -> (u64, u64) {
        (s.q, s.a)
    }
}

/// Product tree.
fn product(xs: &[u64]) -> BigInt {
    match xs.len() {
        0 => BigInt::one(),
        1 => BigInt::from(xs[0]),
        n if n <= 16 => xs.iter().fold(BigInt::one(), |acc, &p| acc * p),
        n => {
            let (l, r) = xs.split_at(n / 2);
            let (a, b) = rayon::join(|| product(l), || product(r));
            a * b
        }
    }
}

/// The prime `p` when `n = p^k`, else `None`.
fn prime_power_base(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    for k in (1..=63 - n.leading_zeros()).rev() {
        let r = n.nth_root(k);
        if r >= 2 && r.checked_pow(k) == Some(n) && is_prime_u64(r) {
            return Some(r);
        }
    }
    None
}

/// `e^ψ(x; q, a)` as the multiset of primes `p` over all `p^k ≤ x` in the
/// progression, sorted.
fn psi_factors_direct(x: u64, spec: &APSpec) -> Vec<u64> {
    let (q, a) = (spec.modulus(), spec.residue());
    let first = if a == 0 { q } else { a };
    if first > x {
        return Vec::new();
    }
    let terms = (x - first) / q + 1;
    let mut out: Vec<u64> = (0..terms)
        .into_par_iter()
        .filter_map(|k| prime_power_base(first + k * q))
        .collect();
    out.sort_unstable();
    out
}

/// The same multiset from `Σ_{p ≤ x} Σ_{k ≤ log x / log p} [p^k ≡ a] log p`.
fn psi_factors_prime_powers(x: u64, spec: &APSpec) -> Vec<u64> {
    let mut out = Vec::new();
    for p in primes_up_to(x) {
        let mut pk = p;
        loop {
            if spec.contains(pk) {
                out.push(p);
            }
            match pk.checked_mul(p) {
                Some(next) if next <= x => pk = next,
                _ => break,
            }
        }
    }
    out.sort_unstable();
    out
}

/// `ψ(x; q, a) = log N` with `N` exact.
#[derive(Clone, Debug, Serialize)]
pub struct Psi {
    #[serde(skip)]
    pub exp_psi: BigInt,
    pub value: RealEnclosure,
}

/// `ψ(x; q, a) = Σ_{n ≤ x, n ≡ a} Λ(n)`, from the von Mangoldt sum and from
/// the prime-power form; fails if the two disagree.
pub fn psi_qa(x: u64, spec: &APSpec, bits: u32) -> Result<Psi> {
    let (direct, powers) = rayon::join(
        || psi_factors_direct(x, spec),
        || psi_factors_prime_powers(x, spec),
    );
    if direct != powers {
        return Err(Error::Consistency(format!(
            "psi({x}; {}, {}) differs between the two computations",
            spec.modulus(),
            spec.residue()
        )));
    }
    let n = product(&direct);
    let value = ln_int(&n, bits);
    Ok(Psi { exp_psi: n, value })
}

#[derive(Clone, Debug, Serialize)]
pub struct SandwichReport {
    pub x: u64,
    pub q: u64,
    pub a: u64,
    pub pi_x: u64,
    pub pi_sqrt_x: u64,
    pub psi: RealEnclosure,
    /// `½ log x (π(x) − π(√x))`
    pub lower: RealEnclosure,
    /// `log x (π(x) + π(√x))`
    pub upper: RealEnclosure,
    pub lower_holds: bool,
    pub upper_holds: bool,
    pub passes: bool,
}

/// Evaluates `½ log x (π(x) − π(√x)) ≤ ψ(x) ≤ log x (π(x) + π(√x))`. Both
/// sides are decided exactly as `x^M ≤ N^2` and `N ≤ x^K` for `N = e^ψ`.
pub fn check_pi_psi_sandwich(x: u64, spec: &APSpec) -> Result<SandwichReport> {
    if x < 2 {
        return Err(Error::InvalidArgument("sandwich needs x >= 2".into()));
    }
    let bits = 64;
    let psi = psi_qa(x, spec, bits)?;
    let pi_x = pi_qa(x, spec);
    let pi_sqrt_x = pi_qa(x.sqrt(), spec);
    let m = pi_x - pi_sqrt_x;
    let k = pi_x + pi_sqrt_x;
    let xb = BigInt::from(x);
    let pow = |e: u64| -> Result<BigInt> {
        let e = e
            .to_u32()
            .ok_or_else(|| Error::InvalidArgument("exponent too large".into()))?;
        Ok(xb.pow(e))
    };
    let lower_holds = pow(m)? <= &psi.exp_psi * &psi.exp_psi;
    let upper_holds = psi.exp_psi <= pow(k)?;
    let log_x = ln_int(&xb, bits);
    let lower = (&log_x * &RealEnclosure::from_int(m as i64)).div_int(2);
    let upper = &log_x * &RealEnclosure::from_int(k as i64);
    Ok(SandwichReport {
        x,
        q: spec.modulus(),
        a: spec.residue(),
        pi_x,
        pi_sqrt_x,
        psi: psi.value,
        lower,
        upper,
        lower_holds,
        upper_holds,
        passes: lower_holds && upper_holds,
    })
}

/// A prime found by search; `proven` is false beyond `2^64`, where
/// primality is probabilistic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FoundPrime {
    #[serde(with = "crate::exactalg::decimal")]
    pub prime: BigInt,
    pub proven: bool,
}

/// Smallest prime `p > x` with `p ≡ a mod q`.
pub fn least_prime_in_ap_above(spec: &APSpec, x: &BigInt) -> FoundPrime {
    let q = BigInt::from(spec.modulus());
    let a = BigInt::from(spec.residue());
    let start = if x < &BigInt::one() {
        BigInt::one()
    } else {
        x + 1
    };
    let mut n = &start + (&a - &start).mod_floor(&q);
    loop {
        if let Some(small) = n.to_u64() {
            if is_prime_u64(small) {
                return FoundPrime {
                    prime: n,
                    proven: true,
                };
            }
        } else {
            let (prime, proven) = is_probable_prime(&n);
            if prime {
                return FoundPrime { prime: n, proven };
            }
        }
        n += &q;
    }
}

/// Least prime `p` with `x < p ≤ y` and `p mod q` in `residues`. Real
/// endpoints are passed as their floors.
pub fn prime_in_interval_residues(x: u64, y: u64, q: u64, residues: &[u64]) -> Option<u64> {
    ((x + 1)..=y).find(|&n| residues.contains(&(n % q)) && is_prime_u64(n))
}

/// Least prime `p ≡ a mod q` with `x < p ≤ y`.
pub fn prime_in_interval_ap(x: u64, y: u64, spec: &APSpec) -> Result<Option<u64>> {
    if x < 2 || x >= y {
        return Err(Error::InvalidArgument(format!(
            "interval ({x}, {y}] needs 2 <= x < y"
        )));
    }
    Ok(prime_in_interval_residues(
        x,
        y,
        spec.modulus(),
        &[spec.residue()],
    ))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanRow {
    pub q: u64,
    pub least_prime: u64,
    /// `log P(q, 1) / log q`
    pub ratio: f64,
    pub probable: bool,
    pub millis: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanResult {
    pub rows: Vec<ScanRow>,
    pub max_ratio: f64,
    pub argmax_q: u64,
}

impl ScanResult {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("q,least_prime,ratio,probable_flag,millis\n");
        for r in &self.rows {
            s.push_str(&format!(
                "{},{},{:.6},{},{}\n",
                r.q, r.least_prime, r.ratio, r.probable, r.millis
            ));
        }
        s
    }
}

/// `P(q, 1)` and `log P / log q` for `3 ≤ q ≤ q_max`.
pub fn linnik_exponent_scan(q_max: u64) -> Result<ScanResult> {
    if q_max < 3 {
        return Err(Error::InvalidArgument("q_max must be at least 3".into()));
    }
    let rows: Vec<ScanRow> = (3..=q_max)
        .into_par_iter()
        .map(|q| {
            let t = Instant::now();
            let spec = APSpec { q, a: 1 };
            let found = least_prime_in_ap_above(&spec, &BigInt::from(1));
            let p = found.prime.to_u64().expect("least prime fits in 64 bits");
            let ratio = (ln_int(&found.prime, 64).mid() / ln_int(&BigInt::from(q), 64).mid())
                .to_f64()
                .unwrap_or(f64::NAN);
            ScanRow {
                q,
                least_prime: p,
                ratio,
                probable: !found.proven,
                millis: t.elapsed().as_millis(),
            }
        })
        .collect();
    let (argmax_q, max_ratio) =
        rows.iter()
            .map(|r| (r.q, r.ratio))
            .fold(
                (0, f64::MIN),
                |best, cur| if cur.1 > best.1 { cur } else { best },
            );
    Ok(ScanResult {
        rows,
        max_ratio,
        argmax_q,
    })
}
