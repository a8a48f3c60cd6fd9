//! The radical family `K = Q(2^(1/m), (p/q)^(1/n))` with primes
//! `m < p < q < 2p`, where `δ(K)` is pinned between two multiples of
//! `|Δ_K|^(1/(2d(n-1)))`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::Verdict;
use crate::error::{Error, Result};
use crate::exactalg::IntPoly;
use crate::heights::{height_algebraic, LogHeight, PowerProduct};
use crate::northcott::{best_integer_combination, compositum_degree, Combination};
use crate::numfield::{field_discriminant, DiscStatus, DiscriminantResult, NumberField};
use crate::primes::is_prime_u64;

#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport {
    pub m: u64,
    pub n: u64,
    pub p: u64,
    pub q: u64,
    pub degree: usize,
    /// `[K : Q] = mn`, computed from the compositum.
    pub degree_verified: bool,
    pub height_two_root: LogHeight,
    pub height_ratio_root: LogHeight,
    /// `H((p/q)^(1/n)) = q^(1/n)`
    pub height_identity_holds: bool,
    pub disc_m: DiscriminantResult,
    /// `(pq)^(n-1) | Δ_M`; undecided when `Δ_M` is not certified.
    pub disc_m_divisible: Verdict,
    pub disc_k: DiscriminantResult,
    /// `|Δ_K| = |Δ_F|^n |Δ_M|^m` was used.
    pub disc_k_from_coprime_product: bool,
    pub generator: Combination,
    /// `(2d)^(-1/2) |Δ_K|^(1/(2d(n-1)))`
    pub lower_bound: f64,
    /// `(2d)^2 |Δ_K|^(1/(2d(n-1)))`
    pub upper_bound: f64,
    pub lower_verdict: Verdict,
    pub upper_verdict: Verdict,
}

fn check_preconditions(m: u64, n: u64, p: u64, q: u64) -> Result<()> {
    for x in [p, q] {
        if !is_prime_u64(x) {
            return Err(Error::NotPrime(x.to_string()));
        }
    }
    if m == 0 || m >= p {
        return Err(Error::Precondition(format!(
            "need 1 <= m < p, got m = {m}, p = {p}"
        )));
    }
    if p >= q {
        return Err(Error::Precondition(format!(
            "need p < q, got p = {p}, q = {q}"
        )));
    }
    if q >= 2 * p {
        return Err(Error::Precondition(format!(
            "need q < 2p, got q = {q} >= {}",
            2 * p
        )));
    }
    if n <= 1 {
        return Err(Error::Precondition(format!("need n > 1, got n = {n}")));
    }
    Ok(())
}

fn pow_u(b: u64, e: u64) -> BigInt {
    BigInt::from(b).pow(e as u32)
}

/// Bounds `[lo, hi]` on `|Δ_K|` from an uncertified discriminant.
fn disc_range(r: &DiscriminantResult) -> (BigInt, BigInt) {
    let hi = r.value.abs();
    match &r.status {
        DiscStatus::Exact => (hi.clone(), hi),
        DiscStatus::UpToSquares(ps) => {
            let mut lo = hi.clone();
            for p in ps {
                let sq = p * p;
                if sq.is_one() {
                    continue;
                }
                while (&lo % &sq).is_zero() {
                    lo /= &sq;
                }
            }
            (lo, hi)
        }
    }
}

fn sandwich_side(c: &BigRational, factor: &PowerProduct, disc: &BigInt) -> PowerProduct {
    factor * &PowerProduct::rational(BigRational::from_integer(disc.clone())).pow(c)
}

fn combine(at_lo: Result<Ordering>, at_hi: Result<Ordering>, want_le: bool) -> Verdict {
    let ok = |o: &Ordering| {
        if want_le {
            *o != Ordering::Greater
        } else {
            *o != Ordering::Less
        }
    };
    match (at_lo, at_hi) {
        (Ok(a), Ok(b)) if ok(&a) && ok(&b) => Verdict::Holds,
        (Ok(a), Ok(b)) if !ok(&a) && !ok(&b) => Verdict::Fails,
        _ => Verdict::Undecided,
    }
}

/// Builds `K`, certifies its degree and discriminant, and checks the
/// found generator `γ = aα + bβ` against both sides of the sandwich.
pub fn verify_family(m: u64, n: u64, p: u64, q: u64) -> Result<FamilyReport> {
    check_preconditions(m, n, p, q)?;
    let d = (m * n) as usize;
    let f_poly = if m >= 2 {
        &IntPoly::monomial(BigInt::one(), m as usize) - &IntPoly::constant(2.into())
    } else {
        IntPoly::x()
    };
    let two_poly = &IntPoly::monomial(BigInt::one(), m as usize) - &IntPoly::constant(2.into());
    let ratio_poly = &IntPoly::monomial(BigInt::from(q), n as usize) - &IntPoly::constant(p.into());
    let height_two_root = height_algebraic(&two_poly)?;
    let height_ratio_root = height_algebraic(&ratio_poly)?;
    let q_root = PowerProduct::rational_pow(BigRational::from_integer(q.into()), 1, n as i64);
    let height_identity_holds = height_ratio_root.exact_mahler() == Some(&BigInt::from(q))
        && height_ratio_root.to_power_product().compare(&q_root)? == Ordering::Equal;

    let degree = if m >= 2 {
        compositum_degree(&f_poly, &ratio_poly)?
    } else {
        ratio_poly.degree()
    };
    let degree_verified = degree == d;
    if !degree_verified {
        return Err(Error::Consistency(format!(
            "[K:Q] = {degree}, expected {d}"
        )));
    }

    let field_m = NumberField::new(&ratio_poly)?;
    let disc_m = field_discriminant(&field_m);
    let pq = pow_u(p * q, n - 1);
    let divides = disc_m.value.is_multiple_of(&pq);
    let disc_m_divisible = match (divides, disc_m.is_exact()) {
        (true, _) => Verdict::Holds,
        (false, true) => Verdict::Fails,
        (false, false) => Verdict::Undecided,
    };

    let generator = best_integer_combination(&f_poly, &ratio_poly)?;
    let (disc_k, disc_k_from_coprime_product) = if m >= 2 {
        let disc_f = field_discriminant(&NumberField::new(&two_poly)?);
        if disc_f.is_exact() && disc_m.is_exact() && disc_f.value.gcd(&disc_m.value).is_one() {
            let v = disc_f.value.pow(n as u32) * disc_m.value.pow(m as u32);
            (
                DiscriminantResult {
                    value: v,
                    status: DiscStatus::Exact,
                    index: BigInt::one(),
                },
                true,
            )
        } else {
            (
                field_discriminant(&NumberField::new(&generator.minpoly)?),
                false,
            )
        }
    } else {
        (disc_m.clone(), false)
    };

    let c = BigRational::new(BigInt::one(), BigInt::from(2 * d as u64 * (n - 1)));
    let two_d = BigRational::from_integer(BigInt::from(2 * d));
    let lower_factor =
        PowerProduct::rational(two_d.clone()).pow(&BigRational::new((-1).into(), 2.into()));
    let upper_factor = PowerProduct::rational(two_d).pow(&BigRational::from_integer(2.into()));
    let (dlo, dhi) = disc_range(&disc_k);
    let h = generator.height.to_power_product();
    // the lower side is hardest at the largest discriminant, the upper at the smallest
    let lower_verdict = combine(
        h.compare(&sandwich_side(&c, &lower_factor, &dhi)),
        h.compare(&sandwich_side(&c, &lower_factor, &dlo)),
        false,
    );
    let upper_verdict = combine(
        h.compare(&sandwich_side(&c, &upper_factor, &dlo)),
        h.compare(&sandwich_side(&c, &upper_factor, &dhi)),
        true,
    );
    Ok(FamilyReport {
        m,
        n,
        p,
        q,
        degree: d,
        degree_verified,
        height_two_root,
        height_ratio_root,
        height_identity_holds,
        disc_m,
        disc_m_divisible,
        lower_bound: sandwich_side(&c, &lower_factor, &dhi).to_f64(),
        upper_bound: sandwich_side(&c, &upper_factor, &dhi).to_f64(),
        disc_k,
        disc_k_from_coprime_product,
        generator,
        lower_verdict,
        upper_verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_members() {
        let r = verify_family(1, 2, 5, 7).unwrap();
        assert_eq!(r.disc_k.value.abs(), BigInt::from(140));
        assert!(r.disc_k.is_exact() && r.height_identity_holds);
        assert_eq!(r.disc_m_divisible, Verdict::Holds);
        assert!((r.lower_bound - 0.5 * 140f64.powf(0.25)).abs() < 1e-9);
        assert!((r.upper_bound - 16.0 * 140f64.powf(0.25)).abs() < 1e-9);
        assert_eq!(
            (r.lower_verdict, r.upper_verdict),
            (Verdict::Holds, Verdict::Holds)
        );
        assert!((r.generator.height.value(64).to_f64() - 7f64.sqrt()).abs() < 1e-12);

        let r = verify_family(1, 2, 3, 5).unwrap();
        assert_eq!(r.disc_k.value.abs(), BigInt::from(60));
        assert!(r.height_identity_holds);
    }

    #[test]
    fn preconditions() {
        assert!(matches!(
            verify_family(1, 2, 5, 11),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(verify_family(1, 2, 4, 7), Err(Error::NotPrime(_))));
        assert!(matches!(
            verify_family(5, 2, 5, 7),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            verify_family(1, 1, 5, 7),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn cubic_member() {
        let r = verify_family(1, 3, 5, 7).unwrap();
        assert_eq!(r.degree, 3);
        // Q((5/7)^(1/3)) = Q(175^(1/3)), 175 ≢ ±1 mod 9
        assert_eq!(r.disc_k.value, BigInt::from(-27 * 35 * 35));
        assert_eq!(
            (r.lower_verdict, r.upper_verdict),
            (Verdict::Holds, Verdict::Holds)
        );
    }
}
