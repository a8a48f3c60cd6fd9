//! Field discriminants certified by Dedekind's criterion and p-maximal orders,
//! and complete splitting of primes.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::field::NumberField;
use super::order::Order;
use crate::error::{Error, Result};
use crate::exactalg::modp::{factor_mod_p, PolyFp};
use crate::exactalg::IntPoly;
use crate::primes::{factor_bigint, is_prime_u64};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiscStatus {
    Exact,
    /// The value is correct up to even powers of the listed (possibly
    /// composite) numbers, which could not be factored.
    UpToSquares(#[serde(with = "crate::exactalg::decimal::vec")] Vec<BigInt>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscriminantResult {
    #[serde(with = "crate::exactalg::decimal")]
    pub value: BigInt,
    pub status: DiscStatus,
    /// Index of `Z[θ]` in the order whose discriminant is `value`.
    #[serde(with = "crate::exactalg::decimal")]
    pub index: BigInt,
}

impl DiscriminantResult {
    pub fn is_exact(&self) -> bool {
        self.status == DiscStatus::Exact
    }
}

/// Dedekind's criterion: is `Z[θ]` maximal at `p`?
pub fn dedekind_p_maximal(k: &NumberField, p: u64) -> Result<bool> {
    let g = k.defining_poly();
    let factors = factor_mod_p(g, p)?;
    let mut lifted = IntPoly::one();
    for (h, e) in &factors {
        lifted = &lifted * &h.to_int().pow(*e as u32);
    }
    let diff = g - &lifted;
    let pb = BigInt::from(p);
    let f = IntPoly::new(diff.coeffs().iter().map(|c| c / &pb).collect());
    debug_assert_eq!(&f.scale(&pb), &diff);
    let fbar = PolyFp::from_int(&f, p);
    Ok(factors
        .iter()
        .filter(|(_, e)| *e >= 2)
        .all(|(h, _)| fbar.gcd(h).degree() == 0 && !fbar.is_zero()))
}

/// `[O_K : Z[θ]]` at `p` as a power of `p`, via Dedekind then Round 2.
pub fn local_index(k: &Arc<NumberField>, p: u64) -> Result<BigInt> {
    if dedekind_p_maximal(k, p)? {
        return Ok(BigInt::one());
    }
    Ok(Order::equation_order(k).p_maximal(p).index())
}

fn compute(k: &Arc<NumberField>) -> DiscriminantResult {
    let d = k.poly_disc().clone();
    let (primes, cofactor) = factor_bigint(&d);
    let mut index = BigInt::one();
    let mut unresolved = Vec::new();
    for (p, e) in primes {
        if e < 2 {
            continue;
        }
        match p.to_u64() {
            Some(q) => index *= local_index(k, q).expect("prime from factorization"),
            None => unresolved.push(p),
        }
    }
    if !cofactor.is_one() {
        unresolved.push(cofactor);
    }
    let value = &d / (&index * &index);
    let status = if unresolved.is_empty() {
        DiscStatus::Exact
    } else {
        DiscStatus::UpToSquares(unresolved)
    };
    DiscriminantResult {
        value,
        status,
        index,
    }
}

/// `Δ_K`, cached on the field.
pub fn field_discriminant(k: &Arc<NumberField>) -> DiscriminantResult {
    k.field_disc_cell().get_or_init(|| compute(k)).clone()
}

/// Whether `p` splits completely in `K`.
pub fn splits_completely(k: &Arc<NumberField>, p: u64) -> Result<bool> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let g = k.defining_poly();
    let n = k.degree();
    let pb = BigInt::from(p);
    let disc = k.poly_disc();
    if !(disc % &pb).is_zero() {
        let gp = PolyFp::from_int(g, p);
        let x = PolyFp::x(p);
        let xp = x.powmod(&BigUint::from(p), &gp);
        return Ok(xp.sub(&x).gcd(&gp).degree() == n);
    }
    let order = Order::equation_order(k).p_maximal(p);
    let disc_k = order.discriminant();
    if disc_k.abs().is_multiple_of(&pb) {
        return Ok(false);
    }
    let frob = order.frobenius_matrix(p);
    Ok(frob
        .iter()
        .enumerate()
        .all(|(i, row)| row.iter().enumerate().all(|(j, &v)| v == u64::from(i == j))))
}
