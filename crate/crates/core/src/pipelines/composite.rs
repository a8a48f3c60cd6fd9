//! Composite fields `K_1 K_2` with coprime discriminants.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::Serialize;

use super::Verdict;
use crate::error::Result;
use crate::exactalg::IntPoly;
use crate::heights::{height_algebraic, LogHeight, PowerProduct};
use crate::numfield::{
    field_discriminant, minpoly_of_combination, DiscriminantResult, NumberField,
};

#[derive(Clone, Debug, Serialize)]
pub struct CompositeReport {
    pub degrees: (usize, usize),
    pub disc1: DiscriminantResult,
    pub disc2: DiscriminantResult,
    /// `gcd(Δ_1, Δ_2) = 1`; when false the remaining checks do not apply.
    pub coprime: bool,
    /// Minimal polynomial of `α_1 + α_2`.
    pub sum_minpoly: Option<IntPoly>,
    /// `deg(α_1 + α_2) = d_1 d_2`
    pub degree_ok: Option<bool>,
    /// `|Δ_1|^(d_2) |Δ_2|^(d_1)`
    #[serde(with = "crate::exactalg::decimal::option")]
    pub expected_disc_abs: Option<BigInt>,
    pub compositum_disc: Option<DiscriminantResult>,
    pub disc_ok: Option<Verdict>,
    pub sum_height: Option<LogHeight>,
    /// `H(α_1 + α_2) ≤ 2 H(α_1) H(α_2)`
    pub height_bound_ok: Option<bool>,
}

pub fn composite_coprime_check(f1: &IntPoly, f2: &IntPoly) -> Result<CompositeReport> {
    let k1 = NumberField::new(f1)?;
    let k2 = NumberField::new(f2)?;
    let (d1, d2) = (k1.degree(), k2.degree());
    let disc1 = field_discriminant(&k1);
    let disc2 = field_discriminant(&k2);
    let coprime = disc1.value.gcd(&disc2.value).is_one();
    let mut report = CompositeReport {
        degrees: (d1, d2),
        disc1,
        disc2,
        coprime,
        sum_minpoly: None,
        degree_ok: None,
        expected_disc_abs: None,
        compositum_disc: None,
        disc_ok: None,
        sum_height: None,
        height_bound_ok: None,
    };
    if !coprime {
        return Ok(report);
    }
    let g = minpoly_of_combination(k1.input_poly(), k2.input_poly(), 1, 1)?;
    let degree_ok = g.degree() == d1 * d2;
    let expected =
        report.disc1.value.abs().pow(d2 as u32) * report.disc2.value.abs().pow(d1 as u32);
    let cd = field_discriminant(&NumberField::new(&g)?);
    let disc_ok = match (
        cd.value.abs() == expected,
        cd.is_exact() && report.disc1.is_exact() && report.disc2.is_exact(),
    ) {
        (true, _) => Verdict::Holds,
        (false, true) => Verdict::Fails,
        (false, false) => Verdict::Undecided,
    };
    let h = height_algebraic(&g)?;
    let h1 = height_algebraic(k1.input_poly())?;
    let h2 = height_algebraic(k2.input_poly())?;
    let bound = &(&PowerProduct::integer(2) * &h1.to_power_product()) * &h2.to_power_product();
    let height_bound_ok = h.to_power_product().compare(&bound)? != Ordering::Greater;
    report.sum_minpoly = Some(g);
    report.degree_ok = Some(degree_ok);
    report.expected_disc_abs = Some(expected);
    report.compositum_disc = Some(cd);
    report.disc_ok = Some(disc_ok);
    report.sum_height = Some(h);
    report.height_bound_ok = Some(height_bound_ok);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn coprime_pairs() {
        let r = composite_coprime_check(&p(&[-2, 0, 1]), &p(&[-1, -1, 1])).unwrap();
        assert!(r.coprime && r.degree_ok == Some(true));
        assert_eq!(r.expected_disc_abs, Some(BigInt::from(1600)));
        assert_eq!(r.disc_ok, Some(Verdict::Holds));
        assert_eq!(r.height_bound_ok, Some(true));
        let r = composite_coprime_check(&p(&[-1, -1, 1]), &p(&[1, 1, 1])).unwrap();
        assert_eq!(r.compositum_disc.unwrap().value.abs(), BigInt::from(225));
    }

    #[test]
    fn shared_prime_is_out_of_hypothesis() {
        let r = composite_coprime_check(&p(&[-2, 0, 1]), &p(&[-6, 0, 1])).unwrap();
        assert!(!r.coprime && r.degree_ok.is_none());
    }
}
