//! Mahler measures `M(f) = |a_d| prod max(1, |ρ_i|)` with exact values in the
//! cases decidable from root positions and cyclotomic factors.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::poly::IntPoly;
use super::real::RealEnclosure;
use super::roots::complex_roots;
use crate::error::{Error, Result};
use crate::primes::euler_phi;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MahlerMeasure {
    pub value: RealEnclosure,
    pub log: RealEnclosure,
    /// The exact (integer) value when it was decided symbolically.
    #[serde(with = "super::decimal::option")]
    pub exact: Option<BigInt>,
}

impl MahlerMeasure {
    pub(crate) fn from_exact(m: BigInt, bits: u32) -> Self {
        MahlerMeasure {
            value: RealEnclosure::from_bigint(&m),
            log: RealEnclosure::from_bigint(&m).ln(bits + 8),
            exact: Some(m),
        }
    }
}

/// The `k`-th cyclotomic polynomial.
pub fn cyclotomic(k: usize) -> IntPoly {
    assert!(k >= 1);
    let mut f = IntPoly::monomial(BigInt::one(), k);
    f = &f - &IntPoly::one();
    for d in 1..k {
        if k.is_multiple_of(d) {
            f = f.div_exact(&cyclotomic(d)).expect("cyclotomic divisor");
        }
    }
    f
}

/// Removes all cyclotomic factors from a squarefree polynomial; returns the
/// cofactor and whether anything was removed.
pub fn strip_cyclotomic(f: &IntPoly) -> (IntPoly, bool) {
    let mut g = f.clone();
    let mut removed = false;
    let n = f.degree();
    // φ(k) ≥ sqrt(k/2) bounds the search
    let kmax = 2 * n * n + 2;
    for k in 1..=kmax {
        if g.degree() == 0 {
            break;
        }
        if euler_phi(k as u64) as usize > g.degree() {
            continue;
        }
        if let Some(q) = g.div_exact(&cyclotomic(k)) {
            g = q;
            removed = true;
        }
    }
    (g, removed)
}

/// True when `f` is, up to sign and powers of `x`, a product of cyclotomic
/// polynomials.
pub fn is_kronecker(f: &IntPoly) -> bool {
    if f.is_zero() || !f.content().is_one() {
        return false;
    }
    let g = f.primitive_part().shift_down(f.x_valuation());
    g.squarefree_decomposition()
        .iter()
        .all(|(s, _)| strip_cyclotomic(s).0.degree() == 0)
}

fn squarefree_measure(s: &IntPoly, bits: u32) -> Result<MahlerMeasure> {
    let s = s.primitive_part();
    if s.degree() == 0 {
        return Ok(MahlerMeasure::from_exact(s.lead().abs(), bits));
    }
    let n = s.degree();
    let mut target = bits + 8 + (usize::BITS - n.leading_zeros());
    let roots = complex_roots(&s, target)?;
    let positions: Vec<Option<bool>> = roots.iter().map(|r| r.outside_unit_circle()).collect();
    let mut s = s;
    let mut roots = roots;
    if positions.iter().any(|p| p.is_none()) {
        let (rest, removed) = strip_cyclotomic(&s);
        if removed {
            if rest.degree() == 0 {
                return Ok(MahlerMeasure::from_exact(rest.lead().abs(), bits));
            }
            s = rest;
            roots = complex_roots(&s, target)?;
        }
    }
    let positions: Vec<Option<bool>> = roots.iter().map(|r| r.outside_unit_circle()).collect();
    if positions.iter().all(|p| *p == Some(true)) {
        return Ok(MahlerMeasure::from_exact(s.coeff(0).abs(), bits));
    }
    if positions.iter().all(|p| *p == Some(false)) {
        return Ok(MahlerMeasure::from_exact(s.lead().abs(), bits));
    }
    let goal = BigRational::new(BigInt::one(), BigInt::one() << bits);
    loop {
        let one = RealEnclosure::from_int(1);
        let mut value = RealEnclosure::from_bigint(&s.lead().abs());
        for r in &roots {
            let a = r.abs(target + 4).max(&one);
            value = (&value * &a).round_outward(target + 16);
        }
        if value.width() <= goal || target > (1 << 15) {
            let log = value.ln(bits + 8);
            return Ok(MahlerMeasure {
                value,
                log,
                exact: None,
            });
        }
        target += 32 + value.hi().to_integer().bits() as u32;
        roots = complex_roots(&s, target)?;
    }
}

/// Mahler measure enclosure of width at most `2^-target_bits`.
pub fn mahler_measure(f: &IntPoly, target_bits: u32) -> Result<MahlerMeasure> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let content = f.content().abs();
    let pp = f.primitive_part();
    let core = pp.shift_down(pp.x_valuation());
    let parts = core.squarefree_decomposition();
    let extra = parts.iter().map(|(_, e)| *e as u32).sum::<u32>() * 4 + 8;
    let mut value = RealEnclosure::from_bigint(&content);
    let mut exact = Some(content.clone());
    for (s, e) in &parts {
        let m = squarefree_measure(s, target_bits + extra)?;
        for _ in 0..*e {
            value = &value * &m.value;
        }
        exact = match (exact, &m.exact) {
            (Some(a), Some(b)) => Some(a * b.pow(*e as u32)),
            _ => None,
        };
    }
    if core.degree() == 0 {
        exact = Some(content * core.lead().abs());
    }
    match exact {
        Some(m) => Ok(MahlerMeasure::from_exact(m, target_bits)),
        None => {
            let log = value.ln(target_bits + 8);
            Ok(MahlerMeasure {
                value,
                log,
                exact: None,
            })
        }
    }
}

pub fn mahler_measure_default(f: &IntPoly) -> Result<MahlerMeasure> {
    mahler_measure(f, super::roots::DEFAULT_TARGET_BITS)
}

/// True when the measure is exactly 1.
pub fn is_exactly_one(m: &MahlerMeasure) -> bool {
    m.exact.as_ref().is_some_and(|v| v.is_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn spec_examples() {
        let m = mahler_measure_default(&p(&[-1, -1, 1])).unwrap();
        assert!(m.exact.is_none());
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((m.value.to_f64() - phi).abs() < 1e-15);
        assert!(m.value.width() <= BigRational::new(1.into(), BigInt::one() << 80));

        let m = mahler_measure_default(&p(&[-1, 0, 0, 0, 0, 1])).unwrap();
        assert_eq!(m.exact, Some(BigInt::one()));
        assert_eq!(m.log, RealEnclosure::zero());

        let m = mahler_measure_default(&p(&[-1, 2])).unwrap();
        assert_eq!(m.exact, Some(BigInt::from(2)));
    }

    #[test]
    fn exact_cases() {
        assert_eq!(
            mahler_measure_default(&p(&[3, -2, 2])).unwrap().exact,
            Some(3.into())
        );
        assert_eq!(
            mahler_measure_default(&p(&[-5, 0, 7])).unwrap().exact,
            Some(7.into())
        );
        assert_eq!(
            mahler_measure_default(&p(&[-35, 0, 1])).unwrap().exact,
            Some(35.into())
        );
        // 6 x^3 (x^2 + x + 1)^2 (x - 3)
        let f = &(&p(&[0, 0, 0, 6]) * &p(&[1, 1, 1]).pow(2)) * &p(&[-3, 1]);
        assert_eq!(mahler_measure_default(&f).unwrap().exact, Some(18.into()));
    }

    #[test]
    fn lehmer_polynomial() {
        let f = p(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        let m = mahler_measure_default(&f).unwrap();
        assert!(m.exact.is_none());
        assert!((m.value.to_f64() - 1.176_280_818_259_917).abs() < 1e-14);
        assert!(!is_kronecker(&f));
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic(1), p(&[-1, 1]));
        assert_eq!(cyclotomic(6), p(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), p(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic(15).degree(), 8);
        assert!(is_kronecker(&(&cyclotomic(7) * &cyclotomic(9))));
        let log = mahler_measure_default(&(&cyclotomic(3) * &p(&[-2, 1])))
            .unwrap()
            .log;
        assert!((log.to_f64() - 2f64.ln()).abs() < 1e-15);
        assert!(log.hi().to_f64().unwrap() >= 2f64.ln() - 1e-300);
    }
}
