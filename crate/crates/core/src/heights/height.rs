use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::bound::PowerProduct;
use crate::error::{Error, Result};
use crate::exactalg::mahler::{mahler_measure, MahlerMeasure};
use crate::exactalg::poly::require_degree;
use crate::exactalg::real::DEFAULT_BITS;
use crate::exactalg::zfactor::is_irreducible;
use crate::exactalg::{IntPoly, RealEnclosure};
use crate::numfield::FieldElement;

/// `log H(α)` for an algebraic number `α`, carried with the minimal
/// polynomial and Mahler measure it was computed from.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LogHeight {
    pub log_value: RealEnclosure,
    /// Primitive, positive leading coefficient.
    pub minpoly: IntPoly,
    pub mahler: MahlerMeasure,
    pub exact_one: bool,
}

impl PartialEq for LogHeight {
    fn eq(&self, o: &Self) -> bool {
        self.minpoly == o.minpoly
    }
}

impl LogHeight {
    fn from_measure(minpoly: IntPoly, mahler: MahlerMeasure) -> LogHeight {
        let d = minpoly.degree() as i64;
        let exact_one = mahler.exact.as_ref().is_some_and(|m| m.is_one());
        let log_value = if exact_one {
            RealEnclosure::zero()
        } else {
            mahler.log.div_int(d)
        };
        LogHeight {
            log_value,
            minpoly,
            mahler,
            exact_one,
        }
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree()
    }

    /// `M(f)` when it is an integer decided symbolically.
    pub fn exact_mahler(&self) -> Option<&BigInt> {
        self.mahler.exact.as_ref()
    }

    /// Enclosure of `H` itself.
    pub fn value(&self, bits: u32) -> RealEnclosure {
        match self.exact_mahler() {
            Some(m) => RealEnclosure::from_bigint(m).nth_root(self.degree() as u32, bits),
            None => self.log_value.exp(bits),
        }
    }

    /// The same height with `log_value` recomputed to about `bits` bits.
    pub fn refined(&self, bits: u32) -> Result<LogHeight> {
        if self.exact_one {
            return Ok(self.clone());
        }
        let target = bits + 8 + self.minpoly.max_abs_coeff().bits() as u32;
        let m = match &self.mahler.exact {
            Some(v) => MahlerMeasure::from_exact(v.clone(), target),
            None => mahler_measure(&self.minpoly, target)?,
        };
        Ok(LogHeight::from_measure(self.minpoly.clone(), m))
    }

    /// Representative of the minimal polynomial under `α ↦ -α` and
    /// `α ↦ 1/α`, which preserve the height.
    pub fn canonical_poly(&self) -> IntPoly {
        canonical_poly(&self.minpoly)
    }

    pub fn to_power_product(&self) -> PowerProduct {
        PowerProduct::height(self)
    }

    pub fn to_decimal(&self, digits: usize) -> String {
        self.value(digits as u32 * 4 + 16).to_decimal(digits)
    }
}

impl fmt::Display for LogHeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact_mahler() {
            Some(m) if self.degree() == 1 || m.is_one() => write!(f, "{m}"),
            Some(m) => write!(f, "{m}^(1/{})", self.degree()),
            None => write!(f, "{}", self.to_decimal(20)),
        }
    }
}

fn positive_lead(f: IntPoly) -> IntPoly {
    if f.lead().is_negative() {
        -&f
    } else {
        f
    }
}

/// Smallest of `±f(±x)` and their reversals, normalized to a positive
/// leading coefficient.
pub fn canonical_poly(f: &IntPoly) -> IntPoly {
    let f = positive_lead(f.primitive_part());
    let mut forms = vec![f.clone(), positive_lead(f.negate_x())];
    if !f.coeff(0).is_zero() {
        let r = f.reversed();
        forms.push(positive_lead(r.negate_x()));
        forms.push(positive_lead(r));
    }
    forms
        .into_iter()
        .min_by(|a, b| a.cmp_canonical(b))
        .expect("nonempty")
}

/// `H(p/q) = max(|p|, |q|)`, exact.
pub fn height_rational(r: &BigRational) -> LogHeight {
    let minpoly = IntPoly::new(vec![-r.numer().clone(), r.denom().clone()]);
    let m = r.numer().abs().max(r.denom().clone());
    LogHeight::from_measure(minpoly, MahlerMeasure::from_exact(m, DEFAULT_BITS))
}

/// `H = M(f)^(1/deg f)` for an irreducible `f`.
pub fn height_algebraic(f: &IntPoly) -> Result<LogHeight> {
    height_algebraic_at(f, DEFAULT_BITS)
}

pub fn height_algebraic_at(f: &IntPoly, bits: u32) -> Result<LogHeight> {
    require_degree(f, 1)?;
    let f = positive_lead(f.primitive_part());
    if !is_irreducible(&f) {
        return Err(Error::Reducible(f.to_string()));
    }
    height_of_minpoly(f, bits)
}

/// Height from a polynomial already known to be the primitive minimal
/// polynomial.
pub(crate) fn height_of_minpoly(f: IntPoly, bits: u32) -> Result<LogHeight> {
    let f = positive_lead(f);
    let m = mahler_measure(&f, bits + f.degree() as u32)?;
    Ok(LogHeight::from_measure(f, m))
}

type CacheKey = (IntPoly, Vec<BigRational>);

fn element_cache() -> &'static RwLock<HashMap<CacheKey, LogHeight>> {
    static CACHE: OnceLock<RwLock<HashMap<CacheKey, LogHeight>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Height of a field element through its minimal polynomial.
pub fn height_element(a: &FieldElement) -> LogHeight {
    let key = (a.field().defining_poly().clone(), a.coords().to_vec());
    if let Some(h) = element_cache().read().expect("cache lock").get(&key) {
        return h.clone();
    }
    let h = match a.as_rational() {
        Some(r) => height_rational(&r),
        None => height_of_minpoly(a.minimal_polynomial(), DEFAULT_BITS).expect("nonzero minpoly"),
    };
    element_cache()
        .write()
        .expect("cache lock")
        .insert(key, h.clone());
    h
}

/// Certified comparison of two heights.
///
/// Equal canonical minimal polynomials (or both roots of unity) compare
/// equal; integral Mahler measures are compared exactly; otherwise the
/// enclosures are refined up to `2^-256` before giving up.
pub fn compare(a: &LogHeight, b: &LogHeight) -> Result<Ordering> {
    if (a.exact_one && b.exact_one) || a.canonical_poly() == b.canonical_poly() {
        return Ok(Ordering::Equal);
    }
    a.to_power_product().compare(&b.to_power_product())
}
