//! Coefficient-box enumeration of integer polynomials of bounded Mahler
//! measure.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering as AtomicOrdering};
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactalg::poly::binomial;
use crate::exactalg::resultant::poly_discriminant;
use crate::exactalg::zfactor::is_irreducible;
use crate::exactalg::IntPoly;
use crate::heights::height::height_of_minpoly;
use crate::heights::{LogHeight, PowerProduct};

/// Limits on a single search.
#[derive(Clone, Debug)]
pub struct EnumerationBudget {
    pub max_candidates: u64,
    pub max_seconds: f64,
    pub max_b: f64,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            max_candidates: 20_000_000,
            max_seconds: 1800.0,
            max_b: 64.0,
        }
    }
}

/// Coefficient bounds `|a_i| ≤ floor(binom(d, i) B^d)`.
pub fn coefficient_box(d: usize, bound: &PowerProduct) -> Result<Vec<i64>> {
    let bd = bound.pow(&BigInt::from(d).into()).value(64)?;
    let hi = bd.hi();
    (0..=d)
        .map(|i| {
            let b = (hi * num_rational::BigRational::from_integer(binomial(d, i)))
                .floor()
                .to_integer();
            b.to_i64()
                .ok_or_else(|| Error::InvalidArgument("height bound too large".into()))
        })
        .collect()
}

/// Number of points in the box with positive leading coefficient.
pub fn box_size(bounds: &[i64]) -> u128 {
    let d = bounds.len() - 1;
    bounds[..d]
        .iter()
        .fold(bounds[d].max(0) as u128, |acc, &b| {
            acc.saturating_mul(2 * b as u128 + 1)
        })
}

fn is_canonical(c: &[i64]) -> bool {
    // forms: f(-x), reversal and reversed f(-x), each with positive lead
    let neg: Vec<i64> = c
        .iter()
        .enumerate()
        .map(|(i, &a)| if i % 2 == 1 { -a } else { a })
        .collect();
    let norm = |v: Vec<i64>| -> Vec<i64> {
        if v[v.len() - 1] < 0 {
            v.into_iter().map(|a| -a).collect()
        } else {
            v
        }
    };
    let key = |v: &[i64]| -> Vec<i64> { v.iter().rev().copied().collect() };
    let me = key(c);
    let mut forms = vec![norm(neg)];
    if c[0] != 0 {
        let rev: Vec<i64> = c.iter().rev().copied().collect();
        let rneg: Vec<i64> = rev
            .iter()
            .enumerate()
            .map(|(i, &a)| if i % 2 == 1 { -a } else { a })
            .collect();
        forms.push(norm(rev));
        forms.push(norm(rneg));
    }
    forms.iter().all(|f| me <= key(f))
}

fn content_one(c: &[i64]) -> bool {
    c.iter().fold(0i64, |g, &a| g.gcd(&a)) == 1
}

/// Cheap irreducibility: rational roots first, then full factorization.
fn irreducible(c: &[i64], f: &IntPoly) -> bool {
    let d = c.len() - 1;
    if d == 1 {
        return true;
    }
    if d == 2 {
        let disc = c[1] as i128 * c[1] as i128 - 4 * c[2] as i128 * c[0] as i128;
        return disc < 0 || (disc as u128).sqrt().pow(2) != disc as u128;
    }
    if has_rational_root(c) {
        return false;
    }
    d == 3 || is_irreducible(f)
}

fn divisors(n: i64) -> Vec<i64> {
    let n = n.abs();
    (1..=n)
        .take_while(|k| k * k <= n)
        .filter(|k| n % k == 0)
        .flat_map(|k| [k, n / k])
        .collect()
}

fn has_rational_root(c: &[i64]) -> bool {
    let d = c.len() - 1;
    for p in divisors(c[0]) {
        for q in divisors(c[d]) {
            if p.gcd(&q) != 1 {
                continue;
            }
            for s in [p, -p] {
                // q^d f(s/q)
                let mut acc = 0i128;
                let mut qp = 1i128;
                let mut terms = vec![0i128; d + 1];
                for (i, t) in terms.iter_mut().enumerate() {
                    *t = qp;
                    if i < d {
                        qp *= q as i128;
                    }
                }
                let mut sp = 1i128;
                for (i, &a) in c.iter().enumerate() {
                    acc += a as i128 * sp * terms[d - i];
                    sp *= s as i128;
                }
                if acc == 0 {
                    return true;
                }
            }
        }
    }
    false
}

/// Necessary condition for `f` to define the field of `g`: the product of
/// the discriminants is a nonzero square.
pub struct FieldFilter {
    disc: BigInt,
}

impl FieldFilter {
    pub fn new(g: &IntPoly) -> Result<FieldFilter> {
        Ok(FieldFilter {
            disc: poly_discriminant(g)?,
        })
    }

    fn passes(&self, c: &[i64], f: &IntPoly) -> bool {
        let df = if c.len() == 3 {
            BigInt::from(c[1] as i128 * c[1] as i128 - 4 * c[2] as i128 * c[0] as i128)
        } else {
            match poly_discriminant(f) {
                Ok(v) => v,
                Err(_) => return false,
            }
        };
        let prod = df * &self.disc;
        prod.is_positive() && prod.sqrt().pow(2) == prod
    }
}

/// One accepted candidate.
#[derive(Clone, Debug)]
pub struct Hit {
    pub poly: IntPoly,
    pub height: LogHeight,
}

pub struct ScanOutcome {
    pub hits: Vec<Hit>,
    pub scanned: u64,
    pub complete: bool,
}

pub struct Scan<'a> {
    pub degree: usize,
    pub bound: PowerProduct,
    pub symmetric: bool,
    pub field: Option<&'a FieldFilter>,
    pub accept: &'a (dyn Fn(&IntPoly) -> Result<bool> + Sync),
    pub budget: &'a EnumerationBudget,
    pub started: Instant,
}

impl Scan<'_> {
    fn stratum(
        &self,
        lead: i64,
        bounds: &[i64],
        scanned: &AtomicU64,
        abort: &AtomicBool,
    ) -> Result<Vec<Hit>> {
        let d = self.degree;
        let mut c = vec![0i64; d + 1];
        c[d] = lead;
        for i in 0..d {
            c[i] = -bounds[i];
        }
        let mut hits = Vec::new();
        let mut local = 0u64;
        loop {
            local += 1;
            if local.is_multiple_of(4096) {
                let total = scanned.fetch_add(4096, AtomicOrdering::Relaxed) + 4096;
                if total > self.budget.max_candidates
                    || self.started.elapsed().as_secs_f64() > self.budget.max_seconds
                {
                    abort.store(true, AtomicOrdering::Relaxed);
                }
                if abort.load(AtomicOrdering::Relaxed) {
                    return Ok(hits);
                }
            }
            if let Some(h) = self.visit(&c)? {
                hits.push(h);
            }
            // odometer from a_0 (innermost) upward, lexicographic from the top
            let mut i = 0;
            loop {
                if i == d {
                    scanned.fetch_add(local % 4096, AtomicOrdering::Relaxed);
                    return Ok(hits);
                }
                if c[i] < bounds[i] {
                    c[i] += 1;
                    break;
                }
                c[i] = -bounds[i];
                i += 1;
            }
        }
    }

    fn visit(&self, c: &[i64]) -> Result<Option<Hit>> {
        let d = self.degree;
        if d >= 2 && c[0] == 0 {
            return Ok(None);
        }
        if self.symmetric && !is_canonical(c) {
            return Ok(None);
        }
        if !content_one(c) {
            return Ok(None);
        }
        let f = IntPoly::from_i64s(c);
        if let Some(filter) = self.field {
            if !filter.passes(c, &f) {
                return Ok(None);
            }
        }
        if !irreducible(c, &f) {
            return Ok(None);
        }
        let h = height_of_minpoly(f.clone(), 64)?;
        let within = match h.to_power_product().compare(&self.bound) {
            Ok(o) => o != std::cmp::Ordering::Greater,
            Err(Error::Undecided(_)) => true,
            Err(e) => return Err(e),
        };
        if !within || !(self.accept)(&f)? {
            return Ok(None);
        }
        Ok(Some(Hit { poly: f, height: h }))
    }

    /// Scans the whole box, in parallel over leading coefficients.
    pub fn run(&self) -> Result<ScanOutcome> {
        let bounds = coefficient_box(self.degree, &self.bound)?;
        let size = box_size(&bounds);
        if size > self.budget.max_candidates as u128 {
            return Ok(ScanOutcome {
                hits: Vec::new(),
                scanned: 0,
                complete: false,
            });
        }
        let scanned = AtomicU64::new(0);
        let abort = AtomicBool::new(false);
        let strata: Vec<Result<Vec<Hit>>> = (1..=bounds[self.degree])
            .into_par_iter()
            .map(|lead| self.stratum(lead, &bounds, &scanned, &abort))
            .collect();
        let mut hits = Vec::new();
        for s in strata {
            hits.extend(s?);
        }
        Ok(ScanOutcome {
            hits,
            scanned: scanned.load(AtomicOrdering::Relaxed),
            complete: !abort.load(AtomicOrdering::Relaxed),
        })
    }
}

/// Every primitive irreducible polynomial of degree `d` with positive
/// leading coefficient and `M(f) ≤ B^d`, in lexicographic order of the
/// coefficients from the leading one down.
pub fn enumerate_candidates(d: usize, bound: &PowerProduct) -> Result<Vec<IntPoly>> {
    if d == 0 {
        return Err(Error::DegreeTooSmall { min: 1, got: 0 });
    }
    if bound.compare(&PowerProduct::one())? == std::cmp::Ordering::Less {
        return Err(Error::InvalidArgument("height bound below 1".into()));
    }
    let budget = EnumerationBudget {
        max_candidates: u64::MAX,
        max_seconds: f64::INFINITY,
        max_b: f64::INFINITY,
    };
    let scan = Scan {
        degree: d,
        bound: bound.clone(),
        symmetric: false,
        field: None,
        accept: &|_| Ok(true),
        budget: &budget,
        started: Instant::now(),
    };
    let out = scan.run()?;
    Ok(out.hits.into_iter().map(|h| h.poly).collect())
}
