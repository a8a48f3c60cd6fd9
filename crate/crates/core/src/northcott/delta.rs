//! Minimal generator heights `δ(K)` and bounded-height generator searches.

use std::cmp::Ordering;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::enumerate::{EnumerationBudget, FieldFilter, Hit, Scan};
use crate::error::{Error, Result};
use crate::exactalg::IntPoly;
use crate::heights::{canonical_poly, compare, height_algebraic, LogHeight, PowerProduct};
use crate::numfield::{fields_isomorphic, minpoly_of_combination, NumberField};

/// Result of a `δ(K)` computation.
#[derive(Clone, Debug, Serialize)]
pub struct DeltaCertificate {
    /// Primitive input polynomial of the field.
    pub field: IntPoly,
    /// `B^2` for the last height bound `B` scanned.
    #[serde(serialize_with = "crate::exactalg::decimal::display")]
    pub bound_b_squared: BigRational,
    /// Minimal polynomial of the minimizer (canonical representative).
    pub generator: IntPoly,
    pub height: LogHeight,
    pub exhaustive: bool,
    pub candidates_scanned: u64,
    #[serde(skip)]
    pub wall_time: std::time::Duration,
}

/// Deterministic minimum: height first, then the canonical polynomial.
fn better(a: &Hit, b: &Hit) -> bool {
    match compare(&a.height, &b.height) {
        Ok(Ordering::Less) => true,
        Ok(Ordering::Greater) => false,
        _ => a.poly.cmp_canonical(&b.poly) == Ordering::Less,
    }
}

fn minimum(hits: Vec<Hit>) -> Option<Hit> {
    let mut best: Option<Hit> = None;
    for h in hits {
        let h = Hit {
            poly: canonical_poly(&h.poly),
            height: h.height,
        };
        if best.as_ref().is_none_or(|b| better(&h, b)) {
            best = Some(h);
        }
    }
    best
}

fn defines_field(k: &NumberField, f: &IntPoly) -> Result<bool> {
    fields_isomorphic(f, k.input_poly())
}

fn scan_for_field(
    k: &Arc<NumberField>,
    bound: &PowerProduct,
    budget: &EnumerationBudget,
    started: Instant,
) -> Result<(Option<Hit>, u64, bool)> {
    let filter = FieldFilter::new(k.defining_poly())?;
    let accept = |f: &IntPoly| defines_field(k, f);
    let scan = Scan {
        degree: k.degree(),
        bound: bound.clone(),
        symmetric: true,
        field: Some(&filter),
        accept: &accept,
        budget,
        started,
    };
    let out = scan.run()?;
    Ok((minimum(out.hits), out.scanned, out.complete))
}

/// `B_k^2 = (25/16) 2^k`.
fn schedule(k: u32) -> BigRational {
    BigRational::new(BigInt::from(25) << k, BigInt::from(16))
}

/// `δ(K/Q) = min { H(α) : K = Q(α) }` by enumeration over growing height
/// bounds. The first bound whose scan finds a generator is exhaustive, so the
/// minimum over that scan is `δ`. When the budget runs out the defining
/// polynomial is returned as an upper bound with `exhaustive = false`.
pub fn delta(k: &Arc<NumberField>, budget: &EnumerationBudget) -> Result<DeltaCertificate> {
    let started = Instant::now();
    let d = k.degree();
    let mut scanned = 0;
    if d == 1 {
        let x = IntPoly::x();
        return Ok(DeltaCertificate {
            field: k.input_poly().clone(),
            bound_b_squared: BigRational::from_integer(1.into()),
            height: height_algebraic(&x)?,
            generator: x,
            exhaustive: true,
            candidates_scanned: 0,
            wall_time: started.elapsed(),
        });
    }
    let mut step = 0;
    loop {
        let b2 = schedule(step);
        let over = b2 > BigRational::from_float(budget.max_b * budget.max_b).unwrap_or(b2.clone());
        let bound = PowerProduct::rational(b2.clone()).pow(&BigRational::new(1.into(), 2.into()));
        let (hit, n, complete) = if over {
            (None, 0, false)
        } else {
            scan_for_field(k, &bound, budget, started)?
        };
        scanned += n;
        if let (Some(h), true) = (&hit, complete) {
            return Ok(DeltaCertificate {
                field: k.input_poly().clone(),
                bound_b_squared: b2,
                generator: h.poly.clone(),
                height: h.height.clone(),
                exhaustive: true,
                candidates_scanned: scanned,
                wall_time: started.elapsed(),
            });
        }
        if !complete {
            let fallback = canonical_poly(k.input_poly());
            let h = height_algebraic(&fallback)?;
            let own = Hit {
                poly: fallback,
                height: h,
            };
            let best = match hit {
                Some(found) if better(&found, &own) => found,
                _ => own,
            };
            log::warn!("delta search for {} stopped at B^2 = {b2}", k.input_poly());
            return Ok(DeltaCertificate {
                field: k.input_poly().clone(),
                bound_b_squared: b2,
                generator: best.poly,
                height: best.height,
                exhaustive: false,
                candidates_scanned: scanned,
                wall_time: started.elapsed(),
            });
        }
        step += 1;
    }
}

/// Result of a bounded generator search.
#[derive(Clone, Debug, Serialize)]
pub struct GeneratorSearch {
    pub found: Option<(IntPoly, LogHeight)>,
    pub exhaustive: bool,
    pub candidates_scanned: u64,
}

/// A generator of `K` of least height among those with `H ≤ bound`, found
/// by scanning growing bounds up to `bound`.
pub fn find_generator_below(
    k: &Arc<NumberField>,
    bound: &PowerProduct,
    budget: &EnumerationBudget,
) -> Result<GeneratorSearch> {
    if bound.compare(&PowerProduct::one())? == Ordering::Less {
        return Err(Error::InvalidArgument("height bound below 1".into()));
    }
    if k.degree() == 1 {
        let x = IntPoly::x();
        let h = height_algebraic(&x)?;
        return Ok(GeneratorSearch {
            found: Some((x, h)),
            exhaustive: true,
            candidates_scanned: 0,
        });
    }
    let started = Instant::now();
    let half = BigRational::new(1.into(), 2.into());
    let mut scanned = 0;
    for step in 0.. {
        let level = PowerProduct::rational(schedule(step)).pow(&half);
        let last = level.compare(bound)? != Ordering::Less;
        let current = if last { bound.clone() } else { level };
        let (hit, n, complete) = scan_for_field(k, &current, budget, started)?;
        scanned += n;
        if last || !complete || hit.is_some() {
            return Ok(GeneratorSearch {
                found: hit.map(|h| (h.poly, h.height)),
                exhaustive: complete,
                candidates_scanned: scanned,
            });
        }
    }
    unreachable!()
}

/// Degree of `Q(α, β)` for the first-listed roots: the largest degree of
/// `α + kβ` over `0 ≤ k ≤ deg f_α (deg f_β - 1)`, which contains a
/// primitive element.
pub fn compositum_degree(fa: &IntPoly, fb: &IntPoly) -> Result<usize> {
    let n = fa.degree() as i64;
    let m = fb.degree() as i64;
    let mut best = 0;
    for k in 0..=n * (m - 1) {
        let g = if k == 0 {
            fa.primitive_part()
        } else {
            minpoly_of_combination(fa, fb, 1, k)?
        };
        best = best.max(g.degree());
        if best as i64 == n * m {
            break;
        }
    }
    Ok(best)
}

#[derive(Clone, Debug, Serialize)]
pub struct Combination {
    pub a: i64,
    pub b: i64,
    pub minpoly: IntPoly,
    pub height: LogHeight,
    pub degree: usize,
}

/// Over `0 ≤ a, b < d` with `aα + bβ` of full degree `d = [Q(α, β) : Q]`,
/// the combination of least height. Checks `H ≤ 2 d^2 H(α) H(β)`.
pub fn best_integer_combination(fa: &IntPoly, fb: &IntPoly) -> Result<Combination> {
    let d = compositum_degree(fa, fb)?;
    let mut best: Option<(Hit, i64, i64)> = None;
    for a in 0..d as i64 {
        for b in 0..d as i64 {
            if a == 0 && b == 0 {
                continue;
            }
            let g = minpoly_of_combination(fa, fb, a, b)?;
            if g.degree() != d {
                continue;
            }
            let h = height_algebraic(&g)?;
            let hit = Hit { poly: g, height: h };
            let replace = match &best {
                None => true,
                Some((cur, _, _)) => {
                    matches!(compare(&hit.height, &cur.height), Ok(Ordering::Less))
                }
            };
            if replace {
                best = Some((hit, a, b));
            }
        }
    }
    let (hit, a, b) =
        best.ok_or_else(|| Error::Consistency("no combination generates the compositum".into()))?;
    let ha = height_algebraic(fa)?;
    let hb = height_algebraic(fb)?;
    let bound =
        &(&PowerProduct::integer(2 * d * d) * &ha.to_power_product()) * &hb.to_power_product();
    if hit.height.to_power_product().compare(&bound)? == Ordering::Greater {
        return Err(Error::Consistency(format!(
            "H({}) exceeds 2 d^2 H(alpha) H(beta)",
            hit.poly
        )));
    }
    Ok(Combination {
        a,
        b,
        minpoly: hit.poly,
        height: hit.height,
        degree: d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn field(c: &[i64]) -> Arc<NumberField> {
        NumberField::new(&p(c)).unwrap()
    }

    #[test]
    fn delta_of_small_quadratics() {
        let budget = EnumerationBudget::default();
        let c = delta(&field(&[1, 0, 1]), &budget).unwrap();
        assert!(c.exhaustive && c.height.exact_one);
        assert_eq!(c.generator, p(&[1, 0, 1]));
        let c = delta(&field(&[5, 0, 1]), &budget).unwrap();
        assert!(c.exhaustive);
        assert_eq!(
            canonical_poly(&c.generator),
            canonical_poly(&p(&[3, -2, 2]))
        );
        assert_eq!(c.height.exact_mahler(), Some(&BigInt::from(3)));
        let c = delta(&field(&[-5, 0, 1]), &budget).unwrap();
        assert_eq!(
            canonical_poly(&c.generator),
            canonical_poly(&p(&[-1, -1, 1]))
        );
    }

    #[test]
    fn generator_searches() {
        let budget = EnumerationBudget::default();
        let k = field(&[5, 0, 1]);
        let seven = PowerProduct::rational_pow(BigRational::from_integer(7.into()), 1, 2);
        let r = find_generator_below(&k, &seven, &budget).unwrap();
        assert_eq!(r.found.unwrap().1.exact_mahler(), Some(&BigInt::from(3)));
        let r = find_generator_below(&field(&[-5, 0, 1]), &PowerProduct::one(), &budget).unwrap();
        assert!(r.found.is_none() && r.exhaustive);
        let r = find_generator_below(&field(&[1, 0, 1]), &PowerProduct::one(), &budget).unwrap();
        assert_eq!(r.found.unwrap().0, p(&[1, 0, 1]));
    }

    #[test]
    fn combinations() {
        let c = best_integer_combination(&p(&[-2, 0, 1]), &p(&[-3, 0, 1])).unwrap();
        assert_eq!(c.degree, 4);
        assert_eq!(c.minpoly.degree(), 4);
        let c = best_integer_combination(&p(&[-2, 0, 0, 1]), &p(&[-5, 1])).unwrap();
        assert_eq!((c.a, c.b, c.degree), (1, 0, 3));
        let c = best_integer_combination(&p(&[-2, 0, 1]), &p(&[-5, 0, 7])).unwrap();
        assert_eq!(c.degree, 4);
    }
}
