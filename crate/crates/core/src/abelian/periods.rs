//! Defining polynomials of abelian fields from Gaussian periods, computed
//! exactly in the group ring `Z[x]/(x^f - 1)`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::group::units;
use super::spec::AbelianSpec;
use crate::error::{Error, Result};
use crate::exactalg::mahler::cyclotomic;
use crate::exactalg::zfactor::is_irreducible;
use crate::exactalg::IntPoly;

type GroupRing = Vec<BigInt>;

fn ring_mul(a: &GroupRing, b: &GroupRing, f: usize) -> GroupRing {
    let mut out = vec![BigInt::zero(); f];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[(i + j) % f] += x * y;
            }
        }
    }
    out
}

/// Coset representatives of `H` in `(Z/fZ)^*`, smallest first.
pub fn coset_representatives(spec: &AbelianSpec) -> Vec<u64> {
    let f = spec.modulus();
    let mut covered = vec![false; f as usize];
    let mut reps = Vec::new();
    for u in units(f) {
        if covered[u as usize] {
            continue;
        }
        reps.push(u);
        for &h in spec.subgroup() {
            covered[((u as u128 * h as u128) % f as u128) as usize] = true;
        }
    }
    reps
}

/// `∏_c (X - σ_c(β))` for `β = Σ_{h ∈ H} Σ_{j ≤ t} ζ^(jh)`, reduced to
/// integer coefficients.
fn trace_polynomial(spec: &AbelianSpec, t: u64) -> Result<IntPoly> {
    let f = spec.modulus();
    let fu = f as usize;
    let phi = cyclotomic(fu);
    let mut poly: Vec<GroupRing> = vec![{
        let mut one = vec![BigInt::zero(); fu];
        one[0] = BigInt::from(1);
        one
    }];
    for c in coset_representatives(spec) {
        let mut eta = vec![BigInt::zero(); fu];
        for &h in spec.subgroup() {
            for j in 1..=t {
                let e = (c as u128 * h as u128 * j as u128 % f as u128) as usize;
                eta[e] += 1;
            }
        }
        // poly * (X - eta)
        let mut next = vec![vec![BigInt::zero(); fu]; poly.len() + 1];
        for (k, coeff) in poly.iter().enumerate() {
            for (n, v) in next[k + 1].iter_mut().zip(coeff) {
                *n += v;
            }
            let prod = ring_mul(coeff, &eta, fu);
            for (n, v) in next[k].iter_mut().zip(prod) {
                *n -= v;
            }
        }
        poly = next;
    }
    let mut out = Vec::with_capacity(poly.len());
    for coeff in poly {
        let (_, r) = IntPoly::new(coeff).divrem_monic(&phi);
        if r.degree() > 0 {
            return Err(Error::Consistency(format!(
                "period coefficient {r} is not rational"
            )));
        }
        out.push(r.coeff(0));
    }
    Ok(IntPoly::new(out))
}

/// Minimal polynomial of the Gaussian period `Σ_{h ∈ H} ζ_f^h`; when the
/// period does not generate the field, of the trace of `ζ + … + ζ^t` for the
/// least `t` that does.
pub fn defining_polynomial(spec: &AbelianSpec) -> Result<IntPoly> {
    let d = spec.degree();
    for t in 1..=spec.modulus().max(1) {
        let g = trace_polynomial(spec, t)?;
        if g.degree() != d || !g.is_squarefree() {
            continue;
        }
        if !is_irreducible(&g) {
            return Err(Error::Consistency(format!(
                "period polynomial {g} is reducible"
            )));
        }
        if t > 1 {
            log::debug!("period of {spec:?} is degenerate; using trace of t = {t} terms");
        }
        return Ok(g);
    }
    Err(Error::Consistency("no trace generates the field".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn period_polynomials() {
        assert_eq!(
            defining_polynomial(&AbelianSpec::new(5, &[4]).unwrap()).unwrap(),
            p(&[-1, 1, 1])
        );
        assert_eq!(
            defining_polynomial(&AbelianSpec::new(7, &[6]).unwrap()).unwrap(),
            p(&[-1, -2, 1, 1])
        );
        assert_eq!(
            defining_polynomial(&AbelianSpec::new(5, &[]).unwrap()).unwrap(),
            p(&[1, 1, 1, 1, 1])
        );
    }

    #[test]
    fn degenerate_period() {
        // f = 9, H = {1, 4, 7}: the period vanishes
        let s = AbelianSpec::new(9, &[4]).unwrap();
        assert_eq!(trace_polynomial(&s, 1).unwrap(), p(&[0, 0, 1]));
        let g = defining_polynomial(&s).unwrap();
        assert_eq!(g.degree(), 2);
    }
}
