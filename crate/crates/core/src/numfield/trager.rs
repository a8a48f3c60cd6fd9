//! Roots of rational polynomials inside a number field (norm resultants and
//! gcds over the field), field isomorphism, and minimal polynomials of
//! integer combinations `aα + bβ`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::field::{FieldElement, NumberField};
use crate::error::{Error, Result};
use crate::exactalg::cxbox::ComplexBox;
use crate::exactalg::poly::{require_degree, IntPoly};
use crate::exactalg::resultant::norm_resultant;
use crate::exactalg::roots::complex_roots;
use crate::exactalg::zfactor::{factor_over_q, is_irreducible};

/// Polynomial with coefficients in a number field, constant term first.
#[derive(Clone, Debug)]
pub struct KPoly {
    coeffs: Vec<FieldElement>,
}

impl KPoly {
    fn new(mut coeffs: Vec<FieldElement>) -> KPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        KPoly { coeffs }
    }

    pub fn from_int(k: &Arc<NumberField>, f: &IntPoly) -> KPoly {
        KPoly::new(
            f.coeffs()
                .iter()
                .map(|c| FieldElement::from_rational(k, BigRational::from_integer(c.clone())))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    fn monic(&self) -> KPoly {
        let inv = self
            .coeffs
            .last()
            .expect("nonzero")
            .inv()
            .expect("nonzero lead");
        KPoly::new(
            self.coeffs
                .iter()
                .map(|c| c.mul(&inv).expect("same field"))
                .collect(),
        )
    }

    fn rem(&self, b: &KPoly) -> KPoly {
        let db = b.degree();
        let inv = b
            .coeffs
            .last()
            .expect("nonzero divisor")
            .inv()
            .expect("nonzero lead");
        let mut r = self.coeffs.clone();
        while r.len() > db && !r.is_empty() {
            let top = r.len() - 1;
            let t = r[top].mul(&inv).expect("same field");
            for (i, bc) in b.coeffs.iter().enumerate() {
                let idx = top - db + i;
                r[idx] = r[idx]
                    .sub(&t.mul(bc).expect("same field"))
                    .expect("same field");
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        KPoly::new(r)
    }

    /// Monic gcd over the field.
    pub fn gcd(&self, o: &KPoly) -> KPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// `f(x + c)` for an integer polynomial `f` and `c` in the field.
    pub fn shifted(k: &Arc<NumberField>, f: &IntPoly, c: &FieldElement) -> KPoly {
        let mut acc: Vec<FieldElement> = Vec::new();
        for a in f.coeffs().iter().rev() {
            // acc = acc * (x + c) + a
            let mut next = vec![FieldElement::zero(k); acc.len() + 1];
            for (i, t) in acc.iter().enumerate() {
                next[i + 1] = next[i + 1].add(t).expect("same field");
                next[i] = next[i]
                    .add(&t.mul(c).expect("same field"))
                    .expect("same field");
            }
            next[0] = next[0]
                .add(&FieldElement::from_rational(
                    k,
                    BigRational::from_integer(a.clone()),
                ))
                .expect("same field");
            acc = next;
        }
        KPoly::new(acc)
    }
}

/// Smallest shift `s ≥ 1` with `Res_y(g(y), f(x - s y))` squarefree.
pub fn squarefree_norm(g: &IntPoly, f: &IntPoly) -> (u32, IntPoly) {
    for s in 1u32.. {
        let h = norm_resultant(g, f, &BigInt::from(s));
        if h.is_squarefree() {
            return (s, h);
        }
        assert!(s < 10_000, "no squarefree norm found");
    }
    unreachable!()
}

/// A root of the irreducible polynomial `f` in `K`, if one exists.
pub fn find_root_in_field(f: &IntPoly, k: &Arc<NumberField>) -> Result<Option<FieldElement>> {
    require_degree(f, 1)?;
    let f = f.primitive_part();
    if !is_irreducible(&f) {
        return Err(Error::Reducible(f.to_string()));
    }
    let d = k.degree();
    let n = f.degree();
    if n == 1 {
        let r = BigRational::new(-f.coeff(0), f.coeff(1));
        return Ok(Some(FieldElement::from_rational(k, r)));
    }
    if !d.is_multiple_of(n) {
        return Ok(None);
    }
    let (s, h) = squarefree_norm(k.defining_poly(), &f);
    log::debug!("norm shift s = {s} for {f} over {}", k.defining_poly());
    let theta = FieldElement::generator(k);
    let shift = theta.scale(&BigRational::from_integer(BigInt::from(s)));
    let fk = KPoly::from_int(k, &f);
    for (hi, _) in factor_over_q(&h)?.factors {
        if hi.degree() != d {
            continue;
        }
        let g = fk.gcd(&KPoly::shifted(k, &hi, &shift));
        if g.degree() == 1 {
            let root = g.coeffs()[0].neg();
            debug_assert!(root.eval_poly(&f).is_zero());
            return Ok(Some(root));
        }
    }
    Ok(None)
}

pub fn has_root_in_field(f: &IntPoly, k: &Arc<NumberField>) -> Result<bool> {
    Ok(find_root_in_field(f, k)?.is_some())
}

/// `Q[x]/(f) ≅ Q[x]/(g)`.
pub fn fields_isomorphic(f: &IntPoly, g: &IntPoly) -> Result<bool> {
    for p in [f, g] {
        require_degree(p, 1)?;
        if !is_irreducible(p) {
            return Err(Error::Reducible(p.to_string()));
        }
    }
    if f.degree() != g.degree() {
        return Ok(false);
    }
    let k = NumberField::new(g)?;
    has_root_in_field(f, &k)
}

/// `c^deg f(x / c)`: the primitive polynomial of `c ρ`.
fn scaled_roots(f: &IntPoly, c: &BigInt) -> IntPoly {
    let n = f.degree();
    IntPoly::new(
        (0..=n)
            .map(|k| f.coeff(k) * c.pow((n - k) as u32))
            .collect(),
    )
    .primitive_part()
}

/// Minimal polynomial of `aα + bβ` for the first-listed roots of `f_α`, `f_β`.
pub fn minpoly_of_combination(fa: &IntPoly, fb: &IntPoly, a: i64, b: i64) -> Result<IntPoly> {
    minpoly_of_combination_at(fa, 0, fb, 0, a, b)
}

/// Minimal polynomial of `aα + bβ` where `α`, `β` are the roots with the
/// given indices in the sorted root lists.
pub fn minpoly_of_combination_at(
    fa: &IntPoly,
    ia: usize,
    fb: &IntPoly,
    ib: usize,
    a: i64,
    b: i64,
) -> Result<IntPoly> {
    if a == 0 && b == 0 {
        return Err(Error::InvalidArgument("(a, b) = (0, 0)".into()));
    }
    for p in [fa, fb] {
        require_degree(p, 1)?;
        if !is_irreducible(p) {
            return Err(Error::Reducible(p.to_string()));
        }
    }
    let (fa, fb) = (fa.primitive_part(), fb.primitive_part());
    if ia >= fa.degree() || ib >= fb.degree() {
        return Err(Error::InvalidArgument("root index out of range".into()));
    }
    let (ab, bb) = (BigInt::from(a), BigInt::from(b));
    if b == 0 {
        return Ok(scaled_roots(&fa, &ab));
    }
    if a == 0 {
        return Ok(scaled_roots(&fb, &bb));
    }
    let big_f = IntPoly::new(
        (0..=fb.degree())
            .map(|k| fb.coeff(k) * bb.pow((fb.degree() - k) as u32))
            .collect(),
    );
    let h = norm_resultant(&fa, &big_f, &ab);
    let factors: Vec<IntPoly> = factor_over_q(&h)?
        .factors
        .into_iter()
        .map(|(g, _)| g)
        .collect();
    if factors.len() == 1 {
        return Ok(factors[0].clone());
    }
    let mut bits = 64;
    while bits <= 1 << 12 {
        let ra = &complex_roots(&fa, bits)?[ia];
        let rb = &complex_roots(&fb, bits)?[ib];
        let gamma = ComplexBox::new(ra.re.clone(), ra.im.clone())
            .scale_int(&ab)
            .add(&ComplexBox::new(rb.re.clone(), rb.im.clone()).scale_int(&bb));
        let mut hits = Vec::new();
        for g in &factors {
            let roots = complex_roots(g, bits)?;
            if roots
                .iter()
                .any(|r| ComplexBox::new(r.re.clone(), r.im.clone()).overlaps(&gamma))
            {
                hits.push(g);
            }
        }
        if hits.len() == 1 {
            return Ok(hits[0].clone());
        }
        bits *= 2;
    }
    Err(Error::AmbiguousFactor)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn root_in_field_examples() {
        let k = NumberField::new(&p(&[-2, 0, 1])).unwrap();
        assert!(has_root_in_field(&p(&[-2, 0, 1]), &k).unwrap());
        assert!(!has_root_in_field(&p(&[-3, 0, 1]), &k).unwrap());
        let r = find_root_in_field(&p(&[-1, -2, 1]), &k).unwrap().unwrap();
        assert!(r.eval_poly(&p(&[-1, -2, 1])).is_zero());
        assert!(matches!(
            has_root_in_field(&p(&[-4, 0, 1]), &k),
            Err(Error::Reducible(_))
        ));
    }

    #[test]
    fn isomorphism_examples() {
        assert!(fields_isomorphic(&p(&[-2, 0, 1]), &p(&[-8, 0, 1])).unwrap());
        assert!(!fields_isomorphic(&p(&[-2, 0, 1]), &p(&[-3, 0, 1])).unwrap());
        assert!(!fields_isomorphic(&p(&[-2, 0, 0, 1]), &p(&[-3, 0, 0, 1])).unwrap());
        assert!(fields_isomorphic(&p(&[-2, 0, 0, 1]), &p(&[-16, 0, 0, 1])).unwrap());
        // Q(sqrt(-5)) generated by (1 + sqrt(-5))/2
        assert!(fields_isomorphic(&p(&[3, -2, 2]), &p(&[5, 0, 1])).unwrap());
    }

    #[test]
    fn combination_examples() {
        let f = minpoly_of_combination(&p(&[-2, 0, 1]), &p(&[-3, 0, 1]), 1, 1).unwrap();
        assert_eq!(f, p(&[1, 0, -10, 0, 1]));
        let fa = p(&[-2, 0, 0, 1]);
        assert_eq!(minpoly_of_combination(&fa, &p(&[-7, 1]), 1, 0).unwrap(), fa);
        let g = minpoly_of_combination(&p(&[-2, 0, 1]), &p(&[-5, 0, 7]), 1, 1).unwrap();
        // sqrt2 + sqrt(5/7): 49 x^4 - 266 x^2 + 81
        assert_eq!(g, p(&[81, 0, -266, 0, 49]));
        assert!(minpoly_of_combination(&fa, &fa, 0, 0).is_err());
    }

    #[test]
    fn combination_picks_designated_roots() {
        // α = -sqrt2 (first root), β = sqrt2 (second root): α + β = 0
        let f = p(&[-2, 0, 1]);
        assert_eq!(
            minpoly_of_combination_at(&f, 0, &f, 1, 1, 1).unwrap(),
            p(&[0, 1])
        );
        assert_eq!(
            minpoly_of_combination_at(&f, 1, &f, 1, 1, 1).unwrap(),
            p(&[-8, 0, 1])
        );
    }
}
