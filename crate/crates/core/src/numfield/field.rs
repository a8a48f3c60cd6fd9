//! Number fields `Q[x]/(g)` and their elements in the power basis.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::cxbox::ComplexBox;
use crate::exactalg::poly::{require_degree, IntPoly};
use crate::exactalg::qpoly::QPoly;
use crate::exactalg::resultant::poly_discriminant;
use crate::exactalg::roots::{complex_roots, ComplexEnclosure, DEFAULT_TARGET_BITS};
use crate::exactalg::zfactor::is_irreducible;

/// `Q[x]/(g)` for a monic irreducible integer polynomial `g`.
#[derive(Debug)]
pub struct NumberField {
    defining: IntPoly,
    /// Primitive polynomial supplied by the caller; `θ = a_d · θ_input`.
    input: IntPoly,
    roots: Vec<ComplexEnclosure>,
    signature: (usize, usize),
    disc: OnceLock<BigInt>,
    field_disc: OnceLock<super::disc::DiscriminantResult>,
}

impl NumberField {
    /// Builds the field of a primitive irreducible polynomial. A non-monic
    /// input `a_d x^d + …` is replaced by the monic model of `a_d θ`.
    pub fn new(g: &IntPoly) -> Result<Arc<NumberField>> {
        require_degree(g, 1)?;
        let input = g.primitive_part();
        if !is_irreducible(&input) {
            return Err(Error::Reducible(input.to_string()));
        }
        let defining = monic_model(&input);
        let roots = complex_roots(&defining, DEFAULT_TARGET_BITS)?;
        let r1 = roots.iter().filter(|r| r.real).count();
        let signature = (r1, (defining.degree() - r1) / 2);
        Ok(Arc::new(NumberField {
            defining,
            input,
            roots,
            signature,
            disc: OnceLock::new(),
            field_disc: OnceLock::new(),
        }))
    }

    /// The rationals as `Q[x]/(x)`.
    pub fn rationals() -> Arc<NumberField> {
        NumberField::new(&IntPoly::x()).expect("x is irreducible")
    }

    pub fn defining_poly(&self) -> &IntPoly {
        &self.defining
    }

    pub fn input_poly(&self) -> &IntPoly {
        &self.input
    }

    pub fn degree(&self) -> usize {
        self.defining.degree()
    }

    pub fn signature(&self) -> (usize, usize) {
        self.signature
    }

    /// Certified embeddings of `θ`, sorted by real then imaginary part.
    pub fn roots(&self) -> &[ComplexEnclosure] {
        &self.roots
    }

    /// `disc(g)`, computed once.
    pub fn poly_disc(&self) -> &BigInt {
        self.disc
            .get_or_init(|| poly_discriminant(&self.defining).expect("degree at least one"))
    }

    pub(crate) fn field_disc_cell(&self) -> &OnceLock<super::disc::DiscriminantResult> {
        &self.field_disc
    }

    pub fn same_field(&self, other: &NumberField) -> bool {
        self.defining == other.defining
    }
}

/// `a^(d-1) g(x / a)` for `g` with leading coefficient `a`.
pub fn monic_model(g: &IntPoly) -> IntPoly {
    let a = g.lead();
    if a.is_one() {
        return g.clone();
    }
    let d = g.degree();
    IntPoly::new(
        (0..=d)
            .map(|k| g.coeff(k) * a.pow((d - k) as u32) / &a)
            .collect(),
    )
}

/// `Σ c_i θ^i` with rational coordinates, reduced modulo the defining
/// polynomial.
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<NumberField>,
    coords: Vec<BigRational>,
}

impl PartialEq for FieldElement {
    fn eq(&self, o: &Self) -> bool {
        self.field.same_field(&o.field) && self.coords == o.coords
    }
}

impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({})", self)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("({c})*t"),
                _ => format!("({c})*t^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl FieldElement {
    pub fn new(field: &Arc<NumberField>, coords: Vec<BigRational>) -> FieldElement {
        let q = QPoly::new(coords);
        FieldElement::from_qpoly(field, &q)
    }

    pub fn from_ints(field: &Arc<NumberField>, coords: &[i64]) -> FieldElement {
        FieldElement::new(
            field,
            coords
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn from_rational(field: &Arc<NumberField>, q: BigRational) -> FieldElement {
        FieldElement::new(field, vec![q])
    }

    pub fn zero(field: &Arc<NumberField>) -> FieldElement {
        FieldElement::new(field, Vec::new())
    }

    pub fn one(field: &Arc<NumberField>) -> FieldElement {
        FieldElement::from_rational(field, BigRational::one())
    }

    /// The class `θ` of `x`.
    pub fn generator(field: &Arc<NumberField>) -> FieldElement {
        FieldElement::from_ints(field, &[0, 1])
    }

    /// The root `θ / a_d` of the caller-supplied polynomial.
    pub fn input_root(field: &Arc<NumberField>) -> FieldElement {
        let a = field.input.lead();
        FieldElement::new(
            field,
            vec![BigRational::zero(), BigRational::new(BigInt::one(), a)],
        )
    }

    pub(crate) fn from_qpoly(field: &Arc<NumberField>, q: &QPoly) -> FieldElement {
        let g = QPoly::from_int(&field.defining);
        let r = q.rem(&g);
        let mut coords = r.coeffs().to_vec();
        coords.resize(field.degree(), BigRational::zero());
        FieldElement {
            field: field.clone(),
            coords,
        }
    }

    pub(crate) fn to_qpoly(&self) -> QPoly {
        QPoly::new(self.coords.clone())
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// `Some(q)` when the element is rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.coords[1..].iter().all(|c| c.is_zero()).then(|| {
            self.coords
                .first()
                .cloned()
                .unwrap_or_else(BigRational::zero)
        })
    }

    fn check(&self, o: &FieldElement) -> Result<()> {
        if self.field.same_field(&o.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, o: &FieldElement) -> Result<FieldElement> {
        self.check(o)?;
        Ok(FieldElement::from_qpoly(
            &self.field,
            &(&self.to_qpoly() + &o.to_qpoly()),
        ))
    }

    pub fn sub(&self, o: &FieldElement) -> Result<FieldElement> {
        self.check(o)?;
        Ok(FieldElement::from_qpoly(
            &self.field,
            &(&self.to_qpoly() - &o.to_qpoly()),
        ))
    }

    pub fn mul(&self, o: &FieldElement) -> Result<FieldElement> {
        self.check(o)?;
        Ok(FieldElement::from_qpoly(
            &self.field,
            &(&self.to_qpoly() * &o.to_qpoly()),
        ))
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, k: &BigRational) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| c * k).collect(),
        }
    }

    /// Inverse by the extended Euclidean algorithm against `g`.
    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let g = QPoly::from_int(&self.field.defining);
        let (one, s, _) = self.to_qpoly().xgcd(&g);
        debug_assert!(one.degree() == 0);
        Ok(FieldElement::from_qpoly(&self.field, &s))
    }

    pub fn div(&self, o: &FieldElement) -> Result<FieldElement> {
        self.check(o)?;
        self.mul(&o.inv()?)
    }

    pub fn pow(&self, e: u32) -> FieldElement {
        let mut acc = FieldElement::one(&self.field);
        for _ in 0..e {
            acc = acc.mul(self).expect("same field");
        }
        acc
    }

    /// Matrix of multiplication by this element: column `j` holds the
    /// coordinates of `α θ^j`.
    pub fn multiplication_matrix(&self) -> Vec<Vec<BigRational>> {
        let d = self.field.degree();
        let mut m = vec![vec![BigRational::zero(); d]; d];
        let theta = FieldElement::generator(&self.field);
        let mut col = self.clone();
        for j in 0..d {
            for i in 0..d {
                m[i][j] = col.coords[i].clone();
            }
            col = col.mul(&theta).expect("same field");
        }
        m
    }

    /// Characteristic polynomial of the multiplication matrix
    /// (Faddeev–LeVerrier), monic over the rationals.
    pub fn charpoly(&self) -> QPoly {
        let a = self.multiplication_matrix();
        let n = a.len();
        let mut c = vec![BigRational::zero(); n + 1];
        c[n] = BigRational::one();
        let mut m = vec![vec![BigRational::zero(); n]; n];
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            let mut next = mat_mul(&a, &m);
            for (i, row) in next.iter_mut().enumerate() {
                row[i] += &c[n - k + 1];
            }
            m = next;
            let am = mat_mul(&a, &m);
            let tr: BigRational = (0..n).map(|i| am[i][i].clone()).sum();
            c[n - k] = -tr / BigRational::from_integer(BigInt::from(k));
        }
        QPoly::new(c)
    }

    /// Primitive irreducible integer polynomial with positive leading
    /// coefficient vanishing at this element.
    pub fn minimal_polynomial(&self) -> IntPoly {
        if let Some(q) = self.as_rational() {
            return IntPoly::from_rational(&[-q, BigRational::one()]);
        }
        let chi = self.charpoly();
        let g = chi.gcd(&chi.derivative());
        chi.divrem(&g).0.to_int_primitive()
    }

    /// `f(α)` for an integer polynomial `f`.
    pub fn eval_poly(&self, f: &IntPoly) -> FieldElement {
        let q = QPoly::from_int(f);
        let mut acc = FieldElement::zero(&self.field);
        for c in q.coeffs().iter().rev() {
            acc = acc.mul(self).expect("same field");
            acc.coords[0] += c;
        }
        acc
    }

    /// Enclosure of the image of this element under embedding `k`.
    pub fn embed(&self, k: usize) -> ComplexBox {
        let root = &self.field.roots[k];
        ComplexBox::new(root.re.clone(), root.im.clone()).eval_rational_poly(self.coords())
    }
}

fn mat_mul(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = a.len();
    let mut out = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

/// Sign of `disc(g)` predicted by the signature: `(-1)^{r2}`.
pub fn disc_sign(k: &NumberField) -> i32 {
    if k.signature().1.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn arithmetic_examples() {
        let k = NumberField::new(&p(&[-2, 0, 1])).unwrap();
        let a = FieldElement::from_ints(&k, &[1, 1]);
        let b = FieldElement::from_ints(&k, &[1, -1]);
        assert_eq!(a.mul(&b).unwrap(), FieldElement::from_ints(&k, &[-1]));
        let t = FieldElement::generator(&k);
        assert_eq!(
            t.inv().unwrap(),
            FieldElement::new(&k, vec![q(0, 1), q(1, 2)])
        );
        assert_eq!(FieldElement::zero(&k).inv(), Err(Error::DivisionByZero));
        let other = NumberField::new(&p(&[-3, 0, 1])).unwrap();
        assert_eq!(
            t.add(&FieldElement::generator(&other)),
            Err(Error::FieldMismatch)
        );
    }

    #[test]
    fn minimal_polynomials() {
        let k = NumberField::new(&p(&[-2, 0, 1])).unwrap();
        assert_eq!(
            FieldElement::from_ints(&k, &[1, 1]).minimal_polynomial(),
            p(&[-1, -2, 1])
        );
        assert_eq!(
            FieldElement::from_rational(&k, q(3, 2)).minimal_polynomial(),
            p(&[-3, 2])
        );
        let k3 = NumberField::new(&p(&[-2, 0, 0, 1])).unwrap();
        assert_eq!(
            FieldElement::generator(&k3).minimal_polynomial(),
            p(&[-2, 0, 0, 1])
        );
        // θ^3 = 2 is rational
        assert_eq!(
            FieldElement::generator(&k3).pow(3).minimal_polynomial(),
            p(&[-2, 1])
        );
    }

    #[test]
    fn non_monic_input() {
        let k = NumberField::new(&p(&[-5, 0, 7])).unwrap();
        assert_eq!(k.defining_poly(), &p(&[-35, 0, 1]));
        assert_eq!(
            FieldElement::input_root(&k).minimal_polynomial(),
            p(&[-5, 0, 7])
        );
        assert_eq!(k.signature(), (2, 0));
        assert_eq!(
            NumberField::new(&p(&[1, 0, 1])).unwrap().signature(),
            (0, 1)
        );
        assert!(matches!(
            NumberField::new(&p(&[-4, 0, 1])),
            Err(Error::Reducible(_))
        ));
    }
}
