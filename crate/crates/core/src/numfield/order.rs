//! Orders of a number field given by a triangular basis over the power basis,
//! with p-maximal enlargement by the Round 2 method (multiplier rings of the
//! p-radical).

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{FieldElement, NumberField};
use super::fpmat::{left_kernel, mat_mul};
use crate::exactalg::modp::{mulmod, reduce};

/// An order with basis `ω_i = (1/den) Σ_j basis[i][j] θ^j`; row `i` is
/// supported on columns `0..=i` with a positive diagonal entry.
#[derive(Clone, Debug)]
pub struct Order {
    field: Arc<NumberField>,
    basis: Vec<Vec<BigInt>>,
    den: BigInt,
    table: Vec<Vec<Vec<BigInt>>>,
}

impl Order {
    /// `Z[θ]` for the monic defining polynomial.
    pub fn equation_order(k: &Arc<NumberField>) -> Order {
        let n = k.degree();
        let basis = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            BigInt::one()
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Order::from_basis(k, basis, BigInt::one())
    }

    fn from_basis(k: &Arc<NumberField>, rows: Vec<Vec<BigInt>>, den: BigInt) -> Order {
        let mut basis = hermite_lower(rows);
        let mut g = den.clone();
        for v in basis.iter().flatten() {
            g = g.gcd(v);
        }
        let den = &den / &g;
        for v in basis.iter_mut().flatten() {
            *v = &*v / &g;
        }
        let mut order = Order {
            field: k.clone(),
            basis,
            den,
            table: Vec::new(),
        };
        let n = k.degree();
        let elems: Vec<FieldElement> = (0..n).map(|i| order.element(i)).collect();
        let mut table = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in i..n {
                let prod = elems[i].mul(&elems[j]).expect("same field");
                let c: Vec<BigInt> = order
                    .coords_of(&prod)
                    .into_iter()
                    .map(|q| {
                        assert!(q.is_integer(), "basis is not closed under multiplication");
                        q.to_integer()
                    })
                    .collect();
                table[i][j] = c.clone();
                table[j][i] = c;
            }
        }
        order.table = table;
        order
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_matrix(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn element(&self, i: usize) -> FieldElement {
        let coords = self.basis[i]
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect();
        FieldElement::new(&self.field, coords)
    }

    /// Coordinates of `x` in the order basis (rational in general).
    pub fn coords_of(&self, x: &FieldElement) -> Vec<BigRational> {
        let n = self.degree();
        let den = BigRational::from_integer(self.den.clone());
        let mut v: Vec<BigRational> = x.coords().iter().map(|c| c * &den).collect();
        let mut out = vec![BigRational::zero(); n];
        for i in (0..n).rev() {
            let c = &v[i] / BigRational::from_integer(self.basis[i][i].clone());
            for (j, vj) in v.iter_mut().enumerate().take(i + 1) {
                *vj -= &c * BigRational::from_integer(self.basis[i][j].clone());
            }
            out[i] = c;
        }
        out
    }

    pub fn contains(&self, x: &FieldElement) -> bool {
        self.coords_of(x).iter().all(|c| c.is_integer())
    }

    /// `[O : Z[θ]]`.
    pub fn index(&self) -> BigInt {
        let n = self.degree() as u32;
        let diag: BigInt = self
            .basis
            .iter()
            .enumerate()
            .map(|(i, r)| r[i].clone())
            .product();
        let (q, r) = self.den.pow(n).div_rem(&diag);
        debug_assert!(r.is_zero());
        q
    }

    pub fn discriminant(&self) -> BigInt {
        let idx = self.index();
        self.field.poly_disc() / (&idx * &idx)
    }

    fn table_mod(&self, p: u64) -> Vec<Vec<Vec<u64>>> {
        self.table
            .iter()
            .map(|r| {
                r.iter()
                    .map(|c| c.iter().map(|v| reduce(v, p)).collect())
                    .collect()
            })
            .collect()
    }

    /// Matrix of `x ↦ x^p` on `O/pO`; row `i` is the image of `ω_i`.
    pub fn frobenius_matrix(&self, p: u64) -> Vec<Vec<u64>> {
        let t = self.table_mod(p);
        let n = self.degree();
        (0..n)
            .map(|i| {
                let mut e = vec![0u64; n];
                e[i] = 1;
                pow_mod(&e, p, &t, p)
            })
            .collect()
    }

    /// One enlargement step at `p`; `None` when the order is already
    /// p-maximal.
    pub fn enlarge_at(&self, p: u64) -> Option<Order> {
        let n = self.degree();
        let frob = self.frobenius_matrix(p);
        let mut power = frob.clone();
        let mut pj = p as u128;
        while pj < n as u128 {
            power = mat_mul(&power, &frob, p);
            pj *= p as u128;
        }
        let radical = left_kernel(&power, p);
        if radical.is_empty() {
            return None;
        }
        // Z-basis of the radical ideal, one row per column, upper triangular
        let ideal = lattice_basis(&radical, n, p);
        let mut action = vec![Vec::with_capacity(n * n); n];
        for (a, row) in action.iter_mut().enumerate() {
            for beta in &ideal {
                let mut prod = vec![BigInt::zero(); n];
                for (k, bk) in beta.iter().enumerate() {
                    if bk.is_zero() {
                        continue;
                    }
                    for (o, c) in prod.iter_mut().zip(&self.table[a][k]) {
                        *o += bk * c;
                    }
                }
                let y = solve_upper(&ideal, &prod);
                row.extend(y.iter().map(|v| reduce(v, p)));
            }
        }
        let kernel = left_kernel(&action, p);
        if kernel.is_empty() {
            return None;
        }
        let u = lattice_basis(&kernel, n, p);
        let rows: Vec<Vec<BigInt>> = u
            .iter()
            .map(|ur| {
                let mut r = vec![BigInt::zero(); n];
                for (k, c) in ur.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (o, b) in r.iter_mut().zip(&self.basis[k]) {
                        *o += c * b;
                    }
                }
                r
            })
            .collect();
        Some(Order::from_basis(
            &self.field,
            rows,
            &self.den * BigInt::from(p),
        ))
    }

    /// The p-maximal order containing this one.
    pub fn p_maximal(&self, p: u64) -> Order {
        let mut o = self.clone();
        while let Some(next) = o.enlarge_at(p) {
            o = next;
        }
        o
    }
}

fn mul_mod(x: &[u64], y: &[u64], t: &[Vec<Vec<u64>>], p: u64) -> Vec<u64> {
    let n = x.len();
    let mut out = vec![0u64; n];
    for i in 0..n {
        if x[i] == 0 {
            continue;
        }
        for j in 0..n {
            if y[j] == 0 {
                continue;
            }
            let c = mulmod(x[i], y[j], p);
            for (o, &tk) in out.iter_mut().zip(&t[i][j]) {
                *o = (*o + mulmod(c, tk, p)) % p;
            }
        }
    }
    out
}

fn pow_mod(x: &[u64], mut e: u64, t: &[Vec<Vec<u64>>], p: u64) -> Vec<u64> {
    let n = x.len();
    let mut acc = vec![0u64; n];
    // ω_0 = 1 in every order built here
    acc[0] = 1;
    let mut base = x.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(&acc, &base, t, p);
        }
        base = mul_mod(&base, &base, t, p);
        e >>= 1;
    }
    acc
}

/// Basis of `{x ∈ Z^n : x mod p ∈ span(S)}` for `S` in reduced row echelon
/// form. Row `c` has diagonal entry 1 (pivot) or `p` and is zero left of
/// column `c`.
fn lattice_basis(s: &[Vec<u64>], n: usize, p: u64) -> Vec<Vec<BigInt>> {
    let mut rows = vec![Vec::new(); n];
    let mut used = vec![false; n];
    for r in s {
        let c = r.iter().position(|&v| v != 0).expect("nonzero row");
        rows[c] = r.iter().map(|&v| BigInt::from(v)).collect();
        used[c] = true;
    }
    for c in 0..n {
        if !used[c] {
            let mut r = vec![BigInt::zero(); n];
            r[c] = BigInt::from(p);
            rows[c] = r;
        }
    }
    rows
}

/// Integer solution `y` of `y M = v` for upper triangular `M`.
fn solve_upper(m: &[Vec<BigInt>], v: &[BigInt]) -> Vec<BigInt> {
    let n = v.len();
    let mut y: Vec<BigInt> = vec![BigInt::zero(); n];
    for c in 0..n {
        let mut acc = v[c].clone();
        for (r, yr) in y.iter().enumerate().take(c) {
            acc -= yr * &m[r][c];
        }
        let (q, rem) = acc.div_rem(&m[c][c]);
        debug_assert!(rem.is_zero());
        y[c] = q;
    }
    y
}

/// Lower triangular Hermite form of a nonsingular integer matrix (rows span
/// the lattice): row `i` is supported on columns `0..=i`, diagonal positive,
/// entries left of the diagonal reduced modulo the diagonal of their column.
pub fn hermite_lower(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let n = rows.len();
    for col in (0..n).rev() {
        let pivot = (0..=col)
            .find(|&r| !rows[r][col].is_zero())
            .expect("nonsingular");
        rows.swap(pivot, col);
        for r in 0..col {
            if rows[r][col].is_zero() {
                continue;
            }
            let a = rows[col][col].clone();
            let b = rows[r][col].clone();
            let e = a.extended_gcd(&b);
            let (g, s, t) = (e.gcd, e.x, e.y);
            let (ag, bg) = (&a / &g, &b / &g);
            let new_pivot: Vec<BigInt> = rows[col]
                .iter()
                .zip(&rows[r])
                .map(|(x, y)| &s * x + &t * y)
                .collect();
            let new_r: Vec<BigInt> = rows[col]
                .iter()
                .zip(&rows[r])
                .map(|(x, y)| &ag * y - &bg * x)
                .collect();
            rows[col] = new_pivot;
            rows[r] = new_r;
        }
        if rows[col][col].is_negative() {
            for v in rows[col].iter_mut() {
                *v = -&*v;
            }
        }
    }
    for i in 0..n {
        for j in (0..i).rev() {
            let q = rows[i][j].div_floor(&rows[j][j]);
            if q.is_zero() {
                continue;
            }
            let rj = rows[j].clone();
            for (x, y) in rows[i].iter_mut().zip(&rj) {
                *x -= &q * y;
            }
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::IntPoly;

    fn field(c: &[i64]) -> Arc<NumberField> {
        NumberField::new(&IntPoly::from_i64s(c)).unwrap()
    }

    #[test]
    fn golden_ratio_order() {
        let k = field(&[-5, 0, 1]);
        let o = Order::equation_order(&k).p_maximal(2);
        assert_eq!(o.index(), BigInt::from(2));
        assert_eq!(o.discriminant(), BigInt::from(5));
        let phi = FieldElement::new(
            &k,
            vec![
                BigRational::new(1.into(), 2.into()),
                BigRational::new(1.into(), 2.into()),
            ],
        );
        assert!(o.contains(&phi));
    }

    #[test]
    fn already_maximal() {
        let k = field(&[-2, 0, 0, 1]);
        for p in [2, 3] {
            assert!(Order::equation_order(&k).enlarge_at(p).is_none());
        }
    }

    #[test]
    fn cubic_with_index() {
        // x^3 - 12: disc -3888 = -2^4 3^5, field disc -972
        let k = field(&[-12, 0, 0, 1]);
        let o = Order::equation_order(&k).p_maximal(2).p_maximal(3);
        assert_eq!(o.discriminant(), BigInt::from(-972));
    }

    #[test]
    fn hermite_form_is_triangular() {
        let m = vec![
            vec![BigInt::from(4), BigInt::from(6), BigInt::from(2)],
            vec![BigInt::from(3), BigInt::from(1), BigInt::from(5)],
            vec![BigInt::from(0), BigInt::from(7), BigInt::from(1)],
        ];
        let h = hermite_lower(m);
        for (i, r) in h.iter().enumerate() {
            assert!(r[i + 1..].iter().all(|v| v.is_zero()));
            assert!(r[i].is_positive());
        }
        let det: BigInt = (0..3).map(|i| h[i][i].clone()).product();
        assert_eq!(det, BigInt::from(112));
    }
}
