//! The unit group `(Z/fZ)^*` as a product of cyclic factors, and its
//! subgroups.

use std::collections::{BTreeSet, HashMap};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::primes::factor_u64;

/// Multiplicative closure of `gens ∪ {1}` in `(Z/fZ)^*`, sorted.
pub fn subgroup_expand(f: u64, gens: &[u64]) -> Result<Vec<u64>> {
    if f == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    for &g in gens {
        if g.gcd(&f) != 1 {
            return Err(Error::NotCoprime {
                gen: g.to_string(),
                modulus: f.to_string(),
            });
        }
    }
    let one = 1 % f;
    let mut set = BTreeSet::from([one]);
    let mut frontier = vec![one];
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = mul(x, g % f, f);
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    Ok(set.into_iter().collect())
}

fn mul(a: u64, b: u64, f: u64) -> u64 {
    ((a as u128 * b as u128) % f as u128) as u64
}

pub fn units(f: u64) -> Vec<u64> {
    (0..f).filter(|x| x.gcd(&f) == 1).collect()
}

fn order_mod(g: u64, m: u64) -> u64 {
    let mut x = g % m;
    let mut k = 1;
    while x != 1 % m {
        x = mul(x, g, m);
        k += 1;
    }
    k
}

fn primitive_root(m: u64, phi: u64) -> u64 {
    (2..m)
        .find(|&g| g.gcd(&m) == 1 && order_mod(g, m) == phi)
        .unwrap_or(1)
}

/// CRT lift of `r mod m` to `f` that is 1 modulo the cofactor.
fn lift(r: u64, m: u64, f: u64) -> u64 {
    let other = f / m;
    (0..other)
        .map(|k| r + k * m)
        .find(|x| x % other == 1 % other)
        .expect("coprime moduli")
}

/// `(Z/fZ)^* ≅ ∏ Z/n_j` with generators `g_j` of order `n_j`, and the
/// exponent vector of every unit.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct UnitGroup {
    pub modulus: u64,
    pub generators: Vec<u64>,
    pub orders: Vec<u64>,
    #[serde(skip)]
    logs: HashMap<u64, Vec<u64>>,
}

impl UnitGroup {
    pub fn new(f: u64) -> UnitGroup {
        let mut generators = Vec::new();
        let mut orders = Vec::new();
        for (p, k) in factor_u64(f) {
            let m = p.pow(k);
            if p == 2 {
                if k >= 2 {
                    generators.push(lift(m - 1, m, f));
                    orders.push(2);
                }
                if k >= 3 {
                    generators.push(lift(5, m, f));
                    orders.push(1 << (k - 2));
                }
            } else {
                let phi = (p - 1) * p.pow(k - 1);
                generators.push(lift(primitive_root(m, phi), m, f));
                orders.push(phi);
            }
        }
        let mut logs = HashMap::new();
        let mut vec = vec![0u64; orders.len()];
        loop {
            let x = generators
                .iter()
                .zip(&vec)
                .fold(1 % f.max(1), |acc, (&g, &e)| mul(acc, pow_mod(g, e, f), f));
            logs.insert(x, vec.clone());
            let mut i = 0;
            while i < vec.len() {
                vec[i] += 1;
                if vec[i] < orders[i] {
                    break;
                }
                vec[i] = 0;
                i += 1;
            }
            if i == vec.len() {
                break;
            }
        }
        UnitGroup {
            modulus: f,
            generators,
            orders,
            logs,
        }
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    /// Exponent vector of a unit on the generators.
    pub fn log(&self, x: u64) -> &[u64] {
        &self.logs[&(x % self.modulus)]
    }

    pub fn elements(&self) -> impl Iterator<Item = &u64> {
        self.logs.keys()
    }
}

pub fn pow_mod(g: u64, mut e: u64, f: u64) -> u64 {
    let mut acc = 1 % f;
    let mut b = g % f;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, b, f);
        }
        b = mul(b, b, f);
        e >>= 1;
    }
    acc
}

/// All subgroups of `(Z/fZ)^*`, each sorted, in a deterministic order.
pub fn all_subgroups(f: u64) -> Vec<Vec<u64>> {
    let g = units(f);
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    let trivial = vec![1 % f];
    seen.insert(trivial.clone());
    let mut frontier = vec![trivial];
    while let Some(h) = frontier.pop() {
        for &x in &g {
            if h.binary_search(&x).is_ok() {
                continue;
            }
            let mut gens = h.clone();
            gens.push(x);
            let s = subgroup_expand(f, &gens).expect("units");
            if seen.insert(s.clone()) {
                frontier.push(s);
            }
        }
    }
    seen.into_iter().collect()
}

/// A small generating set, greedily from the smallest residues.
pub fn minimal_generators(f: u64, h: &[u64]) -> Vec<u64> {
    let mut gens = Vec::new();
    let mut span = vec![1 % f];
    for &x in h {
        if span.binary_search(&x).is_err() {
            gens.push(x);
            span = subgroup_expand(f, &gens).expect("units");
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expansion_examples() {
        assert_eq!(subgroup_expand(5, &[4]).unwrap(), vec![1, 4]);
        assert_eq!(subgroup_expand(8, &[]).unwrap(), vec![1]);
        assert_eq!(subgroup_expand(12, &[5, 7]).unwrap(), vec![1, 5, 7, 11]);
        assert!(matches!(
            subgroup_expand(12, &[4]),
            Err(Error::NotCoprime { .. })
        ));
    }

    #[test]
    fn unit_group_structure() {
        for f in 1..200u64 {
            let g = UnitGroup::new(f);
            assert_eq!(g.order() as usize, units(f).len(), "f = {f}");
            assert_eq!(g.elements().count(), units(f).len());
        }
        assert_eq!(UnitGroup::new(8).orders, vec![2, 2]);
        assert_eq!(UnitGroup::new(24).orders.len(), 3);
    }

    #[test]
    fn subgroup_lattice() {
        // C4 has 3 subgroups, C2 x C2 has 5
        assert_eq!(all_subgroups(5).len(), 3);
        assert_eq!(all_subgroups(8).len(), 5);
        let h = subgroup_expand(24, &[5, 7, 13]).unwrap();
        assert_eq!(minimal_generators(24, &h).len(), 3);
    }
}
