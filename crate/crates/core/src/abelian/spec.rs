//! Abelian fields `K ⊆ Q(ζ_f)` given by subgroups `H ⊆ (Z/fZ)^*`, their
//! characters, conductors and splitting primes.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::group::{all_subgroups, minimal_generators, subgroup_expand, units, UnitGroup};
use crate::error::{Error, Result};
use crate::primes::is_prime_u64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct RawSpec {
    modulus: u64,
    #[serde(default)]
    generators: Vec<u64>,
}

/// The fixed field of `H` in `Q(ζ_f)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSpec", into = "RawSpec")]
pub struct AbelianSpec {
    modulus: u64,
    generators: Vec<u64>,
    subgroup: Vec<u64>,
}

impl TryFrom<RawSpec> for AbelianSpec {
    type Error = Error;
    fn try_from(r: RawSpec) -> Result<Self> {
        AbelianSpec::new(r.modulus, &r.generators)
    }
}

impl From<AbelianSpec> for RawSpec {
    fn from(s: AbelianSpec) -> RawSpec {
        RawSpec {
            modulus: s.modulus,
            generators: s.generators,
        }
    }
}

impl AbelianSpec {
    pub fn new(modulus: u64, generators: &[u64]) -> Result<AbelianSpec> {
        let subgroup = subgroup_expand(modulus, generators)?;
        let generators = generators.iter().map(|g| g % modulus).collect();
        Ok(AbelianSpec {
            modulus,
            generators,
            subgroup,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn subgroup(&self) -> &[u64] {
        &self.subgroup
    }

    pub fn degree(&self) -> usize {
        units(self.modulus).len() / self.subgroup.len()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.subgroup.binary_search(&(x % self.modulus)).is_ok()
    }

    /// Smallest `m | f` with `H ⊇ ker((Z/fZ)^* → (Z/mZ)^*)`.
    pub fn conductor(&self) -> u64 {
        let f = self.modulus;
        let g = units(f);
        divisors(f)
            .into_iter()
            .find(|&m| {
                g.iter()
                    .filter(|&&x| x % m == 1 % m)
                    .all(|&x| self.contains(x))
            })
            .expect("f itself qualifies")
    }

    /// The same field presented with its conductor as modulus.
    pub fn minimized(&self) -> AbelianSpec {
        let m = self.conductor();
        if m == self.modulus {
            return self.clone();
        }
        let mut image: Vec<u64> = self.subgroup.iter().map(|x| x % m).collect();
        image.sort_unstable();
        image.dedup();
        let gens = minimal_generators(m, &image);
        AbelianSpec::new(m, &gens).expect("reduced units are units")
    }
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Character {
    /// `χ(g_j) = exp(2πi e_j / n_j)` on the generators of `(Z/fZ)^*`.
    pub exponents: Vec<u64>,
    pub order: u64,
    pub conductor: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CharacterTable {
    pub modulus: u64,
    pub generators: Vec<u64>,
    pub orders: Vec<u64>,
    pub characters: Vec<Character>,
}

/// `χ(x)` as a fraction `k / L` of a full turn, `L = lcm(n_j)`.
fn phase(g: &UnitGroup, e: &[u64], x: u64, l: u64) -> u64 {
    g.log(x)
        .iter()
        .zip(e)
        .zip(&g.orders)
        .map(|((&a, &c), &n)| (a * c % n) * (l / n))
        .sum::<u64>()
        % l
}

/// The characters of `(Z/fZ)^*` trivial on `H` with their conductors.
pub fn character_group(spec: &AbelianSpec) -> CharacterTable {
    let f = spec.modulus;
    let g = UnitGroup::new(f);
    let l = g.orders.iter().fold(1u64, |a, &n| a.lcm(&n));
    let all_units = units(f);
    let mut characters = Vec::new();
    let mut e = vec![0u64; g.orders.len()];
    loop {
        if spec.generators.iter().all(|&h| phase(&g, &e, h, l) == 0) {
            let order = e
                .iter()
                .zip(&g.orders)
                .fold(1u64, |acc, (&c, &n)| acc.lcm(&(n / c.gcd(&n))));
            let conductor = divisors(f)
                .into_iter()
                .find(|&m| {
                    all_units
                        .iter()
                        .filter(|&&x| x % m == 1 % m)
                        .all(|&x| phase(&g, &e, x, l) == 0)
                })
                .expect("f itself qualifies");
            characters.push(Character {
                exponents: e.clone(),
                order,
                conductor,
            });
        }
        let mut i = 0;
        while i < e.len() {
            e[i] += 1;
            if e[i] < g.orders[i] {
                break;
            }
            e[i] = 0;
            i += 1;
        }
        if i == e.len() {
            break;
        }
    }
    CharacterTable {
        modulus: f,
        generators: g.generators.clone(),
        orders: g.orders.clone(),
        characters,
    }
}

/// `|Δ_K| = ∏ f(χ)`.
pub fn conductor_discriminant(spec: &AbelianSpec) -> BigInt {
    character_group(spec)
        .characters
        .iter()
        .map(|c| BigInt::from(c.conductor))
        .product()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConductorReport {
    pub conductor: u64,
    /// Present when the conductor is smaller than the given modulus.
    pub minimized: Option<AbelianSpec>,
    #[serde(with = "crate::exactalg::decimal")]
    pub discriminant_abs: BigInt,
    pub degree: usize,
    /// `𝔣 ≤ |Δ|^(2/d)`, decided as `𝔣^d ≤ |Δ|^2`.
    pub bound_holds: bool,
}

/// The conductor as the lcm of the character conductors.
pub fn field_conductor(spec: &AbelianSpec) -> ConductorReport {
    let table = character_group(spec);
    let conductor = table
        .characters
        .iter()
        .fold(1u64, |a, c| a.lcm(&c.conductor));
    let disc: BigInt = table
        .characters
        .iter()
        .map(|c| BigInt::from(c.conductor))
        .product();
    let d = table.characters.len();
    let bound_holds = BigInt::from(conductor).pow(d as u32) <= &disc * &disc;
    let minimized = (conductor != spec.modulus).then(|| spec.minimized());
    ConductorReport {
        conductor,
        minimized,
        discriminant_abs: disc,
        degree: d,
        bound_holds,
    }
}

/// `p` splits completely iff it is unramified and `p mod 𝔣 ∈ H`.
pub fn splits_completely_abelian(spec: &AbelianSpec, p: u64) -> Result<bool> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let s = if spec.modulus.is_multiple_of(p) {
        spec.minimized()
    } else {
        spec.clone()
    };
    if s.modulus % p == 0 {
        return Ok(false);
    }
    Ok(s.contains(p))
}

/// Every abelian field of conductor exactly `f` for `3 ≤ f ≤ max_f`,
/// one spec per subgroup, ordered by `f` then subgroup.
pub fn corpus(max_f: u64) -> Vec<AbelianSpec> {
    let mut out = Vec::new();
    for f in 3..=max_f {
        for h in all_subgroups(f) {
            let gens = minimal_generators(f, &h);
            let spec = AbelianSpec::new(f, &gens).expect("units");
            if spec.conductor() == f {
                out.push(spec);
            }
        }
    }
    out
}
