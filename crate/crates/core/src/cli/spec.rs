//! JSON field specifications.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::abelian::{defining_polynomial, AbelianSpec};
use crate::error::{Error, Result};
use crate::exactalg::IntPoly;
use crate::primes::{factor_u64, is_prime_u64};

/// A field as written in a spec file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum FieldSpecDocument {
    /// Coefficients from the constant term up.
    Polynomial { coefficients: Vec<i64> },
    /// `Q(√m)` for squarefree `m ∉ {0, 1}`.
    Quadratic { m: i64 },
    /// The fixed field of the subgroup generated by `subgroup` in `(Z/fZ)^*`.
    Abelian {
        modulus: u64,
        #[serde(alias = "generators")]
        subgroup: Vec<u64>,
    },
    /// `Q(2^(1/m), (p/q)^(1/n))`.
    RadicalFamily { m: u64, n: u64, p: u64, q: u64 },
}

/// A validated specification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Polynomial(IntPoly),
    Abelian(AbelianSpec),
    RadicalFamily { m: u64, n: u64, p: u64, q: u64 },
}

fn squarefree(m: i64) -> bool {
    m != 0 && factor_u64(m.unsigned_abs()).iter().all(|&(_, e)| e == 1)
}

impl FieldSpecDocument {
    pub fn parse(text: &str) -> Result<FieldSpecDocument> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec documents serialize")
    }

    pub fn validate(&self) -> Result<FieldSpec> {
        match self {
            FieldSpecDocument::Polynomial { coefficients } => {
                let f = IntPoly::from_i64s(coefficients);
                if f.is_zero() {
                    return Err(Error::ZeroPolynomial);
                }
                if f.degree() < 1 {
                    return Err(Error::DegreeTooSmall { min: 1, got: 0 });
                }
                Ok(FieldSpec::Polynomial(f))
            }
            &FieldSpecDocument::Quadratic { m } => {
                if !squarefree(m) {
                    return Err(Error::NotSquarefreeInteger {
                        value: m.to_string(),
                    });
                }
                if m == 1 {
                    return Err(Error::InvalidArgument("m = 1 gives the rationals".into()));
                }
                Ok(FieldSpec::Polynomial(IntPoly::new(vec![
                    BigInt::from(-m),
                    BigInt::from(0),
                    BigInt::from(1),
                ])))
            }
            FieldSpecDocument::Abelian { modulus, subgroup } => {
                Ok(FieldSpec::Abelian(AbelianSpec::new(*modulus, subgroup)?))
            }
            &FieldSpecDocument::RadicalFamily { m, n, p, q } => {
                for x in [p, q] {
                    if !is_prime_u64(x) {
                        return Err(Error::NotPrime(x.to_string()));
                    }
                }
                if !(1 <= m && m < p && p < q && q < 2 * p && n > 1) {
                    return Err(Error::Precondition(format!(
                        "need 1 <= m < p < q < 2p and n > 1, got m = {m}, n = {n}, p = {p}, q = {q}"
                    )));
                }
                Ok(FieldSpec::RadicalFamily { m, n, p, q })
            }
        }
    }

    /// The payload in a normal form: primitive polynomials with positive
    /// leading coefficient, subgroups listed in full.
    pub fn normalized(&self) -> Result<FieldSpecDocument> {
        Ok(match self.validate()? {
            FieldSpec::Polynomial(_) if matches!(self, FieldSpecDocument::Quadratic { .. }) => {
                self.clone()
            }
            FieldSpec::Polynomial(f) => {
                let mut g = f.primitive_part();
                if g.lead() < BigInt::from(0) {
                    g = -&g;
                }
                FieldSpecDocument::Polynomial {
                    coefficients: g
                        .to_i64s()
                        .ok_or_else(|| Error::InvalidArgument("coefficient overflow".into()))?,
                }
            }
            FieldSpec::Abelian(s) => FieldSpecDocument::Abelian {
                modulus: s.modulus(),
                subgroup: s.subgroup().to_vec(),
            },
            FieldSpec::RadicalFamily { .. } => self.clone(),
        })
    }

    /// SHA-256 of the normalized payload.
    pub fn canonical_hash(&self) -> Result<String> {
        let text = self.normalized()?.to_json();
        Ok(hex::encode(Sha256::digest(text.as_bytes())))
    }
}

impl FieldSpec {
    /// A defining polynomial: the input, the Gaussian period polynomial, or
    /// for the radical family `q x^n - p` when `m = 1`.
    pub fn polynomial(&self) -> Result<IntPoly> {
        match self {
            FieldSpec::Polynomial(f) => Ok(f.clone()),
            FieldSpec::Abelian(s) => defining_polynomial(s),
            &FieldSpec::RadicalFamily { m, n, p, q } => {
                if m != 1 {
                    return Err(Error::InvalidArgument(
                        "radical families with m > 1 have no single-radical defining polynomial"
                            .into(),
                    ));
                }
                Ok(&IntPoly::monomial(BigInt::from(q), n as usize)
                    - &IntPoly::constant(BigInt::from(p)))
            }
        }
    }
}

/// Parses and validates a spec document.
pub fn parse_field_spec(text: &str) -> Result<FieldSpec> {
    FieldSpecDocument::parse(text)?.validate()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(
            parse_field_spec(r#"{"type":"quadratic","m":-5}"#).unwrap(),
            FieldSpec::Polynomial(IntPoly::from_i64s(&[5, 0, 1]))
        );
        let s = parse_field_spec(r#"{"type":"abelian","modulus":5,"subgroup":[4]}"#).unwrap();
        assert_eq!(s, FieldSpec::Abelian(AbelianSpec::new(5, &[4]).unwrap()));
        assert!(matches!(
            parse_field_spec(r#"{"type":"quadratic","m":12}"#),
            Err(Error::NotSquarefreeInteger { .. })
        ));
    }

    #[test]
    fn distinct_errors() {
        let codes: Vec<i32> = [
            r#"{"type":"quadratic","m":"#,
            r#"{"type":"quadratic","m":18}"#,
            r#"{"type":"abelian","modulus":12,"subgroup":[4]}"#,
            r#"{"type":"radical-family","m":1,"n":2,"p":9,"q":11}"#,
        ]
        .iter()
        .map(|t| parse_field_spec(t).unwrap_err().code())
        .collect();
        let mut unique = codes.clone();
        unique.sort_unstable();
        unique.dedup();
        assert_eq!(unique.len(), 4, "{codes:?}");
    }

    #[test]
    fn hash_ignores_presentation() {
        let a = FieldSpecDocument::parse(r#"{"type":"abelian","modulus":12,"subgroup":[5,7]}"#)
            .unwrap();
        let b = FieldSpecDocument::parse(r#"{"type":"abelian","modulus":12,"subgroup":[7,11]}"#)
            .unwrap();
        assert_eq!(a.canonical_hash().unwrap(), b.canonical_hash().unwrap());
        let c =
            FieldSpecDocument::parse(r#"{"type":"polynomial","coefficients":[-10,0,-2]}"#).unwrap();
        let d =
            FieldSpecDocument::parse(r#"{"type":"polynomial","coefficients":[5,0,1]}"#).unwrap();
        assert_eq!(c.canonical_hash().unwrap(), d.canonical_hash().unwrap());
    }

    #[test]
    fn round_trip() {
        for text in [
            r#"{"type":"polynomial","coefficients":[-2,0,0,1]}"#,
            r#"{"type":"quadratic","m":-5}"#,
            r#"{"type":"abelian","modulus":20,"subgroup":[3,9]}"#,
            r#"{"type":"radical-family","m":1,"n":2,"p":5,"q":7}"#,
        ] {
            let doc = FieldSpecDocument::parse(text).unwrap();
            assert_eq!(doc.to_json(), text);
            assert_eq!(FieldSpecDocument::parse(&doc.to_json()).unwrap(), doc);
        }
    }
}
