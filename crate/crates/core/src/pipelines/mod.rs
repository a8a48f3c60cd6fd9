//! End-to-end checks combining heights, generator searches, abelian fields
//! and prime searches.

pub mod bounds;
pub mod composite;
pub mod family;
pub mod thm12;

use serde::{Serialize, Serializer};

pub use bounds::{exponent_table, silverman_lower_bound, ExponentTable, FamilyExponent};
pub use composite::{composite_coprime_check, CompositeReport};
pub use family::{verify_family, FamilyReport};
pub use thm12::{verify_thm12_steps, DeltaCheck, Thm12Report};

/// Outcome of a certified inequality check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    Undecided,
}

pub(crate) fn as_string<T: std::fmt::Display, S: Serializer>(
    v: &T,
    s: S,
) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub(crate) fn as_opt_string<T: std::fmt::Display, S: Serializer>(
    v: &Option<T>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.collect_str(x),
        None => s.serialize_none(),
    }
}
