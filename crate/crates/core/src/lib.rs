//! Exact computations with Weil heights, small generators of number fields,
//! abelian conductors and primes in arithmetic progressions.

pub mod abelian;
pub mod cli;
pub mod error;
pub mod exactalg;
pub mod heights;
pub mod northcott;
pub mod numfield;
pub mod pipelines;
pub mod primes;

pub use error::{Error, Result};
