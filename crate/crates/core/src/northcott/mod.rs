//! Enumeration of algebraic numbers of bounded height: minimal generator
//! heights `δ(K)` and bounded generator searches.

pub mod delta;
pub mod enumerate;

pub use delta::{
    best_integer_combination, compositum_degree, delta, find_generator_below, Combination,
    DeltaCertificate, GeneratorSearch,
};
pub use enumerate::{enumerate_candidates, EnumerationBudget};
