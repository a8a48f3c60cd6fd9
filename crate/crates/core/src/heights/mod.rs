//! Absolute Weil heights of algebraic numbers with certified comparisons.

pub mod bound;
pub mod height;

pub use bound::PowerProduct;
pub use height::{
    canonical_poly, compare, height_algebraic, height_algebraic_at, height_element,
    height_rational, LogHeight,
};
