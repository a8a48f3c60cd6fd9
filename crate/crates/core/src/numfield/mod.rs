//! Number fields, element arithmetic, root-in-field tests, orders and
//! discriminants.

pub mod disc;
pub mod field;
mod fpmat;
pub mod order;
pub mod trager;

pub use disc::{
    dedekind_p_maximal, field_discriminant, splits_completely, DiscStatus, DiscriminantResult,
};
pub use field::{FieldElement, NumberField};
pub use order::Order;
pub use trager::{
    fields_isomorphic, find_root_in_field, has_root_in_field, minpoly_of_combination,
    minpoly_of_combination_at,
};
