//! Abelian number fields as subgroups of `(Z/fZ)^*`.

pub mod group;
pub mod periods;
pub mod spec;

pub use group::subgroup_expand;
pub use periods::defining_polynomial;
pub use spec::{
    character_group, conductor_discriminant, corpus, field_conductor, splits_completely_abelian,
    AbelianSpec, Character, CharacterTable, ConductorReport,
};
