//! Field-spec documents, JSON reports and the result cache used by the
//! command-line tool.

pub mod cache;
pub mod report;
pub mod spec;

pub use cache::{Cache, CacheEntry};
pub use report::{strip_volatile, Report, VERSION};
pub use spec::{parse_field_spec, FieldSpec, FieldSpecDocument};
