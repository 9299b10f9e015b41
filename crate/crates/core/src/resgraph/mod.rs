//! Dual resolution graphs: model, file format, derived data, relations and
//! graph-level blowups.

mod blowup;
mod derive;
mod format;
mod iso;
mod model;
mod relations;

pub use blowup::{blowup_free, blowup_satellite, invert_germ, BlowupError};
pub use derive::{derive, pair_chi, ComponentData, DerivedData};
pub use format::{parse_graph, serialize_graph};
pub use iso::{canonical_form, isomorphic};
pub use model::{Clause, Component, GraphError, Kind, ResolutionGraph};
pub use relations::{
    alpha, dicritical_warnings, validate_relations, RelationCheck, RelationEntry, RelationsReport,
};
