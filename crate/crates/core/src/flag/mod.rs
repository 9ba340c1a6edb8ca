//! Type-A flag geometry over small finite fields: a brute-force oracle for the
//! Weyl-group layer.
//!
//! Point counts never certify irreducibility. The checks here cover set-level
//! identities between Deligne-Lusztig point sets and the fibration counts that
//! the combinatorial verdict predicts.

pub mod checks;
pub mod field;
pub mod flags;
pub mod group;
pub mod linalg;
pub mod model;
pub mod position;

pub use checks::{run_properties, Property, PropertyReport, Status};
pub use field::FiniteField;
pub use flags::{enumerate_flags, flag_count, truncate_map, PartialFlag, Subspace};
pub use group::{gl_elements, gl_order, CellCheck};
pub use model::{FlagModel, FrobeniusKind, FrobeniusMap};
pub use position::{relative_position, RelativePosition};
