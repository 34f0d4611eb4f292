//! Block catalog, project documents, data-structure runtime and interpreter
//! for a block language with arrays, sets and dictionaries.

pub mod catalog;
pub mod corpus;
pub mod ds;
pub mod interp;
pub mod project;
#[cfg(feature = "testkit")]
pub mod testkit;

pub use catalog::{catalog_load, catalog_lookup, BlockDef, BlockKind, Catalog, Category, Opcode, SlotType};
pub use ds::{DsError, DsErrorCode, DsKind, ObjectId, ObjectSnapshot, Registry, Value};
pub use interp::{run, Event, EventKind, Machine, Progress, SessionResult, Status, DEFAULT_STEP_BUDGET};
pub use project::{
    is_runnable, parse_project, serialize_project, validate_project, BlockInstance, DiagCode, Diagnostic, Input,
    Project, Script,
};
