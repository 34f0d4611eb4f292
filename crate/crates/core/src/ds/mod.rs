//! Values, the object registry, and the three data structures.

pub mod array;
pub mod dict;
pub mod error;
pub mod registry;
pub mod set;
pub mod value;

pub use array::{ArrayDs, SortDirection, NOT_FOUND};
pub use dict::DictDs;
pub use error::{DsError, DsErrorCode, DsKind};
pub use registry::{DsObject, ObjectId, ObjectSnapshot, PairSnapshot, Registry};
pub use set::{SetDs, SetOp};
pub use value::{canon, compare, equivalent, format_number, parse_number, CanonKey, Value};
