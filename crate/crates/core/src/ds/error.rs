use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Data-structure family an object id refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DsKind {
    Array,
    Set,
    Dict,
}

impl DsKind {
    pub const ALL: [DsKind; 3] = [DsKind::Array, DsKind::Set, DsKind::Dict];

    /// Prefix used in object ids (`array-`, `set-`, `dict-`).
    pub fn id_prefix(self) -> &'static str {
        match self {
            DsKind::Array => "array",
            DsKind::Set => "set",
            DsKind::Dict => "dict",
        }
    }

    /// Name as shown to learners.
    pub fn display_name(self) -> &'static str {
        match self {
            DsKind::Array => "Array",
            DsKind::Set => "Set",
            DsKind::Dict => "Dictionary",
        }
    }

    pub fn plural(self) -> &'static str {
        match self {
            DsKind::Array => "Arrays",
            DsKind::Set => "Sets",
            DsKind::Dict => "Dictionaries",
        }
    }

    /// Upper-case tag used in the catalog export.
    pub fn tag(self) -> &'static str {
        match self {
            DsKind::Array => "ARRAY",
            DsKind::Set => "SET",
            DsKind::Dict => "DICT",
        }
    }

    pub fn invalid_object_message(self) -> String {
        format!("Invalid {}", self.display_name())
    }

    pub fn kind_mismatch_message(self) -> String {
        format!("This block can only be used with {}", self.plural())
    }
}

impl fmt::Display for DsKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id_prefix())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DsErrorCode {
    InvalidObject,
    KindMismatch,
    IndexOutOfRange,
    KeyNotFound,
}

/// A learner-facing data-structure error. The message is shown verbatim.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{message}")]
pub struct DsError {
    pub code: DsErrorCode,
    pub message: String,
}

impl DsError {
    pub fn invalid_object(expected: DsKind) -> Self {
        DsError { code: DsErrorCode::InvalidObject, message: expected.invalid_object_message() }
    }

    pub fn kind_mismatch(expected: DsKind) -> Self {
        DsError { code: DsErrorCode::KindMismatch, message: expected.kind_mismatch_message() }
    }

    pub fn index_out_of_range() -> Self {
        DsError { code: DsErrorCode::IndexOutOfRange, message: "Index out of range".to_owned() }
    }

    pub fn key_not_found() -> Self {
        DsError { code: DsErrorCode::KeyNotFound, message: "Key not found".to_owned() }
    }
}
