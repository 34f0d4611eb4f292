use indexmap::IndexMap;

use super::error::DsError;
use super::value::{CanonKey, Value};

/// Insertion-ordered key/value map with pairwise non-equivalent keys.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DictDs {
    pairs: IndexMap<CanonKey, (Value, Value)>,
}

impl DictDs {
    pub fn new() -> Self {
        Self::default()
    }

    /// Replaces the value of an equivalent key in place, otherwise appends.
    pub fn put(&mut self, key: Value, value: Value) {
        match self.pairs.get_mut(&key.canon()) {
            Some(slot) => slot.1 = value,
            None => {
                self.pairs.insert(key.canon(), (key, value));
            }
        }
    }

    pub fn get(&self, key: &Value) -> Result<Value, DsError> {
        self.pairs.get(&key.canon()).map(|(_, v)| v.clone()).ok_or_else(DsError::key_not_found)
    }

    pub fn has_key(&self, key: &Value) -> bool {
        self.pairs.contains_key(&key.canon())
    }

    /// Removing an absent key is a no-op.
    pub fn remove(&mut self, key: &Value) {
        self.pairs.shift_remove(&key.canon());
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn size(&self) -> Value {
        Value::from_number(self.pairs.len() as f64)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&Value, &Value)> {
        self.pairs.values().map(|(k, v)| (k, v))
    }

    pub fn keys(&self) -> impl Iterator<Item = &Value> {
        self.pairs.values().map(|(k, _)| k)
    }
}
