//! Session-local table from opaque object ids to live data structures.
//!
//! Reporter blocks can only return text, so `create new ...` hands back an
//! id such as `set-7b1dcdaf` and every other block resolves it here.

use std::fmt;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use super::array::ArrayDs;
use super::dict::DictDs;
use super::error::{DsError, DsKind};
use super::set::{SetDs, SetOp};
use super::value::Value;

/// `<kind>-<8 lowercase hex>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ObjectId(String);

impl ObjectId {
    pub fn new(kind: DsKind, tag: u32) -> Self {
        ObjectId(format!("{}-{:08x}", kind.id_prefix(), tag))
    }

    /// Checks the id grammar and returns the family named by its prefix.
    pub fn parse(text: &str) -> Option<(DsKind, ObjectId)> {
        let (prefix, hex) = text.split_once('-')?;
        let kind = DsKind::ALL.into_iter().find(|k| k.id_prefix() == prefix)?;
        let well_formed = hex.len() == 8 && hex.bytes().all(|b| matches!(b, b'0'..=b'9' | b'a'..=b'f'));
        well_formed.then(|| (kind, ObjectId(text.to_owned())))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn to_value(&self) -> Value {
        Value::new(self.0.clone())
    }
}

impl fmt::Display for ObjectId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DsObject {
    Array(ArrayDs),
    Set(SetDs),
    Dict(DictDs),
}

impl DsObject {
    pub fn empty(kind: DsKind) -> Self {
        match kind {
            DsKind::Array => DsObject::Array(ArrayDs::new()),
            DsKind::Set => DsObject::Set(SetDs::new()),
            DsKind::Dict => DsObject::Dict(DictDs::new()),
        }
    }

    pub fn kind(&self) -> DsKind {
        match self {
            DsObject::Array(_) => DsKind::Array,
            DsObject::Set(_) => DsKind::Set,
            DsObject::Dict(_) => DsKind::Dict,
        }
    }

    /// Detached copy of what `for each element in` iterates: array items,
    /// set members, or dictionary keys, all in their stored order.
    pub fn elements_snapshot(&self) -> Vec<Value> {
        match self {
            DsObject::Array(a) => a.items().to_vec(),
            DsObject::Set(s) => s.items().cloned().collect(),
            DsObject::Dict(d) => d.keys().cloned().collect(),
        }
    }
}

/// SplitMix64 output number `counter` (0-based) for `seed`.
pub fn splitmix64(seed: u64, counter: u64) -> u64 {
    let mut z = seed.wrapping_add(counter.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone, Debug)]
pub struct Registry {
    entries: IndexMap<ObjectId, DsObject>,
    seed: u64,
    draws: u64,
}

impl Registry {
    pub fn new(seed: u64) -> Self {
        Registry { entries: IndexMap::new(), seed, draws: 0 }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Registers a fresh empty object. Ids are the low 32 bits of successive
    /// SplitMix64 draws; a draw whose id is already taken is skipped.
    pub fn create(&mut self, kind: DsKind) -> ObjectId {
        self.insert(DsObject::empty(kind))
    }

    fn insert(&mut self, obj: DsObject) -> ObjectId {
        loop {
            let draw = splitmix64(self.seed, self.draws);
            self.draws += 1;
            let id = ObjectId::new(obj.kind(), draw as u32);
            if !self.entries.contains_key(&id) {
                self.entries.insert(id.clone(), obj);
                return id;
            }
        }
    }

    /// Any-family lookup; `None` for malformed or unknown ids.
    pub fn get(&self, id: &Value) -> Option<&DsObject> {
        let (_, id) = ObjectId::parse(id.as_str())?;
        self.entries.get(&id)
    }

    pub fn resolve(&self, id: &Value, expected: DsKind) -> Result<&DsObject, DsError> {
        let obj = self.get(id).ok_or_else(|| DsError::invalid_object(expected))?;
        if obj.kind() != expected {
            return Err(DsError::kind_mismatch(expected));
        }
        Ok(obj)
    }

    fn resolve_mut(&mut self, id: &Value, expected: DsKind) -> Result<&mut DsObject, DsError> {
        let (_, key) = ObjectId::parse(id.as_str()).ok_or_else(|| DsError::invalid_object(expected))?;
        let obj = self.entries.get_mut(&key).ok_or_else(|| DsError::invalid_object(expected))?;
        if obj.kind() != expected {
            return Err(DsError::kind_mismatch(expected));
        }
        Ok(obj)
    }

    pub fn array(&self, id: &Value) -> Result<&ArrayDs, DsError> {
        match self.resolve(id, DsKind::Array)? {
            DsObject::Array(a) => Ok(a),
            _ => unreachable!("family checked by resolve"),
        }
    }

    pub fn array_mut(&mut self, id: &Value) -> Result<&mut ArrayDs, DsError> {
        match self.resolve_mut(id, DsKind::Array)? {
            DsObject::Array(a) => Ok(a),
            _ => unreachable!("family checked by resolve"),
        }
    }

    pub fn set(&self, id: &Value) -> Result<&SetDs, DsError> {
        match self.resolve(id, DsKind::Set)? {
            DsObject::Set(s) => Ok(s),
            _ => unreachable!("family checked by resolve"),
        }
    }

    pub fn set_mut(&mut self, id: &Value) -> Result<&mut SetDs, DsError> {
        match self.resolve_mut(id, DsKind::Set)? {
            DsObject::Set(s) => Ok(s),
            _ => unreachable!("family checked by resolve"),
        }
    }

    pub fn dict(&self, id: &Value) -> Result<&DictDs, DsError> {
        match self.resolve(id, DsKind::Dict)? {
            DsObject::Dict(d) => Ok(d),
            _ => unreachable!("family checked by resolve"),
        }
    }

    pub fn dict_mut(&mut self, id: &Value) -> Result<&mut DictDs, DsError> {
        match self.resolve_mut(id, DsKind::Dict)? {
            DsObject::Dict(d) => Ok(d),
            _ => unreachable!("family checked by resolve"),
        }
    }

    /// UNION / INTERSECTION / DIFFERENCE into a newly registered set.
    pub fn set_binary_op(&mut self, op: SetOp, left: &Value, right: &Value) -> Result<ObjectId, DsError> {
        let result = self.set(left)?.combine(op, self.set(right)?);
        Ok(self.insert(DsObject::Set(result)))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ObjectId, &DsObject)> {
        self.entries.iter()
    }

    /// Objects in creation order, ready for serialization.
    pub fn snapshot(&self) -> Vec<ObjectSnapshot> {
        self.entries.iter().map(|(id, obj)| ObjectSnapshot::of(id, obj)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairSnapshot {
    pub key: Value,
    pub value: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectSnapshot {
    pub id: ObjectId,
    pub kind: DsKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs: Option<Vec<PairSnapshot>>,
}

impl ObjectSnapshot {
    pub fn of(id: &ObjectId, obj: &DsObject) -> Self {
        let (elements, pairs) = match obj {
            DsObject::Dict(d) => (
                None,
                Some(d.pairs().map(|(k, v)| PairSnapshot { key: k.clone(), value: v.clone() }).collect()),
            ),
            other => (Some(other.elements_snapshot()), None),
        };
        ObjectSnapshot { id: id.clone(), kind: obj.kind(), elements, pairs }
    }
}
