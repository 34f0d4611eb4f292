use indexmap::IndexMap;

use super::value::{CanonKey, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetOp {
    Union,
    Intersection,
    Difference,
}

/// Insertion-ordered set; no two members are equivalent. The first
/// representation added is the one kept.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SetDs {
    members: IndexMap<CanonKey, Value>,
}

impl SetDs {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, v: Value) {
        self.members.entry(v.canon()).or_insert(v);
    }

    pub fn contains(&self, v: &Value) -> bool {
        self.members.contains_key(&v.canon())
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn size(&self) -> Value {
        Value::from_number(self.members.len() as f64)
    }

    pub fn items(&self) -> impl Iterator<Item = &Value> {
        self.members.values()
    }

    /// Fresh set; neither input is modified. Results follow left order,
    /// with UNION appending right-only members after.
    pub fn combine(&self, op: SetOp, right: &SetDs) -> SetDs {
        let mut out = SetDs::new();
        match op {
            SetOp::Union => {
                for v in self.items().chain(right.items()) {
                    out.add(v.clone());
                }
            }
            SetOp::Intersection => {
                for (k, v) in &self.members {
                    if right.members.contains_key(k) {
                        out.members.insert(k.clone(), v.clone());
                    }
                }
            }
            SetOp::Difference => {
                for (k, v) in &self.members {
                    if !right.members.contains_key(k) {
                        out.members.insert(k.clone(), v.clone());
                    }
                }
            }
        }
        out
    }
}

impl FromIterator<Value> for SetDs {
    fn from_iter<I: IntoIterator<Item = Value>>(iter: I) -> Self {
        let mut s = SetDs::new();
        for v in iter {
            s.add(v);
        }
        s
    }
}
