//! Arrays, plus the quicksort and binary search behind the sort/search blocks.

use std::cmp::Ordering;

use super::error::DsError;
use super::value::{CanonKey, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SortDirection {
    Ascending,
    Descending,
}

/// Ordered multiset of values, addressed 1-based from blocks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ArrayDs {
    items: Vec<Value>,
}

pub const NOT_FOUND: &str = "not found";

impl ArrayDs {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_items(items: Vec<Value>) -> Self {
        ArrayDs { items }
    }

    pub fn items(&self) -> &[Value] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn add(&mut self, v: Value) {
        self.items.push(v);
    }

    pub fn length(&self) -> Value {
        Value::from_number(self.items.len() as f64)
    }

    pub fn item_at(&self, index: &Value) -> Result<Value, DsError> {
        let n = index.as_number().ok_or_else(DsError::index_out_of_range)?;
        if n.fract() != 0.0 || n < 1.0 || n > self.items.len() as f64 {
            return Err(DsError::index_out_of_range());
        }
        Ok(self.items[n as usize - 1].clone())
    }

    /// In-place sort. Ties keep their original relative order.
    pub fn sort(&mut self, direction: SortDirection) {
        let mut keys = sort_keys(&self.items);
        quicksort(&mut keys, &|a: &(CanonKey, usize), b: &(CanonKey, usize)| {
            let primary = match direction {
                SortDirection::Ascending => a.0.cmp(&b.0),
                SortDirection::Descending => b.0.cmp(&a.0),
            };
            primary.then(a.1.cmp(&b.1))
        });
        let mut old: Vec<Option<Value>> = std::mem::take(&mut self.items).into_iter().map(Some).collect();
        self.items = keys.into_iter().map(|(_, i)| old[i].take().expect("permutation")).collect();
    }

    /// 1-based indices of every item equivalent to `target`, ascending and
    /// comma-separated, or `"not found"`. The array itself is left untouched;
    /// the search runs over a sorted index permutation.
    pub fn search(&self, target: &Value) -> Value {
        let mut keys = sort_keys(&self.items);
        quicksort(&mut keys, &|a: &(CanonKey, usize), b: &(CanonKey, usize)| {
            a.0.cmp(&b.0).then(a.1.cmp(&b.1))
        });
        let target = target.canon();
        let start = lower_bound(&keys, &target);
        let hits: Vec<String> = keys[start..]
            .iter()
            .take_while(|(k, _)| *k == target)
            .map(|(_, i)| (i + 1).to_string())
            .collect();
        if hits.is_empty() {
            Value::new(NOT_FOUND)
        } else {
            Value::new(hits.join(","))
        }
    }
}

fn sort_keys(items: &[Value]) -> Vec<(CanonKey, usize)> {
    items.iter().enumerate().map(|(i, v)| (v.canon(), i)).collect()
}

/// First position whose key is not less than `target`.
fn lower_bound(keys: &[(CanonKey, usize)], target: &CanonKey) -> usize {
    let (mut lo, mut hi) = (0, keys.len());
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if keys[mid].0 < *target {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Quicksort with a median-of-three pivot. Recurses into the smaller
/// partition and loops on the larger, so stack depth stays logarithmic.
pub fn quicksort<T, F>(xs: &mut [T], cmp: &F)
where
    F: Fn(&T, &T) -> Ordering,
{
    let mut xs = xs;
    while xs.len() > 1 {
        let p = partition(xs, cmp);
        let (left, right) = xs.split_at_mut(p);
        let right = &mut right[1..];
        if left.len() < right.len() {
            quicksort(left, cmp);
            xs = right;
        } else {
            quicksort(right, cmp);
            xs = left;
        }
    }
}

fn partition<T, F>(xs: &mut [T], cmp: &F) -> usize
where
    F: Fn(&T, &T) -> Ordering,
{
    let last = xs.len() - 1;
    let mid = last / 2;
    // Order xs[0], xs[mid], xs[last]; the median lands in the middle.
    if cmp(&xs[mid], &xs[0]) == Ordering::Less {
        xs.swap(mid, 0);
    }
    if cmp(&xs[last], &xs[0]) == Ordering::Less {
        xs.swap(last, 0);
    }
    if cmp(&xs[last], &xs[mid]) == Ordering::Less {
        xs.swap(last, mid);
    }
    xs.swap(mid, last);
    let mut store = 0;
    for i in 0..last {
        if cmp(&xs[i], &xs[last]) == Ordering::Less {
            xs.swap(i, store);
            store += 1;
        }
    }
    xs.swap(store, last);
    store
}
