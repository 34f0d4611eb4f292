//! Runtime scalars and the equivalence/ordering every block shares.
//!
//! Every value is carried as text. Two values are *equivalent* when their
//! [`CanonKey`]s are equal: numeric text compares by numeric value, anything
//! else compares case-insensitively. No whitespace is trimmed, so `" 5"` is
//! text, not the number 5.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

/// A runtime scalar. Numbers and booleans are just text with a canonical form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Value(String);

pub const YES: &str = "yes";
pub const NO: &str = "no";

impl Value {
    pub fn new(text: impl Into<String>) -> Self {
        Value(text.into())
    }

    pub fn empty() -> Self {
        Value(String::new())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }

    /// Canonical text for a number: shortest round-trip decimal, no exponent.
    pub fn from_number(n: f64) -> Self {
        Value(format_number(n))
    }

    pub fn from_bool(b: bool) -> Self {
        Value::new(if b { YES } else { NO })
    }

    pub fn canon(&self) -> CanonKey {
        canon(self.as_str())
    }

    /// Numeric reading used by arithmetic blocks; non-numeric text reads as 0.
    pub fn to_number_or_zero(&self) -> f64 {
        parse_number(&self.0).unwrap_or(0.0)
    }

    pub fn as_number(&self) -> Option<f64> {
        parse_number(&self.0)
    }

    /// Condition truthiness: equivalent to `"yes"`.
    pub fn is_truthy(&self) -> bool {
        match self.canon() {
            CanonKey::Text(t) => t == YES,
            CanonKey::Num(_) => false,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::new(s)
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value(s)
    }
}

/// Equivalence key. `Num` always holds a finite value with `-0` folded to `0`.
#[derive(Clone, Debug)]
pub enum CanonKey {
    Num(f64),
    Text(String),
}

impl PartialEq for CanonKey {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for CanonKey {}

impl Hash for CanonKey {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            CanonKey::Num(n) => {
                0u8.hash(state);
                n.to_bits().hash(state);
            }
            CanonKey::Text(t) => {
                1u8.hash(state);
                t.hash(state);
            }
        }
    }
}

impl PartialOrd for CanonKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Numbers sort before text; text sorts by code point of the folded form.
impl Ord for CanonKey {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (CanonKey::Num(a), CanonKey::Num(b)) => a.total_cmp(b),
            (CanonKey::Num(_), CanonKey::Text(_)) => Ordering::Less,
            (CanonKey::Text(_), CanonKey::Num(_)) => Ordering::Greater,
            (CanonKey::Text(a), CanonKey::Text(b)) => a.cmp(b),
        }
    }
}

pub fn canon(text: &str) -> CanonKey {
    match parse_number(text) {
        Some(n) => CanonKey::Num(n),
        None => CanonKey::Text(text.to_lowercase()),
    }
}

pub fn compare(a: &Value, b: &Value) -> Ordering {
    a.canon().cmp(&b.canon())
}

pub fn equivalent(a: &Value, b: &Value) -> bool {
    compare(a, b) == Ordering::Equal
}

/// Parses `[+-]? (digits [. digits?] | . digits) ([eE] [+-]? digits)?` with
/// no surrounding whitespace. Returns `None` for anything else, including
/// values that overflow to infinity.
pub fn parse_number(text: &str) -> Option<f64> {
    if !is_number_literal(text.as_bytes()) {
        return None;
    }
    let n: f64 = text.parse().ok()?;
    if !n.is_finite() {
        return None;
    }
    Some(if n == 0.0 { 0.0 } else { n })
}

fn is_number_literal(s: &[u8]) -> bool {
    let mut i = 0;
    if matches!(s.first(), Some(b'+' | b'-')) {
        i += 1;
    }
    let int_start = i;
    while i < s.len() && s[i].is_ascii_digit() {
        i += 1;
    }
    let int_digits = i - int_start;
    let mut frac_digits = 0;
    if i < s.len() && s[i] == b'.' {
        i += 1;
        let frac_start = i;
        while i < s.len() && s[i].is_ascii_digit() {
            i += 1;
        }
        frac_digits = i - frac_start;
    }
    if int_digits == 0 && frac_digits == 0 {
        return false;
    }
    if i < s.len() && (s[i] == b'e' || s[i] == b'E') {
        i += 1;
        if i < s.len() && (s[i] == b'+' || s[i] == b'-') {
            i += 1;
        }
        let exp_start = i;
        while i < s.len() && s[i].is_ascii_digit() {
            i += 1;
        }
        if i == exp_start {
            return false;
        }
    }
    i == s.len()
}

pub fn format_number(n: f64) -> String {
    if n.is_nan() {
        "NaN".to_owned()
    } else if n.is_infinite() {
        if n > 0.0 { "Infinity" } else { "-Infinity" }.to_owned()
    } else if n == 0.0 {
        "0".to_owned()
    } else {
        // f64's Display is the shortest representation that round-trips.
        format!("{n}")
    }
}
