use std::fmt::{self, Write as _};

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::ds::{format_number, ObjectSnapshot, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Completed,
    BudgetExceeded,
    InputExhausted,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Completed => "COMPLETED",
            Status::BudgetExceeded => "BUDGET_EXCEEDED",
            Status::InputExhausted => "INPUT_EXHAUSTED",
        }
    }

    /// Process exit code for a run ending this way.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Completed => 0,
            Status::BudgetExceeded => 2,
            Status::InputExhausted => 3,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum EventKind {
    Say,
    SayForSecs,
    AskPrompt,
    RuntimeError,
    Halt,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Event {
    pub kind: EventKind,
    pub text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub duration: Option<f64>,
    pub step_index: u64,
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            EventKind::Say => write!(f, "SAY: {}", self.text),
            EventKind::SayForSecs => {
                let secs = format_number(self.duration.unwrap_or(0.0));
                write!(f, "SAY ({secs}s): {}", self.text)
            }
            EventKind::AskPrompt => write!(f, "ASK: {}", self.text),
            EventKind::RuntimeError => write!(f, "ERROR: {}", self.text),
            EventKind::Halt => write!(f, "HALT: {}", self.text),
        }
    }
}

/// Everything observable about one finished run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SessionResult {
    pub status: Status,
    pub steps_used: u64,
    pub events: Vec<Event>,
    pub variables: IndexMap<String, Value>,
    pub registry: Vec<ObjectSnapshot>,
}

impl SessionResult {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("session results serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn says(&self) -> impl Iterator<Item = &str> {
        self.events
            .iter()
            .filter(|e| matches!(e.kind, EventKind::Say | EventKind::SayForSecs))
            .map(|e| e.text.as_str())
    }

    pub fn errors(&self) -> impl Iterator<Item = &str> {
        self.events.iter().filter(|e| e.kind == EventKind::RuntimeError).map(|e| e.text.as_str())
    }

    /// The line-oriented transcript printed by `blockdsa run`.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for e in &self.events {
            let _ = writeln!(out, "{e}");
        }
        out.push_str("--- variables ---\n");
        for (name, value) in &self.variables {
            let _ = writeln!(out, "{name} = {value}");
        }
        if !self.registry.is_empty() {
            out.push_str("--- objects ---\n");
            for obj in &self.registry {
                let _ = writeln!(out, "{}", render_object(obj));
            }
        }
        let _ = writeln!(out, "--- {} after {} steps ---", self.status, self.steps_used);
        out
    }
}

fn render_object(obj: &ObjectSnapshot) -> String {
    let join = |xs: &mut dyn Iterator<Item = String>| xs.collect::<Vec<_>>().join(", ");
    if let Some(pairs) = &obj.pairs {
        let body = join(&mut pairs.iter().map(|p| format!("{}: {}", p.key, p.value)));
        format!("{} = {{{body}}}", obj.id)
    } else {
        let items = obj.elements.as_deref().unwrap_or_default();
        format!("{} = [{}]", obj.id, join(&mut items.iter().map(Value::to_string)))
    }
}
