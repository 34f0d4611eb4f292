//! Interactive sessions and the store that owns them.
//!
//! A session runs on the calling thread until its program finishes or
//! reaches an `ask` with no answer queued, then waits for `answer`. Each
//! session sits behind its own lock, so work on one never blocks another.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, MutexGuard};
use std::time::{Duration, Instant};

use blockdsa_core::ds::{ObjectSnapshot, Value};
use blockdsa_core::{Event, Machine, Progress, Project, Status};
use indexmap::IndexMap;
use serde::Serialize;
use uuid::Uuid;

pub type SessionId = Uuid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SessionState {
    Running,
    WaitingForInput,
    Finished,
}

impl SessionState {
    pub fn as_str(self) -> &'static str {
        match self {
            SessionState::Running => "RUNNING",
            SessionState::WaitingForInput => "WAITING_FOR_INPUT",
            SessionState::Finished => "FINISHED",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SessionError {
    NotFound,
    NotWaiting(SessionState),
}

#[derive(Debug, Clone, Serialize)]
pub struct SessionHandle {
    pub session_id: SessionId,
    pub state: SessionState,
    /// Number of events delivered through the events endpoint so far.
    pub cursor: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub status: Option<Status>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SessionView {
    pub session_id: SessionId,
    pub state: SessionState,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub status: Option<Status>,
    pub steps_used: u64,
    /// Events from the requested cursor on.
    pub events: Vec<Event>,
    /// Pass this as `since` to get only newer events.
    pub cursor: usize,
    pub variables: IndexMap<String, Value>,
    #[serde(rename = "registry_snapshot")]
    pub registry: Vec<ObjectSnapshot>,
}

pub struct Session {
    id: SessionId,
    machine: Machine,
    state: SessionState,
    cursor: usize,
}

impl Session {
    pub fn start(id: SessionId, project: &Project, inputs: Vec<String>, seed: u64, step_budget: u64) -> Self {
        let mut machine = Machine::new(project, seed, step_budget);
        for i in inputs {
            machine.push_input(i);
        }
        let mut s = Session { id, machine, state: SessionState::Running, cursor: 0 };
        s.advance();
        s
    }

    fn advance(&mut self) {
        self.state = SessionState::Running;
        self.state = match self.machine.resume() {
            Progress::NeedsInput => SessionState::WaitingForInput,
            Progress::Finished(_) => SessionState::Finished,
        };
    }

    pub fn state(&self) -> SessionState {
        self.state
    }

    pub fn answer(&mut self, text: String) -> Result<(), SessionError> {
        if self.state != SessionState::WaitingForInput {
            return Err(SessionError::NotWaiting(self.state));
        }
        self.machine.push_input(text);
        self.advance();
        Ok(())
    }

    pub fn handle(&self) -> SessionHandle {
        SessionHandle { session_id: self.id, state: self.state, cursor: self.cursor, status: self.machine.status() }
    }

    pub fn view(&mut self, since: usize) -> SessionView {
        let events = self.machine.events();
        let from = since.min(events.len());
        self.cursor = self.cursor.max(events.len());
        SessionView {
            session_id: self.id,
            state: self.state,
            status: self.machine.status(),
            steps_used: self.machine.steps_used(),
            events: events[from..].to_vec(),
            cursor: events.len(),
            variables: self.machine.variables().clone(),
            registry: self.machine.registry().snapshot(),
        }
    }
}

struct Entry {
    session: Arc<Mutex<Session>>,
    last_seen: Instant,
}

pub struct SessionStore {
    ttl: Duration,
    entries: Mutex<HashMap<SessionId, Entry>>,
}

fn lock<T>(m: &Mutex<T>) -> MutexGuard<'_, T> {
    m.lock().unwrap_or_else(|poisoned| poisoned.into_inner())
}

impl SessionStore {
    pub fn new(ttl: Duration) -> Self {
        SessionStore { ttl, entries: Mutex::new(HashMap::new()) }
    }

    pub fn ttl(&self) -> Duration {
        self.ttl
    }

    pub fn len(&self) -> usize {
        lock(&self.entries).len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Starts a session and runs it until it first blocks.
    pub fn create(&self, project: &Project, inputs: Vec<String>, seed: u64, step_budget: u64) -> SessionHandle {
        let id = Uuid::new_v4();
        let session = Session::start(id, project, inputs, seed, step_budget);
        let handle = session.handle();
        let entry = Entry { session: Arc::new(Mutex::new(session)), last_seen: Instant::now() };
        lock(&self.entries).insert(id, entry);
        handle
    }

    fn get(&self, id: SessionId) -> Result<Arc<Mutex<Session>>, SessionError> {
        let mut entries = lock(&self.entries);
        let now = Instant::now();
        match entries.get_mut(&id) {
            Some(e) if now.duration_since(e.last_seen) < self.ttl => {
                e.last_seen = now;
                Ok(e.session.clone())
            }
            Some(_) => {
                entries.remove(&id);
                Err(SessionError::NotFound)
            }
            None => Err(SessionError::NotFound),
        }
    }

    pub fn view(&self, id: SessionId, since: usize) -> Result<SessionView, SessionError> {
        let session = self.get(id)?;
        let view = lock(&session).view(since);
        Ok(view)
    }

    pub fn answer(&self, id: SessionId, text: String) -> Result<SessionHandle, SessionError> {
        let session = self.get(id)?;
        let mut s = lock(&session);
        s.answer(text)?;
        Ok(s.handle())
    }

    pub fn remove(&self, id: SessionId) -> bool {
        lock(&self.entries).remove(&id).is_some()
    }

    /// Drops sessions idle for longer than the TTL; returns how many.
    pub fn sweep(&self) -> usize {
        let mut entries = lock(&self.entries);
        let before = entries.len();
        let now = Instant::now();
        entries.retain(|_, e| now.duration_since(e.last_seen) < self.ttl);
        before - entries.len()
    }
}
