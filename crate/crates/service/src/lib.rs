//! HTTP front end: catalog, validation, one-shot runs, and interactive
//! sessions that pause at every `ask`.

pub mod sessions;

use std::net::SocketAddr;
use std::sync::Arc;
use std::time::Duration;

use axum::body::Bytes;
use axum::extract::{Path, Query, State};
use axum::http::{header, HeaderMap, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use blockdsa_core::project::parse_project_json;
use blockdsa_core::{catalog_load, is_runnable, validate_project, Diagnostic, Project, DEFAULT_STEP_BUDGET};
use serde::Deserialize;
use serde_json::{json, Value as JsonValue};
use sha2::{Digest, Sha256};

pub use sessions::{SessionError, SessionId, SessionState, SessionStore, SessionView};

pub const DEFAULT_TTL: Duration = Duration::from_secs(15 * 60);
pub const DEFAULT_ADDR: &str = "127.0.0.1:8080";

#[derive(Debug, Clone)]
pub struct ServiceConfig {
    pub addr: SocketAddr,
    pub session_ttl: Duration,
}

impl ServiceConfig {
    /// Reads `BLOCKDSA_ADDR` and `BLOCKDSA_SESSION_TTL` (seconds, or with an
    /// `s`, `m` or `h` suffix).
    pub fn from_env() -> Result<Self, String> {
        let addr = std::env::var("BLOCKDSA_ADDR").unwrap_or_else(|_| DEFAULT_ADDR.to_owned());
        let addr = addr.parse().map_err(|e| format!("BLOCKDSA_ADDR={addr}: {e}"))?;
        let session_ttl = match std::env::var("BLOCKDSA_SESSION_TTL") {
            Ok(v) => parse_duration(&v).ok_or_else(|| format!("BLOCKDSA_SESSION_TTL={v}: expected e.g. 900, 90s, 15m"))?,
            Err(_) => DEFAULT_TTL,
        };
        Ok(ServiceConfig { addr, session_ttl })
    }
}

pub fn parse_duration(text: &str) -> Option<Duration> {
    let text = text.trim();
    let (digits, unit) = match text.char_indices().find(|(_, c)| !c.is_ascii_digit()) {
        Some((i, _)) => text.split_at(i),
        None => (text, "s"),
    };
    let n: u64 = digits.parse().ok()?;
    let secs = match unit {
        "s" => n,
        "m" => n.checked_mul(60)?,
        "h" => n.checked_mul(3600)?,
        _ => return None,
    };
    Some(Duration::from_secs(secs))
}

#[derive(Clone)]
pub struct AppState {
    pub sessions: Arc<SessionStore>,
    catalog_json: Arc<str>,
    catalog_etag: Arc<str>,
}

impl AppState {
    pub fn new(session_ttl: Duration) -> Self {
        let catalog_json = catalog_load().to_json();
        let etag = format!("\"{}\"", hex::encode(Sha256::digest(catalog_json.as_bytes())));
        AppState {
            sessions: Arc::new(SessionStore::new(session_ttl)),
            catalog_json: catalog_json.into(),
            catalog_etag: etag.into(),
        }
    }
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/catalog", get(get_catalog))
        .route("/validate", post(post_validate))
        .route("/run", post(post_run))
        .route("/sessions", post(post_session))
        .route("/sessions/{id}", axum::routing::delete(delete_session))
        .route("/sessions/{id}/events", get(get_events))
        .route("/sessions/{id}/answer", post(post_answer))
        .with_state(state)
}

/// Drops idle sessions every so often until the process exits.
pub fn spawn_sweeper(store: Arc<SessionStore>) -> tokio::task::JoinHandle<()> {
    let period = (store.ttl() / 4).clamp(Duration::from_millis(100), Duration::from_secs(30));
    tokio::spawn(async move {
        let mut tick = tokio::time::interval(period);
        loop {
            tick.tick().await;
            let dropped = store.sweep();
            if dropped > 0 {
                tracing::debug!(dropped, "expired idle sessions");
            }
        }
    })
}

fn error(status: StatusCode, message: impl Into<String>) -> Response {
    (status, Json(json!({ "error": message.into() }))).into_response()
}

fn json_text(status: StatusCode, body: String) -> Response {
    (status, [(header::CONTENT_TYPE, "application/json")], body).into_response()
}

fn diagnostics(status: StatusCode, diags: &[Diagnostic]) -> Response {
    (status, Json(json!({ "diagnostics": diags }))).into_response()
}

async fn get_catalog(State(state): State<AppState>, headers: HeaderMap) -> Response {
    let etag = state.catalog_etag.as_ref();
    if headers.get(header::IF_NONE_MATCH).is_some_and(|v| v.as_bytes() == etag.as_bytes()) {
        return (StatusCode::NOT_MODIFIED, [(header::ETAG, etag)]).into_response();
    }
    (
        StatusCode::OK,
        [(header::CONTENT_TYPE, "application/json"), (header::ETAG, etag)],
        state.catalog_json.to_string(),
    )
        .into_response()
}

async fn post_validate(body: Bytes) -> Response {
    let doc: JsonValue = match serde_json::from_slice(&body) {
        Ok(doc) => doc,
        Err(e) => return error(StatusCode::BAD_REQUEST, format!("not a JSON document: {e}")),
    };
    let diags = match parse_project_json(&doc) {
        Ok(p) => validate_project(&p),
        Err(diags) => diags,
    };
    (StatusCode::OK, Json(diags)).into_response()
}

#[derive(Debug, Deserialize)]
struct RunRequest {
    project: JsonValue,
    #[serde(default)]
    inputs: Vec<String>,
    #[serde(default)]
    seed: u64,
    step_budget: Option<u64>,
}

/// Parses the request body and its embedded project, or explains why not.
fn run_request(body: &[u8]) -> Result<(RunRequest, Project), Box<Response>> {
    let req: RunRequest =
        serde_json::from_slice(body).map_err(|e| Box::new(error(StatusCode::BAD_REQUEST, format!("bad request body: {e}"))))?;
    if req.step_budget == Some(0) {
        return Err(Box::new(error(StatusCode::BAD_REQUEST, "step_budget must be positive")));
    }
    let project =
        parse_project_json(&req.project).map_err(|d| Box::new(diagnostics(StatusCode::UNPROCESSABLE_ENTITY, &d)))?;
    let diags = validate_project(&project);
    if !is_runnable(&diags) {
        return Err(Box::new(diagnostics(StatusCode::UNPROCESSABLE_ENTITY, &diags)));
    }
    Ok((req, project))
}

async fn post_run(body: Bytes) -> Response {
    let (req, project) = match run_request(&body) {
        Ok(r) => r,
        Err(resp) => return *resp,
    };
    let budget = req.step_budget.unwrap_or(DEFAULT_STEP_BUDGET);
    let result =
        tokio::task::spawn_blocking(move || blockdsa_core::run(&project, &req.inputs, req.seed, budget)).await;
    match result {
        Ok(r) => json_text(StatusCode::OK, r.to_json()),
        Err(e) => error(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()),
    }
}

async fn post_session(State(state): State<AppState>, body: Bytes) -> Response {
    let (req, project) = match run_request(&body) {
        Ok(r) => r,
        Err(resp) => return *resp,
    };
    let budget = req.step_budget.unwrap_or(DEFAULT_STEP_BUDGET);
    let store = state.sessions.clone();
    let created =
        tokio::task::spawn_blocking(move || store.create(&project, req.inputs, req.seed, budget)).await;
    match created {
        Ok(handle) => (StatusCode::CREATED, Json(handle)).into_response(),
        Err(e) => error(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()),
    }
}

#[derive(Debug, Deserialize)]
struct Since {
    #[serde(default)]
    since: usize,
}

fn session_error(e: SessionError) -> Response {
    match e {
        SessionError::NotFound => error(StatusCode::NOT_FOUND, "no such session"),
        SessionError::NotWaiting(state) => {
            error(StatusCode::CONFLICT, format!("session is {} and not waiting for an answer", state.as_str()))
        }
    }
}

fn parse_id(id: &str) -> Result<SessionId, Box<Response>> {
    id.parse().map_err(|_| Box::new(error(StatusCode::NOT_FOUND, "no such session")))
}

async fn get_events(State(state): State<AppState>, Path(id): Path<String>, Query(q): Query<Since>) -> Response {
    let id = match parse_id(&id) {
        Ok(id) => id,
        Err(resp) => return *resp,
    };
    match state.sessions.view(id, q.since) {
        Ok(view) => (StatusCode::OK, Json(view)).into_response(),
        Err(e) => session_error(e),
    }
}

#[derive(Debug, Deserialize)]
struct AnswerRequest {
    answer: String,
}

async fn post_answer(State(state): State<AppState>, Path(id): Path<String>, body: Bytes) -> Response {
    let id = match parse_id(&id) {
        Ok(id) => id,
        Err(resp) => return *resp,
    };
    let req: AnswerRequest = match serde_json::from_slice(&body) {
        Ok(r) => r,
        Err(e) => return error(StatusCode::BAD_REQUEST, format!("bad request body: {e}")),
    };
    let store = state.sessions.clone();
    match tokio::task::spawn_blocking(move || store.answer(id, req.answer)).await {
        Ok(Ok(handle)) => (StatusCode::OK, Json(handle)).into_response(),
        Ok(Err(e)) => session_error(e),
        Err(e) => error(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()),
    }
}

async fn delete_session(State(state): State<AppState>, Path(id): Path<String>) -> Response {
    let id = match parse_id(&id) {
        Ok(id) => id,
        Err(resp) => return *resp,
    };
    if state.sessions.remove(id) {
        StatusCode::NO_CONTENT.into_response()
    } else {
        error(StatusCode::NOT_FOUND, "no such session")
    }
}
