//! HTTP+JSON session service over the policy simulator.
//!
//! Each session owns a scenario, a pending floor decision and its history.
//! Every change is appended to a per-session JSON-lines log so the service
//! can be restarted without losing state.

mod error;
pub mod journal;
mod store;

use std::future::Future;
use std::net::SocketAddr;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use tokio::net::TcpListener;
use wagegdp_core::simulator::{history_table, presets, FieldError, HISTORY_COLUMNS};
use wagegdp_core::{ManualAction, ScenarioConfig, StepRecord, Table};

pub use error::ApiError;
pub use store::{SessionStore, SessionView, StoreError, MAX_ADVANCE};

pub const DEFAULT_BIND: &str = "127.0.0.1:8750";

type Shared = Arc<SessionStore>;

pub fn router(store: Shared) -> Router {
    let api = Router::new()
        .route("/sessions", post(create_session))
        .route("/sessions/{id}", get(show_session).delete(delete_session))
        .route("/sessions/{id}/action", post(set_action))
        .route("/sessions/{id}/advance", post(advance))
        .route("/sessions/{id}/history", get(history));
    Router::new()
        .nest("/api/v1", api)
        .fallback(|| async { ApiError::not_found("no such route") })
        .with_state(store)
}

/// Serves until `shutdown` resolves. Every write is synced as it happens, so
/// nothing is left to flush afterwards.
pub async fn serve(listener: TcpListener, store: Shared, shutdown: impl Future<Output = ()> + Send + 'static) -> std::io::Result<()> {
    let addr: SocketAddr = listener.local_addr()?;
    log::info!("listening on http://{addr}/api/v1 with data in {}", store.dir().display());
    axum::serve(listener, router(store)).with_graceful_shutdown(shutdown).await
}

fn parse_json<T: for<'de> Deserialize<'de>>(body: &[u8], prefix: &str) -> Result<T, ApiError> {
    let value: Value = serde_json::from_slice(body)
        .map_err(|e| ApiError::invalid(vec![FieldError::new("body", format!("malformed JSON: {e}"))]))?;
    parse_value(value, prefix)
}

fn parse_value<T: for<'de> Deserialize<'de>>(value: Value, prefix: &str) -> Result<T, ApiError> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        let field = match (prefix.is_empty(), path.as_str()) {
            (true, ".") => "body".to_string(),
            (true, _) => path,
            (false, ".") => prefix.to_string(),
            (false, _) => format!("{prefix}.{path}"),
        };
        ApiError::invalid(vec![FieldError::new(field, e.into_inner().to_string())])
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CreateRequest {
    preset: Option<String>,
    config: Option<Value>,
}

#[derive(Serialize)]
struct Created {
    id: String,
    snapshot: StepRecord,
}

async fn create_session(State(store): State<Shared>, body: Bytes) -> Result<Response, ApiError> {
    let request: CreateRequest = parse_json(&body, "")?;
    let config: ScenarioConfig = match (request.preset, request.config) {
        (Some(name), None) => presets::preset(&name).ok_or_else(|| {
            ApiError::invalid(vec![FieldError::new(
                "preset",
                format!("unknown preset `{name}`; valid names: {}", presets::NAMES.join(", ")),
            )])
        })?,
        (None, Some(value)) => parse_value(value, "config")?,
        _ => {
            return Err(ApiError::invalid(vec![FieldError::new(
                "body",
                "provide exactly one of `preset` or `config`",
            )]))
        }
    };
    let (id, snapshot) = store.create(config).map_err(|e| ApiError::from_store(e, "config"))?;
    Ok((StatusCode::CREATED, Json(Created { id, snapshot })).into_response())
}

async fn show_session(State(store): State<Shared>, Path(id): Path<String>) -> Result<Json<SessionView>, ApiError> {
    store.view(&id).map(Json).map_err(|e| ApiError::from_store(e, ""))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ActionRequest {
    ratio: Option<f64>,
    floor: Option<f64>,
}

async fn set_action(State(store): State<Shared>, Path(id): Path<String>, body: Bytes) -> Result<StatusCode, ApiError> {
    store.get(&id).map_err(|e| ApiError::from_store(e, ""))?;
    let request: ActionRequest = parse_json(&body, "")?;
    let (field, value, action) = match (request.ratio, request.floor) {
        (Some(r), None) => ("ratio", r, ManualAction::Ratio(r)),
        (None, Some(f)) => ("floor", f, ManualAction::Floor(f)),
        _ => {
            return Err(ApiError::invalid(vec![FieldError::new(
                "body",
                "provide exactly one of `ratio` or `floor`",
            )]))
        }
    };
    if !(value.is_finite() && value > 0.0) {
        return Err(ApiError::invalid(vec![FieldError::new(field, format!("must be positive, got {value}"))]));
    }
    store.set_action(&id, action).map_err(|e| ApiError::from_store(e, ""))?;
    Ok(StatusCode::NO_CONTENT)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AdvanceRequest {
    n: u32,
}

#[derive(Serialize)]
struct Advanced {
    records: Vec<StepRecord>,
}

async fn advance(State(store): State<Shared>, Path(id): Path<String>, body: Bytes) -> Result<Json<Advanced>, ApiError> {
    store.get(&id).map_err(|e| ApiError::from_store(e, ""))?;
    let request: AdvanceRequest = parse_json(&body, "")?;
    let records = store.advance(&id, request.n).map_err(|e| ApiError::from_store(e, ""))?;
    Ok(Json(Advanced { records }))
}

#[derive(Deserialize)]
struct HistoryQuery {
    metrics: Option<String>,
}

/// History restricted to `t` plus the requested metrics, in canonical column
/// order.
pub fn select_metrics(records: &[StepRecord], metrics: Option<&str>) -> Result<Table, Vec<FieldError>> {
    let table = history_table(records);
    let Some(list) = metrics else {
        return Ok(table);
    };
    let requested: Vec<&str> = list.split(',').map(str::trim).filter(|m| !m.is_empty()).collect();
    let unknown: Vec<FieldError> = requested
        .iter()
        .filter(|m| !HISTORY_COLUMNS.contains(m))
        .map(|m| {
            FieldError::new(
                "metrics",
                format!("unknown metric `{m}`; valid names: {}", HISTORY_COLUMNS[1..].join(", ")),
            )
        })
        .collect();
    if !unknown.is_empty() {
        return Err(unknown);
    }
    let keep: Vec<&str> = HISTORY_COLUMNS
        .iter()
        .copied()
        .filter(|c| *c == "t" || requested.contains(c))
        .collect();
    Ok(table.select(&keep).expect("columns come from the history header"))
}

async fn history(
    State(store): State<Shared>,
    Path(id): Path<String>,
    Query(query): Query<HistoryQuery>,
) -> Result<Json<Table>, ApiError> {
    let records = store.history(&id).map_err(|e| ApiError::from_store(e, ""))?;
    select_metrics(&records, query.metrics.as_deref())
        .map(Json)
        .map_err(ApiError::invalid)
}

async fn delete_session(State(store): State<Shared>, Path(id): Path<String>) -> Result<StatusCode, ApiError> {
    store.delete(&id).map_err(|e| ApiError::from_store(e, ""))?;
    Ok(StatusCode::NO_CONTENT)
}
