use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use serde::Serialize;
use wagegdp_core::model::ModelError;
use wagegdp_core::simulator::{FieldError, StepError};

use crate::store::StoreError;

/// JSON error body: `{error, detail}` plus field messages or the failing
/// step where they apply.
#[derive(Debug, Serialize)]
pub struct ApiError {
    #[serde(skip)]
    pub status: StatusCode,
    pub error: &'static str,
    pub detail: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub fields: Vec<FieldError>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub step: Option<u32>,
}

impl ApiError {
    pub fn not_found(detail: impl Into<String>) -> Self {
        Self {
            status: StatusCode::NOT_FOUND,
            error: "not_found",
            detail: detail.into(),
            fields: Vec::new(),
            step: None,
        }
    }

    pub fn invalid(fields: Vec<FieldError>) -> Self {
        let detail = fields.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ");
        Self {
            status: StatusCode::UNPROCESSABLE_ENTITY,
            error: "invalid_payload",
            detail,
            fields,
            step: None,
        }
    }

    /// Maps a store failure; `prefix` qualifies field paths of a nested
    /// payload.
    pub fn from_store(e: StoreError, prefix: &str) -> Self {
        match e {
            StoreError::NotFound => Self::not_found("session not found"),
            StoreError::Invalid(fields) => Self::invalid(
                fields
                    .into_iter()
                    .map(|f| {
                        if prefix.is_empty() {
                            f
                        } else {
                            FieldError::new(format!("{prefix}.{}", f.field), f.message)
                        }
                    })
                    .collect(),
            ),
            StoreError::Step { step, source } => {
                // a floor decision below the prevailing minimum is a bad input
                // rather than an engine failure
                let (status, error) = match source {
                    StepError::Model(ModelError::FloorBelowMinimum { .. }) => {
                        (StatusCode::UNPROCESSABLE_ENTITY, "floor_below_minimum")
                    }
                    _ => (StatusCode::CONFLICT, "step_failed"),
                };
                Self {
                    status,
                    error,
                    detail: format!("step {step}: {source}"),
                    fields: Vec::new(),
                    step: Some(step),
                }
            }
            StoreError::Io(e) => {
                log::error!("storage failure: {e}");
                Self {
                    status: StatusCode::INTERNAL_SERVER_ERROR,
                    error: "storage_failure",
                    detail: e.to_string(),
                    fields: Vec::new(),
                    step: None,
                }
            }
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(&self)).into_response()
    }
}
