use std::sync::Arc;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;
use wagegdp_core::simulator::{history_table, presets, Simulation};
use wagegdp_core::{ManualAction, Table};
use wagegdp_service::{router, SessionStore};

struct Api {
    app: Router,
    _dir: tempfile::TempDir,
}

impl Api {
    fn new() -> Self {
        let dir = tempfile::tempdir().unwrap();
        Self::at(dir)
    }

    fn at(dir: tempfile::TempDir) -> Self {
        let store = Arc::new(SessionStore::open(dir.path()).unwrap());
        Self { app: router(store), _dir: dir }
    }

    async fn call(&self, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
        let request = Request::builder()
            .method(method)
            .uri(uri)
            .header("content-type", "application/json")
            .body(body.map(|b| Body::from(b.to_string())).unwrap_or_else(Body::empty))
            .unwrap();
        let response = self.app.clone().oneshot(request).await.unwrap();
        let status = response.status();
        let bytes = response.into_body().collect().await.unwrap().to_bytes();
        let value = if bytes.is_empty() { Value::Null } else { serde_json::from_slice(&bytes).unwrap() };
        (status, value)
    }

    async fn create(&self, body: Value) -> String {
        let (status, v) = self.call("POST", "/api/v1/sessions", Some(body)).await;
        assert_eq!(status, StatusCode::CREATED, "{v}");
        v["id"].as_str().unwrap().to_string()
    }
}

#[tokio::test]
async fn hungary_preset_starts_at_406() {
    let api = Api::new();
    let (status, v) = api.call("POST", "/api/v1/sessions", Some(json!({"preset": "hungary"}))).await;
    assert_eq!(status, StatusCode::CREATED);
    assert!((v["snapshot"]["w_min"].as_f64().unwrap() - 0.406).abs() < 1e-12);
    assert_eq!(v["snapshot"]["t"], 0);
    let id = v["id"].as_str().unwrap();
    assert!(id.len() >= 16 && id.chars().all(|c| c.is_ascii_alphanumeric()));

    let (status, view) = api.call("GET", &format!("/api/v1/sessions/{id}"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(view["t"], 0);
    assert_eq!(view["config"]["rule"]["kind"], "manual");
}

#[tokio::test]
async fn two_creations_have_distinct_ids() {
    let api = Api::new();
    let a = api.create(json!({"preset": "us-baseline"})).await;
    let b = api.create(json!({"preset": "us-baseline"})).await;
    assert_ne!(a, b);
}

#[tokio::test]
async fn invalid_payloads_are_422_with_fields() {
    let api = Api::new();
    let mut config = serde_json::to_value(presets::us_baseline()).unwrap();
    config["steps"] = json!(0);
    let (status, v) = api.call("POST", "/api/v1/sessions", Some(json!({"config": config}))).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(v["error"], "invalid_payload");
    assert_eq!(v["fields"][0]["field"], "config.steps");

    let mut config = serde_json::to_value(presets::us_baseline()).unwrap();
    config["initial"]["dist"]["bins"][1]["wage"] = json!(1.0);
    let (status, v) = api.call("POST", "/api/v1/sessions", Some(json!({"config": config}))).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert!(v["fields"][0]["field"].as_str().unwrap().starts_with("config.initial.dist"), "{v}");

    let (status, v) = api.call("POST", "/api/v1/sessions", Some(json!({"preset": "atlantis"}))).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert!(v["detail"].as_str().unwrap().contains("gdpc-two-thirds"));

    let (status, _) = api.call("POST", "/api/v1/sessions", Some(json!({}))).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
}

#[tokio::test]
async fn ratio_action_pins_next_w_min() {
    let api = Api::new();
    let id = api.create(json!({"preset": "us-baseline"})).await;
    let (s, _) = api.call("POST", &format!("/api/v1/sessions/{id}/action"), Some(json!({"ratio": 0.3}))).await;
    assert_eq!(s, StatusCode::NO_CONTENT);
    // last one wins
    let (s, _) = api.call("POST", &format!("/api/v1/sessions/{id}/action"), Some(json!({"ratio": 0.45}))).await;
    assert_eq!(s, StatusCode::NO_CONTENT);
    let (s, v) = api.call("POST", &format!("/api/v1/sessions/{id}/advance"), Some(json!({"n": 2}))).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v["records"][0]["w_min"].as_f64().unwrap(), 0.45);
    // consumed once: the baseline rule holds the nominal floor afterwards
    assert_eq!(v["records"][1]["nominal_min"], v["records"][0]["nominal_min"]);
}

#[tokio::test]
async fn bad_actions() {
    let api = Api::new();
    let id = api.create(json!({"preset": "us-baseline"})).await;
    let url = format!("/api/v1/sessions/{id}/action");
    let (s, _) = api.call("POST", &url, Some(json!({"floor": -1.0}))).await;
    assert_eq!(s, StatusCode::UNPROCESSABLE_ENTITY);
    let (s, _) = api.call("POST", &url, Some(json!({"floor": 9.0, "ratio": 0.3}))).await;
    assert_eq!(s, StatusCode::UNPROCESSABLE_ENTITY);
    let (s, _) = api.call("POST", "/api/v1/sessions/nope/action", Some(json!({"floor": 9.0}))).await;
    assert_eq!(s, StatusCode::NOT_FOUND);

    // below the current minimum: rejected when the step runs
    let (s, _) = api.call("POST", &url, Some(json!({"floor": 5.0}))).await;
    assert_eq!(s, StatusCode::NO_CONTENT);
    let (s, v) = api.call("POST", &format!("/api/v1/sessions/{id}/advance"), Some(json!({"n": 1}))).await;
    assert_eq!(s, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(v["step"], 1);
}

#[tokio::test]
async fn advance_grows_history_and_is_atomic() {
    let api = Api::new();
    let id = api.create(json!({"preset": "us-baseline"})).await;
    let (s, v) = api.call("POST", &format!("/api/v1/sessions/{id}/advance"), Some(json!({"n": 5}))).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v["records"].as_array().unwrap().len(), 5);

    let mut config = presets::hungary();
    // a floor far above the compression ceiling fails in the engine
    config.actions.insert(3, ManualAction::Floor(1.0e7));
    let id = api.create(json!({"config": config})).await;
    let hist_url = format!("/api/v1/sessions/{id}/history");
    let (_, before) = api.call("GET", &hist_url, None).await;
    let (s, v) = api.call("POST", &format!("/api/v1/sessions/{id}/advance"), Some(json!({"n": 5}))).await;
    assert_eq!(s, StatusCode::CONFLICT, "{v}");
    assert_eq!(v["step"], 3);
    assert_eq!(v["error"], "step_failed");
    let (_, after) = api.call("GET", &hist_url, None).await;
    assert_eq!(before, after);

    let (s, _) = api.call("POST", &format!("/api/v1/sessions/{id}/advance"), Some(json!({"n": 0}))).await;
    assert_eq!(s, StatusCode::UNPROCESSABLE_ENTITY);
}

#[tokio::test]
async fn history_filtering() {
    let api = Api::new();
    let id = api.create(json!({"preset": "us-baseline"})).await;
    let url = format!("/api/v1/sessions/{id}/history");
    let (s, v) = api.call("GET", &url, None).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v["rows"].as_array().unwrap().len(), 1);
    assert_eq!(v["columns"].as_array().unwrap().len(), 8);

    let (s, v) = api.call("GET", &format!("{url}?metrics=w_min,gini_proxy"), None).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v["columns"], json!(["t", "w_min", "gini_proxy"]));

    let (s, v) = api.call("GET", &format!("{url}?metrics=w_min,bogus"), None).await;
    assert_eq!(s, StatusCode::UNPROCESSABLE_ENTITY);
    assert!(v["detail"].as_str().unwrap().contains("bogus"));
}

#[tokio::test]
async fn full_history_matches_batch_run() {
    let api = Api::new();
    let id = api.create(json!({"preset": "gdpc-two-thirds"})).await;
    api.call("POST", &format!("/api/v1/sessions/{id}/advance"), Some(json!({"n": 40}))).await;
    let (_, v) = api.call("GET", &format!("/api/v1/sessions/{id}/history"), None).await;
    let served: Table = serde_json::from_value(v).unwrap();
    let batch = Simulation::run_to_end(presets::gdpc_two_thirds()).unwrap();
    assert_eq!(served.to_csv_string(), history_table(batch.history()).to_csv_string());
}

#[tokio::test]
async fn delete_semantics() {
    let api = Api::new();
    let a = api.create(json!({"preset": "us-baseline"})).await;
    let b = api.create(json!({"preset": "us-baseline"})).await;
    let (s, _) = api.call("DELETE", &format!("/api/v1/sessions/{a}"), None).await;
    assert_eq!(s, StatusCode::NO_CONTENT);
    let (s, v) = api.call("GET", &format!("/api/v1/sessions/{a}"), None).await;
    assert_eq!(s, StatusCode::NOT_FOUND);
    assert_eq!(v["error"], "not_found");
    let (s, _) = api.call("DELETE", &format!("/api/v1/sessions/{a}"), None).await;
    assert_eq!(s, StatusCode::NOT_FOUND);
    let (s, _) = api.call("GET", &format!("/api/v1/sessions/{b}"), None).await;
    assert_eq!(s, StatusCode::OK);
}

#[tokio::test]
async fn restart_recovers_byte_equal_history() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().to_path_buf();
    let api = Api::at(dir);
    let id = api.create(json!({"preset": "hungary"})).await;
    api.call("POST", &format!("/api/v1/sessions/{id}/advance"), Some(json!({"n": 2}))).await;
    api.call("POST", &format!("/api/v1/sessions/{id}/action"), Some(json!({"ratio": 0.65}))).await;
    api.call("POST", &format!("/api/v1/sessions/{id}/advance"), Some(json!({"n": 3}))).await;
    let url = format!("/api/v1/sessions/{id}/history");
    let (_, before) = api.call("GET", &url, None).await;

    let restarted = Arc::new(SessionStore::open(&path).unwrap());
    let app = router(restarted);
    let response = app
        .oneshot(Request::builder().uri(&url).body(Body::empty()).unwrap())
        .await
        .unwrap();
    let bytes = response.into_body().collect().await.unwrap().to_bytes();
    assert_eq!(bytes, before.to_string().into_bytes());
}

#[tokio::test]
async fn unknown_route_is_json_404() {
    let api = Api::new();
    let (s, v) = api.call("GET", "/api/v2/whatever", None).await;
    assert_eq!(s, StatusCode::NOT_FOUND);
    assert_eq!(v["error"], "not_found");
}
