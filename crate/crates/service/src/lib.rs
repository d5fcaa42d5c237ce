//! HTTP API over the dotted-chart engine.
//!
//! Logs are uploaded once and then charted, profiled and queried on demand.
//! All chart output goes through [`pipeline`], the same code the command
//! line uses.
//!
//! | Method | Path | Result |
//! |---|---|---|
//! | `POST` | `/api/logs` | store an XES or CSV body, `201` with its handle |
//! | `GET` | `/api/logs` | handles of all stored logs |
//! | `GET` | `/api/logs/{id}` | handle of one stored log |
//! | `GET` | `/api/logs/{id}/validate` | content findings |
//! | `POST` | `/api/logs/{id}/chart` | SVG, or the chart model as JSON |
//! | `GET` | `/api/logs/{id}/profile` | session profile; `?thresholds={json}` |
//! | `POST` | `/api/logs/{id}/hit-test` | dots inside a pixel rectangle |
//! | `GET` | `/api/legend` | default coding of every operation |
//! | `GET` | `/api/schemas` | names of the published schemas |
//! | `GET` | `/api/schemas/{name}` | JSON schema of a request or response type |
//!
//! Errors are JSON `{code, message, field?}`.

pub mod error;
pub mod pipeline;
pub mod store;

use std::collections::HashMap;

use axum::body::Bytes;
use axum::extract::{Path, Query, State};
use axum::http::{header, HeaderMap, HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use ppmchart::analytics::{profile, DetectorConfig, SessionProfile};
use ppmchart::chart::{ChartConfig, ChartModel};
use ppmchart::eventlog::{validate_log, LogFormat, ValidationFinding};
use ppmchart::render::{DotHit, RenderOptions};
use ppmchart::taxonomy::{legend_table, LegendRow};
use schemars::schema_for;
use tower_http::cors::CorsLayer;

pub use error::{ApiError, ErrorBody};
pub use pipeline::{ChartRequest, HitTestRequest, ResponseKind};
pub use store::{LogHandle, LogStore, StoreError, StoredLog};

/// Header listing the chart notices of an SVG response, comma separated.
pub const NOTICES_HEADER: &str = "x-chart-notices";

/// Names accepted by `GET /api/schemas/{name}`.
pub const SCHEMA_NAMES: [&str; 9] = [
    "chart-config",
    "render-options",
    "chart-request",
    "hit-test-request",
    "chart-model",
    "dot-hits",
    "detector-config",
    "session-profile",
    "findings",
];

pub fn router(store: LogStore) -> Router {
    Router::new()
        .route("/api/logs", post(upload).get(list))
        .route("/api/logs/{id}", get(handle))
        .route("/api/logs/{id}/validate", get(validate))
        .route("/api/logs/{id}/chart", post(chart))
        .route("/api/logs/{id}/profile", get(session_profile))
        .route("/api/logs/{id}/hit-test", post(hit_test))
        .route("/api/legend", get(legend))
        .route("/api/schemas", get(schema_list))
        .route("/api/schemas/{name}", get(schema))
        .fallback(|| async { ApiError::new(StatusCode::NOT_FOUND, "not-found", "no such endpoint") })
        .layer(CorsLayer::permissive())
        .with_state(store)
}

/// Serves until Ctrl-C.
pub async fn serve(listener: tokio::net::TcpListener, store: LogStore) -> std::io::Result<()> {
    axum::serve(listener, router(store))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}

fn stored(store: &LogStore, id: &str) -> Result<std::sync::Arc<StoredLog>, ApiError> {
    store.get(id).ok_or_else(|| ApiError::not_found("log", id))
}

fn upload_format(query: &HashMap<String, String>, headers: &HeaderMap, body: &[u8]) -> Result<LogFormat, ApiError> {
    if let Some(name) = query.get("format") {
        return name
            .parse()
            .map_err(|e: String| ApiError::new(StatusCode::BAD_REQUEST, "invalid-format", e));
    }
    let content_type = headers
        .get(header::CONTENT_TYPE)
        .and_then(|v| v.to_str().ok())
        .unwrap_or_default();
    Ok(if content_type.contains("csv") {
        LogFormat::Csv
    } else if content_type.contains("xml") {
        LogFormat::Xes
    } else {
        LogFormat::sniff(body)
    })
}

async fn upload(
    State(store): State<LogStore>,
    Query(query): Query<HashMap<String, String>>,
    headers: HeaderMap,
    body: Bytes,
) -> Result<(StatusCode, Json<LogHandle>), ApiError> {
    let format = upload_format(&query, &headers, &body)?;
    match store.upload(&body, format, query.get("name").map(String::as_str)) {
        Ok(handle) => Ok((StatusCode::CREATED, Json(handle))),
        Err(StoreError::Log(e)) => Err(e.into()),
        Err(StoreError::Io(e)) => Err(ApiError::internal(e.to_string())),
    }
}

async fn list(State(store): State<LogStore>) -> Json<Vec<LogHandle>> {
    Json(store.list())
}

async fn handle(State(store): State<LogStore>, Path(id): Path<String>) -> Result<Json<LogHandle>, ApiError> {
    Ok(Json(stored(&store, &id)?.handle.clone()))
}

async fn validate(
    State(store): State<LogStore>,
    Path(id): Path<String>,
) -> Result<Json<Vec<ValidationFinding>>, ApiError> {
    Ok(Json(validate_log(&stored(&store, &id)?.log)))
}

async fn chart(State(store): State<LogStore>, Path(id): Path<String>, body: Bytes) -> Result<Response, ApiError> {
    let log = stored(&store, &id)?;
    let request: ChartRequest = error::parse_json(&body)?;
    request.render.validate()?;
    let model = pipeline::chart(&log.log, &request.config)?;
    Ok(match request.response_kind {
        ResponseKind::ModelJson => Json(model).into_response(),
        ResponseKind::Svg => {
            let svg = ppmchart::render::render_svg(&model, &request.render)?;
            let notices: Vec<String> = model.notices.iter().map(|n| n.kind.to_string()).collect();
            let mut response = ([(header::CONTENT_TYPE, "image/svg+xml")], svg).into_response();
            if let Ok(value) = HeaderValue::from_str(&notices.join(", ")) {
                response.headers_mut().insert(NOTICES_HEADER, value);
            }
            response
        }
    })
}

async fn session_profile(
    State(store): State<LogStore>,
    Path(id): Path<String>,
    Query(query): Query<HashMap<String, String>>,
) -> Result<Json<SessionProfile>, ApiError> {
    let log = stored(&store, &id)?;
    let thresholds: DetectorConfig = match query.get("thresholds") {
        Some(text) => error::parse_json(text.as_bytes()).map_err(|mut e| {
            e.body.field = Some(match e.body.field.take() {
                Some(f) if f != "." => format!("thresholds.{f}"),
                _ => "thresholds".to_string(),
            });
            e
        })?,
        None => DetectorConfig::default(),
    };
    Ok(Json(profile(&log.log, &thresholds)))
}

async fn hit_test(
    State(store): State<LogStore>,
    Path(id): Path<String>,
    body: Bytes,
) -> Result<Json<Vec<DotHit>>, ApiError> {
    let log = stored(&store, &id)?;
    let request: HitTestRequest = error::parse_json(&body)?;
    Ok(Json(pipeline::hits(&log.log, &request)?))
}

async fn legend() -> Json<Vec<LegendRow>> {
    Json(legend_table())
}

async fn schema_list() -> Json<[&'static str; 9]> {
    Json(SCHEMA_NAMES)
}

async fn schema(Path(name): Path<String>) -> Result<Json<serde_json::Value>, ApiError> {
    let schema = match name.as_str() {
        "chart-config" => schema_for!(ChartConfig),
        "render-options" => schema_for!(RenderOptions),
        "chart-request" => schema_for!(ChartRequest),
        "hit-test-request" => schema_for!(HitTestRequest),
        "chart-model" => schema_for!(ChartModel),
        "dot-hits" => schema_for!(Vec<DotHit>),
        "detector-config" => schema_for!(DetectorConfig),
        "session-profile" => schema_for!(SessionProfile),
        "findings" => schema_for!(Vec<ValidationFinding>),
        _ => return Err(ApiError::not_found("schema", &name)),
    };
    serde_json::to_value(schema)
        .map(Json)
        .map_err(|e| ApiError::internal(e.to_string()))
}
