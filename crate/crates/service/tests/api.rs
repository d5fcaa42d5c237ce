use axum::body::Body;
use axum::http::{header, Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use ppmchart::chart::ChartConfig;
use ppmchart::eventlog::{write_log, ElementTrace, EventLog, LogEvent, LogFormat};
use ppmchart::fixtures::{chain_log, mortgage_log};
use ppmchart::render::RenderOptions;
use ppmchart_service::{pipeline, router, LogStore, NOTICES_HEADER, SCHEMA_NAMES};

struct Reply {
    status: StatusCode,
    content_type: String,
    notices: String,
    body: Vec<u8>,
}

impl Reply {
    fn json(&self) -> Value {
        serde_json::from_slice(&self.body).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&self.body)))
    }

    fn text(&self) -> String {
        String::from_utf8(self.body.clone()).unwrap()
    }
}

async fn send(app: &Router, method: &str, uri: &str, body: impl Into<Body>) -> Reply {
    let request = Request::builder().method(method).uri(uri).body(body.into()).unwrap();
    let response = app.clone().oneshot(request).await.unwrap();
    let header = |name: &str| {
        response
            .headers()
            .get(name)
            .map(|v| v.to_str().unwrap().to_string())
            .unwrap_or_default()
    };
    let (status, content_type, notices) = (response.status(), header("content-type"), header(NOTICES_HEADER));
    let body = response.into_body().collect().await.unwrap().to_bytes().to_vec();
    Reply {
        status,
        content_type,
        notices,
        body,
    }
}

async fn upload(app: &Router, log: &EventLog, format: LogFormat) -> String {
    let reply = send(app, "POST", "/api/logs", write_log(log, format).unwrap()).await;
    assert_eq!(reply.status, StatusCode::CREATED, "{}", reply.text());
    reply.json()["id"].as_str().unwrap().to_string()
}

/// Elements and edges without any recorded positions.
fn position_free_log() -> EventLog {
    EventLog::new(
        "no-positions",
        vec![
            ElementTrace::new("s", vec![LogEvent::new("CREATE_START_EVENT", "s", 0)]),
            ElementTrace::new("a", vec![LogEvent::new("CREATE_ACTIVITY", "a", 1000)]),
            ElementTrace::new("f", vec![LogEvent::new("CREATE_EDGE", "f", 2000).connecting("s", "a")]),
        ],
    )
}

#[tokio::test]
async fn upload_then_list_and_fetch() {
    let app = router(LogStore::new());
    let id = upload(&app, &chain_log(), LogFormat::Xes).await;
    let csv = send(
        &app,
        "POST",
        "/api/logs?format=csv&name=chain%20copy",
        write_log(&chain_log(), LogFormat::Csv).unwrap(),
    )
    .await;
    assert_eq!(csv.status, StatusCode::CREATED);
    assert_eq!(csv.json()["name"], "chain copy");
    assert_ne!(csv.json()["id"].as_str().unwrap(), id);

    let listed = send(&app, "GET", "/api/logs", Body::empty()).await.json();
    let listed = listed.as_array().unwrap();
    assert_eq!(listed.len(), 2);
    assert_eq!(listed[0]["traces"], 5);
    assert_eq!(listed[0]["events"], 10);
    let one = send(&app, "GET", &format!("/api/logs/{id}"), Body::empty()).await;
    assert_eq!(one.json()["name"], "chain");
}

#[tokio::test]
async fn broken_upload_is_rejected_with_a_diagnostic() {
    let app = router(LogStore::new());
    let reply = send(&app, "POST", "/api/logs?format=xes", "<log><trace><string key=").await;
    assert_eq!(reply.status, StatusCode::BAD_REQUEST);
    let body = reply.json();
    assert_eq!(body["code"], "parse-error");
    assert!(body["message"].as_str().unwrap().contains("line 1"));

    let unknown = EventLog::new(
        "u",
        vec![ElementTrace::new("x", vec![LogEvent::new("TELEPORT", "x", 0)])],
    );
    let reply = send(&app, "POST", "/api/logs", write_log(&unknown, LogFormat::Csv).unwrap()).await;
    assert_eq!(reply.status, StatusCode::BAD_REQUEST);
    assert_eq!(reply.json()["code"], "schema-error");
    assert!(reply.json()["message"].as_str().unwrap().contains("TELEPORT"));
    assert!(send(&app, "GET", "/api/logs", Body::empty())
        .await
        .json()
        .as_array()
        .unwrap()
        .is_empty());
}

#[tokio::test]
async fn chart_svg_equals_the_shared_pipeline() {
    let app = router(LogStore::new());
    let id = upload(&app, &chain_log(), LogFormat::Xes).await;
    let reply = send(&app, "POST", &format!("/api/logs/{id}/chart"), "{}").await;
    assert_eq!(reply.status, StatusCode::OK);
    assert_eq!(reply.content_type, "image/svg+xml");
    let expected = pipeline::svg(&chain_log(), &ChartConfig::default(), &RenderOptions::default()).unwrap();
    assert_eq!(reply.text(), expected);

    // An empty body means all defaults; repeats are identical.
    let again = send(&app, "POST", &format!("/api/logs/{id}/chart"), Body::empty()).await;
    assert_eq!(again.body, reply.body);
}

#[tokio::test]
async fn chart_model_json_carries_timelines_and_notices() {
    let app = router(LogStore::new());
    let id = upload(&app, &chain_log(), LogFormat::Xes).await;
    let body = json!({
        "response_kind": "model-json",
        "config": {"sort_by": "create-order-from-start", "filters": {"hide_operation_kinds": ["NAME_EDGE"]}}
    });
    let reply = send(&app, "POST", &format!("/api/logs/{id}/chart"), body.to_string()).await;
    assert_eq!(reply.status, StatusCode::OK);
    assert!(reply.content_type.starts_with("application/json"));
    let model = reply.json();
    let order: Vec<&str> = model["timelines"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["element_id"].as_str().unwrap())
        .collect();
    assert_eq!(order, ["start", "check", "flow1", "end", "flow2"]);
    let hidden = model["timelines"][4]["dots"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|d| d["visible"] == false)
        .count();
    assert_eq!(hidden, 1);
    assert!(model["notices"].as_array().unwrap().is_empty());
}

#[tokio::test]
async fn invalid_config_is_422_naming_the_field() {
    let app = router(LogStore::new());
    let id = upload(&app, &chain_log(), LogFormat::Xes).await;
    let uri = format!("/api/logs/{id}/chart");
    for (body, field) in [
        (json!({"config": {"sort_by": "sideways"}}), "config.sort_by"),
        (json!({"config": {"window_ms": 0}}), "window_ms"),
        (json!({"render": {"zoom_x": -1.0}}), "zoom_x"),
        (json!({"config": {"colour_by": "none"}}), "config"),
        (json!({"response_kind": "png"}), "response_kind"),
    ] {
        let reply = send(&app, "POST", &uri, body.to_string()).await;
        assert_eq!(reply.status, StatusCode::UNPROCESSABLE_ENTITY, "{body}");
        let error = reply.json();
        assert_eq!(error["code"], "invalid-config");
        assert!(error["field"].as_str().unwrap().contains(field), "{body}: {error}");
        assert!(!error["message"].as_str().unwrap().is_empty());
    }
    let reply = send(&app, "POST", &uri, "{not json").await;
    assert_eq!(reply.status, StatusCode::BAD_REQUEST);
    assert_eq!(reply.json()["code"], "malformed-json");
}

#[tokio::test]
async fn unknown_ids_are_404() {
    let app = router(LogStore::new());
    for (method, uri) in [
        ("GET", "/api/logs/nope"),
        ("GET", "/api/logs/nope/validate"),
        ("POST", "/api/logs/nope/chart"),
        ("GET", "/api/logs/nope/profile"),
        ("POST", "/api/logs/nope/hit-test"),
        ("GET", "/api/schemas/nope"),
        ("GET", "/api/elsewhere"),
    ] {
        let reply = send(&app, method, uri, Body::empty()).await;
        assert_eq!(reply.status, StatusCode::NOT_FOUND, "{method} {uri}");
        assert_eq!(reply.json()["code"], "not-found");
    }
}

#[tokio::test]
async fn position_free_log_orders_by_hop_count() {
    let app = router(LogStore::new());
    let id = upload(&app, &position_free_log(), LogFormat::Csv).await;
    let body = json!({"config": {"sort_by": "distance-from-start"}});
    let reply = send(&app, "POST", &format!("/api/logs/{id}/chart"), body.to_string()).await;
    assert_eq!(reply.status, StatusCode::OK);
    assert_eq!(reply.notices, "fallback: unit-length");

    let body = json!({"config": {"sort_by": "distance-from-start"}, "response_kind": "model-json"});
    let model = send(&app, "POST", &format!("/api/logs/{id}/chart"), body.to_string())
        .await
        .json();
    let order: Vec<&str> = model["timelines"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["element_id"].as_str().unwrap())
        .collect();
    assert_eq!(order, ["s", "f", "a"]);
    assert_eq!(model["notices"][0]["kind"], "fallback: unit-length");
}

#[tokio::test]
async fn unreplayable_log_falls_back_to_first_operation() {
    let twice = EventLog::new(
        "twice",
        vec![
            ElementTrace::new(
                "a",
                vec![
                    LogEvent::new("CREATE_ACTIVITY", "a", 5000),
                    LogEvent::new("CREATE_ACTIVITY", "a", 6000),
                ],
            ),
            ElementTrace::new("s", vec![LogEvent::new("CREATE_START_EVENT", "s", 0)]),
        ],
    );
    let app = router(LogStore::new());
    let id = upload(&app, &twice, LogFormat::Xes).await;
    let body = json!({"config": {"sort_by": "distance-from-start"}, "response_kind": "model-json"});
    let model = send(&app, "POST", &format!("/api/logs/{id}/chart"), body.to_string())
        .await
        .json();
    assert_eq!(model["notices"][0]["kind"], "fallback: first-operation");
    assert_eq!(model["timelines"][0]["element_id"], "s");
}

#[tokio::test]
async fn validate_lists_findings() {
    let app = router(LogStore::new());
    let id = upload(&app, &chain_log(), LogFormat::Xes).await;
    assert_eq!(
        send(&app, "GET", &format!("/api/logs/{id}/validate"), Body::empty())
            .await
            .json(),
        json!([])
    );

    let late = EventLog::new(
        "late",
        vec![ElementTrace::new("a", vec![LogEvent::new("MOVE_ACTIVITY", "a", 0)])],
    );
    let id = upload(&app, &late, LogFormat::Xes).await;
    let findings = send(&app, "GET", &format!("/api/logs/{id}/validate"), Body::empty())
        .await
        .json();
    assert_eq!(findings[0]["code"], "first-op-not-create");
    assert_eq!(findings[0]["element_id"], "a");
}

#[tokio::test]
async fn profile_honours_thresholds() {
    let (log, truth) = mortgage_log(3);
    let app = router(LogStore::new());
    let id = upload(&app, &log, LogFormat::Xes).await;
    let default = send(&app, "GET", &format!("/api/logs/{id}/profile"), Body::empty())
        .await
        .json();
    assert_eq!(default["total_operations"], 276);
    assert_eq!(default["total_operations"], truth.total_operations);

    let strict = send(
        &app,
        "GET",
        &format!("/api/logs/{id}/profile?thresholds=%7B%22min_gap_ms%22%3A600000%7D"),
        Body::empty(),
    )
    .await;
    assert_eq!(strict.status, StatusCode::OK);
    let pauses = |v: &Value| v["pause_intervals"].as_array().unwrap().len();
    assert!(pauses(&strict.json()) <= pauses(&default));

    let bad = send(
        &app,
        "GET",
        &format!("/api/logs/{id}/profile?thresholds=%7B%22min_gap%22%3A1%7D"),
        Body::empty(),
    )
    .await;
    assert_eq!(bad.status, StatusCode::UNPROCESSABLE_ENTITY);
    assert!(bad.json()["field"].as_str().unwrap().starts_with("thresholds"));
}

#[tokio::test]
async fn hit_test_returns_tooltip_fields() {
    let app = router(LogStore::new());
    let id = upload(&app, &chain_log(), LogFormat::Xes).await;
    let body = json!({"rect": {"x0": 0.0, "y0": 0.0, "x1": 5000.0, "y1": 5000.0}});
    let reply = send(&app, "POST", &format!("/api/logs/{id}/hit-test"), body.to_string()).await;
    assert_eq!(reply.status, StatusCode::OK);
    let hits = reply.json();
    let hits = hits.as_array().unwrap();
    assert_eq!(hits.len(), 10);
    assert_eq!(hits[0]["element_id"], "start");
    assert_eq!(hits[0]["operation"], "CREATE_START_EVENT");
    assert_eq!(hits[0]["timestamp"], "2012-12-03T10:00:00.000Z");

    let empty = json!({"rect": {"x0": 0.0, "y0": 0.0, "x1": 1.0, "y1": 1.0}});
    let reply = send(&app, "POST", &format!("/api/logs/{id}/hit-test"), empty.to_string()).await;
    assert_eq!(reply.json(), json!([]));

    let missing = send(&app, "POST", &format!("/api/logs/{id}/hit-test"), "{}").await;
    assert_eq!(missing.status, StatusCode::UNPROCESSABLE_ENTITY);
}

#[tokio::test]
async fn legend_and_schemas_are_published() {
    let app = router(LogStore::new());
    let legend = send(&app, "GET", "/api/legend", Body::empty()).await.json();
    let legend = legend.as_array().unwrap();
    assert_eq!(legend.len(), 26);
    let row = legend.iter().find(|r| r["name"] == "DELETE_XOR").unwrap();
    assert_eq!(row["shape"], "diamond");

    let names = send(&app, "GET", "/api/schemas", Body::empty()).await.json();
    assert_eq!(names.as_array().unwrap().len(), SCHEMA_NAMES.len());
    for name in SCHEMA_NAMES {
        let reply = send(&app, "GET", &format!("/api/schemas/{name}"), Body::empty()).await;
        assert_eq!(reply.status, StatusCode::OK, "{name}");
        assert!(reply.json()["$schema"].is_string(), "{name}");
    }
    let config = send(&app, "GET", "/api/schemas/chart-config", Body::empty())
        .await
        .json();
    assert!(config["properties"]["sort_by"].is_object());
}

#[tokio::test]
async fn cors_is_enabled() {
    let app = router(LogStore::new());
    let request = Request::builder()
        .method("OPTIONS")
        .uri("/api/logs")
        .header(header::ORIGIN, "http://localhost:5173")
        .header(header::ACCESS_CONTROL_REQUEST_METHOD, "POST")
        .body(Body::empty())
        .unwrap();
    let response = app.oneshot(request).await.unwrap();
    assert!(response.headers().contains_key(header::ACCESS_CONTROL_ALLOW_ORIGIN));
}

#[tokio::test]
async fn directory_store_reloads_uploads() {
    let dir = std::env::temp_dir().join(format!("ppmchart-service-store-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("broken.xes"), "<log").unwrap();
    std::fs::write(dir.join("chain.csv"), write_log(&chain_log(), LogFormat::Csv).unwrap()).unwrap();

    let (store, skipped) = LogStore::with_dir(&dir).unwrap();
    assert_eq!(skipped.len(), 1);
    let app = router(store);
    assert!(send(&app, "GET", "/api/logs/chain", Body::empty())
        .await
        .status
        .is_success());
    let id = upload(&app, &mortgage_log(0).0, LogFormat::Xes).await;

    let (reloaded, _) = LogStore::with_dir(&dir).unwrap();
    let ids: Vec<String> = reloaded.list().into_iter().map(|h| h.id).collect();
    assert_eq!(ids, ["chain".to_string(), id.clone()]);
    assert_eq!(reloaded.get(&id).unwrap().log, mortgage_log(0).0);
    std::fs::remove_dir_all(&dir).unwrap();
}
