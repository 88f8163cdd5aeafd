use std::sync::Arc;

use axum::body::{to_bytes, Body};
use axum::http::{Request, StatusCode};
use axum::Router;
use mastermind_core::Budget;
use mastermind_service::{router, SessionStore};
use serde_json::{json, Value};
use tower::ServiceExt;

/// Seed whose (4, 6) secret is (0, 1, 2, 3).
const REFERENCE_SEED: u64 = 1330;

const WORKED_EXAMPLE: &str = "p cnf 4 3\n1 -2 3 0\n-1 2 4 0\n2 -3 -4 0\n";

fn app() -> Router {
    router(Arc::new(SessionStore::in_memory(Budget::DEFAULT)))
}

async fn call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let req = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .body(match body {
            Some(v) => Body::from(v.to_string()),
            None => Body::empty(),
        })
        .unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = to_bytes(resp.into_body(), usize::MAX).await.unwrap();
    let value = if bytes.is_empty() {
        Value::Null
    } else {
        serde_json::from_slice(&bytes).unwrap()
    };
    (status, value)
}

async fn create(
    app: &Router,
    n: usize,
    c: u32,
    variant: &str,
    mode: &str,
    seed: Option<u64>,
) -> Value {
    let mut body = json!({ "shape": { "n": n, "c": c, "variant": variant }, "mode": mode });
    if let Some(seed) = seed {
        body["seed"] = json!(seed);
    }
    let (status, view) = call(app, "POST", "/games", Some(body)).await;
    assert_eq!(status, StatusCode::CREATED, "{view}");
    view
}

async fn guess(app: &Router, id: &str, body: Value) -> (StatusCode, Value) {
    call(app, "POST", &format!("/games/{id}/guesses"), Some(body)).await
}

#[tokio::test]
async fn engine_secret_replays_reference_game() {
    let app = app();
    let view = create(&app, 4, 6, "full", "engine-secret", Some(REFERENCE_SEED)).await;
    assert_eq!(view["remaining"], 1296);
    assert_eq!(view["status"], "in-progress");
    assert!(view.get("secret").is_none() && view.get("seed").is_none());
    let id = view["id"].as_str().unwrap().to_string();
    assert_eq!(id.len(), 32);

    let table = [
        ([4, 4, 1, 1], (0, 1)),
        ([3, 2, 2, 4], (1, 1)),
        ([0, 3, 0, 4], (1, 1)),
        ([5, 5, 3, 4], (0, 1)),
        ([1, 2, 0, 3], (1, 3)),
        ([0, 1, 2, 3], (4, 0)),
    ];
    let mut last = 1296;
    for (turn, (g, (black, white))) in table.into_iter().enumerate() {
        let (status, body) = guess(&app, &id, json!({ "guess": g })).await;
        assert_eq!(status, StatusCode::OK, "{body}");
        assert_eq!(body["rating"], json!({ "black": black, "white": white }));
        let state = &body["state"];
        assert_eq!(state["turn"], turn as u64 + 1);
        let remaining = state["remaining"].as_u64().unwrap();
        assert!(remaining >= 1 && remaining <= last);
        last = remaining;
        if turn < 5 {
            assert_eq!(state["status"], "in-progress");
            assert!(state.get("secret").is_none());
        }
    }

    let (status, view) = call(&app, "GET", &format!("/games/{id}"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(view["status"], "solved");
    assert_eq!(view["secret"], json!([0, 1, 2, 3]));
    assert_eq!(view["seed"], REFERENCE_SEED);
    assert_eq!(view["history"].as_array().unwrap().len(), 6);

    let (status, body) = guess(&app, &id, json!({ "guess": [0, 0, 0, 0] })).await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert_eq!(body["kind"], "finished");
}

#[tokio::test]
async fn assistant_detects_contradictions() {
    let app = app();
    let view = create(&app, 2, 2, "full", "external-assistant", None).await;
    let id = view["id"].as_str().unwrap();
    let (status, body) = guess(
        &app,
        id,
        json!({ "guess": [0, 0], "rating": { "black": 1, "white": 1 } }),
    )
    .await;
    assert_eq!(status, StatusCode::OK, "{body}");
    assert_eq!(body["state"]["status"], "contradicted");
    assert_eq!(body["state"]["remaining"], 0);
    let (status, _) = guess(
        &app,
        id,
        json!({ "guess": [0, 1], "rating": { "black": 0, "white": 2 } }),
    )
    .await;
    assert_eq!(status, StatusCode::CONFLICT);
}

#[tokio::test]
async fn assistant_rating_validation() {
    let app = app();
    let view = create(&app, 2, 2, "black", "external-assistant", None).await;
    let id = view["id"].as_str().unwrap();
    for bad in [
        json!({ "guess": [0, 0] }),
        json!({ "guess": [0, 0], "rating": { "black": 1, "white": 0 } }),
        json!({ "guess": [0, 0], "rating": 3 }),
        json!({ "guess": [0, 2], "rating": 1 }),
        json!({ "guess": [0], "rating": 1 }),
    ] {
        let (status, body) = guess(&app, id, bad.clone()).await;
        assert_eq!(status, StatusCode::BAD_REQUEST, "{bad} -> {body}");
        assert_eq!(body["kind"], "validation");
    }
    let (_, view) = call(&app, "GET", &format!("/games/{id}"), None).await;
    assert_eq!(view["turn"], 0);
}

#[tokio::test]
async fn adaptive_first_guess() {
    let app = app();
    let view = create(&app, 2, 2, "black", "engine-adaptive", None).await;
    assert_eq!(view["remaining"], 4);
    let id = view["id"].as_str().unwrap();
    let (status, body) = guess(&app, id, json!({ "guess": [0, 0] })).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["rating"], 1);
    assert_eq!(body["state"]["remaining"], 2);
    let (_, body) = guess(&app, id, json!({ "guess": [0, 0], "rating": 1 })).await;
    assert_eq!(body["kind"], "validation");
}

#[tokio::test]
async fn adaptive_games_never_contradict() {
    let app = app();
    let view = create(&app, 3, 3, "full", "engine-adaptive", None).await;
    let id = view["id"].as_str().unwrap();
    let mut status = "in-progress".to_string();
    let mut turns = 0;
    while status == "in-progress" {
        let (_, s) = call(
            &app,
            "POST",
            "/analyze/suggest",
            Some(json!({ "instance": instance_of(&app, id).await })),
        )
        .await;
        let (code, body) = guess(&app, id, json!({ "guess": s["guess"] })).await;
        assert_eq!(code, StatusCode::OK);
        assert!(body["state"]["remaining"].as_u64().unwrap() >= 1);
        status = body["state"]["status"].as_str().unwrap().to_string();
        turns += 1;
        assert!(turns <= 10);
    }
    assert_eq!(status, "solved");
}

/// Instance document rebuilt from a session's public history.
async fn instance_of(app: &Router, id: &str) -> Value {
    let (_, view) = call(app, "GET", &format!("/games/{id}"), None).await;
    let queries: Vec<Value> = view["history"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| json!({ "guess": t["guess"], "rating": t["rating"] }))
        .collect();
    json!({
        "n": view["shape"]["n"],
        "c": view["shape"]["c"],
        "variant": view["shape"]["variant"],
        "queries": queries,
    })
}

#[tokio::test]
async fn shape_and_lookup_errors() {
    let app = app();
    let (status, body) = call(
        &app,
        "POST",
        "/games",
        Some(json!({ "shape": { "n": 26, "c": 2, "variant": "black" }, "mode": "external-assistant" })),
    )
    .await;
    assert_eq!(status, StatusCode::PAYLOAD_TOO_LARGE);
    assert_eq!(body["kind"], "budget");

    for bad in [
        json!({ "shape": { "n": 0, "c": 2, "variant": "black" }, "mode": "engine-secret" }),
        json!({ "shape": { "n": 2, "c": 2, "variant": "black" }, "mode": "honest" }),
        json!({ "shape": { "n": 2, "c": 2 }, "mode": "engine-secret" }),
    ] {
        let (status, _) = call(&app, "POST", "/games", Some(bad)).await;
        assert_eq!(status, StatusCode::BAD_REQUEST);
    }

    let (status, body) = call(&app, "GET", "/games/nope", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_eq!(body["kind"], "not-found");
    let (status, _) = guess(&app, "nope", json!({ "guess": [0] })).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn analysis_endpoints() {
    let app = app();
    let (status, body) = call(
        &app,
        "POST",
        "/analyze/count",
        Some(json!({ "instance": { "n": 4, "c": 6, "variant": "white", "queries": [] } })),
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["count"], 126);

    let (status, body) = call(
        &app,
        "POST",
        "/analyze/suggest",
        Some(json!({ "instance": { "n": 2, "c": 2, "variant": "black", "queries": [] } })),
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body, json!({ "guess": [0, 0], "worstCase": 2 }));

    let contradiction = json!({ "instance": {
        "n": 2, "c": 2, "variant": "full",
        "queries": [{ "guess": [0, 0], "rating": { "black": 1, "white": 1 } }]
    } });
    let (status, _) = call(&app, "POST", "/analyze/suggest", Some(contradiction)).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);

    let (status, body) = call(
        &app,
        "POST",
        "/analyze/suggest",
        Some(json!({ "instance": { "n": 9, "c": 9, "variant": "full", "queries": [] } })),
    )
    .await;
    assert_eq!(status, StatusCode::PAYLOAD_TOO_LARGE, "{body}");

    let (status, body) = call(
        &app,
        "POST",
        "/analyze/reduce",
        Some(json!({ "dimacs": WORKED_EXAMPLE, "target": "full2" })),
    )
    .await;
    assert_eq!(status, StatusCode::OK, "{body}");
    assert_eq!(body["instance"]["n"], 26);
    assert_eq!(body["instance"]["queries"].as_array().unwrap().len(), 20);
    assert_eq!(body["layout"]["target"], "full2");

    let (status, count) = call(
        &app,
        "POST",
        "/analyze/count",
        Some(json!({ "instance": body["instance"] })),
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(count["count"], 10);

    let (status, body) = call(
        &app,
        "POST",
        "/analyze/reduce",
        Some(json!({ "dimacs": "p cnf 3 1\n1 1 2 0\n", "target": "white" })),
    )
    .await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(body["kind"], "validation");
}

#[tokio::test]
async fn malformed_bodies_are_bad_requests() {
    let app = app();
    let req = Request::builder()
        .method("POST")
        .uri("/analyze/count")
        .body(Body::from("{not json"))
        .unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    assert_eq!(resp.status(), StatusCode::BAD_REQUEST);

    let (status, _) = call(
        &app,
        "POST",
        "/analyze/count",
        Some(json!({ "instance": { "n": 2, "c": 2, "variant": "full", "queries": [{ "guess": [0, 0], "rating": 1 }] } })),
    )
    .await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}
