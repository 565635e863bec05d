use std::sync::Arc;

use axum::body::Body;
use axum::http::{header, Request, StatusCode};
use formalize_service::{router, Catalog, Cors};
use http_body_util::BodyExt;
use serde_json::Value;
use tower::ServiceExt;

async fn call(cors: &Cors, req: Request<Body>) -> (StatusCode, Value, axum::http::HeaderMap) {
    let app = router(Arc::new(Catalog::builtin()), cors);
    let resp = app.oneshot(req).await.unwrap();
    let status = resp.status();
    let headers = resp.headers().clone();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    let body = if bytes.is_empty() {
        Value::Null
    } else {
        serde_json::from_slice(&bytes).unwrap()
    };
    (status, body, headers)
}

async fn get(path: &str) -> (StatusCode, Value) {
    let (s, b, _) = call(
        &Cors::Disabled,
        Request::get(path).body(Body::empty()).unwrap(),
    )
    .await;
    (s, b)
}

async fn post(path: &str, body: &str) -> (StatusCode, Value) {
    let req = Request::post(path)
        .header(header::CONTENT_TYPE, "application/json")
        .body(Body::from(body.to_string()))
        .unwrap();
    let (s, b, _) = call(&Cors::Disabled, req).await;
    (s, b)
}

fn contains_key(v: &Value, key: &str) -> bool {
    match v {
        Value::Object(m) => m.contains_key(key) || m.values().any(|x| contains_key(x, key)),
        Value::Array(a) => a.iter().any(|x| contains_key(x, key)),
        _ => false,
    }
}

#[tokio::test]
async fn lists_every_builtin_exercise() {
    let (status, body) = get("/api/exercises").await;
    assert_eq!(status, StatusCode::OK);
    let list = body.as_array().unwrap();
    assert_eq!(list.len(), 17);
    let grid = list.iter().find(|e| e["type"] == "grid").unwrap();
    assert_eq!(grid["grid_size"], 21);
    assert_eq!(grid["constants"]["u"], serde_json::json!([0, 0]));
    let dictation = list.iter().find(|e| e["type"] == "dictation").unwrap();
    assert!(dictation["prompt"].is_string());
}

#[tokio::test]
async fn listings_do_not_leak_answers() {
    let (_, body) = get("/api/exercises").await;
    for key in ["target", "accepted", "reference_solution", "theory_extras"] {
        assert!(!contains_key(&body, key), "{key}");
    }
    let text = body.to_string();
    assert!(!text.contains("dist(u,x)=dist(x,u)"));
    assert!(!text.contains("Ax:Ay:(x<y->f(x)<f(y))"));
}

#[tokio::test]
async fn single_exercise() {
    let (status, body) = get("/api/exercises/grid-04-column").await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["constants"]["a"], serde_json::json!([3, -2]));
    let (status, body) = get("/api/exercises/nope").await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_eq!(body, serde_json::json!({"error": "unknown_exercise"}));
}

#[tokio::test]
async fn correct_grid_answer() {
    let (status, body) = post(
        "/api/exercises/grid-01-cross/check",
        r#"{"formula":"dist(u,x)=dist(x,u)"}"#,
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["category"], "correct");
    assert_eq!(body["coloring"]["green"].as_array().unwrap().len(), 41);
    assert!(body["coloring"]["red"].as_array().unwrap().is_empty());
    assert!(body["coloring"]["yellow"].as_array().unwrap().is_empty());
    assert!(body.get("reason").is_none());
}

#[tokio::test]
async fn right_arm_of_the_cross() {
    let (_, body) = post(
        "/api/exercises/grid-01-cross/check",
        r#"{"formula":"rechts(u,x)"}"#,
    )
    .await;
    assert_eq!(body["category"], "sufficient_not_necessary");
    assert_eq!(body["coloring"]["green"].as_array().unwrap().len(), 10);
    assert_eq!(body["coloring"]["yellow"].as_array().unwrap().len(), 31);
    assert_eq!(body["coloring"]["green"][0], serde_json::json!([1, 0]));
}

#[tokio::test]
async fn parse_error_is_graded_not_failed() {
    let (status, body) = post(
        "/api/exercises/dict-02-increasing/check",
        r#"{"formula":"x<"}"#,
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["category"], "rejected");
    assert_eq!(body["reason"]["kind"], "parse_error");
    assert_eq!(body["reason"]["offset"], 2);
    assert!(body.get("coloring").is_none());
}

#[tokio::test]
async fn grid_rejections_have_no_coloring() {
    let (status, body) = post(
        "/api/exercises/grid-04-column/check",
        r#"{"formula":"Ea:ueber(a,x)"}"#,
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["reason"]["kind"], "constant_shadow");
    assert!(body.get("coloring").is_none());
}

#[tokio::test]
async fn dictation_verdict() {
    let (_, body) = post(
        "/api/exercises/dict-02-increasing/check",
        r#"{"formula":"Ax:Ay:(x<y->f(x)<=f(y))"}"#,
    )
    .await;
    assert_eq!(body["category"], "necessary_not_sufficient");
    assert!(body["message"]
        .as_str()
        .unwrap()
        .contains("further restrictions"));
}

#[tokio::test]
async fn malformed_bodies() {
    for body in [
        "",
        "{",
        "[]",
        r#"{"formula":3}"#,
        r#"{"formula":""}"#,
        r#"{"text":"x=u"}"#,
    ] {
        let (status, value) = post("/api/exercises/grid-01-cross/check", body).await;
        assert_eq!(status, StatusCode::BAD_REQUEST, "{body}");
        assert_eq!(value["error"], "malformed_request");
    }
    let (status, _) = post("/api/exercises/nope/check", r#"{"formula":"x=u"}"#).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn responses_do_not_depend_on_order() {
    let inputs = ["rechts(u,x)", "x=u", "Ey:nachbar(x,y)", "bad("];
    let mut forward = Vec::new();
    for f in inputs {
        forward.push(
            post(
                "/api/exercises/grid-02-neighbours/check",
                &format!(r#"{{"formula":"{f}"}}"#),
            )
            .await,
        );
    }
    let mut backward = Vec::new();
    for f in inputs.iter().rev() {
        backward.push(
            post(
                "/api/exercises/grid-02-neighbours/check",
                &format!(r#"{{"formula":"{f}"}}"#),
            )
            .await,
        );
    }
    backward.reverse();
    assert_eq!(forward, backward);
}

#[tokio::test]
async fn cors_origin() {
    let req = || {
        Request::get("/api/exercises")
            .header(header::ORIGIN, "http://localhost:5173")
            .body(Body::empty())
            .unwrap()
    };
    let (_, _, h) = call(&Cors::parse(Some("http://localhost:5173")), req()).await;
    assert_eq!(
        h[header::ACCESS_CONTROL_ALLOW_ORIGIN],
        "http://localhost:5173"
    );
    let (_, _, h) = call(&Cors::parse(Some("*")), req()).await;
    assert_eq!(h[header::ACCESS_CONTROL_ALLOW_ORIGIN], "*");
    let (_, _, h) = call(&Cors::parse(None), req()).await;
    assert!(h.get(header::ACCESS_CONTROL_ALLOW_ORIGIN).is_none());
}
