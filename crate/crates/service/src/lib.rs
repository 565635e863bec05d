//! Stateless HTTP JSON facade over the dictation and grid checkers.
//!
//! | method | path | body |
//! |---|---|---|
//! | GET | `/api/exercises` | list of exercise summaries |
//! | GET | `/api/exercises/{id}` | one summary, or 404 |
//! | POST | `/api/exercises/{id}/check` | `{"formula": "..."}` → verdict |
//!
//! Every graded submission, rejected ones included, answers 200.

mod schema;

use std::collections::HashSet;
use std::net::SocketAddr;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::{HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use formalize_core::store::{Exercise, ExercisePack};
use serde_json::json;
use tower_http::cors::{AllowOrigin, CorsLayer};

pub use schema::{check_exercise, CheckRequest, CheckResponse, ExerciseSummary, Reason};

#[derive(Debug, thiserror::Error)]
pub enum CatalogError {
    #[error("exercise id {0:?} appears in more than one pack")]
    DuplicateId(String),
}

/// All exercises the service grades, in pack order.
#[derive(Debug, Default)]
pub struct Catalog {
    exercises: Vec<Exercise>,
}

impl Catalog {
    pub fn new(packs: impl IntoIterator<Item = ExercisePack>) -> Result<Self, CatalogError> {
        let mut seen = HashSet::new();
        let mut exercises = Vec::new();
        for pack in packs {
            for ex in pack.exercises {
                if !seen.insert(ex.id().to_string()) {
                    return Err(CatalogError::DuplicateId(ex.id().to_string()));
                }
                exercises.push(ex);
            }
        }
        Ok(Catalog { exercises })
    }

    pub fn builtin() -> Self {
        Catalog::new(formalize_core::builtin_packs()).expect("builtin ids are unique")
    }

    pub fn get(&self, id: &str) -> Option<&Exercise> {
        self.exercises.iter().find(|e| e.id() == id)
    }

    pub fn exercises(&self) -> &[Exercise] {
        &self.exercises
    }

    pub fn summaries(&self) -> Vec<ExerciseSummary> {
        self.exercises.iter().map(ExerciseSummary::from).collect()
    }
}

fn error(status: StatusCode, code: &str, detail: Option<String>) -> Response {
    let mut body = json!({ "error": code });
    if let Some(d) = detail {
        body["detail"] = d.into();
    }
    (status, Json(body)).into_response()
}

async fn list(State(catalog): State<Arc<Catalog>>) -> Json<Vec<ExerciseSummary>> {
    Json(catalog.summaries())
}

async fn show(State(catalog): State<Arc<Catalog>>, Path(id): Path<String>) -> Response {
    match catalog.get(&id) {
        Some(ex) => Json(ExerciseSummary::from(ex)).into_response(),
        None => error(StatusCode::NOT_FOUND, "unknown_exercise", None),
    }
}

async fn check(
    State(catalog): State<Arc<Catalog>>,
    Path(id): Path<String>,
    body: Bytes,
) -> Response {
    if catalog.get(&id).is_none() {
        return error(StatusCode::NOT_FOUND, "unknown_exercise", None);
    }
    let request: CheckRequest = match serde_json::from_slice(&body) {
        Ok(r) => r,
        Err(e) => {
            return error(
                StatusCode::BAD_REQUEST,
                "malformed_request",
                Some(e.to_string()),
            )
        }
    };
    if request.formula.is_empty() {
        return error(
            StatusCode::BAD_REQUEST,
            "malformed_request",
            Some("formula must not be empty".into()),
        );
    }
    let graded = tokio::task::spawn_blocking(move || {
        let ex = catalog.get(&id).expect("checked above");
        check_exercise(ex, &request.formula)
    })
    .await;
    match graded {
        Ok(response) => Json(response).into_response(),
        Err(e) => error(
            StatusCode::INTERNAL_SERVER_ERROR,
            "internal",
            Some(e.to_string()),
        ),
    }
}

/// How cross-origin requests are answered.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum Cors {
    #[default]
    Disabled,
    Any,
    Origin(String),
}

impl Cors {
    /// `*` allows every origin; anything else is one exact origin.
    pub fn parse(origin: Option<&str>) -> Self {
        match origin {
            None => Cors::Disabled,
            Some("*") => Cors::Any,
            Some(o) => Cors::Origin(o.to_string()),
        }
    }
}

pub fn router(catalog: Arc<Catalog>, cors: &Cors) -> Router {
    let app = Router::new()
        .route("/api/exercises", get(list))
        .route("/api/exercises/{id}", get(show))
        .route("/api/exercises/{id}/check", post(check))
        .with_state(catalog);
    let layer = CorsLayer::new()
        .allow_methods([axum::http::Method::GET, axum::http::Method::POST])
        .allow_headers([axum::http::header::CONTENT_TYPE]);
    match cors {
        Cors::Disabled => app,
        Cors::Any => app.layer(layer.allow_origin(AllowOrigin::any())),
        Cors::Origin(o) => match HeaderValue::from_str(o) {
            Ok(v) => app.layer(layer.allow_origin(v)),
            Err(_) => app,
        },
    }
}

/// Serves until the process is stopped.
pub async fn serve(addr: SocketAddr, catalog: Arc<Catalog>, cors: &Cors) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(catalog, cors)).await
}
