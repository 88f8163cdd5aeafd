//! JSON-over-HTTP front end.
//!
//! | route                      | body                         | reply                 |
//! |----------------------------|------------------------------|-----------------------|
//! | `POST /games`              | `{shape, mode, seed?}`       | session view (201)    |
//! | `POST /games/{id}/guesses` | `{guess, rating?}`           | `{rating, state}`     |
//! | `GET /games/{id}`          |                              | session view          |
//! | `POST /analyze/count`      | `{instance}`                 | `{count}`             |
//! | `POST /analyze/suggest`    | `{instance}`                 | `{guess, worstCase}`  |
//! | `POST /analyze/reduce`     | `{dimacs, target}`           | `{instance, layout}`  |
//!
//! Errors carry `{error, kind}` with status 400 (validation), 404 (unknown
//! game), 409 (finished game) or 413 (enumeration budget exceeded).

use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use mastermind_core::{
    count_solutions, parse_dimacs, suggest_guess, Color, Instance, PlayHistory, RatingDoc,
    ReductionLayout, ReductionTarget,
};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::json;
use tokio::net::TcpListener;

use crate::error::ServiceError;
use crate::session::{Mode, SessionView, Shape};
use crate::store::SessionStore;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CreateGame {
    pub shape: Shape,
    pub mode: Mode,
    #[serde(default)]
    pub seed: Option<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GuessRequest {
    pub guess: Vec<Color>,
    #[serde(default)]
    pub rating: Option<RatingDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct GuessResponse {
    pub rating: RatingDoc,
    pub state: SessionView,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceRequest {
    pub instance: Instance,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReduceRequest {
    pub dimacs: String,
    pub target: ReductionTarget,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ReduceResponse {
    pub instance: Instance,
    pub layout: ReductionLayout,
}

pub struct ApiError(ServiceError);

impl<E: Into<ServiceError>> From<E> for ApiError {
    fn from(e: E) -> Self {
        ApiError(e.into())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = match self.0.kind() {
            "budget" => StatusCode::PAYLOAD_TOO_LARGE,
            "validation" => StatusCode::BAD_REQUEST,
            "not-found" => StatusCode::NOT_FOUND,
            "finished" => StatusCode::CONFLICT,
            _ => StatusCode::INTERNAL_SERVER_ERROR,
        };
        let body = json!({ "error": self.0.to_string(), "kind": self.0.kind() });
        (status, Json(body)).into_response()
    }
}

type ApiResult<T> = Result<T, ApiError>;

pub fn router(store: Arc<SessionStore>) -> Router {
    Router::new()
        .route("/games", post(create_game))
        .route("/games/{id}", get(get_game))
        .route("/games/{id}/guesses", post(submit_guess))
        .route("/analyze/count", post(analyze_count))
        .route("/analyze/suggest", post(analyze_suggest))
        .route("/analyze/reduce", post(analyze_reduce))
        .with_state(store)
}

/// Serves until Ctrl-C.
pub async fn serve(listener: TcpListener, store: Arc<SessionStore>) -> std::io::Result<()> {
    if let Ok(addr) = listener.local_addr() {
        tracing::info!(%addr, "listening");
    }
    axum::serve(listener, router(store))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}

/// Body parsing that reports every malformed document as a 400.
fn parse<T: DeserializeOwned>(body: &Bytes) -> ApiResult<T> {
    serde_json::from_slice(body).map_err(|e| {
        ApiError(ServiceError::Validation(format!(
            "invalid request body: {e}"
        )))
    })
}

/// Counting and minimax are CPU-bound; keep them off the async workers.
async fn blocking<T: Send + 'static>(
    f: impl FnOnce() -> ApiResult<T> + Send + 'static,
) -> ApiResult<T> {
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError(ServiceError::Validation(format!("worker failed: {e}"))))?
}

async fn create_game(
    State(store): State<Arc<SessionStore>>,
    body: Bytes,
) -> ApiResult<impl IntoResponse> {
    let req: CreateGame = parse(&body)?;
    let view = blocking(move || Ok(store.create(req.shape, req.mode, req.seed)?)).await?;
    Ok((StatusCode::CREATED, Json(view)))
}

async fn get_game(
    State(store): State<Arc<SessionStore>>,
    Path(id): Path<String>,
) -> ApiResult<Json<SessionView>> {
    Ok(Json(store.view(&id)?))
}

async fn submit_guess(
    State(store): State<Arc<SessionStore>>,
    Path(id): Path<String>,
    body: Bytes,
) -> ApiResult<Json<GuessResponse>> {
    let req: GuessRequest = parse(&body)?;
    let (rating, state) = blocking(move || Ok(store.submit(&id, req.guess, req.rating)?)).await?;
    Ok(Json(GuessResponse {
        rating: rating.into(),
        state,
    }))
}

async fn analyze_count(
    State(store): State<Arc<SessionStore>>,
    body: Bytes,
) -> ApiResult<Json<serde_json::Value>> {
    let req: InstanceRequest = parse(&body)?;
    let budget = store.budget();
    let count = blocking(move || Ok(count_solutions(&req.instance, budget)?)).await?;
    Ok(Json(json!({ "count": count })))
}

async fn analyze_suggest(
    State(store): State<Arc<SessionStore>>,
    body: Bytes,
) -> ApiResult<Json<serde_json::Value>> {
    let req: InstanceRequest = parse(&body)?;
    let budget = store.budget();
    let s = blocking(move || Ok(suggest_guess(&PlayHistory::from(req.instance), budget)?)).await?;
    Ok(Json(
        json!({ "guess": s.guess.pegs(), "worstCase": s.worst_case }),
    ))
}

async fn analyze_reduce(body: Bytes) -> ApiResult<Json<ReduceResponse>> {
    let req: ReduceRequest = parse(&body)?;
    let formula = parse_dimacs(&req.dimacs)?;
    let (instance, layout) = req.target.reduce(&formula)?;
    Ok(Json(ReduceResponse { instance, layout }))
}
