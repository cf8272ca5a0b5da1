use std::net::SocketAddr;
use std::sync::Arc;
use std::time::{Duration, Instant};

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::de::DeserializeOwned;
use tower_http::cors::CorsLayer;

use crate::error::ServiceError;
use crate::store::SessionStore;
use crate::wire::{CreateRequest, ErrorBody, SubmitResponse, WireMove};

impl IntoResponse for ServiceError {
    fn into_response(self) -> Response {
        let status = match &self {
            ServiceError::UnknownSession(_) => StatusCode::NOT_FOUND,
            ServiceError::Finished | ServiceError::OutOfTurn => StatusCode::CONFLICT,
            ServiceError::Inadmissible(_) => StatusCode::UNPROCESSABLE_ENTITY,
            ServiceError::InvalidParameters(_) | ServiceError::Malformed(_) => StatusCode::BAD_REQUEST,
            ServiceError::Engine(_) => StatusCode::INTERNAL_SERVER_ERROR,
        };
        let clause = match &self {
            ServiceError::Inadmissible(r) => Some(r.clause().to_string()),
            _ => None,
        };
        let body = ErrorBody {
            error: self.code().to_string(),
            message: self.to_string(),
            clause,
        };
        (status, Json(body)).into_response()
    }
}

fn parse<T: DeserializeOwned>(body: &[u8]) -> Result<T, ServiceError> {
    serde_json::from_slice(body).map_err(|e| ServiceError::Malformed(e.to_string()))
}

/// Solving can take a while, so it runs off the async workers.
async fn blocking<R: Send + 'static>(
    f: impl FnOnce() -> Result<R, ServiceError> + Send + 'static,
) -> Result<R, ServiceError> {
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ServiceError::Engine(occupation_core::Error::Internal(e.to_string())))?
}

async fn create(State(store): State<Arc<SessionStore>>, body: Bytes) -> Result<Response, ServiceError> {
    let request: CreateRequest = parse(&body)?;
    let session = blocking(move || store.create(&request)).await?;
    Ok((StatusCode::CREATED, Json(session.view())).into_response())
}

async fn show(State(store): State<Arc<SessionStore>>, Path(id): Path<String>) -> Result<Response, ServiceError> {
    let session = store.get(&id)?;
    Ok(Json(session.view()).into_response())
}

async fn submit(
    State(store): State<Arc<SessionStore>>,
    Path(id): Path<String>,
    body: Bytes,
) -> Result<Response, ServiceError> {
    let mv: WireMove = parse(&body)?;
    let response = blocking(move || {
        store.with_session(&id, |s| {
            let engine_reply = s.submit(mv)?;
            Ok(SubmitResponse {
                session: s.view(),
                engine_reply,
            })
        })
    })
    .await?;
    Ok(Json(response).into_response())
}

async fn delete(State(store): State<Arc<SessionStore>>, Path(id): Path<String>) -> Result<StatusCode, ServiceError> {
    store.remove(&id)?;
    Ok(StatusCode::NO_CONTENT)
}

pub fn router(store: Arc<SessionStore>) -> Router {
    Router::new()
        .route("/sessions", post(create))
        .route("/sessions/:id", get(show).delete(delete))
        .route("/sessions/:id/moves", post(submit))
        .with_state(store)
        // The play UI may be served from another local origin.
        .layer(CorsLayer::permissive())
}

/// Serves the API on `addr` until the process ends, sweeping idle sessions
/// once a minute.
pub async fn serve(addr: SocketAddr, store: Arc<SessionStore>) -> std::io::Result<()> {
    let sweeper = Arc::clone(&store);
    tokio::spawn(async move {
        let mut tick = tokio::time::interval(Duration::from_secs(60));
        loop {
            tick.tick().await;
            sweeper.expire_idle(Instant::now());
        }
    });
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(store)).await
}
