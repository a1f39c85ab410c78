//! HTTP front end: tagging with caching for concurrent clients.
//!
//! Routes:
//! * `GET /tag/{context}/{identifier}` — tag one identifier (URL-encoded)
//! * `POST /tag` with `{"identifier": ..., "context": ...}`
//! * `GET /health` — model version, cache size, uptime

use std::net::SocketAddr;
use std::sync::Arc;
use std::time::Instant;

use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use tracing::{info, warn};

use scalar_core::cache::{tag_cached, unix_now, Cache};
use scalar_core::features::IdentifierContext;
use scalar_core::pipeline::AnnotatedWord;
use scalar_core::{Error, Tagger64};

/// A loaded model ready to serve.
pub struct Engine {
    pub tagger: Tagger64,
    pub model_version: String,
}

/// Shared service state. `engine` is `None` when no model is loaded, in
/// which case tagging answers 503.
pub struct AppState {
    pub engine: Option<Arc<Engine>>,
    pub cache: Arc<Cache>,
    pub started: Instant,
}

impl AppState {
    pub fn new(engine: Option<Arc<Engine>>, cache: Arc<Cache>) -> Self {
        AppState {
            engine,
            cache,
            started: Instant::now(),
        }
    }
}

/// JSON body of a successful tag request; also what `scalar tag` prints.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TagResponse {
    pub identifier: String,
    pub context: String,
    pub words: Vec<AnnotatedWord>,
    pub first_seen: u64,
    pub last_seen: u64,
    pub count: u64,
    pub cached: bool,
}

#[derive(Debug, Deserialize)]
pub struct TagRequest {
    pub identifier: String,
    pub context: String,
}

#[derive(Debug, Serialize)]
pub struct HealthResponse {
    pub status: &'static str,
    pub model_version: Option<String>,
    pub cache_size: usize,
    pub uptime_seconds: u64,
}

#[derive(Debug, Serialize)]
struct ErrorResponse {
    error: String,
}

fn error_response(status: StatusCode, message: impl Into<String>) -> Response {
    (
        status,
        Json(ErrorResponse {
            error: message.into(),
        }),
    )
        .into_response()
}

pub fn build_router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/tag/{context}/{identifier}", get(tag_get))
        .route("/tag", post(tag_post))
        .route("/health", get(health))
        .with_state(state)
}

async fn tag_get(
    State(state): State<Arc<AppState>>,
    Path((context, identifier)): Path<(String, String)>,
) -> Response {
    handle_tag(&state, &identifier, &context)
}

async fn tag_post(
    State(state): State<Arc<AppState>>,
    Json(request): Json<TagRequest>,
) -> Response {
    handle_tag(&state, &request.identifier, &request.context)
}

fn handle_tag(state: &AppState, identifier: &str, context: &str) -> Response {
    let context: IdentifierContext = match context.parse() {
        Ok(c) => c,
        Err(e) => return error_response(StatusCode::BAD_REQUEST, e.to_string()),
    };
    let Some(engine) = &state.engine else {
        return error_response(StatusCode::SERVICE_UNAVAILABLE, "model not loaded");
    };
    match tag_cached(
        &engine.tagger,
        &state.cache,
        identifier,
        context,
        unix_now(),
    ) {
        Ok((entry, cached)) => Json(TagResponse {
            identifier: identifier.to_string(),
            context: context.as_str().to_string(),
            words: entry.annotation,
            first_seen: entry.first_seen,
            last_seen: entry.last_seen,
            count: entry.count,
            cached,
        })
        .into_response(),
        Err(e @ (Error::MalformedIdentifier(_) | Error::NonAsciiIdentifier(_))) => {
            error_response(StatusCode::BAD_REQUEST, e.to_string())
        }
        Err(e) => {
            warn!("tagging failed: {e}");
            error_response(StatusCode::INTERNAL_SERVER_ERROR, e.to_string())
        }
    }
}

async fn health(State(state): State<Arc<AppState>>) -> Json<HealthResponse> {
    Json(HealthResponse {
        status: if state.engine.is_some() { "ok" } else { "no-model" },
        model_version: state.engine.as_ref().map(|e| e.model_version.clone()),
        cache_size: state.cache.len(),
        uptime_seconds: state.started.elapsed().as_secs(),
    })
}

/// Runs the service until ctrl-c, flushing the cache every few seconds and
/// once more on shutdown.
pub async fn serve(state: Arc<AppState>, addr: SocketAddr) -> anyhow::Result<()> {
    let router = build_router(state.clone());
    let listener = tokio::net::TcpListener::bind(addr).await?;
    info!("listening on {}", listener.local_addr()?);

    let flusher = {
        let cache = state.cache.clone();
        tokio::spawn(async move {
            let mut tick = tokio::time::interval(std::time::Duration::from_secs(5));
            loop {
                tick.tick().await;
                if let Err(e) = cache.flush() {
                    warn!("cache flush failed: {e}");
                }
            }
        })
    };

    axum::serve(listener, router)
        .with_graceful_shutdown(shutdown_signal())
        .await?;

    flusher.abort();
    state.cache.flush()?;
    Ok(())
}

async fn shutdown_signal() {
    #[cfg(unix)]
    {
        let mut term = tokio::signal::unix::signal(tokio::signal::unix::SignalKind::terminate())
            .expect("install SIGTERM handler");
        tokio::select! {
            _ = tokio::signal::ctrl_c() => {}
            _ = term.recv() => {}
        }
    }
    #[cfg(not(unix))]
    {
        let _ = tokio::signal::ctrl_c().await;
    }
}
