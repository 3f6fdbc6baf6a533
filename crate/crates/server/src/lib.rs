//! HTTP/JSON boundary over the game engine. Every route except registration,
//! health and images needs `Authorization: Bearer <token>`.

mod auth;
mod error;
mod handlers;
pub mod views;

use std::future::Future;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Duration;

use axum::routing::{get, post};
use axum::Router;
use fakeyou_core::Engine;
use tower_http::services::ServeDir;

pub use error::{ApiError, ErrorBody};

/// URL prefix under which stored images are served by default.
pub const DEFAULT_IMAGE_PREFIX: &str = "/images";

#[derive(Debug, Clone)]
pub struct ServerConfig {
    /// Directory holding the image store.
    pub image_dir: PathBuf,
    /// Must start with `/`; image URLs in game views are `<prefix>/<image_ref>`.
    pub image_prefix: String,
}

#[derive(Clone)]
pub struct AppState {
    pub engine: Arc<Engine>,
    pub image_prefix: Arc<str>,
}

pub fn router(engine: Arc<Engine>, config: &ServerConfig) -> Router {
    let prefix = config.image_prefix.trim_end_matches('/').to_string();
    let state = AppState {
        engine,
        image_prefix: prefix.clone().into(),
    };
    Router::new()
        .route("/health", get(handlers::health))
        .route("/players", post(handlers::register))
        .route("/lobby", get(handlers::lobby))
        .route("/queue", post(handlers::queue))
        .route("/games/{id}", get(handlers::game))
        .route("/games/{id}/rounds/{index}/fake", post(handlers::submit_fake))
        .route("/games/{id}/rounds/{index}/options", get(handlers::options))
        .route("/games/{id}/rounds/{index}/bet", post(handlers::bet))
        .route("/games/{id}/results", get(handlers::results))
        .route("/stats/me", get(handlers::stats))
        .nest_service(&prefix, ServeDir::new(&config.image_dir))
        .fallback(handlers::not_found)
        .with_state(state)
}

/// Serves until `shutdown` resolves, then drains open connections.
pub async fn serve(
    listener: tokio::net::TcpListener,
    app: Router,
    shutdown: impl Future<Output = ()> + Send + 'static,
) -> std::io::Result<()> {
    axum::serve(listener, app)
        .with_graceful_shutdown(shutdown)
        .await
}

/// Periodically cancels games past their phase deadline and retries
/// matchmaking (for queues that were waiting on articles).
pub fn spawn_maintenance(engine: Arc<Engine>, period: Duration) -> tokio::task::JoinHandle<()> {
    tokio::spawn(async move {
        let mut ticker = tokio::time::interval(period);
        loop {
            ticker.tick().await;
            let engine = engine.clone();
            let outcome = tokio::task::spawn_blocking(move || {
                let cancelled = engine.cancel_stale(engine.now())?;
                engine.matchmake()?;
                Ok::<_, fakeyou_core::GameError>(cancelled)
            })
            .await;
            match outcome {
                Ok(Ok(cancelled)) if !cancelled.is_empty() => {
                    tracing::info!(?cancelled, "cancelled stale games")
                }
                Ok(Ok(_)) => {}
                Ok(Err(e)) => tracing::warn!(error = %e, "maintenance pass failed"),
                Err(e) => tracing::error!(error = %e, "maintenance task panicked"),
            }
        }
    })
}
