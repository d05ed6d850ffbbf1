//! HTTP validation service backing the browser editor.
//!
//! | route               | behaviour                                         |
//! |---------------------|---------------------------------------------------|
//! | `POST /api/validate`| `{"source": ..., "options": {...}}` → JSON report |
//! | `GET /healthz`      | `{"status":"ok"}`                                 |
//! | `/api/...` (other)  | 404                                               |
//! | anything else       | static file from the asset directory              |
//!
//! The service holds no state besides its configuration. A document that is
//! not well-formed is still a 200 response; the verdict is in the body.

use std::net::SocketAddr;
use std::num::NonZeroUsize;
use std::path::PathBuf;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{DefaultBodyLimit, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{any, get, post};
use axum::{Json, Router};
use serde::Deserialize;
use serde_json::json;
use tokio::net::TcpListener;
use tower_http::services::ServeDir;

use crate::report_json::JsonReport;
use crate::wellformedness::{check_document, ParserOptions};

pub const DEFAULT_MAX_SOURCE_BYTES: usize = 10 * 1024 * 1024;

#[derive(Debug, Clone)]
pub struct ServiceConfig {
    pub listen: SocketAddr,
    pub asset_dir: PathBuf,
    /// Largest accepted `source`, in bytes of UTF-8.
    pub max_source_bytes: usize,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        Self {
            listen: SocketAddr::from(([127, 0, 0, 1], 8080)),
            asset_dir: PathBuf::from("assets"),
            max_source_bytes: DEFAULT_MAX_SOURCE_BYTES,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct ValidateRequest {
    pub source: String,
    #[serde(default)]
    pub options: Option<RequestOptions>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RequestOptions {
    pub require_declaration: Option<bool>,
    pub max_errors: Option<NonZeroUsize>,
}

impl RequestOptions {
    pub fn parser_options(&self) -> ParserOptions {
        let defaults = ParserOptions::default();
        ParserOptions {
            require_declaration: self
                .require_declaration
                .unwrap_or(defaults.require_declaration),
            max_errors: self.max_errors.unwrap_or(defaults.max_errors),
            ..defaults
        }
    }
}

pub fn router(config: ServiceConfig) -> Router {
    // JSON string escaping can at most double typical text; \u escapes are
    // rarer and still bounded by the explicit source check below.
    let body_limit = config
        .max_source_bytes
        .saturating_mul(2)
        .saturating_add(64 * 1024);
    let assets = ServeDir::new(&config.asset_dir);
    Router::new()
        .route("/api/validate", post(handle_validate))
        .route("/healthz", get(handle_health))
        .route("/api", any(not_found))
        .route("/api/{*rest}", any(not_found))
        .fallback_service(assets)
        .layer(DefaultBodyLimit::max(body_limit))
        .with_state(Arc::new(config))
}

/// Binds `config.listen` and serves until Ctrl-C.
pub async fn serve(config: ServiceConfig) -> std::io::Result<()> {
    let listener = TcpListener::bind(config.listen).await?;
    log_listening(&listener);
    axum::serve(listener, router(config))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}

/// Serves on an already bound listener until the process ends.
pub async fn serve_on(listener: TcpListener, config: ServiceConfig) -> std::io::Result<()> {
    axum::serve(listener, router(config)).await
}

fn log_listening(listener: &TcpListener) {
    if let Ok(addr) = listener.local_addr() {
        eprintln!("xmlcheck: listening on http://{addr}");
    }
}

fn error(status: StatusCode, message: impl Into<String>) -> Response {
    (status, Json(json!({ "error": message.into() }))).into_response()
}

pub async fn handle_validate(State(config): State<Arc<ServiceConfig>>, body: Bytes) -> Response {
    let request: ValidateRequest = match serde_json::from_slice(&body) {
        Ok(request) => request,
        Err(e) => {
            return error(
                StatusCode::BAD_REQUEST,
                format!("invalid request body: {e}"),
            )
        }
    };
    if request.source.len() > config.max_source_bytes {
        return error(
            StatusCode::PAYLOAD_TOO_LARGE,
            format!(
                "source exceeds the limit of {} bytes",
                config.max_source_bytes
            ),
        );
    }
    let options = request.options.unwrap_or_default().parser_options();
    let source = request.source;
    match tokio::task::spawn_blocking(move || check_document(&source, None, &options)).await {
        Ok(report) => Json(JsonReport::from(&report)).into_response(),
        Err(e) => error(
            StatusCode::INTERNAL_SERVER_ERROR,
            format!("validation failed: {e}"),
        ),
    }
}

pub async fn handle_health() -> Json<serde_json::Value> {
    Json(json!({ "status": "ok" }))
}

async fn not_found() -> Response {
    error(StatusCode::NOT_FOUND, "no such endpoint")
}
