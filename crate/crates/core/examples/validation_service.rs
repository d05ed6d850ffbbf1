//! Starts the validation service on a free port, sends it a document, and
//! prints the response. Pass `--serve` to keep it running instead.
//!
//!     cargo run --example validation_service [-- --serve]

use xmlcheck::service::{self, ServiceConfig};

#[tokio::main]
async fn main() -> Result<(), Box<dyn std::error::Error>> {
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await?;
    let addr = listener.local_addr()?;
    let config = ServiceConfig {
        listen: addr,
        asset_dir: std::env::temp_dir(),
        ..ServiceConfig::default()
    };
    let server = tokio::spawn(service::serve_on(listener, config));
    println!("listening on http://{addr}");

    if std::env::args().any(|a| a == "--serve") {
        server.await??;
        return Ok(());
    }

    let client = reqwest::Client::new();
    let health: serde_json::Value = client
        .get(format!("http://{addr}/healthz"))
        .send()
        .await?
        .json()
        .await?;
    println!("GET /healthz -> {health}");

    let body = serde_json::json!({
        "source": "<title id=1>Tootsie</title>",
        "options": { "requireDeclaration": false }
    });
    let response = client
        .post(format!("http://{addr}/api/validate"))
        .json(&body)
        .send()
        .await?;
    println!("POST /api/validate -> {}", response.status());
    let report: serde_json::Value = response.json().await?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}
