use std::io::{ErrorKind, Write};
use std::net::TcpListener;
use std::path::PathBuf;

use lemotif_service::{router, serve, ServiceConfig};

use crate::config::Config;
use crate::error::{CliError, Kind, Result};

#[derive(Debug, clap::Args)]
pub struct Args {
    #[arg(long)]
    host: Option<String>,
    /// 0 picks a free port.
    #[arg(long)]
    port: Option<u16>,
    /// Serve the web UI build from this directory.
    #[arg(long, value_name = "DIR")]
    static_dir: Option<PathBuf>,
    #[arg(long, value_name = "DIR")]
    shapes_dir: Option<PathBuf>,
    #[arg(long, value_name = "URL")]
    remote: Option<String>,
}

async fn shutdown_signal() {
    let ctrl_c = async {
        let _ = tokio::signal::ctrl_c().await;
    };
    #[cfg(unix)]
    let term = async {
        match tokio::signal::unix::signal(tokio::signal::unix::SignalKind::terminate()) {
            Ok(mut s) => {
                s.recv().await;
            }
            Err(_) => std::future::pending().await,
        }
    };
    #[cfg(not(unix))]
    let term = std::future::pending::<()>();
    tokio::select! {
        _ = ctrl_c => {},
        _ = term => {},
    }
}

pub fn run(config: &Config, args: Args) -> Result<()> {
    tracing_subscriber::fmt().with_writer(std::io::stderr).init();
    let service = ServiceConfig {
        backend: config.backend(args.remote.as_deref())?,
        palette: config.palette()?,
        shapes: config.shapes(args.shapes_dir.as_deref())?,
        threshold: config.threshold(None)?,
        canvas_size: config.canvas_size(None),
        cors_origins: config.server.cors_origins.clone(),
        static_dir: args.static_dir.or_else(|| config.server.static_dir.clone()),
    };
    let host = args.host.or_else(|| config.server.host.clone()).unwrap_or_else(|| "127.0.0.1".into());
    let port = args.port.or(config.server.port).unwrap_or(8080);
    let listener = TcpListener::bind((host.as_str(), port)).map_err(|e| match e.kind() {
        ErrorKind::AddrInUse => CliError::new(Kind::PortBusy, format!("{host}:{port} is already in use")),
        _ => CliError::bad_input(format!("cannot bind {host}:{port}: {e}")),
    })?;
    listener.set_nonblocking(true).map_err(|e| CliError::internal(e.to_string()))?;
    let addr = listener.local_addr().map_err(|e| CliError::internal(e.to_string()))?;

    let runtime = tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()
        .map_err(|e| CliError::internal(format!("cannot start runtime: {e}")))?;
    runtime.block_on(async move {
        let listener = tokio::net::TcpListener::from_std(listener).map_err(|e| CliError::internal(e.to_string()))?;
        println!("listening on http://{addr}");
        let _ = std::io::stdout().flush();
        tracing::info!(%addr, "serving");
        serve(listener, router(service), shutdown_signal()).await.map_err(|e| CliError::internal(e.to_string()))?;
        tracing::info!("shut down");
        Ok(())
    })
}
