use std::path::Path;
use std::sync::Arc;
use std::time::{Duration, Instant};

use chrono::Utc;
use fakeyou_analytics::{analyze, export_report, AnalysisOptions};
use fakeyou_core::clock::SystemClock;
use fakeyou_core::snapshot::{Snapshot, SnapshotFilter};
use fakeyou_core::store::{read_event_log, FileStore, Storage, EVENTS_FILE};
use fakeyou_core::{Engine, EngineConfig};
use fakeyou_ingest::{ingest, ImageStore, IngestConfig, IngestReport, StdFetcher};
use fakeyou_server::ServerConfig;
use serde_json::{json, Value};

use crate::args::{IngestArgs, ServeArgs, SimulateArgs, StatsArgs};
use crate::error::CliError;
use crate::simulate::{epoch, simulate, simulation_engine, SimulationConfig};
use crate::synthetic::synthetic_articles;

/// Images live next to the log inside the data directory.
pub const IMAGES_DIR: &str = "images";

pub async fn serve(args: ServeArgs) -> Result<(), CliError> {
    let store = Arc::new(FileStore::open(&args.data_dir)?);
    let config = EngineConfig {
        seed: args.seed,
        phase_timeout: chrono::Duration::seconds(args.phase_timeout_secs as i64),
    };
    let engine = Arc::new(Engine::open(store, Arc::new(SystemClock), config)?);
    let app = fakeyou_server::router(
        engine.clone(),
        &ServerConfig {
            image_dir: args.data_dir.join(IMAGES_DIR),
            image_prefix: args.image_prefix,
        },
    );
    let listener = tokio::net::TcpListener::bind(&args.addr)
        .await
        .map_err(|source| CliError::Bind { addr: args.addr.clone(), source })?;
    let local = listener.local_addr().map_err(|source| CliError::Bind { addr: args.addr.clone(), source })?;
    println!("{}", json!({ "listening": local.to_string() }));
    tracing::info!(%local, data_dir = %args.data_dir.display(), "serving");
    let maintenance = fakeyou_server::spawn_maintenance(engine, Duration::from_secs(args.maintenance_secs.max(1)));
    let served = fakeyou_server::serve(listener, app, shutdown_signal()).await;
    maintenance.abort();
    tracing::info!("shut down");
    served.map_err(|source| CliError::Io { path: args.data_dir, source })
}

async fn shutdown_signal() {
    let interrupt = async {
        let _ = tokio::signal::ctrl_c().await;
    };
    #[cfg(unix)]
    {
        let mut term = tokio::signal::unix::signal(tokio::signal::unix::SignalKind::terminate())
            .expect("install SIGTERM handler");
        tokio::select! {
            _ = interrupt => {}
            _ = term.recv() => {}
        }
    }
    #[cfg(not(unix))]
    interrupt.await;
}

pub fn report_json(report: &IngestReport) -> Value {
    json!({
        "source": report.source_name,
        "fetched": report.fetched,
        "new_articles": report.new_articles,
        "duplicates_skipped": report.duplicates_skipped,
        "failures": report.failures.iter().map(|f| json!({ "item": f.item, "reason": f.reason })).collect::<Vec<_>>(),
        "date_fallbacks": report.date_fallbacks,
    })
}

/// Runs every source once (or forever with `--watch`), printing one JSON
/// report per source run. A failing source does not stop the others; the
/// first failure becomes the exit status.
pub fn ingest_sources(args: &IngestArgs, mut emit: impl FnMut(Value)) -> Result<(), CliError> {
    let config = IngestConfig::load(&args.config)?;
    let store = FileStore::open(&args.data_dir)?;
    let images = ImageStore::new(args.data_dir.join(IMAGES_DIR));
    let fetcher = StdFetcher::default();
    let mut due: Vec<Instant> = vec![Instant::now(); config.sources.len()];
    loop {
        let mut first_error = None;
        for (source, next) in config.sources.iter().zip(due.iter_mut()) {
            if Instant::now() < *next {
                continue;
            }
            *next = Instant::now() + source.poll_interval();
            match ingest(source, &store, &images, &fetcher, Utc::now()) {
                Ok(report) => emit(report_json(&report)),
                Err(e) => {
                    tracing::warn!(source = %source.name, error = %e, "ingest run failed");
                    first_error.get_or_insert(e);
                }
            }
        }
        if !args.watch {
            return first_error.map_or(Ok(()), |e| Err(e.into()));
        }
        let wake = due.iter().min().copied().unwrap_or_else(Instant::now);
        std::thread::sleep(wake.saturating_duration_since(Instant::now()));
    }
}

pub fn simulate_games(args: &SimulateArgs) -> Result<Value, CliError> {
    let store: Arc<dyn Storage> = Arc::new(FileStore::open(&args.data_dir)?);
    if let Some(n) = args.synthetic_articles {
        for article in synthetic_articles(n, args.seed, epoch()) {
            store.insert_article_if_absent(article)?;
        }
    }
    let engine = simulation_engine(store, args.seed)?;
    let report = simulate(
        &engine,
        &SimulationConfig {
            games: args.games,
            seed: args.seed,
            policies: args.policies.clone(),
            players: args.players,
        },
    )?;
    Ok(json!({
        "games": report.games.len(),
        "players": report.players.len(),
        "last_seq": report.last_seq,
        "event_log": args.data_dir.join(EVENTS_FILE),
    }))
}

/// Snapshot of a log file; a missing file inside a data directory is an
/// empty log, a missing `--log` file is an error.
pub fn load_snapshot(log: Option<&Path>, data_dir: &Path) -> Result<Snapshot, CliError> {
    let events = match log {
        Some(path) => read_event_log(path)?,
        None => {
            let path = data_dir.join(EVENTS_FILE);
            if path.exists() {
                read_event_log(&path)?
            } else {
                Vec::new()
            }
        }
    };
    Ok(Snapshot::from_events(&events, &SnapshotFilter::default()).map_err(fakeyou_core::LoadError::from)?)
}

pub fn stats(args: &StatsArgs) -> Result<Value, CliError> {
    let snapshot = load_snapshot(args.log.as_deref(), &args.data_dir)?;
    let mut options = AnalysisOptions {
        min_rounds: args.min_rounds,
        ..AnalysisOptions::default()
    };
    if let Some(charset) = &args.charset {
        options.charset = charset.chars().collect();
    }
    let report = analyze(&snapshot, &options)?;
    let manifest = export_report(&report, &args.out)?;
    Ok(json!({
        "out": manifest.dir,
        "files": manifest.entries.iter().map(|e| json!({ "file": e.file, "bytes": e.bytes, "sha256": e.sha256 })).collect::<Vec<_>>(),
    }))
}
