use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::bots::BotPolicy;
use crate::simulate::DEFAULT_PLAYERS;

#[derive(Debug, Parser)]
#[command(name = "fakeyou", version, about = "Headline faking game: server, content ingestion, bot simulation and analytics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the HTTP API until interrupted.
    Serve(ServeArgs),
    /// Pull articles from the sources in a config file.
    Ingest(IngestArgs),
    /// Play bot games and append them to the event log.
    Simulate(SimulateArgs),
    /// Run the analyses over an event log and write CSV reports.
    Stats(StatsArgs),
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    /// Listen address.
    #[arg(long, env = "FAKEYOU_ADDR", default_value = "127.0.0.1:8080")]
    pub addr: String,
    /// Directory holding the event log, articles, tokens and images.
    #[arg(long, env = "FAKEYOU_DATA_DIR", default_value = "data")]
    pub data_dir: PathBuf,
    /// Root seed for article draws and option orders.
    #[arg(long, env = "FAKEYOU_SEED", default_value_t = 0)]
    pub seed: u64,
    /// URL prefix for stored images.
    #[arg(long, default_value = fakeyou_server::DEFAULT_IMAGE_PREFIX)]
    pub image_prefix: String,
    /// Seconds a round may wait in one phase before its game is cancelled.
    #[arg(long, default_value_t = 86_400)]
    pub phase_timeout_secs: u64,
    /// Seconds between stale-game sweeps and matchmaking retries.
    #[arg(long, default_value_t = 30)]
    pub maintenance_secs: u64,
}

#[derive(Debug, Args)]
pub struct IngestArgs {
    /// TOML file with one `[[source]]` table per source.
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long, env = "FAKEYOU_DATA_DIR", default_value = "data")]
    pub data_dir: PathBuf,
    /// Keep running and re-poll each source at its poll interval.
    #[arg(long)]
    pub watch: bool,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, default_value_t = 10)]
    pub games: usize,
    #[arg(long, env = "FAKEYOU_SEED", default_value_t = 0)]
    pub seed: u64,
    /// random, truth:<p> or template:<sensational|plain|echo>. Repeat to
    /// mix; pool players take policies round robin.
    #[arg(long = "policy", default_value = "random")]
    pub policies: Vec<BotPolicy>,
    /// Size of the bot pool games are seated from.
    #[arg(long, default_value_t = DEFAULT_PLAYERS)]
    pub players: usize,
    /// Store to play in; the event log ends up in `<dir>/events.jsonl`.
    #[arg(long, env = "FAKEYOU_DATA_DIR", default_value = "data")]
    pub data_dir: PathBuf,
    /// Add this many generated articles before playing.
    #[arg(long)]
    pub synthetic_articles: Option<usize>,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    /// Event log file to analyse.
    #[arg(long, conflicts_with = "data_dir")]
    pub log: Option<PathBuf>,
    /// Analyse `<dir>/events.jsonl` instead.
    #[arg(long, env = "FAKEYOU_DATA_DIR", default_value = "data")]
    pub data_dir: PathBuf,
    /// Report directory.
    #[arg(long)]
    pub out: PathBuf,
    /// Players with fewer revealed rounds get no learning slope.
    #[arg(long, default_value_t = fakeyou_analytics::slopes::DEFAULT_MIN_ROUNDS)]
    pub min_rounds: usize,
    /// Characters counted in the usage table.
    #[arg(long)]
    pub charset: Option<String>,
}
