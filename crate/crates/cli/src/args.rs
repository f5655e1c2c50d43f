use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rtcascade_core::ingest::DEFAULT_MIN_RETWEETERS;

use crate::stages::UrlFilterMode;

#[derive(Debug, Parser)]
#[command(name = "rtcascade", version, about = "Retweet cascade reconstruction and Shapley influence ranking")]
pub struct Cli {
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Output directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for synthetic-data commands.
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, global = true, default_value = "info")]
    pub log_level: log::LevelFilter,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a corpus and group retweets into cascades.
    Ingest(IngestArgs),
    /// Interaction and follower graphs.
    #[command(subcommand)]
    Graph(GraphCommand),
    /// Flow graphs, cascade trees and virality.
    #[command(subcommand)]
    Cascade(CascadeCommand),
    /// Shapley-value influence ranking.
    #[command(subcommand)]
    Shapley(ShapleyCommand),
    /// Check account status and bot scores for top-ranked accounts.
    Audit(AuditArgs),
    /// Run every stage end to end.
    #[command(subcommand)]
    Pipeline(PipelineCommand),
    /// Synthetic corpora with planted cascades.
    #[command(subcommand)]
    Synth(SynthCommand),
}

#[derive(Debug, Args)]
pub struct IngestArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub trolls: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_MIN_RETWEETERS)]
    pub min_retweeters: usize,
}

#[derive(Debug, Subcommand)]
pub enum GraphCommand {
    /// Build the interaction and follower graphs.
    Build {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        trolls: Option<PathBuf>,
    },
    /// Degree distributions, components and coreness of a built graph.
    Stats {
        #[arg(long)]
        graph: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum CascadeCommand {
    /// Infer cascade trees and compute virality and influence-degree.
    Analyze {
        #[arg(long)]
        cascades: PathBuf,
        #[arg(long)]
        graph: PathBuf,
        /// Extra troll registry; trolls recorded in the graph are always used.
        #[arg(long)]
        trolls: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ShapleyCommand {
    /// Rank accounts by their summed flow-graph Shapley value.
    Rank {
        #[arg(long)]
        cascades: PathBuf,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        trolls: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = UrlFilterMode::None)]
        urls_filter: UrlFilterMode,
    },
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    #[arg(long)]
    pub ranking: PathBuf,
    #[arg(long, default_value_t = 100)]
    pub top: usize,
    #[arg(long)]
    pub status_endpoint: String,
    #[arg(long)]
    pub bot_endpoint: String,
    #[arg(long, default_value_t = rtcascade_audit::DEFAULT_BOT_THRESHOLD)]
    pub threshold: f64,
    /// Append-only lookup journal, reused across runs.
    #[arg(long)]
    pub cache: Option<PathBuf>,
    /// Date recorded for the lookups (YYYY-MM-DD, default today).
    #[arg(long)]
    pub as_of: Option<chrono::NaiveDate>,
    #[arg(long, default_value_t = 100)]
    pub batch_size: usize,
    #[arg(long, default_value_t = 4)]
    pub concurrency: usize,
    /// Minimum milliseconds between requests to one endpoint.
    #[arg(long, default_value_t = 50)]
    pub min_interval_ms: u64,
    #[arg(long, default_value_t = 4)]
    pub max_retries: u32,
}

#[derive(Debug, Subcommand)]
pub enum PipelineCommand {
    /// Ingest, graph, stats, cascade and Shapley stages in sequence.
    Run {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        trolls: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MIN_RETWEETERS)]
        min_retweeters: usize,
        #[arg(long, value_enum, default_value_t = UrlFilterMode::None)]
        urls_filter: UrlFilterMode,
    },
}

#[derive(Debug, Subcommand)]
pub enum SynthCommand {
    /// Generate a corpus with planted cascades and its ground truth.
    Gen(SynthArgs),
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(long, default_value_t = 20_000)]
    pub n_users: usize,
    #[arg(long, default_value_t = 40)]
    pub n_cascades: usize,
    #[arg(long, default_value_t = 0.02)]
    pub troll_fraction: f64,
    #[arg(long, default_value_t = 100)]
    pub min_size: usize,
    #[arg(long, default_value_t = 160)]
    pub max_size: usize,
    /// Cascades rooted at one hub account.
    #[arg(long, default_value_t = 4)]
    pub hub_cascades: usize,
    #[arg(long)]
    pub hub_troll: bool,
}
