//! Command-line driver: each subcommand reads its inputs, runs one stage
//! and writes TSV artifacts plus a `manifest.tsv` into `--out`.

pub mod args;
pub mod artifacts;
pub mod error;
pub mod load;
pub mod pipeline;
pub mod stages;

use std::path::PathBuf;
use std::time::Duration;

use rtcascade_audit::{AuditConfig, EndpointConfig, HttpClient, RetryPolicy};
use rtcascade_core::ingest::group_cascades;
use rtcascade_core::synth::{gen_synthetic, SynthConfig};

use args::{CascadeCommand, Cli, Command, GraphCommand, PipelineCommand, ShapleyCommand, SynthCommand};
use artifacts::OutputDir;
pub use error::{CliError, Result};
use error::ResultExt;
use pipeline::{run_pipeline, PipelineConfig};
use stages::CascadeData;

/// Runs a parsed command line inside a thread pool of the requested size.
pub fn run(cli: Cli) -> Result<()> {
    let threads = match cli.threads {
        Some(0) => return Err(CliError::config("--threads must be at least 1")),
        Some(n) => n,
        None => std::thread::available_parallelism().map_or(1, usize::from),
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().config_err()?;
    pool.install(|| dispatch(cli))
}

fn out_dir(out: &Option<PathBuf>) -> Result<OutputDir> {
    let dir = out.as_deref().ok_or_else(|| CliError::config("--out is required"))?;
    OutputDir::create(dir)
}

fn finish(out: &OutputDir) -> Result<()> {
    let path = out.write_manifest()?;
    log::info!("wrote {} artifacts; manifest at {}", out.artifacts().len(), path.display());
    Ok(())
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Ingest(a) => {
            if a.min_retweeters == 0 {
                return Err(CliError::config("--min-retweeters must be at least 1"));
            }
            let mut out = out_dir(&cli.out)?;
            let registry = load::load_registry(a.trolls.as_deref())?;
            let corpus = load::load_corpus(&a.input)?;
            let cascades = group_cascades(&corpus.records, a.min_retweeters);
            let data: Vec<CascadeData> = cascades.iter().map(CascadeData::from_cascade).collect();
            stages::write_ingest(&mut out, "", &cascades, &data, &registry)?;
            finish(&out)
        }
        Command::Graph(GraphCommand::Build { input, trolls }) => {
            let mut out = out_dir(&cli.out)?;
            let registry = load::load_registry(trolls.as_deref())?;
            let corpus = load::load_corpus(&input)?;
            let graphs = stages::build_graphs(&corpus.records, &registry);
            stages::write_graph(&mut out, "", &graphs)?;
            finish(&out)
        }
        Command::Graph(GraphCommand::Stats { graph }) => {
            let mut out = out_dir(&cli.out)?;
            let graphs = load::load_graphs(&graph)?;
            stages::write_stats(&mut out, "", &graphs)?;
            finish(&out)
        }
        Command::Cascade(CascadeCommand::Analyze { cascades, graph, trolls }) => {
            let mut out = out_dir(&cli.out)?;
            let graphs = load::load_graphs(&graph)?;
            let registry = load::registry_with_nodes(&graphs.follower.nodes, trolls.as_deref())?;
            let data = load::load_cascades(&cascades)?;
            let flows = stages::build_flows(&data, &graphs.follower)?;
            let trees = stages::build_trees(&flows);
            stages::write_analysis(&mut out, "", &flows, &trees, &registry)?;
            finish(&out)
        }
        Command::Shapley(ShapleyCommand::Rank {
            cascades,
            graph,
            trolls,
            urls_filter,
        }) => {
            let mut out = out_dir(&cli.out)?;
            let graphs = load::load_graphs(&graph)?;
            let registry = load::registry_with_nodes(&graphs.follower.nodes, trolls.as_deref())?;
            let data = load::load_cascades(&cascades)?;
            let flows = stages::build_flows(&data, &graphs.follower)?;
            let scores = stages::cascade_scores(&flows);
            let ranking = stages::compute_ranking(&scores, &registry, urls_filter);
            stages::write_ranking(&mut out, "", &ranking, &registry)?;
            finish(&out)
        }
        Command::Audit(a) => {
            if a.batch_size == 0 || a.concurrency == 0 {
                return Err(CliError::config("--batch-size and --concurrency must be at least 1"));
            }
            let mut out = out_dir(&cli.out)?;
            let ranking = load::load_ranking(&a.ranking)?;
            let endpoints = EndpointConfig::new(a.status_endpoint, a.bot_endpoint);
            if endpoints.token.is_none() {
                log::info!("{} is not set; sending unauthenticated requests", rtcascade_audit::TOKEN_ENV);
            }
            let client = HttpClient::new(endpoints).config_err()?;
            let opts = stages::AuditOptions {
                top: a.top,
                threshold: a.threshold,
                fetch: AuditConfig {
                    batch_size: a.batch_size,
                    concurrency: a.concurrency,
                    min_request_interval: Duration::from_millis(a.min_interval_ms),
                    retry: RetryPolicy {
                        max_retries: a.max_retries,
                        ..RetryPolicy::default()
                    },
                    as_of: a.as_of.unwrap_or_else(|| chrono::Utc::now().date_naive()),
                },
                cache: a.cache,
            };
            let report = stages::run_audit(&mut out, &ranking, client, &opts)?;
            log::info!(
                "top-{}: {} suspended, {} deleted, {} unknown, {} bot-flagged",
                report.k,
                report.suspended,
                report.deleted,
                report.unknown,
                report.bot_flagged
            );
            finish(&out)
        }
        Command::Pipeline(PipelineCommand::Run {
            input,
            trolls,
            min_retweeters,
            urls_filter,
        }) => {
            let dir = cli.out.ok_or_else(|| CliError::config("--out is required"))?;
            let cfg = PipelineConfig {
                min_retweeters,
                url_filter: urls_filter,
                ..PipelineConfig::new(&input, trolls.as_deref(), &dir)
            };
            let artifacts = run_pipeline(&cfg)?;
            log::info!("pipeline wrote {} artifacts", artifacts.len());
            Ok(())
        }
        Command::Synth(SynthCommand::Gen(a)) => {
            let mut out = out_dir(&cli.out)?;
            let cfg = SynthConfig {
                seed: cli.seed,
                n_users: a.n_users,
                n_cascades: a.n_cascades,
                troll_fraction: a.troll_fraction,
                cascade_size: (a.min_size, a.max_size),
                hub_cascades: a.hub_cascades,
                hub_is_troll: a.hub_troll,
                ..SynthConfig::default()
            };
            let synth = gen_synthetic(&cfg).config_err()?;
            stages::write_synthetic(&mut out, &synth)?;
            finish(&out)
        }
    }
}
