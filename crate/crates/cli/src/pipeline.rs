use std::path::{Path, PathBuf};

use rtcascade_core::ingest::group_cascades;

use crate::artifacts::{Artifact, OutputDir};
use crate::error::{CliError, Result};
use crate::load::{load_corpus, load_registry};
use crate::stages::{
    build_flows, build_graphs, build_trees, cascade_scores, compute_ranking, write_analysis, write_graph,
    write_ingest, write_ranking, write_stats, CascadeData, UrlFilterMode,
};

#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub input: PathBuf,
    pub trolls: Option<PathBuf>,
    pub min_retweeters: usize,
    pub url_filter: UrlFilterMode,
    pub out: PathBuf,
}

impl PipelineConfig {
    pub fn new(input: &Path, trolls: Option<&Path>, out: &Path) -> Self {
        Self {
            input: input.to_path_buf(),
            trolls: trolls.map(Path::to_path_buf),
            min_retweeters: rtcascade_core::ingest::DEFAULT_MIN_RETWEETERS,
            url_filter: UrlFilterMode::None,
            out: out.to_path_buf(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.min_retweeters == 0 {
            return Err(CliError::config("min_retweeters must be at least 1"));
        }
        Ok(())
    }
}

/// Runs every stage into subdirectories of `cfg.out` and writes the
/// top-level manifest. On failure the manifest is still written, with
/// every artifact of the run marked stale.
pub fn run_pipeline(cfg: &PipelineConfig) -> Result<Vec<Artifact>> {
    cfg.validate()?;
    let mut out = OutputDir::create(&cfg.out)?;
    match stages(cfg, &mut out) {
        Ok(()) => {
            out.write_manifest()?;
            Ok(out.artifacts().to_vec())
        }
        Err(e) => {
            out.mark_all_stale();
            if let Err(m) = out.write_manifest() {
                log::error!("could not write manifest: {m}");
            }
            Err(e)
        }
    }
}

fn stages(cfg: &PipelineConfig, out: &mut OutputDir) -> Result<()> {
    let registry = load_registry(cfg.trolls.as_deref()).map_err(|e| e.in_stage("ingest"))?;
    let corpus = load_corpus(&cfg.input).map_err(|e| e.in_stage("ingest"))?;
    let cascades = group_cascades(&corpus.records, cfg.min_retweeters);
    log::info!("{} cascades with at least {} retweeters", cascades.len(), cfg.min_retweeters);
    let data: Vec<CascadeData> = cascades.iter().map(CascadeData::from_cascade).collect();
    write_ingest(out, "ingest/", &cascades, &data, &registry).map_err(|e| e.in_stage("ingest"))?;
    drop(cascades);

    let graphs = build_graphs(&corpus.records, &registry);
    drop(corpus);
    write_graph(out, "graph/", &graphs).map_err(|e| e.in_stage("graph"))?;
    write_stats(out, "stats/", &graphs).map_err(|e| e.in_stage("stats"))?;

    if data.is_empty() {
        log::info!("no cascade reached the threshold; cascade and shapley outputs are empty");
    }
    let flows = build_flows(&data, &graphs.follower).map_err(|e| e.in_stage("cascade"))?;
    let trees = build_trees(&flows);
    write_analysis(out, "cascade/", &flows, &trees, &registry).map_err(|e| e.in_stage("cascade"))?;

    let scores = cascade_scores(&flows);
    let ranking = compute_ranking(&scores, &registry, cfg.url_filter);
    write_ranking(out, "shapley/", &ranking, &registry).map_err(|e| e.in_stage("shapley"))
}
