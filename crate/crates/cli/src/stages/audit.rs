use std::path::PathBuf;

use rtcascade_audit::{audit_report, AuditCache, AuditClient, AuditConfig, AuditReport, Auditor};
use rtcascade_core::shapley::Ranking;

use crate::artifacts::OutputDir;
use crate::error::{Result, ResultExt};

#[derive(Debug, Clone)]
pub struct AuditOptions {
    pub top: usize,
    pub threshold: f64,
    pub fetch: AuditConfig,
    pub cache: Option<PathBuf>,
}

/// Audits the first `top` ranked accounts. Bot scores are only requested
/// for accounts that are not suspended or deleted.
pub fn run_audit<C: AuditClient>(
    out: &mut OutputDir,
    ranking: &Ranking,
    client: C,
    opts: &AuditOptions,
) -> Result<AuditReport> {
    let mut auditor = Auditor::new(client, opts.fetch.clone());
    if let Some(path) = &opts.cache {
        auditor = auditor.with_cache(AuditCache::open(path).config_err()?);
    }
    let top = ranking.top(opts.top);
    let ids: Vec<_> = top.iter().map(|e| e.user_id).collect();
    let statuses = auditor.fetch_statuses(&ids).stage_err("audit")?;
    let stats = auditor.stats();
    log::info!("status lookups: {} cached, {} requests, {} failed batches", stats.cache_hits, stats.requests, stats.failed_batches);
    let live: Vec<_> = statuses.iter().filter(|s| !s.state.is_inactive()).map(|s| s.user_id).collect();
    let scores = auditor.fetch_bot_scores(&live).stage_err("audit")?;
    let report = audit_report(top, opts.top, &statuses, &scores, opts.threshold);
    out.tsv_with_header("audit.tsv", |w| report.write_rows(w))?;
    out.tsv_with_header("audit_summary.tsv", |w| report.write_summary(w))?;
    Ok(report)
}
