use std::io::Write;

use rayon::prelude::*;
use rtcascade_core::graph::{group_averages, Metric};
use rtcascade_core::ingest::TrollRegistry;
use rtcascade_core::shapley::{global_shapley, rank_map, shapley_degree, CascadeScores, Ranking, UrlFilter};
use rtcascade_core::UserId;

use super::cascade::FlowEntry;
use super::graph::write_averages;
use crate::artifacts::OutputDir;
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum UrlFilterMode {
    #[default]
    None,
    /// Keep only cascades sharing a URL with some troll-touched cascade.
    Troll,
}

pub fn cascade_scores(flows: &[FlowEntry]) -> Vec<CascadeScores> {
    flows
        .par_iter()
        .map(|f| CascadeScores {
            key_hash: f.key_hash.clone(),
            urls: f.urls.clone(),
            users: f.flow.users.clone(),
            values: shapley_degree(&f.flow.graph),
        })
        .collect()
}

pub fn compute_ranking(scores: &[CascadeScores], registry: &TrollRegistry, mode: UrlFilterMode) -> Ranking {
    let filter = match mode {
        UrlFilterMode::None => None,
        UrlFilterMode::Troll => {
            let f = UrlFilter::troll_urls(scores.iter().map(|s| (&s.urls, s.users.as_slice())), registry);
            log::info!("troll URL filter holds {} urls", f.urls.len());
            Some(f)
        }
    };
    rank_map(&global_shapley(scores, filter.as_ref()), registry)
}

pub fn write_ranking(out: &mut OutputDir, prefix: &str, ranking: &Ranking, registry: &TrollRegistry) -> Result<()> {
    out.tsv(&format!("{prefix}ranking.tsv"), &["rank", "user_id", "shapley", "group"], |w| {
        for e in &ranking.entries {
            writeln!(w, "{}\t{}\t{}\t{}", e.rank, e.user_id, e.score, e.group)?;
        }
        Ok(())
    })?;
    out.tsv(&format!("{prefix}troll_ranks.tsv"), &["rank", "user_id", "shapley", "label"], |w| {
        for e in ranking.troll_ranks() {
            let label = registry.label(e.user_id).unwrap_or("-");
            writeln!(w, "{}\t{}\t{}\t{label}", e.rank, e.user_id, e.score)?;
        }
        Ok(())
    })?;
    let shapley = group_averages(ranking.entries.iter().map(|e| (e.group, e.score)));
    let ranks = group_averages(ranking.entries.iter().map(|e| (e.group, e.rank as f64)));
    write_averages(
        out,
        &format!("{prefix}averages.tsv"),
        &[
            (Metric::Shapley.as_str().to_string(), shapley),
            (Metric::Rank.as_str().to_string(), ranks),
        ],
    )
}

pub fn ranking_ids(ranking: &Ranking, k: usize) -> Vec<UserId> {
    ranking.top(k).iter().map(|e| e.user_id).collect()
}
