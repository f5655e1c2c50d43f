use std::collections::BTreeSet;
use std::io::Write;

use rayon::prelude::*;
use rtcascade_core::cascade::{build_cascade_tree, global_influence, virality_vs_size, CascadeTree, FlowGraph};
use rtcascade_core::graph::{group_averages, FollowerGraph, Metric};
use rtcascade_core::ingest::TrollRegistry;

use super::graph::write_averages;
use super::ingest::CascadeData;
use crate::artifacts::OutputDir;
use crate::error::{Result, ResultExt};

pub struct FlowEntry {
    pub key_hash: String,
    pub urls: BTreeSet<String>,
    pub flow: FlowGraph,
}

/// One flow graph per cascade with at least one retweeter, in input order.
pub fn build_flows(cascades: &[CascadeData], fg: &FollowerGraph) -> Result<Vec<FlowEntry>> {
    let built: Vec<Option<Result<FlowEntry>>> = cascades
        .par_iter()
        .map(|c| {
            let first = c.first_retweets();
            if first.is_empty() {
                return None;
            }
            Some(
                FlowGraph::from_first_retweets((c.root_user_id, c.root_time), &first, fg)
                    .map(|flow| FlowEntry {
                        key_hash: c.key_hash.clone(),
                        urls: c.urls.clone(),
                        flow,
                    })
                    .stage_err("flow graph"),
            )
        })
        .collect();
    built.into_iter().flatten().collect()
}

pub fn build_trees(flows: &[FlowEntry]) -> Vec<CascadeTree> {
    flows.par_iter().map(|f| build_cascade_tree(&f.flow)).collect()
}

pub fn write_analysis(
    out: &mut OutputDir,
    prefix: &str,
    flows: &[FlowEntry],
    trees: &[CascadeTree],
    registry: &TrollRegistry,
) -> Result<()> {
    out.tsv(
        &format!("{prefix}trees.tsv"),
        &["cascade_key_hash", "child_user_id", "parent_user_id"],
        |w| {
            for (f, t) in flows.iter().zip(trees) {
                for (child, parent) in t.parent.iter().enumerate() {
                    if let Some(p) = parent {
                        writeln!(w, "{}\t{}\t{}", f.key_hash, t.users[child], t.users[*p as usize])?;
                    }
                }
            }
            Ok(())
        },
    )?;

    let rows = virality_vs_size(flows.iter().map(|f| f.key_hash.as_str()).zip(trees), registry);
    out.tsv(
        &format!("{prefix}virality.tsv"),
        &["cascade_key_hash", "n", "virality", "root_group"],
        |w| {
            for r in &rows {
                writeln!(w, "{}\t{}\t{}\t{}", r.key_hash, r.n_nodes, r.virality, r.root_group)?;
            }
            Ok(())
        },
    )?;

    let influence = global_influence(trees);
    out.tsv(
        &format!("{prefix}influence.tsv"),
        &["user_id", "global_influence_degree", "group"],
        |w| {
            for (u, d) in &influence {
                writeln!(w, "{u}\t{d}\t{}", registry.group_of(*u))?;
            }
            Ok(())
        },
    )?;
    let avg = group_averages(influence.iter().map(|(&u, &d)| (registry.group_of(u), d as f64)));
    write_averages(
        out,
        &format!("{prefix}averages.tsv"),
        &[(Metric::InfluenceDegree.as_str().to_string(), avg)],
    )
}
