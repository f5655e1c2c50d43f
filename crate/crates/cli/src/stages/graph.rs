use std::io::Write;

use rtcascade_core::graph::{
    build_interaction_graph, collapse_to_follower_graph, connected_components, degree_ccdf, group_averages,
    largest_component_coreness, Direction, FollowerGraph, GroupAverages, InteractionGraph, Metric,
};
use rtcascade_core::ingest::{TrollRegistry, TweetRecord};
use rtcascade_core::Group;

use super::ingest::write_ccdf;
use crate::artifacts::OutputDir;
use crate::error::Result;

pub struct Graphs {
    pub interaction: InteractionGraph,
    pub follower: FollowerGraph,
}

pub fn build_graphs(records: &[TweetRecord], registry: &TrollRegistry) -> Graphs {
    let interaction = build_interaction_graph(records, registry);
    let follower = collapse_to_follower_graph(&interaction);
    log::info!(
        "interaction graph: {} nodes, {} edges; follower graph: {} edges",
        interaction.node_count(),
        interaction.edge_count(),
        follower.edge_count()
    );
    Graphs { interaction, follower }
}

pub fn write_graph(out: &mut OutputDir, prefix: &str, g: &Graphs) -> Result<()> {
    let nodes = &g.interaction.nodes;
    out.tsv(&format!("{prefix}nodes.tsv"), &["index", "user_id", "group"], |w| {
        for (i, (id, group)) in nodes.ids().iter().zip(nodes.groups()).enumerate() {
            writeln!(w, "{i}\t{id}\t{group}")?;
        }
        Ok(())
    })?;
    out.tsv(&format!("{prefix}interaction.edges"), &["src", "dst", "type", "unix_ts"], |w| {
        for e in &g.interaction.edges {
            writeln!(
                w,
                "{}\t{}\t{}\t{}",
                nodes.user_id(e.src),
                nodes.user_id(e.dst),
                e.action.as_str(),
                e.timestamp
            )?;
        }
        Ok(())
    })?;
    let fnodes = &g.follower.nodes;
    out.tsv(&format!("{prefix}follower.edges"), &["src", "dst", "unix_ts"], |w| {
        for (s, t, ts) in g.follower.edges() {
            writeln!(w, "{}\t{}\t{ts}", fnodes.user_id(s), fnodes.user_id(t))?;
        }
        Ok(())
    })?;
    out.binary(&format!("{prefix}follower.fgr"), g.follower.edge_count() as u64, |w| {
        g.follower.write_binary(w)
    })
}

fn fmt_avg(v: Option<f64>) -> String {
    v.map_or_else(|| "NA".to_string(), |v| v.to_string())
}

fn averages_of(nodes: &[Group], values: impl IntoIterator<Item = Option<f64>>) -> GroupAverages {
    group_averages(nodes.iter().zip(values).filter_map(|(&g, v)| v.map(|v| (g, v))))
}

pub(crate) fn write_averages(out: &mut OutputDir, rel: &str, rows: &[(String, GroupAverages)]) -> Result<()> {
    out.tsv(rel, &["metric", "regular", "troll"], |w| {
        for (name, a) in rows {
            writeln!(w, "{name}\t{}\t{}", fmt_avg(a.regular), fmt_avg(a.troll))?;
        }
        Ok(())
    })
}

/// Degree distributions, components and coreness of the built graphs.
///
/// The `ccdf_{in,out}_*` tables describe the interaction graph; the
/// `ccdf_follower_*` tables the collapsed follower graph.
pub fn write_stats(out: &mut OutputDir, prefix: &str, g: &Graphs) -> Result<()> {
    for dir in [Direction::In, Direction::Out] {
        for group in Group::ALL {
            let t = degree_ccdf(&g.interaction, dir, Some(group));
            write_ccdf(out, &format!("{prefix}ccdf_{}_{group}.tsv", dir.as_str()), &t)?;
            let t = degree_ccdf(&g.follower, dir, Some(group));
            write_ccdf(out, &format!("{prefix}ccdf_follower_{}_{group}.tsv", dir.as_str()), &t)?;
        }
    }

    let components = connected_components(&g.follower);
    out.tsv(&format!("{prefix}components.tsv"), &["component_id", "size"], |w| {
        for (i, s) in components.sizes.iter().enumerate() {
            writeln!(w, "{i}\t{s}")?;
        }
        Ok(())
    })?;

    let coreness = largest_component_coreness(&g.follower, &components);
    let fnodes = &g.follower.nodes;
    let mut core_rows: Vec<(u64, u32, Group)> = coreness
        .iter()
        .enumerate()
        .filter_map(|(i, c)| c.map(|c| (fnodes.user_id(i as u32), c, fnodes.group(i as u32))))
        .collect();
    core_rows.sort_unstable();
    out.tsv(&format!("{prefix}coreness.tsv"), &["user_id", "coreness", "group"], |w| {
        for (u, c, grp) in &core_rows {
            writeln!(w, "{u}\t{c}\t{grp}")?;
        }
        Ok(())
    })?;

    let groups = g.interaction.nodes.groups();
    let fgroups = fnodes.groups();
    let as_f = |d: Vec<u64>| d.into_iter().map(|v| Some(v as f64)).collect::<Vec<_>>();
    let rows = vec![
        (Metric::InDegree.as_str().to_string(), averages_of(groups, as_f(g.interaction.in_degrees()))),
        (Metric::OutDegree.as_str().to_string(), averages_of(groups, as_f(g.interaction.out_degrees()))),
        ("follower-in-degree".to_string(), averages_of(fgroups, as_f(g.follower.in_degrees()))),
        ("follower-out-degree".to_string(), averages_of(fgroups, as_f(g.follower.out_degrees()))),
        (
            Metric::Coreness.as_str().to_string(),
            averages_of(fgroups, coreness.iter().map(|c| c.map(f64::from))),
        ),
    ];
    write_averages(out, &format!("{prefix}averages.tsv"), &rows)
}
