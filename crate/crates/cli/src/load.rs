//! Readers for the inputs and for artifacts written by earlier stages.

use std::collections::{BTreeSet, HashMap};
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;
use std::str::FromStr;

use rtcascade_core::graph::{ActionType, FollowerGraph, Interaction, InteractionGraph, NodeTable};
use rtcascade_core::ingest::{parse_corpus, Corpus, IngestError, TrollRegistry};
use rtcascade_core::shapley::{RankEntry, Ranking};
use rtcascade_core::Group;

use crate::error::{CliError, Result, ResultExt};
use crate::stages::{CascadeData, Graphs};

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|e| CliError::config(format!("cannot open {}: {e}", path.display())))
}

fn ingest_err(e: IngestError) -> CliError {
    match e {
        IngestError::Open { .. } => CliError::Config(e.into()),
        other => CliError::Data(other.into()),
    }
}

pub fn load_corpus(path: &Path) -> Result<Corpus> {
    let corpus = parse_corpus(BufReader::new(open(path)?)).map_err(ingest_err)?;
    if corpus.skipped > 0 {
        log::warn!("{}: skipped {} malformed or duplicate lines", path.display(), corpus.skipped);
    }
    log::info!("{}: {} records", path.display(), corpus.records.len());
    Ok(corpus)
}

pub fn load_registry(path: Option<&Path>) -> Result<TrollRegistry> {
    match path {
        Some(p) => TrollRegistry::load(p).map_err(ingest_err),
        None => Ok(TrollRegistry::new()),
    }
}

/// Rows of a TSV file after checking its header, with 1-based line numbers.
fn read_tsv(path: &Path, header: &[&str]) -> Result<Vec<(usize, Vec<String>)>> {
    let mut lines = BufReader::new(open(path)?).lines();
    let first = lines.next().transpose().data_err()?;
    if first.as_deref() != Some(header.join("\t").as_str()) {
        return Err(CliError::data(format!("{}: expected header `{}`", path.display(), header.join(" "))));
    }
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line.data_err()?;
        let cols: Vec<String> = line.split('\t').map(str::to_string).collect();
        if cols.len() != header.len() {
            return Err(CliError::data(format!("{}:{}: expected {} columns", path.display(), i + 2, header.len())));
        }
        rows.push((i + 2, cols));
    }
    Ok(rows)
}

fn field<T: FromStr>(path: &Path, line: usize, v: &str) -> Result<T> {
    v.parse()
        .map_err(|_| CliError::data(format!("{}:{line}: cannot parse `{v}`", path.display())))
}

pub fn load_nodes(dir: &Path) -> Result<NodeTable> {
    let path = dir.join("nodes.tsv");
    let mut nodes = NodeTable::new();
    for (line, cols) in read_tsv(&path, &["index", "user_id", "group"])? {
        let index: u32 = field(&path, line, &cols[0])?;
        let group: Group = field(&path, line, &cols[2])?;
        if nodes.intern(field(&path, line, &cols[1])?, group) != index {
            return Err(CliError::data(format!("{}:{line}: node indices out of order", path.display())));
        }
    }
    Ok(nodes)
}

pub fn load_graphs(dir: &Path) -> Result<Graphs> {
    let nodes = load_nodes(dir)?;
    let path = dir.join("interaction.edges");
    let mut edges = Vec::new();
    for (line, cols) in read_tsv(&path, &["src", "dst", "type", "unix_ts"])? {
        let idx = |v: &str| -> Result<u32> {
            nodes
                .index_of(field(&path, line, v)?)
                .ok_or_else(|| CliError::data(format!("{}:{line}: user {v} not in nodes.tsv", path.display())))
        };
        edges.push(Interaction {
            src: idx(&cols[0])?,
            dst: idx(&cols[1])?,
            action: field::<ActionType>(&path, line, &cols[2])?,
            timestamp: field(&path, line, &cols[3])?,
        });
    }
    let fgr = dir.join("follower.fgr");
    let follower = FollowerGraph::read_binary(BufReader::new(open(&fgr)?), nodes.clone())
        .map_err(|e| CliError::data(format!("{}: {e}", fgr.display())))?;
    Ok(Graphs {
        interaction: InteractionGraph { nodes, edges },
        follower,
    })
}

/// Trolls recorded in the node table, merged with an explicit registry.
pub fn registry_with_nodes(nodes: &NodeTable, explicit: Option<&Path>) -> Result<TrollRegistry> {
    let mut reg = load_registry(explicit)?;
    for (&id, &g) in nodes.ids().iter().zip(nodes.groups()) {
        if g == Group::Troll {
            reg.insert(id, None);
        }
    }
    Ok(reg)
}

pub fn load_cascades(dir: &Path) -> Result<Vec<CascadeData>> {
    let path = dir.join("cascades.tsv");
    let mut out = Vec::new();
    let mut index = HashMap::new();
    for (line, cols) in read_tsv(&path, &["cascade_key_hash", "root_user_id", "n_events", "n_distinct", "urls"])? {
        let urls: BTreeSet<String> = cols[4].split(';').filter(|u| !u.is_empty()).map(str::to_string).collect();
        index.insert(cols[0].clone(), out.len());
        out.push(CascadeData {
            key_hash: cols[0].clone(),
            root_user_id: field(&path, line, &cols[1])?,
            root_time: 0,
            events: Vec::new(),
            urls,
        });
    }
    let path = dir.join("cascade_events.tsv");
    for (line, cols) in read_tsv(&path, &["cascade_key_hash", "user_id", "unix_ts", "role"])? {
        let &i = index
            .get(&cols[0])
            .ok_or_else(|| CliError::data(format!("{}:{line}: unknown cascade {}", path.display(), cols[0])))?;
        let user = field(&path, line, &cols[1])?;
        let ts = field(&path, line, &cols[2])?;
        match cols[3].as_str() {
            "root" => out[i].root_time = ts,
            "retweet" => out[i].events.push((user, ts)),
            other => return Err(CliError::data(format!("{}:{line}: bad role `{other}`", path.display()))),
        }
    }
    Ok(out)
}

pub fn load_ranking(path: &Path) -> Result<Ranking> {
    let mut entries = Vec::new();
    for (line, cols) in read_tsv(path, &["rank", "user_id", "shapley", "group"])? {
        entries.push(RankEntry {
            rank: field(path, line, &cols[0])?,
            user_id: field(path, line, &cols[1])?,
            score: field(path, line, &cols[2])?,
            group: field(path, line, &cols[3])?,
        });
    }
    Ok(Ranking { entries })
}
