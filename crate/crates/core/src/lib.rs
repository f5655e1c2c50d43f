//! Retweet cascade reconstruction and influence measurement.
//!
//! The crate is organised as a pipeline of stages:
//!
//! - [`ingest`] parses JSON Lines tweet records, recovers retweets from the
//!   `RT @name:` text prefix and groups them into cascades.
//! - [`graph`] builds the interaction multigraph and the earliest-edge
//!   follower graph, and computes topology statistics (degree CCDFs,
//!   connected components, k-core decomposition, group averages).
//! - [`cascade`] builds per-cascade flow graphs and time-inferred cascade
//!   trees, and measures structural virality and influence-degree.
//! - [`shapley`] scores flow graphs with Shapley-value degree centrality,
//!   aggregates the scores globally and produces rankings.
//! - [`synth`] generates reproducible corpora with planted cascades and a
//!   ground-truth file for end-to-end checks.

pub mod cascade;
pub mod ccdf;
pub mod digraph;
pub mod graph;
pub mod ingest;
pub mod shapley;
pub mod sum;
pub mod synth;

/// External account identifier.
pub type UserId = u64;

/// Seconds since the Unix epoch (UTC).
pub type Timestamp = i64;

/// Population an account belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Group {
    Regular,
    Troll,
}

impl Group {
    pub const ALL: [Group; 2] = [Group::Regular, Group::Troll];

    pub fn as_str(self) -> &'static str {
        match self {
            Group::Regular => "regular",
            Group::Troll => "troll",
        }
    }
}

impl std::fmt::Display for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Group {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "regular" => Ok(Group::Regular),
            "troll" => Ok(Group::Troll),
            other => Err(format!("unknown group `{other}`")),
        }
    }
}
