//! Flow graphs, time-inferred cascade trees, structural virality and
//! influence-degree.

mod flow;
mod metrics;
mod stats;
mod tree;

pub use flow::{build_flow_graph, first_retweets, FlowGraph};
pub use metrics::{global_influence, influence_degree, structural_virality};
pub use stats::{cascade_stats, virality_vs_size, CascadeSize, CascadeStats, ViralityRow};
pub use tree::{build_cascade_tree, CascadeTree};

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum CascadeError {
    #[error("cascade has no retweeters")]
    NoRetweeters,
    #[error("structural virality needs at least 2 nodes, tree has {0}")]
    TooSmall(usize),
    #[error("invalid tree: {0}")]
    InvalidTree(String),
}

#[cfg(test)]
mod tests;
