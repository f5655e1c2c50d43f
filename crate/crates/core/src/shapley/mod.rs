//! Shapley-value degree centrality on flow graphs, global aggregation and
//! rankings.

mod brute;
mod degree;
mod global;
mod rank;

pub use brute::{brute_force_shapley, fringe_game_shapley, BRUTE_FORCE_MAX_NODES};
pub use degree::shapley_degree;
pub use global::{global_shapley, CascadeScores, UrlFilter};
pub use rank::{rank, rank_map, RankEntry, Ranking};

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum ShapleyError {
    #[error("brute force limited to {max} nodes, graph has {nodes}")]
    TooLarge { nodes: usize, max: usize },
    #[error("self-loop on node {0}")]
    SelfLoop(usize),
}
