//! Stage computations and their artifact writers. Each writer takes a
//! path prefix so the pipeline can place stages in subdirectories.

mod audit;
mod cascade;
mod graph;
mod ingest;
mod shapley;
mod synth;

pub use audit::{run_audit, AuditOptions};
pub use cascade::{build_flows, build_trees, write_analysis, FlowEntry};
pub use graph::{build_graphs, write_graph, write_stats, Graphs};
pub use ingest::{write_ingest, CascadeData};
pub use shapley::{cascade_scores, compute_ranking, ranking_ids, write_ranking, UrlFilterMode};
pub use synth::write_synthetic;
