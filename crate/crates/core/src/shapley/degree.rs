use crate::digraph::Digraph;
use crate::sum::CompensatedSum;

/// Shapley-value degree centrality of every node:
/// the sum of `1 / (1 + indegree(v))` over out-neighbours `v`.
///
/// Linear in `|V| + |E|`. Nodes without out-neighbours score exactly 0.
pub fn shapley_degree(g: &Digraph) -> Vec<f64> {
    let share: Vec<f64> = (0..g.node_count()).map(|v| 1.0 / (1.0 + g.in_degree(v) as f64)).collect();
    (0..g.node_count())
        .map(|u| {
            g.out_neighbors(u)
                .iter()
                .map(|&v| share[v as usize])
                .collect::<CompensatedSum>()
                .value()
        })
        .collect()
}
