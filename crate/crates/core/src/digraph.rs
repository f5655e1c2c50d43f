//! Compact index-based directed graph with forward and reverse adjacency.

/// Simple directed graph over nodes `0..n` in compressed sparse row form.
///
/// Parallel edges are collapsed at construction; neighbour lists are sorted
/// by node index.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Digraph {
    out_offsets: Vec<usize>,
    out_targets: Vec<u32>,
    in_offsets: Vec<usize>,
    in_sources: Vec<u32>,
}

impl Digraph {
    /// Builds a graph with `node_count` nodes. Panics if an endpoint is out
    /// of range.
    pub fn from_edges(node_count: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut edges: Vec<(u32, u32)> = edges.into_iter().collect();
        edges.sort_unstable();
        edges.dedup();
        if let Some(&(s, t)) = edges.iter().find(|&&(s, t)| s as usize >= node_count || t as usize >= node_count) {
            panic!("edge ({s}, {t}) out of range for {node_count} nodes");
        }
        let out_offsets = offsets(node_count, edges.iter().map(|e| e.0));
        let out_targets = edges.iter().map(|e| e.1).collect();

        let mut reversed: Vec<(u32, u32)> = edges.iter().map(|&(s, t)| (t, s)).collect();
        reversed.sort_unstable();
        let in_offsets = offsets(node_count, reversed.iter().map(|e| e.0));
        let in_sources = reversed.iter().map(|e| e.1).collect();

        Self {
            out_offsets,
            out_targets,
            in_offsets,
            in_sources,
        }
    }

    pub fn node_count(&self) -> usize {
        self.out_offsets.len().saturating_sub(1)
    }

    pub fn edge_count(&self) -> usize {
        self.out_targets.len()
    }

    pub fn out_neighbors(&self, node: usize) -> &[u32] {
        &self.out_targets[self.out_offsets[node]..self.out_offsets[node + 1]]
    }

    pub fn in_neighbors(&self, node: usize) -> &[u32] {
        &self.in_sources[self.in_offsets[node]..self.in_offsets[node + 1]]
    }

    pub fn out_degree(&self, node: usize) -> usize {
        self.out_offsets[node + 1] - self.out_offsets[node]
    }

    pub fn in_degree(&self, node: usize) -> usize {
        self.in_offsets[node + 1] - self.in_offsets[node]
    }

    pub fn has_edge(&self, src: usize, dst: usize) -> bool {
        self.out_neighbors(src).binary_search(&(dst as u32)).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.node_count()).flat_map(move |s| self.out_neighbors(s).iter().map(move |&t| (s as u32, t)))
    }
}

/// Prefix offsets for a sorted sequence of source indices.
fn offsets(node_count: usize, sources: impl Iterator<Item = u32>) -> Vec<usize> {
    let mut offsets = vec![0usize; node_count + 1];
    for s in sources {
        offsets[s as usize + 1] += 1;
    }
    for i in 0..node_count {
        offsets[i + 1] += offsets[i];
    }
    offsets
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn collapses_parallel_edges() {
        let g = Digraph::from_edges(3, [(0, 1), (0, 1), (2, 1), (1, 0)]);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.out_neighbors(0), &[1]);
        assert_eq!(g.in_neighbors(1), &[0, 2]);
        assert_eq!(g.in_degree(0), 1);
        assert!(g.has_edge(2, 1));
        assert!(!g.has_edge(1, 2));
    }

    #[test]
    fn isolated_nodes() {
        let g = Digraph::from_edges(4, []);
        assert_eq!(g.node_count(), 4);
        assert_eq!(g.edge_count(), 0);
        assert!(g.out_neighbors(3).is_empty());
    }

    #[test]
    #[should_panic]
    fn rejects_out_of_range() {
        Digraph::from_edges(2, [(0, 2)]);
    }
}
