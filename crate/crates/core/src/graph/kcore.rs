use super::follower::FollowerGraph;

/// Undirected simple view of a node subset. Antiparallel edges collapse to
/// one; edges leaving the subset are dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedView {
    /// Global node index of each local node.
    pub nodes: Vec<u32>,
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
}

impl UndirectedView {
    pub fn from_follower_graph(fg: &FollowerGraph, subset: &[u32]) -> Self {
        let mut local = vec![u32::MAX; fg.node_count()];
        for (i, &g) in subset.iter().enumerate() {
            local[g as usize] = i as u32;
        }
        let lists = subset.iter().map(|&g| {
            let mut adj: Vec<u32> = fg
                .following(g)
                .0
                .iter()
                .chain(fg.followers(g))
                .map(|&o| local[o as usize])
                .filter(|&l| l != u32::MAX && subset[l as usize] != g)
                .collect();
            adj.sort_unstable();
            adj.dedup();
            adj
        });
        Self::from_lists(subset.to_vec(), lists)
    }

    /// From local undirected edges over `n` nodes; self-loops and repeated
    /// pairs are dropped.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Self {
        let mut lists = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a != b {
                lists[a as usize].push(b);
                lists[b as usize].push(a);
            }
        }
        for l in &mut lists {
            l.sort_unstable();
            l.dedup();
        }
        Self::from_lists((0..n as u32).collect(), lists)
    }

    fn from_lists(nodes: Vec<u32>, lists: impl IntoIterator<Item = Vec<u32>>) -> Self {
        let mut offsets = vec![0];
        let mut neighbors = Vec::new();
        for l in lists {
            neighbors.extend(l);
            offsets.push(neighbors.len());
        }
        Self {
            nodes,
            offsets,
            neighbors,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn neighbors(&self, local: usize) -> &[u32] {
        &self.neighbors[self.offsets[local]..self.offsets[local + 1]]
    }

    pub fn degree(&self, local: usize) -> usize {
        self.offsets[local + 1] - self.offsets[local]
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }
}

/// Coreness of every local node by bucket peeling in O(|V| + |E|).
///
/// Minimum-degree nodes are removed first; within the initial buckets nodes
/// are visited in ascending local index.
pub fn kcore_decomposition(view: &UndirectedView) -> Vec<u32> {
    let n = view.len();
    if n == 0 {
        return Vec::new();
    }
    let mut degree: Vec<usize> = (0..n).map(|v| view.degree(v)).collect();
    let max_degree = degree.iter().copied().max().unwrap_or(0);

    let mut bin_start = vec![0usize; max_degree + 2];
    for &d in &degree {
        bin_start[d + 1] += 1;
    }
    for d in 0..=max_degree {
        bin_start[d + 1] += bin_start[d];
    }
    let mut order = vec![0usize; n];
    let mut position = vec![0usize; n];
    {
        let mut next = bin_start.clone();
        for v in 0..n {
            let d = degree[v];
            position[v] = next[d];
            order[next[d]] = v;
            next[d] += 1;
        }
    }

    for i in 0..n {
        let v = order[i];
        for &u in view.neighbors(v) {
            let u = u as usize;
            if degree[u] > degree[v] {
                let du = degree[u];
                let pu = position[u];
                let pw = bin_start[du];
                let w = order[pw];
                if u != w {
                    order.swap(pu, pw);
                    position[u] = pw;
                    position[w] = pu;
                }
                bin_start[du] += 1;
                degree[u] -= 1;
            }
        }
    }
    degree.into_iter().map(|d| d as u32).collect()
}
