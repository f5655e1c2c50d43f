use std::collections::BTreeMap;

use super::follower::FollowerGraph;

/// Disjoint-set forest with union by size and path halving.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let grand = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = grand;
            x = grand;
        }
        x
    }

    pub fn union(&mut self, a: u32, b: u32) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a as usize] < self.size[b as usize] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b as usize] = a;
        self.size[a as usize] += self.size[b as usize];
        true
    }
}

/// Connected components of the undirected view.
///
/// Component ids are ordered by descending size, ties by smallest member
/// index, so component `0` is the largest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    pub component_of: Vec<u32>,
    pub sizes: Vec<usize>,
}

impl Components {
    pub fn count(&self) -> usize {
        self.sizes.len()
    }

    pub fn largest(&self) -> Option<u32> {
        (!self.sizes.is_empty()).then_some(0)
    }

    pub fn members(&self, component: u32) -> Vec<u32> {
        (0..self.component_of.len() as u32)
            .filter(|&i| self.component_of[i as usize] == component)
            .collect()
    }

    /// `size -> number of components of that size`.
    pub fn size_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for &s in &self.sizes {
            *h.entry(s).or_insert(0) += 1;
        }
        h
    }
}

pub fn connected_components(fg: &FollowerGraph) -> Components {
    components_from_edges(fg.node_count(), fg.edges().map(|(s, t, _)| (s, t)))
}

pub fn components_from_edges(n: usize, edges: impl Iterator<Item = (u32, u32)>) -> Components {
    let mut uf = UnionFind::new(n);
    for (s, t) in edges {
        uf.union(s, t);
    }
    // roots in order of their smallest member
    let mut raw_id = vec![u32::MAX; n];
    let mut raw_sizes: Vec<usize> = Vec::new();
    let mut component_of = vec![0u32; n];
    for i in 0..n as u32 {
        let r = uf.find(i) as usize;
        if raw_id[r] == u32::MAX {
            raw_id[r] = raw_sizes.len() as u32;
            raw_sizes.push(0);
        }
        component_of[i as usize] = raw_id[r];
        raw_sizes[raw_id[r] as usize] += 1;
    }
    let mut order: Vec<u32> = (0..raw_sizes.len() as u32).collect();
    order.sort_by(|&a, &b| raw_sizes[b as usize].cmp(&raw_sizes[a as usize]).then(a.cmp(&b)));
    let mut relabel = vec![0u32; order.len()];
    for (new, &old) in order.iter().enumerate() {
        relabel[old as usize] = new as u32;
    }
    for c in &mut component_of {
        *c = relabel[*c as usize];
    }
    let sizes = order.iter().map(|&o| raw_sizes[o as usize]).collect();
    Components { component_of, sizes }
}
