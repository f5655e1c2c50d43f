use super::flow::FlowGraph;
use super::CascadeError;
use crate::{Timestamp, UserId};

/// Time-inferred diffusion tree over the nodes of a flow graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CascadeTree {
    pub users: Vec<UserId>,
    pub times: Vec<Timestamp>,
    /// `None` only for the root.
    pub parent: Vec<Option<u32>>,
    root: u32,
}

impl CascadeTree {
    /// Checks that `parent` describes a single tree spanning every node.
    pub fn from_parents(users: Vec<UserId>, times: Vec<Timestamp>, parent: Vec<Option<u32>>) -> Result<Self, CascadeError> {
        let n = parent.len();
        if users.len() != n || times.len() != n {
            return Err(CascadeError::InvalidTree("length mismatch".into()));
        }
        let mut roots = parent.iter().enumerate().filter(|(_, p)| p.is_none()).map(|(i, _)| i as u32);
        let root = roots.next().ok_or_else(|| CascadeError::InvalidTree("no root".into()))?;
        if roots.next().is_some() {
            return Err(CascadeError::InvalidTree("more than one root".into()));
        }
        if parent.iter().flatten().any(|&p| p as usize >= n) {
            return Err(CascadeError::InvalidTree("parent out of range".into()));
        }
        let tree = Self {
            users,
            times,
            parent,
            root,
        };
        if tree.preorder().len() != n {
            return Err(CascadeError::InvalidTree("cycle or unreachable node".into()));
        }
        Ok(tree)
    }

    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> u32 {
        self.root
    }

    pub fn root_user(&self) -> UserId {
        self.users[self.root as usize]
    }

    /// Children lists in CSR form: `(offsets, children)`.
    pub fn children(&self) -> (Vec<usize>, Vec<u32>) {
        let n = self.node_count();
        let mut offsets = vec![0usize; n + 1];
        for p in self.parent.iter().flatten() {
            offsets[*p as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut next = offsets.clone();
        let mut children = vec![0u32; offsets[n]];
        for (c, p) in self.parent.iter().enumerate() {
            if let Some(p) = p {
                children[next[*p as usize]] = c as u32;
                next[*p as usize] += 1;
            }
        }
        (offsets, children)
    }

    /// Nodes reachable from the root, parents before children.
    pub fn preorder(&self) -> Vec<u32> {
        let (offsets, children) = self.children();
        let mut order = Vec::with_capacity(self.node_count());
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            order.push(v);
            if order.len() > self.node_count() {
                break;
            }
            stack.extend_from_slice(&children[offsets[v as usize]..offsets[v as usize + 1]]);
        }
        order
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.parent.iter().enumerate().filter_map(|(c, p)| p.map(|p| (p, c as u32)))
    }
}

/// Each retweeter's parent is its non-root flow-graph in-neighbour with the
/// latest first retweet (ties: smallest user id), or the root if it has none.
pub fn build_cascade_tree(flow: &FlowGraph) -> CascadeTree {
    let n = flow.node_count();
    let mut parent = vec![None; n];
    for v in 1..n {
        let best = flow
            .graph
            .in_neighbors(v)
            .iter()
            .map(|&u| u as usize)
            .filter(|&u| u != FlowGraph::ROOT)
            .max_by(|&a, &b| {
                flow.times[a]
                    .cmp(&flow.times[b])
                    .then_with(|| flow.users[b].cmp(&flow.users[a]))
            });
        parent[v] = Some(best.unwrap_or(FlowGraph::ROOT) as u32);
    }
    CascadeTree {
        users: flow.users.clone(),
        times: flow.times.clone(),
        parent,
        root: FlowGraph::ROOT as u32,
    }
}
