use std::collections::HashMap;

use super::CascadeError;
use crate::digraph::Digraph;
use crate::graph::FollowerGraph;
use crate::ingest::Cascade;
use crate::{Timestamp, UserId};

/// All possible influence paths within one cascade.
///
/// Node `0` is the root; retweeters follow in order of their first retweet
/// `(time, user_id)`. Edge `u -> v` means v could have seen u's retweet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowGraph {
    pub users: Vec<UserId>,
    /// First-retweet time per node; the root's post time at index 0.
    pub times: Vec<Timestamp>,
    pub graph: Digraph,
}

impl FlowGraph {
    pub const ROOT: usize = 0;

    pub fn node_count(&self) -> usize {
        self.users.len()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn root_user(&self) -> UserId {
        self.users[Self::ROOT]
    }

    /// Builds from explicit first-retweet times; `retweeters` must be sorted
    /// by `(time, user_id)` and exclude the root.
    pub fn from_first_retweets(
        root: (UserId, Timestamp),
        retweeters: &[(UserId, Timestamp)],
        fg: &FollowerGraph,
    ) -> Result<Self, CascadeError> {
        if retweeters.is_empty() {
            return Err(CascadeError::NoRetweeters);
        }
        let mut users = Vec::with_capacity(retweeters.len() + 1);
        let mut times = Vec::with_capacity(retweeters.len() + 1);
        users.push(root.0);
        times.push(root.1);
        for &(u, t) in retweeters {
            users.push(u);
            times.push(t);
        }
        let n = users.len();

        // graph index of every cascade member present in the follower graph
        let graph_index: Vec<Option<u32>> = users.iter().map(|&u| fg.nodes.index_of(u)).collect();
        let local_of: HashMap<u32, u32> = graph_index
            .iter()
            .enumerate()
            .skip(1)
            .filter_map(|(l, g)| g.map(|g| (g, l as u32)))
            .collect();

        let mut edges: Vec<(u32, u32)> = (1..n as u32).map(|v| (Self::ROOT as u32, v)).collect();
        for v in 1..n {
            let Some(gv) = graph_index[v] else { continue };
            let tv = times[v];
            let (followees, follow_times) = fg.following(gv);
            if followees.len() <= n {
                for (&gu, &ft) in followees.iter().zip(follow_times) {
                    if ft >= tv {
                        continue;
                    }
                    if let Some(&u) = local_of.get(&gu) {
                        if times[u as usize] < tv {
                            edges.push((u, v as u32));
                        }
                    }
                }
            } else {
                for u in 1..v {
                    if times[u] >= tv {
                        break;
                    }
                    let Some(gu) = graph_index[u] else { continue };
                    if fg.follow_time(gv, gu).is_some_and(|ft| ft < tv) {
                        edges.push((u as u32, v as u32));
                    }
                }
            }
        }
        Ok(Self {
            users,
            times,
            graph: Digraph::from_edges(n, edges),
        })
    }
}

/// Per-user first retweet times, sorted by `(time, user_id)`.
pub fn first_retweets(c: &Cascade) -> Vec<(UserId, Timestamp)> {
    let mut seen = std::collections::HashSet::new();
    c.events
        .iter()
        .filter(|e| e.retweeter_id != c.root_user_id() && seen.insert(e.retweeter_id))
        .map(|e| (e.retweeter_id, e.created_at))
        .collect()
}

/// Flow graph of a cascade over the follower graph: the root reaches every
/// retweeter, and `u -> v` exists when v followed u before v's first
/// retweet and u's first retweet strictly precedes v's.
pub fn build_flow_graph(c: &Cascade, fg: &FollowerGraph) -> Result<FlowGraph, CascadeError> {
    FlowGraph::from_first_retweets((c.root_user_id(), c.root_time()), &first_retweets(c), fg)
}
