use std::collections::HashMap;

use crate::ingest::{detect_retweet, TrollRegistry, TweetRecord};
use crate::{Group, Timestamp, UserId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ActionType {
    Reply,
    Mention,
    Retweet,
}

impl ActionType {
    pub fn as_str(self) -> &'static str {
        match self {
            ActionType::Reply => "reply",
            ActionType::Mention => "mention",
            ActionType::Retweet => "retweet",
        }
    }
}

impl std::str::FromStr for ActionType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "reply" => Ok(ActionType::Reply),
            "mention" => Ok(ActionType::Mention),
            "retweet" => Ok(ActionType::Retweet),
            other => Err(format!("unknown action type `{other}`")),
        }
    }
}

/// Dense node indices in first-appearance order, with group labels.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NodeTable {
    ids: Vec<UserId>,
    groups: Vec<Group>,
    index: HashMap<UserId, u32>,
}

impl NodeTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the index of `id`, appending it if unseen.
    pub fn intern(&mut self, id: UserId, group: Group) -> u32 {
        if let Some(&i) = self.index.get(&id) {
            return i;
        }
        let i = u32::try_from(self.ids.len()).expect("node table exceeds u32 indices");
        self.ids.push(id);
        self.groups.push(group);
        self.index.insert(id, i);
        i
    }

    pub fn index_of(&self, id: UserId) -> Option<u32> {
        self.index.get(&id).copied()
    }

    pub fn user_id(&self, index: u32) -> UserId {
        self.ids[index as usize]
    }

    pub fn group(&self, index: u32) -> Group {
        self.groups[index as usize]
    }

    pub fn ids(&self) -> &[UserId] {
        &self.ids
    }

    pub fn groups(&self) -> &[Group] {
        &self.groups
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Interaction {
    pub src: u32,
    pub dst: u32,
    pub action: ActionType,
    pub timestamp: Timestamp,
}

/// Directed multigraph with one edge per reply, mention or retweet action.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InteractionGraph {
    pub nodes: NodeTable,
    pub edges: Vec<Interaction>,
}

impl InteractionGraph {
    /// Adds an edge between external ids; self-loops are dropped.
    pub fn push(&mut self, src: UserId, dst: UserId, action: ActionType, timestamp: Timestamp, registry: &TrollRegistry) {
        if src == dst {
            return;
        }
        let src = self.nodes.intern(src, registry.group_of(src));
        let dst = self.nodes.intern(dst, registry.group_of(dst));
        self.edges.push(Interaction {
            src,
            dst,
            action,
            timestamp,
        });
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn out_degrees(&self) -> Vec<u64> {
        let mut d = vec![0; self.node_count()];
        for e in &self.edges {
            d[e.src as usize] += 1;
        }
        d
    }

    pub fn in_degrees(&self) -> Vec<u64> {
        let mut d = vec![0; self.node_count()];
        for e in &self.edges {
            d[e.dst as usize] += 1;
        }
        d
    }
}

/// One edge per action of a user on another user's content.
///
/// A detected retweet yields a single retweet edge to the root; the root's
/// entry in the mentions list is consumed by it. Remaining mentions and the
/// reply target each yield their own edge.
pub fn build_interaction_graph(records: &[TweetRecord], registry: &TrollRegistry) -> InteractionGraph {
    let mut g = InteractionGraph::default();
    for r in records {
        let mut consumed_root = None;
        if let Some(rt) = detect_retweet(r) {
            g.push(r.user_id, rt.root_user_id, ActionType::Retweet, r.created_at, registry);
            consumed_root = Some(rt.root_user_id);
        }
        if let Some(target) = r.in_reply_to_user_id {
            g.push(r.user_id, target, ActionType::Reply, r.created_at, registry);
        }
        for m in &r.mentions {
            if consumed_root == Some(m.user_id) {
                consumed_root = None;
                continue;
            }
            g.push(r.user_id, m.user_id, ActionType::Mention, r.created_at, registry);
        }
    }
    g
}
