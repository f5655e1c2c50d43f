use std::collections::BTreeMap;

use crate::ingest::TrollRegistry;
use crate::{Group, UserId};

#[derive(Debug, Clone, PartialEq)]
pub struct RankEntry {
    /// 1-based.
    pub rank: usize,
    pub user_id: UserId,
    pub score: f64,
    pub group: Group,
}

/// Accounts ordered by descending score; ties by ascending user id.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Ranking {
    pub entries: Vec<RankEntry>,
}

impl Ranking {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn top(&self, k: usize) -> &[RankEntry] {
        &self.entries[..k.min(self.entries.len())]
    }

    /// Ranks of every troll present in the ranking, ascending.
    pub fn troll_ranks(&self) -> Vec<&RankEntry> {
        self.entries.iter().filter(|e| e.group == Group::Troll).collect()
    }

    pub fn rank_of(&self, user: UserId) -> Option<usize> {
        self.entries.iter().find(|e| e.user_id == user).map(|e| e.rank)
    }
}

pub fn rank<S>(scores: S, registry: &TrollRegistry) -> Ranking
where
    S: IntoIterator<Item = (UserId, f64)>,
{
    let mut items: Vec<(UserId, f64)> = scores.into_iter().collect();
    items.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    Ranking {
        entries: items
            .into_iter()
            .enumerate()
            .map(|(i, (user_id, score))| RankEntry {
                rank: i + 1,
                user_id,
                score,
                group: registry.group_of(user_id),
            })
            .collect(),
    }
}

/// Convenience for ranking a score map.
pub fn rank_map(scores: &BTreeMap<UserId, f64>, registry: &TrollRegistry) -> Ranking {
    rank(scores.iter().map(|(&u, &s)| (u, s)), registry)
}
