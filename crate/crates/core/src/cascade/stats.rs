use crate::ccdf::CcdfTable;
use crate::ingest::{Cascade, TrollRegistry};
use crate::Group;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CascadeSize {
    pub key_hash: String,
    pub root_group: Group,
    pub distinct_retweeters: usize,
    pub total_retweets: usize,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct CascadeStats {
    pub sizes: Vec<CascadeSize>,
    /// Indexed by `Group as usize`.
    pub distinct_ccdf: [CcdfTable; 2],
    pub total_ccdf: [CcdfTable; 2],
}

pub fn cascade_stats(cascades: &[Cascade], registry: &TrollRegistry) -> CascadeStats {
    let sizes: Vec<CascadeSize> = cascades
        .iter()
        .map(|c| CascadeSize {
            key_hash: c.key_hash(),
            root_group: registry.group_of(c.root_user_id()),
            distinct_retweeters: c.distinct_retweeters(),
            total_retweets: c.events.len(),
        })
        .collect();
    let ccdf = |g: Group, f: fn(&CascadeSize) -> usize| {
        CcdfTable::from_counts(sizes.iter().filter(|s| s.root_group == g).map(|s| f(s) as u64))
    };
    CascadeStats {
        distinct_ccdf: [ccdf(Group::Regular, |s| s.distinct_retweeters), ccdf(Group::Troll, |s| s.distinct_retweeters)],
        total_ccdf: [ccdf(Group::Regular, |s| s.total_retweets), ccdf(Group::Troll, |s| s.total_retweets)],
        sizes,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ViralityRow {
    pub key_hash: String,
    pub n_nodes: usize,
    pub virality: f64,
    pub root_group: Group,
}

/// One scatter row per tree with at least two nodes, in input order.
pub fn virality_vs_size<'a, I>(trees: I, registry: &TrollRegistry) -> Vec<ViralityRow>
where
    I: IntoIterator<Item = (&'a str, &'a super::CascadeTree)>,
{
    trees
        .into_iter()
        .filter_map(|(key, t)| {
            let v = super::structural_virality(t).ok()?;
            Some(ViralityRow {
                key_hash: key.to_string(),
                n_nodes: t.node_count(),
                virality: v,
                root_group: registry.group_of(t.root_user()),
            })
        })
        .collect()
}
