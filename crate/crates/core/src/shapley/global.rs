use std::collections::{BTreeMap, BTreeSet};

use crate::ingest::TrollRegistry;
use crate::sum::CompensatedSum;
use crate::UserId;

/// Shapley values of one flow graph, keyed by the cascade's URLs.
#[derive(Debug, Clone, PartialEq)]
pub struct CascadeScores {
    pub key_hash: String,
    pub urls: BTreeSet<String>,
    pub users: Vec<UserId>,
    pub values: Vec<f64>,
}

/// Anchor URLs selecting a subset of cascades.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UrlFilter {
    pub urls: BTreeSet<String>,
}

impl UrlFilter {
    pub fn new(urls: impl IntoIterator<Item = String>) -> Self {
        Self {
            urls: urls.into_iter().collect(),
        }
    }

    /// URLs of every cascade a troll posted or retweeted in.
    pub fn troll_urls<'a, I>(cascades: I, registry: &TrollRegistry) -> Self
    where
        I: IntoIterator<Item = (&'a BTreeSet<String>, &'a [UserId])>,
    {
        let mut urls = BTreeSet::new();
        for (cascade_urls, participants) in cascades {
            if participants.iter().any(|&u| registry.contains(u)) {
                urls.extend(cascade_urls.iter().cloned());
            }
        }
        Self { urls }
    }

    pub fn matches(&self, urls: &BTreeSet<String>) -> bool {
        // iterate the smaller side
        if urls.len() <= self.urls.len() {
            urls.iter().any(|u| self.urls.contains(u))
        } else {
            self.urls.iter().any(|u| urls.contains(u))
        }
    }
}

/// Per-user sum of flow-graph Shapley values over the cascades they take
/// part in, optionally restricted to cascades matching `filter`.
///
/// Every participant of every cascade gets an entry, so filtered-out users
/// appear with 0. Sums are compensated and accumulated in input order.
pub fn global_shapley<'a, I>(scores: I, filter: Option<&UrlFilter>) -> BTreeMap<UserId, f64>
where
    I: IntoIterator<Item = &'a CascadeScores>,
{
    let mut acc: BTreeMap<UserId, CompensatedSum> = BTreeMap::new();
    for c in scores {
        let included = filter.is_none_or(|f| f.matches(&c.urls));
        for (&u, &v) in c.users.iter().zip(&c.values) {
            let slot = acc.entry(u).or_default();
            if included {
                slot.add(v);
            }
        }
    }
    acc.into_iter().map(|(u, s)| (u, s.value())).collect()
}
