//! Grouping recovered retweets into cascades.

use std::collections::{BTreeSet, HashMap, HashSet};

use sha2::{Digest, Sha256};

use super::record::TweetRecord;
use super::retweet::{detect_retweet, normalize_text, split_retweet_prefix};
use crate::{Timestamp, UserId};

pub const DEFAULT_MIN_RETWEETERS: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CascadeKey {
    pub text: String,
    pub root_user_id: UserId,
}

impl CascadeKey {
    /// First 8 bytes of SHA-256 over `text \0 root_user_id`, as hex.
    pub fn hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.text.as_bytes());
        h.update([0u8]);
        h.update(self.root_user_id.to_string().as_bytes());
        hex::encode(&h.finalize()[..8])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct RetweetEvent {
    pub created_at: Timestamp,
    pub retweeter_id: UserId,
    pub tweet_id: u64,
}

/// A root tweet and every recovered retweet of it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cascade {
    pub key: CascadeKey,
    /// The root's original post, when it is part of the corpus. With
    /// repeated identical posts this is the earliest one.
    pub root_tweet: Option<TweetRecord>,
    /// Sorted by `(created_at, retweeter_id)`. Self-retweets by the root
    /// are not events.
    pub events: Vec<RetweetEvent>,
    pub urls: BTreeSet<String>,
}

impl Cascade {
    pub fn root_user_id(&self) -> UserId {
        self.key.root_user_id
    }

    pub fn key_hash(&self) -> String {
        self.key.hash()
    }

    pub fn distinct_retweeters(&self) -> usize {
        self.events.iter().map(|e| e.retweeter_id).collect::<HashSet<_>>().len()
    }

    /// Time of the original post if known and earlier than every retweet,
    /// otherwise one second before the first retweet.
    pub fn root_time(&self) -> Timestamp {
        let first = self.events.first().map(|e| e.created_at).unwrap_or(0);
        match &self.root_tweet {
            Some(t) if self.events.is_empty() || t.created_at < first => t.created_at,
            _ => first - 1,
        }
    }
}

/// Groups retweets by `(normalized text, root user)` and keeps groups
/// whose distinct non-root retweeters reach `min_retweeters`.
///
/// Output is sorted by descending event count, then by key.
pub fn group_cascades(records: &[TweetRecord], min_retweeters: usize) -> Vec<Cascade> {
    let min_retweeters = min_retweeters.max(1);
    let mut groups: HashMap<CascadeKey, (Vec<RetweetEvent>, BTreeSet<String>)> = HashMap::new();
    for info in records.iter().filter_map(detect_retweet) {
        let key = CascadeKey {
            text: info.normalized_text,
            root_user_id: info.root_user_id,
        };
        let (events, urls) = groups.entry(key).or_default();
        urls.extend(info.urls);
        if info.retweeter_id != info.root_user_id {
            events.push(RetweetEvent {
                created_at: info.created_at,
                retweeter_id: info.retweeter_id,
                tweet_id: info.tweet_id,
            });
        }
    }

    let mut cascades: Vec<Cascade> = groups
        .into_iter()
        .filter_map(|(key, (mut events, urls))| {
            let distinct = events.iter().map(|e| e.retweeter_id).collect::<HashSet<_>>().len();
            if distinct < min_retweeters {
                return None;
            }
            events.sort_unstable();
            Some(Cascade {
                key,
                root_tweet: None,
                events,
                urls,
            })
        })
        .collect();

    attach_root_tweets(records, &mut cascades);
    cascades.sort_by(|a, b| b.events.len().cmp(&a.events.len()).then_with(|| a.key.cmp(&b.key)));
    cascades
}

fn attach_root_tweets(records: &[TweetRecord], cascades: &mut [Cascade]) {
    let index: HashMap<CascadeKey, usize> = cascades.iter().enumerate().map(|(i, c)| (c.key.clone(), i)).collect();
    if index.is_empty() {
        return;
    }
    for r in records {
        if split_retweet_prefix(&r.text).is_some() {
            continue;
        }
        let key = CascadeKey {
            text: normalize_text(&r.text),
            root_user_id: r.user_id,
        };
        if let Some(&i) = index.get(&key) {
            let c = &mut cascades[i];
            let earlier = c.root_tweet.as_ref().is_none_or(|t| (r.created_at, r.tweet_id) < (t.created_at, t.tweet_id));
            if earlier {
                c.urls.extend(r.urls.iter().cloned());
                c.root_tweet = Some(r.clone());
            }
        }
    }
}
