//! Retweet recovery from the `RT @name:` text prefix.

use super::record::TweetRecord;
use crate::{Timestamp, UserId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RetweetInfo {
    pub tweet_id: u64,
    pub retweeter_id: UserId,
    pub root_user_id: UserId,
    /// Screen name as listed in the tweet's mentions.
    pub root_screen_name: String,
    pub created_at: Timestamp,
    pub normalized_text: String,
    pub urls: Vec<String>,
}

/// Collapses whitespace runs into single spaces and trims both ends.
pub fn normalize_text(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for word in text.split_whitespace() {
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(word);
    }
    out
}

/// Splits `RT @name: rest` into `(name, rest)`.
pub fn split_retweet_prefix(text: &str) -> Option<(&str, &str)> {
    let rest = text.strip_prefix("RT @")?;
    let name_len = rest
        .bytes()
        .take_while(|b| b.is_ascii_alphanumeric() || *b == b'_')
        .count();
    if name_len == 0 {
        return None;
    }
    let (name, tail) = rest.split_at(name_len);
    Some((name, tail.strip_prefix(':')?))
}

/// Recognises a retweet: the text starts with `RT @<name>:`, `<name>` is
/// among the tweet's own mentions (ASCII case-insensitive) and the tweet
/// carries at least one URL.
pub fn detect_retweet(t: &TweetRecord) -> Option<RetweetInfo> {
    if t.urls.is_empty() {
        return None;
    }
    let (name, body) = split_retweet_prefix(&t.text)?;
    let root = t.mentions.iter().find(|m| m.screen_name.eq_ignore_ascii_case(name))?;
    Some(RetweetInfo {
        tweet_id: t.tweet_id,
        retweeter_id: t.user_id,
        root_user_id: root.user_id,
        root_screen_name: root.screen_name.clone(),
        created_at: t.created_at,
        normalized_text: normalize_text(body),
        urls: t.urls.clone(),
    })
}
