//! Tweet records and JSON Lines corpus parsing.

use std::collections::HashSet;
use std::io::BufRead;

use chrono::{DateTime, NaiveDateTime, SecondsFormat, Utc};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize};

use super::url::normalize_url;
use super::IngestError;
use crate::{Timestamp, UserId};

/// 2006-01-01T00:00:00Z; nothing can have been posted before this.
pub const EARLIEST_TIMESTAMP: Timestamp = 1_136_073_600;

const PARSE_CHUNK: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mention {
    pub user_id: UserId,
    pub screen_name: String,
}

/// One ingested post.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TweetRecord {
    pub tweet_id: u64,
    pub user_id: UserId,
    pub screen_name: String,
    pub created_at: Timestamp,
    pub text: String,
    pub mentions: Vec<Mention>,
    /// Normalised with [`normalize_url`].
    pub urls: Vec<String>,
    pub in_reply_to_user_id: Option<UserId>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum RecordError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("unparseable created_at `{0}`")]
    Timestamp(String),
    #[error("created_at {0} precedes 2006-01-01")]
    TooEarly(Timestamp),
    #[error("mention with empty screen name")]
    EmptyMention,
}

#[derive(Deserialize)]
struct RawMention {
    #[serde(deserialize_with = "de_id")]
    user_id: u64,
    screen_name: String,
}

#[derive(Deserialize)]
struct RawRecord {
    #[serde(deserialize_with = "de_id")]
    tweet_id: u64,
    #[serde(deserialize_with = "de_id")]
    user_id: u64,
    screen_name: String,
    created_at: String,
    text: String,
    mentions: Vec<RawMention>,
    urls: Vec<String>,
    #[serde(default, deserialize_with = "de_opt_id")]
    in_reply_to_user_id: Option<u64>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum IdRepr {
    Int(u64),
    Str(String),
}

impl IdRepr {
    fn into_u64<E: serde::de::Error>(self) -> Result<u64, E> {
        match self {
            IdRepr::Int(v) => Ok(v),
            IdRepr::Str(s) => s.trim().parse().map_err(|_| E::custom(format!("invalid id `{s}`"))),
        }
    }
}

fn de_id<'de, D: Deserializer<'de>>(d: D) -> Result<u64, D::Error> {
    IdRepr::deserialize(d)?.into_u64()
}

fn de_opt_id<'de, D: Deserializer<'de>>(d: D) -> Result<Option<u64>, D::Error> {
    Option::<IdRepr>::deserialize(d)?.map(IdRepr::into_u64).transpose()
}

#[derive(Serialize)]
struct OutMention<'a> {
    user_id: String,
    screen_name: &'a str,
}

#[derive(Serialize)]
struct OutRecord<'a> {
    tweet_id: String,
    user_id: String,
    screen_name: &'a str,
    created_at: String,
    text: &'a str,
    mentions: Vec<OutMention<'a>>,
    urls: &'a [String],
    #[serde(skip_serializing_if = "Option::is_none")]
    in_reply_to_user_id: Option<String>,
}

/// Parses an ISO-8601 timestamp. Strings without an offset are read as UTC.
pub fn parse_timestamp(s: &str) -> Option<Timestamp> {
    let s = s.trim();
    if let Ok(dt) = DateTime::parse_from_rfc3339(s) {
        return Some(dt.timestamp());
    }
    ["%Y-%m-%dT%H:%M:%S", "%Y-%m-%d %H:%M:%S"]
        .iter()
        .find_map(|fmt| NaiveDateTime::parse_from_str(s, fmt).ok())
        .map(|naive| naive.and_utc().timestamp())
}

pub fn format_timestamp(ts: Timestamp) -> String {
    DateTime::<Utc>::from_timestamp(ts, 0)
        .map(|dt| dt.to_rfc3339_opts(SecondsFormat::Secs, true))
        .unwrap_or_else(|| ts.to_string())
}

impl TweetRecord {
    pub fn from_json(line: &str) -> Result<Self, RecordError> {
        let raw: RawRecord = serde_json::from_str(line).map_err(|e| RecordError::Json(e.to_string()))?;
        let created_at = parse_timestamp(&raw.created_at).ok_or_else(|| RecordError::Timestamp(raw.created_at.clone()))?;
        if created_at < EARLIEST_TIMESTAMP {
            return Err(RecordError::TooEarly(created_at));
        }
        if raw.mentions.iter().any(|m| m.screen_name.is_empty()) {
            return Err(RecordError::EmptyMention);
        }
        Ok(Self {
            tweet_id: raw.tweet_id,
            user_id: raw.user_id,
            screen_name: raw.screen_name,
            created_at,
            text: raw.text,
            mentions: raw
                .mentions
                .into_iter()
                .map(|m| Mention {
                    user_id: m.user_id,
                    screen_name: m.screen_name,
                })
                .collect(),
            urls: raw.urls.iter().map(|u| normalize_url(u)).collect(),
            in_reply_to_user_id: raw.in_reply_to_user_id,
        })
    }

    /// Serialises to one JSON Lines object. Ids are written as strings.
    pub fn to_json(&self) -> String {
        let out = OutRecord {
            tweet_id: self.tweet_id.to_string(),
            user_id: self.user_id.to_string(),
            screen_name: &self.screen_name,
            created_at: format_timestamp(self.created_at),
            text: &self.text,
            mentions: self
                .mentions
                .iter()
                .map(|m| OutMention {
                    user_id: m.user_id.to_string(),
                    screen_name: &m.screen_name,
                })
                .collect(),
            urls: &self.urls,
            in_reply_to_user_id: self.in_reply_to_user_id.map(|v| v.to_string()),
        };
        serde_json::to_string(&out).expect("record serialisation cannot fail")
    }
}

/// Result of parsing a corpus.
#[derive(Debug, Default)]
pub struct Corpus {
    pub records: Vec<TweetRecord>,
    /// Malformed or duplicate-id lines that were dropped.
    pub skipped: usize,
}

/// Reads a JSON Lines corpus. Blank lines are ignored; malformed lines and
/// lines repeating an earlier `tweet_id` are counted and skipped.
///
/// Lines are parsed in parallel chunks; output keeps input order.
pub fn parse_corpus<R: BufRead>(reader: R) -> Result<Corpus, IngestError> {
    let mut corpus = Corpus::default();
    let mut seen = HashSet::new();
    let mut lines = reader.lines();
    let mut chunk = Vec::with_capacity(PARSE_CHUNK);
    loop {
        chunk.clear();
        for line in lines.by_ref() {
            let line = line?;
            if !line.trim().is_empty() {
                chunk.push(line);
                if chunk.len() == PARSE_CHUNK {
                    break;
                }
            }
        }
        if chunk.is_empty() {
            break;
        }
        let parsed: Vec<Result<TweetRecord, RecordError>> =
            chunk.par_iter().map(|l| TweetRecord::from_json(l)).collect();
        for result in parsed {
            match result {
                Ok(rec) if seen.insert(rec.tweet_id) => corpus.records.push(rec),
                _ => corpus.skipped += 1,
            }
        }
    }
    let total = corpus.records.len() + corpus.skipped;
    if corpus.skipped * 2 > total {
        return Err(IngestError::CorpusFormat {
            malformed: corpus.skipped,
            total,
        });
    }
    Ok(corpus)
}
