//! Corpus parsing, retweet recovery and cascade grouping.

mod cascades;
mod record;
mod registry;
mod retweet;
mod url;

use std::path::PathBuf;

pub use cascades::{group_cascades, Cascade, CascadeKey, RetweetEvent, DEFAULT_MIN_RETWEETERS};
pub use record::{format_timestamp, parse_corpus, parse_timestamp, Corpus, Mention, RecordError, TweetRecord, EARLIEST_TIMESTAMP};
pub use registry::TrollRegistry;
pub use retweet::{detect_retweet, normalize_text, split_retweet_prefix, RetweetInfo};
pub use url::normalize_url;

#[derive(Debug, thiserror::Error)]
pub enum IngestError {
    #[error("read failed: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot open {}: {source}", path.display())]
    Open {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("corpus format: {malformed} of {total} lines are malformed")]
    CorpusFormat { malformed: usize, total: usize },
    #[error("troll registry line {line}: cannot parse `{content}`")]
    Registry { line: usize, content: String },
}
