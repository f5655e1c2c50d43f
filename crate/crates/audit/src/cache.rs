//! Append-only TSV journal of audit lookups.
//!
//! Line format: `kind user_id date value value2`, where `kind` is `status`
//! (value = state) or `bot` (values = CAP scores, `NA` when unscored). A
//! later line for the same `(kind, user_id, date)` replaces earlier ones.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use chrono::NaiveDate;
use rtcascade_core::UserId;

use crate::{AccountState, BotScore};

const HEADER: &str = "kind\tuser_id\tdate\tvalue\tvalue2";

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("cache {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cache {} line {line}: malformed entry", path.display())]
    Malformed { path: PathBuf, line: usize },
}

#[derive(Debug, Default)]
pub struct AuditCache {
    statuses: HashMap<(UserId, NaiveDate), AccountState>,
    bots: HashMap<(UserId, NaiveDate), Option<(f64, f64)>>,
    journal: Option<(PathBuf, File)>,
}

impl AuditCache {
    /// Cache that is never persisted.
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// Loads an existing journal (if any) and appends new entries to it.
    pub fn open(path: &Path) -> Result<Self, CacheError> {
        let io_err = |source| CacheError::Io {
            path: path.to_path_buf(),
            source,
        };
        let mut cache = Self::default();
        let exists = path.exists();
        if exists {
            let reader = BufReader::new(File::open(path).map_err(io_err)?);
            for (i, line) in reader.lines().enumerate() {
                let line = line.map_err(io_err)?;
                if i == 0 && line == HEADER || line.is_empty() {
                    continue;
                }
                cache.apply(&line).ok_or_else(|| CacheError::Malformed {
                    path: path.to_path_buf(),
                    line: i + 1,
                })?;
            }
        }
        let mut file = OpenOptions::new().create(true).append(true).open(path).map_err(io_err)?;
        if !exists {
            writeln!(file, "{HEADER}").map_err(io_err)?;
        }
        cache.journal = Some((path.to_path_buf(), file));
        Ok(cache)
    }

    fn apply(&mut self, line: &str) -> Option<()> {
        let cols: Vec<&str> = line.split('\t').collect();
        let [kind, id, date, v1, v2] = cols[..] else {
            return None;
        };
        let id: UserId = id.parse().ok()?;
        let date = NaiveDate::parse_from_str(date, "%Y-%m-%d").ok()?;
        match kind {
            "status" => {
                self.statuses.insert((id, date), v1.parse().ok()?);
            }
            "bot" => {
                let score = match (v1, v2) {
                    ("NA", "NA") => None,
                    _ => Some((v1.parse().ok()?, v2.parse().ok()?)),
                };
                self.bots.insert((id, date), score);
            }
            _ => return None,
        }
        Some(())
    }

    fn append(&mut self, line: String) -> Result<(), CacheError> {
        if let Some((path, file)) = &mut self.journal {
            writeln!(file, "{line}").map_err(|source| CacheError::Io {
                path: path.clone(),
                source,
            })?;
        }
        Ok(())
    }

    pub fn status(&self, id: UserId, date: NaiveDate) -> Option<AccountState> {
        self.statuses.get(&(id, date)).copied()
    }

    /// `Some(None)` records that the service had no score for the account.
    pub fn bot(&self, id: UserId, date: NaiveDate) -> Option<Option<BotScore>> {
        self.bots
            .get(&(id, date))
            .map(|s| s.and_then(|(en, uni)| BotScore::new(id, en, uni)))
    }

    pub fn put_status(&mut self, id: UserId, date: NaiveDate, state: AccountState) -> Result<(), CacheError> {
        self.statuses.insert((id, date), state);
        self.append(format!("status\t{id}\t{date}\t{}\t-", state.as_str()))
    }

    pub fn put_bot(&mut self, id: UserId, date: NaiveDate, score: Option<BotScore>) -> Result<(), CacheError> {
        let pair = score.map(|s| (s.cap_english, s.cap_universal));
        self.bots.insert((id, date), pair);
        let values = match pair {
            Some((en, uni)) => format!("{en}\t{uni}"),
            None => "NA\tNA".to_string(),
        };
        self.append(format!("bot\t{id}\t{date}\t{values}"))
    }

    pub fn flush(&mut self) -> Result<(), CacheError> {
        if let Some((path, file)) = &mut self.journal {
            file.flush().map_err(|source| CacheError::Io {
                path: path.clone(),
                source,
            })?;
        }
        Ok(())
    }
}
