use std::collections::BTreeSet;
use std::io::Write;

use rtcascade_core::cascade::cascade_stats;
use rtcascade_core::ccdf::CcdfTable;
use rtcascade_core::ingest::{Cascade, TrollRegistry};
use rtcascade_core::{Group, Timestamp, UserId};

use crate::artifacts::OutputDir;
use crate::error::Result;

/// What downstream stages need from a cascade, as persisted in
/// `cascades.tsv` and `cascade_events.tsv`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CascadeData {
    pub key_hash: String,
    pub root_user_id: UserId,
    pub root_time: Timestamp,
    /// Every retweet `(retweeter, time)` in `(time, retweeter)` order.
    pub events: Vec<(UserId, Timestamp)>,
    pub urls: BTreeSet<String>,
}

impl CascadeData {
    pub fn from_cascade(c: &Cascade) -> Self {
        Self {
            key_hash: c.key_hash(),
            root_user_id: c.root_user_id(),
            root_time: c.root_time(),
            events: c.events.iter().map(|e| (e.retweeter_id, e.created_at)).collect(),
            urls: c.urls.clone(),
        }
    }

    pub fn n_distinct(&self) -> usize {
        self.events.iter().map(|e| e.0).collect::<BTreeSet<_>>().len()
    }

    /// First retweet per user, sorted by `(time, user_id)`.
    pub fn first_retweets(&self) -> Vec<(UserId, Timestamp)> {
        let mut seen = std::collections::HashSet::new();
        let mut out: Vec<(UserId, Timestamp)> = self
            .events
            .iter()
            .filter(|e| e.0 != self.root_user_id && seen.insert(e.0))
            .copied()
            .collect();
        out.sort_by_key(|&(u, t)| (t, u));
        out
    }

    /// Root followed by first-time retweeters.
    pub fn participants(&self) -> Vec<UserId> {
        std::iter::once(self.root_user_id)
            .chain(self.first_retweets().into_iter().map(|(u, _)| u))
            .collect()
    }
}

pub(crate) fn write_ccdf(out: &mut OutputDir, rel: &str, table: &CcdfTable) -> Result<()> {
    out.tsv(rel, &["value", "ccdf"], |w| {
        for (x, p) in &table.points {
            writeln!(w, "{x}\t{p}")?;
        }
        Ok(())
    })
}

pub fn write_ingest(
    out: &mut OutputDir,
    prefix: &str,
    cascades: &[Cascade],
    data: &[CascadeData],
    registry: &TrollRegistry,
) -> Result<()> {
    out.tsv(
        &format!("{prefix}cascades.tsv"),
        &["cascade_key_hash", "root_user_id", "n_events", "n_distinct", "urls"],
        |w| {
            for d in data {
                let urls: Vec<&str> = d.urls.iter().map(String::as_str).collect();
                writeln!(
                    w,
                    "{}\t{}\t{}\t{}\t{}",
                    d.key_hash,
                    d.root_user_id,
                    d.events.len(),
                    d.n_distinct(),
                    urls.join(";")
                )?;
            }
            Ok(())
        },
    )?;
    out.tsv(
        &format!("{prefix}cascade_events.tsv"),
        &["cascade_key_hash", "user_id", "unix_ts", "role"],
        |w| {
            for d in data {
                writeln!(w, "{}\t{}\t{}\troot", d.key_hash, d.root_user_id, d.root_time)?;
                for (u, t) in &d.events {
                    writeln!(w, "{}\t{u}\t{t}\tretweet", d.key_hash)?;
                }
            }
            Ok(())
        },
    )?;
    let stats = cascade_stats(cascades, registry);
    for g in Group::ALL {
        write_ccdf(out, &format!("{prefix}ccdf_cascade_distinct_{g}.tsv"), &stats.distinct_ccdf[g as usize])?;
        write_ccdf(out, &format!("{prefix}ccdf_cascade_total_{g}.tsv"), &stats.total_ccdf[g as usize])?;
    }
    Ok(())
}
