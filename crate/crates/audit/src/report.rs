use std::collections::HashMap;
use std::io::{self, Write};

use rtcascade_core::shapley::RankEntry;
use rtcascade_core::{Group, UserId};

use crate::{AccountState, AccountStatus, BotScore};

pub const DEFAULT_BOT_THRESHOLD: f64 = 0.5;

#[derive(Debug, Clone, PartialEq)]
pub struct AuditRow {
    pub rank: usize,
    pub user_id: UserId,
    pub group: Group,
    pub score: f64,
    pub state: AccountState,
    /// `None` is reported as N/A: no score, or the account is gone.
    pub bot: Option<BotScore>,
    pub is_bot: Option<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport {
    pub k: usize,
    pub threshold: f64,
    pub rows: Vec<AuditRow>,
    pub active: usize,
    pub suspended: usize,
    pub deleted: usize,
    pub unknown: usize,
    pub bot_flagged: usize,
    /// Rows with a usable bot score.
    pub bot_scored: usize,
}

impl AuditReport {
    /// `count / k`, or 0 for an empty report.
    pub fn fraction(&self, count: usize) -> f64 {
        if self.k == 0 {
            0.0
        } else {
            count as f64 / self.k as f64
        }
    }

    pub fn suspended_fraction(&self) -> f64 {
        self.fraction(self.suspended)
    }

    pub fn deleted_fraction(&self) -> f64 {
        self.fraction(self.deleted)
    }

    pub fn inactive(&self) -> usize {
        self.suspended + self.deleted
    }

    pub fn bot_fraction(&self) -> f64 {
        self.fraction(self.bot_flagged)
    }

    pub fn write_rows<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "rank\tuser_id\tgroup\tscore\tstate\tcap_english\tcap_universal\tbot")?;
        for r in &self.rows {
            let (en, uni, flag) = match (r.bot, r.is_bot) {
                (Some(b), Some(f)) => (b.cap_english.to_string(), b.cap_universal.to_string(), f.to_string()),
                _ => ("N/A".into(), "N/A".into(), "N/A".into()),
            };
            writeln!(
                w,
                "{}\t{}\t{}\t{}\t{}\t{en}\t{uni}\t{flag}",
                r.rank,
                r.user_id,
                r.group,
                r.score,
                r.state.as_str()
            )?;
        }
        Ok(())
    }

    pub fn write_summary<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "metric\tcount\tk\tfraction")?;
        for (name, count) in [
            ("active", self.active),
            ("suspended", self.suspended),
            ("deleted", self.deleted),
            ("unknown", self.unknown),
            ("inactive", self.inactive()),
            ("bot_flagged", self.bot_flagged),
        ] {
            writeln!(w, "{name}\t{count}\t{}\t{}", self.k, self.fraction(count))?;
        }
        Ok(())
    }
}

/// Summarises the first `k` ranking entries. Accounts without a status
/// count as unknown; suspended and deleted accounts never carry a score.
pub fn audit_report(
    ranking: &[RankEntry],
    k: usize,
    statuses: &[AccountStatus],
    scores: &HashMap<UserId, BotScore>,
    threshold: f64,
) -> AuditReport {
    let state_of: HashMap<UserId, AccountState> = statuses.iter().map(|s| (s.user_id, s.state)).collect();
    let top = &ranking[..k.min(ranking.len())];
    let mut report = AuditReport {
        k: top.len(),
        threshold,
        rows: Vec::with_capacity(top.len()),
        active: 0,
        suspended: 0,
        deleted: 0,
        unknown: 0,
        bot_flagged: 0,
        bot_scored: 0,
    };
    for e in top {
        let state = state_of.get(&e.user_id).copied().unwrap_or(AccountState::Unknown);
        match state {
            AccountState::Active => report.active += 1,
            AccountState::Suspended => report.suspended += 1,
            AccountState::Deleted => report.deleted += 1,
            AccountState::Unknown => report.unknown += 1,
        }
        let bot = if state.is_inactive() { None } else { scores.get(&e.user_id).copied() };
        let is_bot = bot.map(|b| b.is_bot(threshold));
        if let Some(flag) = is_bot {
            report.bot_scored += 1;
            report.bot_flagged += usize::from(flag);
        }
        report.rows.push(AuditRow {
            rank: e.rank,
            user_id: e.user_id,
            group: e.group,
            score: e.score,
            state,
            bot,
            is_bot,
        });
    }
    report
}
