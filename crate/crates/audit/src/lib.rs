//! Post-hoc auditing of top-ranked accounts against an account-status
//! endpoint and a bot-score endpoint.
//!
//! All network access goes through [`AuditClient`]; [`HttpClient`] speaks
//! the JSON wire format, and the `mock` feature provides a local server
//! implementing the same endpoints.

mod cache;
mod client;
mod fetch;
#[cfg(feature = "mock")]
pub mod mock;
mod report;
mod retry;

use std::str::FromStr;

use chrono::NaiveDate;
use rtcascade_core::UserId;

pub use cache::{AuditCache, CacheError};
pub use client::{ApiToken, AuditClient, BotReply, EndpointConfig, HttpClient, StatusReply, TransportError, TOKEN_ENV};
pub use fetch::{AuditConfig, Auditor, FetchStats};
pub use report::{audit_report, AuditReport, AuditRow, DEFAULT_BOT_THRESHOLD};
pub use retry::RetryPolicy;

/// Remote error code for a suspended account.
pub const SUSPENDED_CODE: u32 = 63;
/// Remote error code for an account that no longer exists.
pub const DELETED_CODE: u32 = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AccountState {
    Active,
    Suspended,
    Deleted,
    /// The endpoint could not be reached or answered with an unrecognised code.
    Unknown,
}

impl AccountState {
    pub fn from_error_code(code: u32) -> Self {
        match code {
            0 => AccountState::Active,
            SUSPENDED_CODE => AccountState::Suspended,
            DELETED_CODE => AccountState::Deleted,
            _ => AccountState::Unknown,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            AccountState::Active => "active",
            AccountState::Suspended => "suspended",
            AccountState::Deleted => "deleted",
            AccountState::Unknown => "unknown",
        }
    }

    pub fn is_inactive(self) -> bool {
        matches!(self, AccountState::Suspended | AccountState::Deleted)
    }
}

impl FromStr for AccountState {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "active" => Ok(AccountState::Active),
            "suspended" => Ok(AccountState::Suspended),
            "deleted" => Ok(AccountState::Deleted),
            "unknown" => Ok(AccountState::Unknown),
            other => Err(format!("unknown account state `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AccountStatus {
    pub user_id: UserId,
    pub state: AccountState,
    pub checked_at: NaiveDate,
}

/// Complete-automation probabilities from the bot-score service.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BotScore {
    pub user_id: UserId,
    pub cap_english: f64,
    pub cap_universal: f64,
}

impl BotScore {
    /// `None` unless both probabilities lie in `[0, 1]`.
    pub fn new(user_id: UserId, cap_english: f64, cap_universal: f64) -> Option<Self> {
        let valid = |p: f64| (0.0..=1.0).contains(&p);
        (valid(cap_english) && valid(cap_universal)).then_some(Self {
            user_id,
            cap_english,
            cap_universal,
        })
    }

    /// Flagged when either probability exceeds `threshold`.
    pub fn is_bot(&self, threshold: f64) -> bool {
        self.cap_english.max(self.cap_universal) > threshold
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_codes() {
        assert_eq!(AccountState::from_error_code(63), AccountState::Suspended);
        assert_eq!(AccountState::from_error_code(50), AccountState::Deleted);
        assert_eq!(AccountState::from_error_code(0), AccountState::Active);
        assert_eq!(AccountState::from_error_code(88), AccountState::Unknown);
    }

    #[test]
    fn bot_flag() {
        let s = BotScore::new(1, 0.565053, 0.297).unwrap();
        assert!(s.is_bot(DEFAULT_BOT_THRESHOLD));
        let h = BotScore::new(2, 0.0015, 0.0019).unwrap();
        assert!(!h.is_bot(DEFAULT_BOT_THRESHOLD));
        assert!(BotScore::new(1, 0.2, 0.51).unwrap().is_bot(0.5));
        assert!(!BotScore::new(1, 0.5, 0.5).unwrap().is_bot(0.5));
        assert!(BotScore::new(1, 1.2, 0.0).is_none());
    }

    #[test]
    fn state_round_trip() {
        for s in [AccountState::Active, AccountState::Suspended, AccountState::Deleted, AccountState::Unknown] {
            assert_eq!(s.as_str().parse::<AccountState>().unwrap(), s);
        }
    }
}
