use std::collections::{BTreeSet, HashMap};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use chrono::NaiveDate;
use rtcascade_core::UserId;

use crate::client::{AuditClient, TransportError};
use crate::{AccountState, AccountStatus, AuditCache, BotScore, CacheError, RetryPolicy};

#[derive(Debug, Clone)]
pub struct AuditConfig {
    /// Ids per request.
    pub batch_size: usize,
    /// Requests in flight at once.
    pub concurrency: usize,
    /// Minimum spacing between request starts, per endpoint.
    pub min_request_interval: Duration,
    pub retry: RetryPolicy,
    /// Date used as the cache key and `checked_at` value.
    pub as_of: NaiveDate,
}

impl Default for AuditConfig {
    fn default() -> Self {
        Self {
            batch_size: 100,
            concurrency: 4,
            min_request_interval: Duration::from_millis(50),
            retry: RetryPolicy::default(),
            as_of: chrono::Utc::now().date_naive(),
        }
    }
}

/// Counters for the last fetch call.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FetchStats {
    pub cache_hits: usize,
    pub requests: usize,
    pub retries: usize,
    pub failed_batches: usize,
}

struct RateLimiter {
    interval: Duration,
    next: Mutex<Option<Instant>>,
}

impl RateLimiter {
    fn new(interval: Duration) -> Self {
        Self {
            interval,
            next: Mutex::new(None),
        }
    }

    fn wait(&self) {
        if self.interval.is_zero() {
            return;
        }
        let slot = {
            let mut next = self.next.lock().unwrap();
            let now = Instant::now();
            let slot = next.map_or(now, |n| n.max(now));
            *next = Some(slot + self.interval);
            slot
        };
        let now = Instant::now();
        if slot > now {
            std::thread::sleep(slot - now);
        }
    }
}

pub struct Auditor<C> {
    client: C,
    config: AuditConfig,
    cache: Option<AuditCache>,
    stats: FetchStats,
}

impl<C: AuditClient> Auditor<C> {
    pub fn new(client: C, config: AuditConfig) -> Self {
        Self {
            client,
            config,
            cache: None,
            stats: FetchStats::default(),
        }
    }

    pub fn with_cache(mut self, cache: AuditCache) -> Self {
        self.cache = Some(cache);
        self
    }

    pub fn client(&self) -> &C {
        &self.client
    }

    pub fn stats(&self) -> FetchStats {
        self.stats
    }

    pub fn into_cache(self) -> Option<AuditCache> {
        self.cache
    }

    /// One status per input id, in input order. Transport failures that
    /// survive all retries leave the affected ids `Unknown`; such results
    /// are not cached.
    pub fn fetch_statuses(&mut self, ids: &[UserId]) -> Result<Vec<AccountStatus>, CacheError> {
        self.stats = FetchStats::default();
        let date = self.config.as_of;
        let mut known: HashMap<UserId, AccountState> = HashMap::new();
        let mut missing = Vec::new();
        for &id in unique(ids).iter() {
            match self.cache.as_ref().and_then(|c| c.status(id, date)) {
                Some(state) => {
                    self.stats.cache_hits += 1;
                    known.insert(id, state);
                }
                None => missing.push(id),
            }
        }

        let results = self.run_batches(&missing, |c, batch| c.statuses(batch));
        for (batch, result) in missing.chunks(self.config.batch_size.max(1)).zip(results) {
            let Some(replies) = result else {
                for &id in batch {
                    known.insert(id, AccountState::Unknown);
                }
                continue;
            };
            let codes: HashMap<UserId, u32> = replies.into_iter().map(|r| (r.user_id, r.error_code)).collect();
            for &id in batch {
                let state = codes.get(&id).map_or(AccountState::Unknown, |&c| AccountState::from_error_code(c));
                if state != AccountState::Unknown {
                    if let Some(cache) = &mut self.cache {
                        cache.put_status(id, date, state)?;
                    }
                }
                known.insert(id, state);
            }
        }
        if let Some(cache) = &mut self.cache {
            cache.flush()?;
        }
        Ok(ids
            .iter()
            .map(|&id| AccountStatus {
                user_id: id,
                state: known[&id],
                checked_at: date,
            })
            .collect())
    }

    /// Scores keyed by id; ids the service did not score, or that could not
    /// be fetched, are absent.
    pub fn fetch_bot_scores(&mut self, ids: &[UserId]) -> Result<HashMap<UserId, BotScore>, CacheError> {
        self.stats = FetchStats::default();
        let date = self.config.as_of;
        let mut scores = HashMap::new();
        let mut missing = Vec::new();
        for &id in unique(ids).iter() {
            match self.cache.as_ref().and_then(|c| c.bot(id, date)) {
                Some(hit) => {
                    self.stats.cache_hits += 1;
                    if let Some(s) = hit {
                        scores.insert(id, s);
                    }
                }
                None => missing.push(id),
            }
        }

        let results = self.run_batches(&missing, |c, batch| c.bot_scores(batch));
        for (batch, result) in missing.chunks(self.config.batch_size.max(1)).zip(results) {
            let Some(replies) = result else { continue };
            let mut got: HashMap<UserId, Option<BotScore>> = HashMap::new();
            for r in replies {
                let score = match (r.cap_english, r.cap_universal) {
                    (Some(en), Some(uni)) => BotScore::new(r.user_id, en, uni),
                    _ => None,
                };
                if score.is_none() && (r.cap_english.is_some() || r.cap_universal.is_some()) {
                    log::warn!("discarding out-of-range or partial bot score for {}", r.user_id);
                }
                got.insert(r.user_id, score);
            }
            for &id in batch {
                let score = got.get(&id).copied().flatten();
                if let Some(cache) = &mut self.cache {
                    cache.put_bot(id, date, score)?;
                }
                if let Some(s) = score {
                    scores.insert(id, s);
                }
            }
        }
        if let Some(cache) = &mut self.cache {
            cache.flush()?;
        }
        Ok(scores)
    }

    /// Runs `call` on each batch with bounded concurrency; `None` marks a
    /// batch whose retries were exhausted or that failed fatally.
    fn run_batches<T, F>(&mut self, ids: &[UserId], call: F) -> Vec<Option<Vec<T>>>
    where
        T: Send,
        F: Fn(&C, &[UserId]) -> Result<Vec<T>, TransportError> + Sync,
    {
        let batches: Vec<&[UserId]> = ids.chunks(self.config.batch_size.max(1)).collect();
        let slots: Vec<Mutex<Option<Vec<T>>>> = batches.iter().map(|_| Mutex::new(None)).collect();
        let next = AtomicUsize::new(0);
        let requests = AtomicUsize::new(0);
        let retries = AtomicUsize::new(0);
        let failed = AtomicUsize::new(0);
        let limiter = RateLimiter::new(self.config.min_request_interval);
        let workers = self.config.concurrency.clamp(1, batches.len().max(1));
        let (client, retry) = (&self.client, &self.config.retry);

        std::thread::scope(|s| {
            for _ in 0..workers {
                s.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    let Some(batch) = batches.get(i) else { break };
                    let mut attempt = 0;
                    let outcome = loop {
                        limiter.wait();
                        requests.fetch_add(1, Ordering::Relaxed);
                        match call(client, batch) {
                            Ok(v) => break Some(v),
                            Err(e) if e.is_retryable() && attempt < retry.max_retries => {
                                log::debug!("batch {i}: {e}; retrying");
                                std::thread::sleep(retry.delay(attempt));
                                retries.fetch_add(1, Ordering::Relaxed);
                                attempt += 1;
                            }
                            Err(e) => {
                                log::warn!("batch {i} of {} ids abandoned: {e}", batch.len());
                                failed.fetch_add(1, Ordering::Relaxed);
                                break None;
                            }
                        }
                    };
                    *slots[i].lock().unwrap() = outcome;
                });
            }
        });

        self.stats.requests += requests.into_inner();
        self.stats.retries += retries.into_inner();
        self.stats.failed_batches += failed.into_inner();
        slots.into_iter().map(|m| m.into_inner().unwrap()).collect()
    }
}

fn unique(ids: &[UserId]) -> Vec<UserId> {
    let mut seen = BTreeSet::new();
    ids.iter().copied().filter(|id| seen.insert(*id)).collect()
}
