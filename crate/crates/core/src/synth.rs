//! Reproducible synthetic corpora with planted cascades.
//!
//! Every cascade gets its own fresh set of planted retweeters, and follow
//! relations are only planted between members of the same cascade, so the
//! planted tree is exactly what diffusion inference should recover. On top
//! of that the generator adds accounts that retweet in several cascades
//! without following anyone, background chatter among accounts that never
//! retweet, bare `RT` posts that are not retweets, and the two known
//! failure modes of text-based grouping: repeated identical root posts and
//! quote-style retweets with altered text.

use std::collections::HashMap;
use std::io::{self, Write};

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ingest::{Mention, TweetRecord};
use crate::{Timestamp, UserId};

/// 2016-09-01T00:00:00Z.
pub const SYNTH_EPOCH: Timestamp = 1_472_688_000;
const WINDOW: Timestamp = 100_000;
const FIRST_USER_ID: UserId = 10_000;
const WORDS: &[&str] = &[
    "vote", "debate", "rally", "news", "poll", "breaking", "watch", "truth", "media", "states", "tonight", "read",
    "share", "live", "video", "report", "campaign", "leaked", "today", "election",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shape {
    /// Nobody follows anyone; every retweet comes from the root.
    Star,
    /// Every member follows all earlier members.
    Chain,
    /// Each member follows one uniformly chosen earlier member (or the root).
    RandomTree,
}

impl Shape {
    pub fn as_str(self) -> &'static str {
        match self {
            Shape::Star => "star",
            Shape::Chain => "chain",
            Shape::RandomTree => "random",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthConfig {
    pub seed: u64,
    /// Size of the account pool; generation fails if it is too small.
    pub n_users: usize,
    pub n_cascades: usize,
    pub troll_fraction: f64,
    /// Planted retweeters per cascade, inclusive range.
    pub cascade_size: (usize, usize),
    /// Shapes cycled over cascades.
    pub shapes: Vec<Shape>,
    /// Number of cascades rooted at the hub account (0 disables the hub).
    pub hub_cascades: usize,
    pub hub_is_troll: bool,
    /// Accounts that retweet across cascades without following anyone.
    pub shared_retweeters: usize,
    pub shared_per_cascade: usize,
    pub background_users: usize,
    pub background_tweets: usize,
    /// Every n-th cascade has its root post repeated mid-cascade (0 = never).
    pub duplicate_root_every: usize,
    /// Every n-th cascade receives quote-style retweets (0 = never).
    pub quote_every: usize,
    pub quotes_per_cascade: usize,
    /// Every n-th cascade has its root post omitted from the corpus.
    pub missing_root_every: usize,
}

impl Default for SynthConfig {
    fn default() -> Self {
        Self {
            seed: 7,
            n_users: 20_000,
            n_cascades: 40,
            troll_fraction: 0.02,
            cascade_size: (100, 160),
            shapes: vec![Shape::Star, Shape::Chain, Shape::RandomTree],
            hub_cascades: 4,
            hub_is_troll: false,
            shared_retweeters: 200,
            shared_per_cascade: 20,
            background_users: 300,
            background_tweets: 2_000,
            duplicate_root_every: 5,
            quote_every: 4,
            quotes_per_cascade: 3,
            missing_root_every: 7,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TweetKind {
    Original,
    Retweet,
    Quote,
    Follow,
    Noise,
    FakeRetweet,
}

impl TweetKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TweetKind::Original => "original",
            TweetKind::Retweet => "retweet",
            TweetKind::Quote => "quote",
            TweetKind::Follow => "follow",
            TweetKind::Noise => "noise",
            TweetKind::FakeRetweet => "fake_rt",
        }
    }
}

/// What the generator intended for one tweet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthRow {
    pub tweet_id: u64,
    pub kind: TweetKind,
    pub cascade: Option<usize>,
    pub root_user_id: Option<UserId>,
    pub root_tweet_id: Option<u64>,
    /// Planted parent in the diffusion tree, for retweets.
    pub parent_user_id: Option<UserId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlantedCascade {
    pub index: usize,
    pub shape: Shape,
    pub root_user_id: UserId,
    pub url: String,
    /// `(retweeter, planted parent)` for every retweeter, shared ones included.
    pub parents: Vec<(UserId, UserId)>,
    pub duplicate_root: bool,
    pub quoted: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Synthetic {
    /// Chronological; tweet ids increase with time.
    pub records: Vec<TweetRecord>,
    pub trolls: Vec<UserId>,
    pub hub: Option<UserId>,
    pub truth: Vec<TruthRow>,
    pub cascades: Vec<PlantedCascade>,
}

#[derive(Debug, thiserror::Error)]
pub enum SynthError {
    #[error("invalid parameter: {0}")]
    Invalid(String),
    #[error("{needed} accounts needed but n_users is {available}")]
    TooFewUsers { needed: usize, available: usize },
}

struct Draft {
    at: Timestamp,
    seq: usize,
    user: UserId,
    text: String,
    mentions: Vec<UserId>,
    url: Option<String>,
    reply_to: Option<UserId>,
    kind: TweetKind,
    cascade: Option<usize>,
    root_user: Option<UserId>,
    /// Index of the root draft this retweet points at.
    root_draft: Option<usize>,
    parent: Option<UserId>,
}

fn screen_name(user: UserId) -> String {
    format!("User{user}")
}

fn sentence(rng: &mut ChaCha8Rng, n: usize) -> String {
    (0..n).map(|_| *WORDS.choose(rng).unwrap()).collect::<Vec<_>>().join(" ")
}

pub fn gen_synthetic(cfg: &SynthConfig) -> Result<Synthetic, SynthError> {
    let (lo, hi) = cfg.cascade_size;
    if lo == 0 || hi < lo {
        return Err(SynthError::Invalid(format!("cascade_size {lo}..={hi}")));
    }
    if !(0.0..=1.0).contains(&cfg.troll_fraction) {
        return Err(SynthError::Invalid(format!("troll_fraction {}", cfg.troll_fraction)));
    }
    if cfg.shapes.is_empty() {
        return Err(SynthError::Invalid("no shapes".into()));
    }
    if cfg.hub_cascades > cfg.n_cascades {
        return Err(SynthError::Invalid("hub_cascades exceeds n_cascades".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let sizes: Vec<usize> = (0..cfg.n_cascades).map(|_| rng.random_range(lo..=hi)).collect();
    let quotes = |c: usize| if cfg.quote_every > 0 && c % cfg.quote_every == 0 { cfg.quotes_per_cascade } else { 0 };
    let distinct_roots = cfg.n_cascades - cfg.hub_cascades + usize::from(cfg.hub_cascades > 0);
    let needed = sizes.iter().sum::<usize>()
        + (0..cfg.n_cascades).map(quotes).sum::<usize>()
        + distinct_roots
        + cfg.shared_retweeters
        + cfg.background_users;
    if needed > cfg.n_users {
        return Err(SynthError::TooFewUsers {
            needed,
            available: cfg.n_users,
        });
    }

    let mut pool: Vec<UserId> = (0..cfg.n_users as u64).map(|i| FIRST_USER_ID + i).collect();
    pool.shuffle(&mut rng);
    let mut pool = pool.into_iter();
    let mut take = |k: usize| pool.by_ref().take(k).collect::<Vec<_>>();

    let hub = (cfg.hub_cascades > 0).then(|| take(1)[0]);
    let roots: Vec<UserId> = {
        let others = take(cfg.n_cascades - cfg.hub_cascades);
        let mut roots: Vec<UserId> = std::iter::repeat_n(hub, cfg.hub_cascades).flatten().chain(others).collect();
        roots.shuffle(&mut rng);
        roots
    };
    let shared = take(cfg.shared_retweeters);
    let background = take(cfg.background_users);

    let mut drafts: Vec<Draft> = Vec::new();
    let mut seq = 0usize;
    let mut push = |drafts: &mut Vec<Draft>, mut d: Draft| {
        d.seq = seq;
        seq += 1;
        drafts.push(d);
        drafts.len() - 1
    };
    let blank = |at, user, kind| Draft {
        at,
        seq: 0,
        user,
        text: String::new(),
        mentions: Vec::new(),
        url: None,
        reply_to: None,
        kind,
        cascade: None,
        root_user: None,
        root_draft: None,
        parent: None,
    };

    let mut planted = Vec::with_capacity(cfg.n_cascades);
    for (c, (&root, &size)) in roots.iter().zip(&sizes).enumerate() {
        let shape = cfg.shapes[c % cfg.shapes.len()];
        let start = SYNTH_EPOCH + c as Timestamp * WINDOW;
        let url = format!("https://news.example.com/s/{c}");
        let body = format!("{} #{c} {url}", sentence(&mut rng, 6));
        let duplicate_root = cfg.duplicate_root_every > 0 && c % cfg.duplicate_root_every == 1;
        let missing_root = cfg.missing_root_every > 0 && c % cfg.missing_root_every == 3;

        let mut original = blank(start, root, TweetKind::Original);
        original.text = body.clone();
        original.url = Some(url.clone());
        original.cascade = Some(c);
        original.root_user = Some(root);
        let first_root = if missing_root { None } else { Some(push(&mut drafts, original)) };

        let members = take(size);
        // retweet times strictly increase inside the planted set
        let mut times: Vec<Timestamp> = (0..size).map(|k| start + 100 + 10 * k as Timestamp).collect();
        times.iter_mut().for_each(|t| *t += rng.random_range(0..5));

        let mut parents: Vec<(UserId, UserId)> = Vec::with_capacity(size);
        let mut follows: Vec<(UserId, UserId)> = Vec::new();
        for (k, &m) in members.iter().enumerate() {
            let parent = match shape {
                Shape::Star => root,
                Shape::Chain => {
                    follows.extend(members[..k].iter().map(|&earlier| (m, earlier)));
                    if k == 0 { root } else { members[k - 1] }
                }
                Shape::RandomTree => {
                    let pick = rng.random_range(0..=k);
                    if pick == k {
                        root
                    } else {
                        follows.push((m, members[pick]));
                        members[pick]
                    }
                }
            };
            parents.push((m, parent));
        }
        for (follower, followee) in follows {
            let mut d = blank(start - 1_000, follower, TweetKind::Follow);
            d.text = format!("@{} {}", screen_name(followee), sentence(&mut rng, 3));
            d.mentions = vec![followee];
            push(&mut drafts, d);
        }

        let dup_at = start + 100 + 10 * (size as Timestamp / 2);
        let second_root = if duplicate_root {
            let mut d = blank(dup_at, root, TweetKind::Original);
            d.text = body.clone();
            d.url = Some(url.clone());
            d.cascade = Some(c);
            d.root_user = Some(root);
            Some(push(&mut drafts, d))
        } else {
            None
        };
        let root_for = |at: Timestamp| match second_root {
            Some(s) if at > dup_at => Some(s),
            _ => first_root,
        };

        let retweet_text = |rng: &mut ChaCha8Rng| {
            let name = screen_name(root);
            let shown = if rng.random_bool(0.2) { name.to_ascii_lowercase() } else { name };
            format!("RT @{shown}: {body}")
        };
        for (k, &(m, parent)) in parents.iter().enumerate() {
            let mut d = blank(times[k], m, TweetKind::Retweet);
            d.text = retweet_text(&mut rng);
            d.mentions = vec![root];
            d.url = Some(url.clone());
            d.cascade = Some(c);
            d.root_user = Some(root);
            d.root_draft = root_for(times[k]);
            d.parent = Some(parent);
            push(&mut drafts, d);
            // occasional repeat retweet
            if rng.random_bool(0.05) {
                let mut again = blank(times[k] + 3, m, TweetKind::Retweet);
                again.text = retweet_text(&mut rng);
                again.mentions = vec![root];
                again.url = Some(url.clone());
                again.cascade = Some(c);
                again.root_user = Some(root);
                again.root_draft = root_for(times[k] + 3);
                again.parent = Some(parent);
                push(&mut drafts, again);
            }
        }

        let end = times.last().copied().unwrap_or(start) + 10;
        let extra: Vec<UserId> = shared.choose_multiple(&mut rng, cfg.shared_per_cascade).copied().collect();
        for s in extra {
            let at = rng.random_range(start + 100..end);
            let mut d = blank(at, s, TweetKind::Retweet);
            d.text = retweet_text(&mut rng);
            d.mentions = vec![root];
            d.url = Some(url.clone());
            d.cascade = Some(c);
            d.root_user = Some(root);
            d.root_draft = root_for(at);
            d.parent = Some(root);
            push(&mut drafts, d);
            parents.push((s, root));
        }

        let quoted = quotes(c) > 0;
        for q in take(quotes(c)) {
            let at = rng.random_range(start + 100..end);
            let mut d = blank(at, q, TweetKind::Quote);
            d.text = format!("RT @{}: {body} so true {}", screen_name(root), sentence(&mut rng, 2));
            d.mentions = vec![root];
            d.url = Some(url.clone());
            d.cascade = Some(c);
            d.root_user = Some(root);
            d.root_draft = root_for(at);
            push(&mut drafts, d);
        }

        planted.push(PlantedCascade {
            index: c,
            shape,
            root_user_id: root,
            url,
            parents,
            duplicate_root,
            quoted,
        });
    }

    let span = (cfg.n_cascades.max(1) as Timestamp) * WINDOW;
    if background.len() >= 2 {
        for _ in 0..cfg.background_tweets {
            let at = SYNTH_EPOCH - 5_000 + rng.random_range(0..span);
            let user = *background.choose(&mut rng).unwrap();
            let other = *background.choose(&mut rng).unwrap();
            let roll: f64 = rng.random();
            let mut d = blank(at, user, TweetKind::Noise);
            if roll < 0.1 {
                d.kind = TweetKind::FakeRetweet;
                d.text = format!("RT this is great {}", sentence(&mut rng, 3));
                d.url = Some(format!("https://blog.example.org/p/{}", rng.random_range(0..1000)));
            } else if roll < 0.4 {
                d.text = format!("@{} {}", screen_name(other), sentence(&mut rng, 4));
                d.mentions = vec![other];
            } else if roll < 0.6 {
                d.text = sentence(&mut rng, 5);
                d.reply_to = Some(other);
            } else if roll < 0.7 && !roots.is_empty() {
                let target = *roots.choose(&mut rng).unwrap();
                d.text = format!("@{} {}", screen_name(target), sentence(&mut rng, 4));
                d.mentions = vec![target];
            } else {
                d.text = sentence(&mut rng, 7);
            }
            push(&mut drafts, d);
        }
    }

    let n_trolls = (cfg.troll_fraction * cfg.n_users as f64).round() as usize;
    let mut candidates: Vec<UserId> = (0..cfg.n_users as u64)
        .map(|i| FIRST_USER_ID + i)
        .filter(|u| Some(*u) != hub)
        .collect();
    candidates.shuffle(&mut rng);
    let mut trolls: Vec<UserId> = candidates.into_iter().take(n_trolls).collect();
    if cfg.hub_is_troll {
        trolls.extend(hub);
    }
    trolls.sort_unstable();

    Ok(finish(drafts, trolls, hub, planted))
}

fn finish(drafts: Vec<Draft>, trolls: Vec<UserId>, hub: Option<UserId>, cascades: Vec<PlantedCascade>) -> Synthetic {
    let mut order: Vec<usize> = (0..drafts.len()).collect();
    order.sort_by_key(|&i| (drafts[i].at, drafts[i].seq));
    let mut tweet_id_of = vec![0u64; drafts.len()];
    for (pos, &i) in order.iter().enumerate() {
        tweet_id_of[i] = 1_000_000 + pos as u64;
    }
    let mut records = Vec::with_capacity(drafts.len());
    let mut truth = Vec::with_capacity(drafts.len());
    for &i in &order {
        let d = &drafts[i];
        records.push(TweetRecord {
            tweet_id: tweet_id_of[i],
            user_id: d.user,
            screen_name: screen_name(d.user),
            created_at: d.at,
            text: d.text.clone(),
            mentions: d
                .mentions
                .iter()
                .map(|&m| Mention {
                    user_id: m,
                    screen_name: screen_name(m),
                })
                .collect(),
            urls: d.url.iter().cloned().collect(),
            in_reply_to_user_id: d.reply_to,
        });
        truth.push(TruthRow {
            tweet_id: tweet_id_of[i],
            kind: d.kind,
            cascade: d.cascade,
            root_user_id: d.root_user,
            root_tweet_id: match d.kind {
                TweetKind::Original => Some(tweet_id_of[i]),
                _ => d.root_draft.map(|r| tweet_id_of[r]),
            },
            parent_user_id: d.parent,
        });
    }
    Synthetic {
        records,
        trolls,
        hub,
        truth,
        cascades,
    }
}

impl Synthetic {
    pub fn write_corpus<W: Write>(&self, mut w: W) -> io::Result<()> {
        for r in &self.records {
            writeln!(w, "{}", r.to_json())?;
        }
        w.flush()
    }

    pub fn write_trolls<W: Write>(&self, mut w: W) -> io::Result<()> {
        for t in &self.trolls {
            writeln!(w, "{t}")?;
        }
        w.flush()
    }

    /// TSV with header `tweet_id kind cascade root_user_id root_tweet_id parent_user_id`;
    /// absent values are `-`.
    pub fn write_truth<W: Write>(&self, mut w: W) -> io::Result<()> {
        fn opt<T: std::fmt::Display>(v: Option<T>) -> String {
            v.map_or_else(|| "-".to_string(), |v| v.to_string())
        }
        writeln!(w, "tweet_id\tkind\tcascade\troot_user_id\troot_tweet_id\tparent_user_id")?;
        for t in &self.truth {
            writeln!(
                w,
                "{}\t{}\t{}\t{}\t{}\t{}",
                t.tweet_id,
                t.kind.as_str(),
                opt(t.cascade),
                opt(t.root_user_id),
                opt(t.root_tweet_id),
                opt(t.parent_user_id)
            )?;
        }
        w.flush()
    }

    pub fn truth_by_tweet(&self) -> HashMap<u64, &TruthRow> {
        self.truth.iter().map(|t| (t.tweet_id, t)).collect()
    }

    pub fn retweet_count(&self) -> usize {
        self.truth.iter().filter(|t| t.kind == TweetKind::Retweet).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SynthConfig {
        SynthConfig {
            n_users: 3_000,
            n_cascades: 6,
            cascade_size: (20, 30),
            hub_cascades: 2,
            shared_retweeters: 30,
            shared_per_cascade: 5,
            background_users: 50,
            background_tweets: 200,
            ..SynthConfig::default()
        }
    }

    #[test]
    fn deterministic_for_seed() {
        let mut a = Vec::new();
        let mut b = Vec::new();
        gen_synthetic(&small()).unwrap().write_corpus(&mut a).unwrap();
        gen_synthetic(&small()).unwrap().write_corpus(&mut b).unwrap();
        assert_eq!(a, b);
        let mut c = Vec::new();
        gen_synthetic(&SynthConfig { seed: 99, ..small() }).unwrap().write_corpus(&mut c).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn chronological_unique_ids() {
        let s = gen_synthetic(&small()).unwrap();
        for w in s.records.windows(2) {
            assert!(w[0].created_at <= w[1].created_at);
            assert!(w[0].tweet_id < w[1].tweet_id);
        }
        assert_eq!(s.records.len(), s.truth.len());
    }

    #[test]
    fn corpus_parses_back() {
        let s = gen_synthetic(&small()).unwrap();
        let mut buf = Vec::new();
        s.write_corpus(&mut buf).unwrap();
        let corpus = crate::ingest::parse_corpus(&buf[..]).unwrap();
        assert_eq!(corpus.skipped, 0);
        assert_eq!(corpus.records, s.records);
    }

    #[test]
    fn too_few_users() {
        let err = gen_synthetic(&SynthConfig { n_users: 10, ..small() }).unwrap_err();
        assert!(matches!(err, SynthError::TooFewUsers { .. }));
    }

    #[test]
    fn hub_roots_several_cascades() {
        let s = gen_synthetic(&small()).unwrap();
        let hub = s.hub.unwrap();
        assert_eq!(s.cascades.iter().filter(|c| c.root_user_id == hub).count(), 2);
        assert!(!s.trolls.contains(&hub));
        let troll_hub = gen_synthetic(&SynthConfig { hub_is_troll: true, ..small() }).unwrap();
        assert!(troll_hub.trolls.contains(&troll_hub.hub.unwrap()));
    }
}
