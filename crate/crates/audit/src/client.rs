use std::fmt;
use std::time::Duration;

use reqwest::blocking::Client;
use reqwest::StatusCode;
use rtcascade_core::UserId;
use serde::{Deserialize, Deserializer, Serialize};

/// Environment variable holding the bearer token for both endpoints.
pub const TOKEN_ENV: &str = "RTCASCADE_API_TOKEN";

/// Bearer token; never printed.
#[derive(Clone)]
pub struct ApiToken(String);

impl ApiToken {
    pub fn new(token: impl Into<String>) -> Self {
        Self(token.into())
    }

    pub fn from_env() -> Option<Self> {
        std::env::var(TOKEN_ENV).ok().filter(|t| !t.is_empty()).map(Self)
    }

    fn expose(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for ApiToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("ApiToken(***)")
    }
}

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum TransportError {
    /// Connection failures, timeouts, 429 and 5xx responses.
    #[error("transient failure: {0}")]
    Retryable(String),
    #[error("request failed: {0}")]
    Fatal(String),
}

impl TransportError {
    pub fn is_retryable(&self) -> bool {
        matches!(self, TransportError::Retryable(_))
    }
}

#[derive(Serialize)]
pub(crate) struct IdsRequest<'a> {
    pub user_ids: &'a [UserId],
}

/// One element of the status endpoint's JSON array response. A missing
/// `error_code` means the profile was returned, i.e. code 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatusReply {
    #[serde(deserialize_with = "de_id")]
    pub user_id: UserId,
    #[serde(default)]
    pub error_code: u32,
}

/// One element of the bot-score endpoint's JSON array response. Accounts
/// the service cannot score carry null probabilities or are left out.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BotReply {
    #[serde(deserialize_with = "de_id")]
    pub user_id: UserId,
    pub cap_english: Option<f64>,
    pub cap_universal: Option<f64>,
}

fn de_id<'de, D: Deserializer<'de>>(d: D) -> Result<UserId, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Id {
        Int(u64),
        Str(String),
    }
    match Id::deserialize(d)? {
        Id::Int(v) => Ok(v),
        Id::Str(s) => s.parse().map_err(serde::de::Error::custom),
    }
}

/// Everything the audit needs from the outside world.
pub trait AuditClient: Sync {
    fn statuses(&self, ids: &[UserId]) -> Result<Vec<StatusReply>, TransportError>;
    fn bot_scores(&self, ids: &[UserId]) -> Result<Vec<BotReply>, TransportError>;
}

#[derive(Debug, Clone)]
pub struct EndpointConfig {
    pub status_url: String,
    pub bot_url: String,
    pub token: Option<ApiToken>,
    pub timeout: Duration,
}

impl EndpointConfig {
    pub fn new(status_url: impl Into<String>, bot_url: impl Into<String>) -> Self {
        Self {
            status_url: status_url.into(),
            bot_url: bot_url.into(),
            token: ApiToken::from_env(),
            timeout: Duration::from_secs(30),
        }
    }
}

/// Blocking JSON-over-HTTP client: `POST {"user_ids": [...]}` to each
/// endpoint, expecting a JSON array back.
#[derive(Debug)]
pub struct HttpClient {
    http: Client,
    config: EndpointConfig,
}

impl HttpClient {
    pub fn new(config: EndpointConfig) -> Result<Self, TransportError> {
        let http = Client::builder()
            .timeout(config.timeout)
            .build()
            .map_err(|e| TransportError::Fatal(e.to_string()))?;
        Ok(Self { http, config })
    }

    fn post<T: for<'de> Deserialize<'de>>(&self, url: &str, ids: &[UserId]) -> Result<Vec<T>, TransportError> {
        let mut req = self.http.post(url).json(&IdsRequest { user_ids: ids });
        if let Some(token) = &self.config.token {
            req = req.bearer_auth(token.expose());
        }
        let resp = req.send().map_err(|e| TransportError::Retryable(e.without_url().to_string()))?;
        let status = resp.status();
        if status == StatusCode::TOO_MANY_REQUESTS || status.is_server_error() {
            return Err(TransportError::Retryable(format!("HTTP {status}")));
        }
        if !status.is_success() {
            return Err(TransportError::Fatal(format!("HTTP {status}")));
        }
        resp.json::<Vec<T>>().map_err(|e| TransportError::Fatal(format!("bad response body: {}", e.without_url())))
    }
}

impl AuditClient for HttpClient {
    fn statuses(&self, ids: &[UserId]) -> Result<Vec<StatusReply>, TransportError> {
        self.post(&self.config.status_url, ids)
    }

    fn bot_scores(&self, ids: &[UserId]) -> Result<Vec<BotReply>, TransportError> {
        self.post(&self.config.bot_url, ids)
    }
}
