//! In-process HTTP server implementing both audit endpoints, for tests
//! and offline demos.

use std::collections::HashMap;
use std::net::SocketAddr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::thread::JoinHandle;

use axum::extract::State;
use axum::http::{HeaderMap, StatusCode};
use axum::routing::post;
use axum::{Json, Router};
use rtcascade_core::UserId;
use serde::Deserialize;
use serde_json::{json, Value};
use tokio::sync::oneshot;

use crate::EndpointConfig;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MockAccount {
    pub error_code: u32,
    pub scores: Option<(f64, f64)>,
}

impl MockAccount {
    pub fn active(cap_english: f64, cap_universal: f64) -> Self {
        Self {
            error_code: 0,
            scores: Some((cap_english, cap_universal)),
        }
    }

    pub fn suspended() -> Self {
        Self {
            error_code: crate::SUSPENDED_CODE,
            scores: None,
        }
    }

    pub fn deleted() -> Self {
        Self {
            error_code: crate::DELETED_CODE,
            scores: None,
        }
    }
}

#[derive(Default)]
struct MockState {
    accounts: Mutex<HashMap<UserId, MockAccount>>,
    fail_next: AtomicUsize,
    requests: AtomicUsize,
    token: Option<String>,
}

#[derive(Deserialize)]
struct IdsBody {
    user_ids: Vec<UserId>,
}

impl MockState {
    /// Counts the request and decides whether it should fail.
    fn gate(&self, headers: &HeaderMap) -> Result<(), StatusCode> {
        self.requests.fetch_add(1, Ordering::SeqCst);
        if let Some(token) = &self.token {
            let expected = format!("Bearer {token}");
            if headers.get("authorization").and_then(|v| v.to_str().ok()) != Some(expected.as_str()) {
                return Err(StatusCode::UNAUTHORIZED);
            }
        }
        let injected = self
            .fail_next
            .fetch_update(Ordering::SeqCst, Ordering::SeqCst, |n| n.checked_sub(1))
            .is_ok();
        if injected {
            return Err(StatusCode::SERVICE_UNAVAILABLE);
        }
        Ok(())
    }
}

async fn status(
    State(state): State<Arc<MockState>>,
    headers: HeaderMap,
    Json(body): Json<IdsBody>,
) -> Result<Json<Value>, StatusCode> {
    state.gate(&headers)?;
    let accounts = state.accounts.lock().unwrap();
    let out: Vec<Value> = body
        .user_ids
        .iter()
        .map(|&id| match accounts.get(&id) {
            Some(a) if a.error_code == 0 => json!({ "user_id": id.to_string(), "screen_name": format!("user{id}") }),
            Some(a) => json!({ "user_id": id.to_string(), "error_code": a.error_code }),
            None => json!({ "user_id": id.to_string(), "error_code": crate::DELETED_CODE }),
        })
        .collect();
    Ok(Json(Value::Array(out)))
}

async fn bot(
    State(state): State<Arc<MockState>>,
    headers: HeaderMap,
    Json(body): Json<IdsBody>,
) -> Result<Json<Value>, StatusCode> {
    state.gate(&headers)?;
    let accounts = state.accounts.lock().unwrap();
    let out: Vec<Value> = body
        .user_ids
        .iter()
        .filter_map(|&id| {
            let (en, uni) = accounts.get(&id)?.scores?;
            Some(json!({ "user_id": id, "cap_english": en, "cap_universal": uni }))
        })
        .collect();
    Ok(Json(Value::Array(out)))
}

pub struct MockServer {
    addr: SocketAddr,
    state: Arc<MockState>,
    shutdown: Option<oneshot::Sender<()>>,
    thread: Option<JoinHandle<()>>,
}

impl MockServer {
    pub fn start(accounts: HashMap<UserId, MockAccount>) -> std::io::Result<Self> {
        Self::start_with_token(accounts, None)
    }

    /// Requests without `Authorization: Bearer {token}` get HTTP 401.
    pub fn start_with_token(accounts: HashMap<UserId, MockAccount>, token: Option<String>) -> std::io::Result<Self> {
        let state = Arc::new(MockState {
            accounts: Mutex::new(accounts),
            token,
            ..MockState::default()
        });
        let runtime = tokio::runtime::Builder::new_current_thread().enable_all().build()?;
        let listener = runtime.block_on(tokio::net::TcpListener::bind("127.0.0.1:0"))?;
        let addr = listener.local_addr()?;
        let app = Router::new()
            .route("/status", post(status))
            .route("/bot", post(bot))
            .with_state(state.clone());
        let (tx, rx) = oneshot::channel::<()>();
        let thread = std::thread::spawn(move || {
            runtime.block_on(async move {
                let _ = axum::serve(listener, app)
                    .with_graceful_shutdown(async {
                        let _ = rx.await;
                    })
                    .await;
            });
        });
        Ok(Self {
            addr,
            state,
            shutdown: Some(tx),
            thread: Some(thread),
        })
    }

    pub fn addr(&self) -> SocketAddr {
        self.addr
    }

    pub fn status_url(&self) -> String {
        format!("http://{}/status", self.addr)
    }

    pub fn bot_url(&self) -> String {
        format!("http://{}/bot", self.addr)
    }

    /// Endpoint configuration pointing at this server, with no token.
    pub fn endpoints(&self) -> EndpointConfig {
        EndpointConfig {
            token: None,
            ..EndpointConfig::new(self.status_url(), self.bot_url())
        }
    }

    /// The next `n` requests answer HTTP 503.
    pub fn fail_next(&self, n: usize) {
        self.state.fail_next.store(n, Ordering::SeqCst);
    }

    pub fn request_count(&self) -> usize {
        self.state.requests.load(Ordering::SeqCst)
    }

    pub fn set_account(&self, id: UserId, account: MockAccount) {
        self.state.accounts.lock().unwrap().insert(id, account);
    }
}

impl Drop for MockServer {
    fn drop(&mut self) {
        if let Some(tx) = self.shutdown.take() {
            let _ = tx.send(());
        }
        if let Some(t) = self.thread.take() {
            let _ = t.join();
        }
    }
}
