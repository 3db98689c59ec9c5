use std::collections::HashMap;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use docket_core::access::Principal;
use rand::RngCore;

use crate::error::ApiError;

struct Session {
    principal: Principal,
    last_seen: Instant,
}

/// Server-side session table keyed by opaque random tokens. A session
/// expires after `ttl` without use.
pub struct Sessions {
    ttl: Duration,
    table: Mutex<HashMap<String, Session>>,
}

impl Sessions {
    pub fn new(ttl: Duration) -> Self {
        Self { ttl, table: Mutex::new(HashMap::new()) }
    }

    pub fn ttl(&self) -> Duration {
        self.ttl
    }

    pub fn create(&self, principal: Principal) -> String {
        let mut raw = [0u8; 32];
        rand::rng().fill_bytes(&mut raw);
        let token = hex::encode(raw);
        let mut table = self.table.lock().unwrap_or_else(|e| e.into_inner());
        table.insert(token.clone(), Session { principal, last_seen: Instant::now() });
        token
    }

    /// Resolves a token and refreshes its idle timer.
    pub fn resolve(&self, token: &str) -> Result<Principal, ApiError> {
        self.resolve_at(token, Instant::now())
    }

    pub(crate) fn resolve_at(&self, token: &str, now: Instant) -> Result<Principal, ApiError> {
        let mut table = self.table.lock().unwrap_or_else(|e| e.into_inner());
        let session = table.get_mut(token).ok_or(ApiError::Unauthenticated)?;
        if now.saturating_duration_since(session.last_seen) > self.ttl {
            table.remove(token);
            return Err(ApiError::ExpiredToken);
        }
        session.last_seen = now;
        Ok(session.principal.clone())
    }

    pub fn revoke(&self, token: &str) {
        self.table.lock().unwrap_or_else(|e| e.into_inner()).remove(token);
    }

    /// Drops every idle session.
    pub fn sweep(&self) {
        let now = Instant::now();
        self.table
            .lock()
            .unwrap_or_else(|e| e.into_inner())
            .retain(|_, s| now.saturating_duration_since(s.last_seen) <= self.ttl);
    }
}
