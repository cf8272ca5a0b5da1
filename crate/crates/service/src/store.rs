use std::collections::HashMap;
use std::sync::{Arc, Mutex, MutexGuard};
use std::time::{Duration, Instant};

use crate::error::ServiceError;
use crate::session::{Limits, Session};
use crate::wire::CreateRequest;

pub const DEFAULT_IDLE_TTL: Duration = Duration::from_secs(60 * 60);

#[derive(Debug)]
struct Slot {
    session: Session,
    touched: Instant,
}

/// In-memory session table. Each session has its own lock so that slow
/// solves on one game do not block requests for another.
#[derive(Debug)]
pub struct SessionStore {
    sessions: Mutex<HashMap<String, Arc<Mutex<Slot>>>>,
    limits: Limits,
    idle_ttl: Duration,
}

impl Default for SessionStore {
    fn default() -> Self {
        SessionStore::new(Limits::default(), DEFAULT_IDLE_TTL)
    }
}

fn lock<T>(m: &Mutex<T>) -> MutexGuard<'_, T> {
    m.lock().unwrap_or_else(|poisoned| poisoned.into_inner())
}

impl SessionStore {
    pub fn new(limits: Limits, idle_ttl: Duration) -> Self {
        SessionStore {
            sessions: Mutex::new(HashMap::new()),
            limits,
            idle_ttl,
        }
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn len(&self) -> usize {
        lock(&self.sessions).len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn create(&self, request: &CreateRequest) -> Result<Session, ServiceError> {
        let id = uuid::Uuid::new_v4().to_string();
        let session = Session::create(id.clone(), request, &self.limits)?;
        let slot = Slot {
            session: session.clone(),
            touched: Instant::now(),
        };
        lock(&self.sessions).insert(id, Arc::new(Mutex::new(slot)));
        Ok(session)
    }

    fn slot(&self, id: &str) -> Result<Arc<Mutex<Slot>>, ServiceError> {
        lock(&self.sessions)
            .get(id)
            .cloned()
            .ok_or_else(|| ServiceError::UnknownSession(id.to_string()))
    }

    /// Runs `f` on the session under its lock and refreshes its idle timer.
    pub fn with_session<R>(
        &self,
        id: &str,
        f: impl FnOnce(&mut Session) -> Result<R, ServiceError>,
    ) -> Result<R, ServiceError> {
        let slot = self.slot(id)?;
        let mut slot = lock(&slot);
        slot.touched = Instant::now();
        f(&mut slot.session)
    }

    pub fn get(&self, id: &str) -> Result<Session, ServiceError> {
        self.with_session(id, |s| Ok(s.clone()))
    }

    pub fn remove(&self, id: &str) -> Result<(), ServiceError> {
        lock(&self.sessions)
            .remove(id)
            .map(|_| ())
            .ok_or_else(|| ServiceError::UnknownSession(id.to_string()))
    }

    /// Drops sessions idle for longer than the TTL as of `now`; returns how
    /// many were removed.
    pub fn expire_idle(&self, now: Instant) -> usize {
        let mut sessions = lock(&self.sessions);
        let before = sessions.len();
        sessions.retain(|_, slot| {
            // A session locked by a request in flight is in use.
            match slot.try_lock() {
                Ok(s) => now.saturating_duration_since(s.touched) <= self.idle_ttl,
                Err(_) => true,
            }
        });
        before - sessions.len()
    }
}
