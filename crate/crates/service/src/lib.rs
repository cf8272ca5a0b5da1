//! HTTP engine for playing occupation games against an optimal opponent.
//!
//! Sessions live in memory. See `docs/api.md` for the request and response
//! shapes.

pub mod error;
pub mod http;
pub mod session;
pub mod store;
pub mod wire;

pub use error::ServiceError;
pub use http::{router, serve};
pub use session::{Limits, Session};
pub use store::{SessionStore, DEFAULT_IDLE_TTL};
