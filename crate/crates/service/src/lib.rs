//! Game sessions and a local HTTP API over `mastermind-core`.
//!
//! Sessions come in three modes: the engine holds a seeded secret, the engine
//! plays an adaptive codemaker, or the caller supplies ratings and the session
//! tracks the remaining candidates.

pub mod error;
pub mod http;
pub mod session;
pub mod store;

pub use error::{ServiceError, ServiceResult};
pub use http::{router, serve};
pub use session::{
    draw_secret, GameSession, Mode, SessionRecord, SessionView, Shape, Status, Turn,
};
pub use store::SessionStore;
