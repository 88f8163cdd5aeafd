//! In-memory session table with an optional append-only journal.
//!
//! The journal holds one JSON session record per line, written after every
//! state change. Replaying keeps the last record seen for each id.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::sync::Arc;

use mastermind_core::{Budget, Color, Rating, RatingDoc};
use parking_lot::{Mutex, RwLock};

use crate::error::{ServiceError, ServiceResult};
use crate::session::{new_session_id, GameSession, Mode, SessionRecord, SessionView, Shape};

pub struct SessionStore {
    sessions: RwLock<HashMap<String, Arc<Mutex<GameSession>>>>,
    journal: Option<Mutex<File>>,
    budget: Budget,
}

impl SessionStore {
    pub fn in_memory(budget: Budget) -> Self {
        SessionStore {
            sessions: RwLock::new(HashMap::new()),
            journal: None,
            budget,
        }
    }

    /// Opens (or creates) a journal, replaying any sessions it already holds.
    pub fn with_journal(path: impl AsRef<Path>, budget: Budget) -> ServiceResult<Self> {
        let path = path.as_ref();
        let mut sessions = HashMap::new();
        if path.exists() {
            for record in read_journal(path)? {
                let session = GameSession::from_record(record)?;
                sessions.insert(session.id().to_string(), Arc::new(Mutex::new(session)));
            }
        }
        if path.exists() {
            drop_torn_tail(path)?;
        }
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        tracing::info!(path = %path.display(), sessions = sessions.len(), "journal opened");
        Ok(SessionStore {
            sessions: RwLock::new(sessions),
            journal: Some(Mutex::new(file)),
            budget,
        })
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    pub fn len(&self) -> usize {
        self.sessions.read().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn create(
        &self,
        shape: Shape,
        mode: Mode,
        seed: Option<u64>,
    ) -> ServiceResult<SessionView> {
        let session = GameSession::new(new_session_id(), shape, mode, seed, self.budget)?;
        self.append(&session)?;
        let view = session.view();
        self.sessions
            .write()
            .insert(view.id.clone(), Arc::new(Mutex::new(session)));
        Ok(view)
    }

    /// Applies a guess. Mutations of one session are serialized by its lock;
    /// other sessions proceed concurrently.
    pub fn submit(
        &self,
        id: &str,
        guess: Vec<Color>,
        rating: Option<RatingDoc>,
    ) -> ServiceResult<(Rating, SessionView)> {
        let entry = self.entry(id)?;
        let mut session = entry.lock();
        let mut next = session.clone();
        let rating = next.submit(guess, rating, self.budget)?;
        self.append(&next)?;
        *session = next;
        Ok((rating, session.view()))
    }

    pub fn view(&self, id: &str) -> ServiceResult<SessionView> {
        Ok(self.entry(id)?.lock().view())
    }

    /// Full record including the secret; for local tools, never served over HTTP.
    pub fn record(&self, id: &str) -> ServiceResult<SessionRecord> {
        Ok(self.entry(id)?.lock().record())
    }

    fn entry(&self, id: &str) -> ServiceResult<Arc<Mutex<GameSession>>> {
        self.sessions
            .read()
            .get(id)
            .cloned()
            .ok_or_else(|| ServiceError::NotFound(id.to_string()))
    }

    fn append(&self, session: &GameSession) -> ServiceResult<()> {
        if let Some(journal) = &self.journal {
            let mut line = serde_json::to_string(&session.record()).expect("records serialize");
            line.push('\n');
            let mut file = journal.lock();
            file.write_all(line.as_bytes())?;
            file.flush()?;
        }
        Ok(())
    }
}

/// Reads journal records in order. A torn final line from an interrupted
/// write is skipped; corruption anywhere else is an error.
pub fn read_journal(path: &Path) -> ServiceResult<Vec<SessionRecord>> {
    let reader = BufReader::new(File::open(path)?);
    let lines: Vec<String> = reader.lines().collect::<Result<_, _>>()?;
    let mut records = Vec::new();
    for (i, line) in lines.iter().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str(line) {
            Ok(r) => records.push(r),
            Err(e) if i + 1 == lines.len() => {
                tracing::warn!(line = i + 1, error = %e, "skipping torn journal line");
            }
            Err(e) => {
                return Err(ServiceError::Validation(format!(
                    "journal line {}: {e}",
                    i + 1
                )))
            }
        }
    }
    Ok(records)
}

/// Truncates the file after its last newline so new records start on a fresh line.
fn drop_torn_tail(path: &Path) -> std::io::Result<()> {
    let bytes = std::fs::read(path)?;
    let keep = bytes.iter().rposition(|&b| b == b'\n').map_or(0, |i| i + 1);
    if keep < bytes.len() {
        OpenOptions::new()
            .write(true)
            .open(path)?
            .set_len(keep as u64)?;
    }
    Ok(())
}
