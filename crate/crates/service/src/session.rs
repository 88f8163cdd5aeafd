//! A single game: shape, mode, optional hidden secret, and the transcript.

use std::fmt;
use std::str::FromStr;

use mastermind_core::{
    adaptive_rating, count_solutions, rate, search_space_size, Budget, Code, Color, Instance,
    PlayHistory, Rating, RatingDoc, Variant,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{ServiceError, ServiceResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shape {
    pub n: usize,
    pub c: u32,
    pub variant: Variant,
}

impl Shape {
    fn empty_instance(&self) -> ServiceResult<Instance> {
        Ok(Instance::empty(self.n, self.c, self.variant)?)
    }
}

/// Who produces the ratings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// The engine draws a secret from the seed and rates honestly.
    EngineSecret,
    /// The engine keeps no secret and answers to keep the most candidates.
    EngineAdaptive,
    /// Ratings come from the caller; the session only tracks candidates.
    ExternalAssistant,
}

impl Mode {
    pub const ALL: [Mode; 3] = [
        Mode::EngineSecret,
        Mode::EngineAdaptive,
        Mode::ExternalAssistant,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::EngineSecret => "engine-secret",
            Mode::EngineAdaptive => "engine-adaptive",
            Mode::ExternalAssistant => "external-assistant",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Mode::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown mode {s:?}, expected engine-secret, engine-adaptive or external-assistant"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    InProgress,
    Solved,
    Contradicted,
}

/// One row of the transcript.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Turn {
    pub turn: u64,
    pub guess: Vec<Color>,
    pub rating: RatingDoc,
    /// Candidates left after this turn.
    pub remaining: u64,
}

/// Serializable form of a whole session, also used as the journal entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionRecord {
    pub id: String,
    pub shape: Shape,
    pub mode: Mode,
    pub seed: Option<u64>,
    pub secret: Option<Vec<Color>>,
    pub status: Status,
    pub remaining: u64,
    pub history: Vec<Turn>,
}

/// What clients get to see. Secret and seed stay hidden until the game ends.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SessionView {
    pub id: String,
    pub shape: Shape,
    pub mode: Mode,
    pub status: Status,
    /// Number of guesses applied so far; increases by one per accepted guess.
    pub turn: u64,
    pub remaining: u64,
    pub history: Vec<Turn>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub secret: Option<Vec<Color>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameSession {
    id: String,
    shape: Shape,
    mode: Mode,
    seed: Option<u64>,
    secret: Option<Code>,
    history: PlayHistory,
    turns: Vec<Turn>,
    status: Status,
    remaining: u64,
}

impl GameSession {
    /// Starts a game. A missing seed is drawn from the thread RNG.
    pub fn new(
        id: String,
        shape: Shape,
        mode: Mode,
        seed: Option<u64>,
        budget: Budget,
    ) -> ServiceResult<Self> {
        let inst = shape.empty_instance()?;
        let space = search_space_size(&inst);
        if !budget.admits(space) {
            return Err(mastermind_core::Error::BudgetExceeded {
                required: space,
                budget: budget.0,
            }
            .into());
        }
        let (seed, secret) = match mode {
            Mode::EngineSecret => {
                let seed = seed.unwrap_or_else(|| rand::rng().random());
                (Some(seed), Some(draw_secret(&shape, seed)))
            }
            _ => (None, None),
        };
        Ok(GameSession {
            id,
            shape,
            mode,
            seed,
            secret,
            history: PlayHistory::from(inst),
            turns: Vec::new(),
            status: Status::InProgress,
            remaining: space as u64,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn remaining(&self) -> u64 {
        self.remaining
    }

    pub fn history(&self) -> &PlayHistory {
        &self.history
    }

    pub fn turns(&self) -> &[Turn] {
        &self.turns
    }

    pub fn secret(&self) -> Option<&Code> {
        self.secret.as_ref()
    }

    /// Plays one guess. `rating` is required in external-assistant mode and
    /// refused otherwise.
    pub fn submit(
        &mut self,
        guess: Vec<Color>,
        rating: Option<RatingDoc>,
        budget: Budget,
    ) -> ServiceResult<Rating> {
        if self.status != Status::InProgress {
            return Err(ServiceError::Finished(self.id.clone()));
        }
        let guess = self.history.instance().code(guess)?;
        let variant = self.shape.variant;
        let rating = match (self.mode, rating) {
            (Mode::ExternalAssistant, Some(doc)) => doc.into_rating(variant)?,
            (Mode::ExternalAssistant, None) => {
                return Err(ServiceError::Validation(
                    "external-assistant mode needs a rating with every guess".into(),
                ))
            }
            (_, Some(_)) => {
                return Err(ServiceError::Validation(format!(
                    "{} mode computes ratings itself; omit the rating",
                    self.mode
                )))
            }
            (Mode::EngineSecret, None) => {
                let secret = self
                    .secret
                    .as_ref()
                    .expect("engine-secret sessions hold a secret");
                rate(secret, &guess, variant)?
            }
            (Mode::EngineAdaptive, None) => adaptive_rating(&self.history, &guess, budget)?,
        };

        let mut next = self.history.clone();
        next.push(guess.clone(), rating)?;
        let remaining = count_solutions(next.instance(), budget)?;

        self.history = next;
        self.remaining = remaining;
        self.turns.push(Turn {
            turn: self.turns.len() as u64 + 1,
            guess: guess.into_pegs(),
            rating: rating.into(),
            remaining,
        });
        self.status = if rating == Rating::maximal(variant, self.shape.n) {
            Status::Solved
        } else if remaining == 0 {
            Status::Contradicted
        } else {
            Status::InProgress
        };
        Ok(rating)
    }

    pub fn view(&self) -> SessionView {
        let finished = self.status != Status::InProgress;
        SessionView {
            id: self.id.clone(),
            shape: self.shape,
            mode: self.mode,
            status: self.status,
            turn: self.turns.len() as u64,
            remaining: self.remaining,
            history: self.turns.clone(),
            secret: self
                .secret
                .as_ref()
                .filter(|_| finished)
                .map(|s| s.pegs().to_vec()),
            seed: self.seed.filter(|_| finished),
        }
    }

    pub fn record(&self) -> SessionRecord {
        SessionRecord {
            id: self.id.clone(),
            shape: self.shape,
            mode: self.mode,
            seed: self.seed,
            secret: self.secret.as_ref().map(|s| s.pegs().to_vec()),
            status: self.status,
            remaining: self.remaining,
            history: self.turns.clone(),
        }
    }

    /// Rebuilds a session from its record without recounting.
    pub fn from_record(record: SessionRecord) -> ServiceResult<Self> {
        let mut history = PlayHistory::from(record.shape.empty_instance()?);
        for t in &record.history {
            let guess = history.instance().code(t.guess.clone())?;
            history.push(guess, t.rating.into_rating(record.shape.variant)?)?;
        }
        let secret = match record.secret {
            Some(pegs) => Some(Code::new(pegs, record.shape.c)?),
            None => None,
        };
        Ok(GameSession {
            id: record.id,
            shape: record.shape,
            mode: record.mode,
            seed: record.seed,
            secret,
            history,
            turns: record.history,
            status: record.status,
            remaining: record.remaining,
        })
    }
}

/// Secret determined by the shape and seed alone.
pub fn draw_secret(shape: &Shape, seed: u64) -> Code {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pegs = (0..shape.n).map(|_| rng.random_range(0..shape.c)).collect();
    Code::new(pegs, shape.c).expect("drawn colors are in range")
}

/// Fresh 128-bit session id in hex.
pub fn new_session_id() -> String {
    format!("{:032x}", rand::rng().random::<u128>())
}
