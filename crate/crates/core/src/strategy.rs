//! Codebreaker and codemaker heuristics.
//!
//! The codebreaker side is the one-step minimax heuristic: pick the guess
//! whose worst rating leaves the fewest candidates. The codemaker side is the
//! adaptive opponent that never commits to a secret and answers each guess
//! with the rating that keeps the most candidates alive.

use rayon::prelude::*;

use crate::code::{self, Code, Color, Query, Rating, Variant};
use crate::counting::{enumerate_solutions, Budget, Instance};
use crate::error::{Error, Result};

/// Transcript of a game: shape plus the queries played so far.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlayHistory {
    instance: Instance,
}

impl PlayHistory {
    pub fn new(n: usize, colors: u32, variant: Variant) -> Result<Self> {
        Ok(PlayHistory {
            instance: Instance::empty(n, colors, variant)?,
        })
    }

    pub fn push(&mut self, guess: Code, rating: Rating) -> Result<()> {
        self.instance.push(Query::new(guess, rating))
    }

    pub fn instance(&self) -> &Instance {
        &self.instance
    }

    pub fn n(&self) -> usize {
        self.instance.n()
    }

    pub fn colors(&self) -> u32 {
        self.instance.colors()
    }

    pub fn variant(&self) -> Variant {
        self.instance.variant()
    }

    pub fn queries(&self) -> &[Query] {
        self.instance.queries()
    }

    /// Codes consistent with every query, in lexicographic order.
    pub fn candidates(&self, budget: Budget) -> Result<Vec<Code>> {
        Ok(enumerate_solutions(&self.instance, usize::MAX, budget)?.solutions)
    }
}

impl From<Instance> for PlayHistory {
    fn from(instance: Instance) -> Self {
        PlayHistory { instance }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Suggestion {
    pub guess: Code,
    /// Largest number of candidates any rating of `guess` can leave.
    pub worst_case: usize,
}

/// Size of the largest class when `candidates` are grouped by their rating against `guess`.
pub fn worst_case_partition(guess: &Code, candidates: &[Code], variant: Variant) -> Result<usize> {
    if candidates.is_empty() {
        return Err(Error::EmptyCandidates);
    }
    for c in candidates {
        guess.check_compatible(c)?;
    }
    let mut counts = vec![0usize; Rating::slot_count(variant, guess.len())];
    Ok(worst_case_into(&mut counts, guess, candidates, variant))
}

fn worst_case_into(
    counts: &mut [usize],
    guess: &Code,
    candidates: &[Code],
    variant: Variant,
) -> usize {
    counts.fill(0);
    let n = guess.len();
    for c in candidates {
        counts[code::rate_unchecked(c, guess, variant).slot(n)] += 1;
    }
    counts.iter().copied().max().unwrap_or(0)
}

/// Minimax guess over the whole code space.
///
/// Ties prefer guesses that are themselves candidates, then the
/// lexicographically smallest code.
pub fn suggest_guess(history: &PlayHistory, budget: Budget) -> Result<Suggestion> {
    let candidates = history.candidates(budget)?;
    match candidates.len() {
        0 => return Err(Error::Contradiction),
        1 => {
            return Ok(Suggestion {
                guess: candidates[0].clone(),
                worst_case: 1,
            })
        }
        _ => {}
    }
    let n = history.n();
    let colors = history.colors();
    let variant = history.variant();
    let space = (colors as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if !budget.admits(space) {
        return Err(Error::BudgetExceeded {
            required: space,
            budget: budget.0,
        });
    }
    let is_candidate = |g: &Code| match variant {
        Variant::White => candidates.binary_search(&g.canonical()).is_ok(),
        _ => candidates.binary_search(g).is_ok(),
    };
    let slots = Rating::slot_count(variant, n);
    let (worst_case, _, index) = (0..space as u64)
        .into_par_iter()
        .map_init(
            || vec![0usize; slots],
            |counts, index| {
                let guess = code_at(index, n, colors);
                let worst = worst_case_into(counts, &guess, &candidates, variant);
                (worst, !is_candidate(&guess), index)
            },
        )
        .min()
        .expect("code space is nonempty");
    Ok(Suggestion {
        guess: code_at(index, n, colors),
        worst_case,
    })
}

/// The `index`-th code of the space in lexicographic order.
fn code_at(mut index: u64, n: usize, colors: u32) -> Code {
    let mut pegs = vec![0 as Color; n];
    for p in pegs.iter_mut().rev() {
        *p = (index % colors as u64) as Color;
        index /= colors as u64;
    }
    Code::from_parts_unchecked(pegs, colors)
}

/// Rating an adaptive codemaker gives to `guess`: the one leaving the most
/// candidates, smallest rating on ties.
pub fn adaptive_rating(history: &PlayHistory, guess: &Code, budget: Budget) -> Result<Rating> {
    history.instance().check_code(guess)?;
    let candidates = history.candidates(budget)?;
    if candidates.is_empty() {
        return Err(Error::Contradiction);
    }
    let n = history.n();
    let variant = history.variant();
    let mut counts = vec![0usize; Rating::slot_count(variant, n)];
    for c in &candidates {
        counts[code::rate_unchecked(c, guess, variant).slot(n)] += 1;
    }
    let (rating, _) = counts
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(slot, &k)| (Rating::from_slot(slot, variant, n), k))
        .max_by(|(ra, ka), (rb, kb)| ka.cmp(kb).then(rb.cmp(ra)))
        .expect("at least one candidate");
    Ok(rating)
}

/// Guess-count bound `ceil(2n log2 c + 4n + ceil(c/n))`.
pub fn chvatal_bound(n: usize, colors: u32) -> u64 {
    let n_f = n as f64;
    let c = colors as u64;
    let ratio = c.div_ceil(n as u64) as f64;
    (2.0 * n_f * (colors as f64).log2() + 4.0 * n_f + ratio).ceil() as u64
}
