//! Line-oriented play loop.

use std::io::{BufRead, Write};

use mastermind_core::{parse_pegs, suggest_guess, Budget, Rating};
use mastermind_service::{GameSession, Mode, ServiceError, Shape, Status};

use crate::{emit, CliError, CliResult};

pub fn run(
    shape: Shape,
    mode: Mode,
    seed: Option<u64>,
    budget: Budget,
    input: &mut impl BufRead,
    out: &mut impl Write,
) -> CliResult {
    let mut game = GameSession::new("local".into(), shape, mode, seed, budget)?;
    emit(
        out,
        format_args!(
            "{} game, n={} c={}, {} mode: {} possible codes",
            shape.variant,
            shape.n,
            shape.c,
            mode,
            game.remaining()
        ),
    )?;
    let hint = match mode {
        Mode::ExternalAssistant => {
            "enter a guess and its rating (e.g. 0,1,2,3 1,3), 'suggest' or 'quit'"
        }
        _ => "enter a guess (e.g. 0,1,2,3), 'suggest' or 'quit'",
    };
    emit(out, format_args!("{hint}"))?;

    let mut line = String::new();
    loop {
        write!(out, "> ")
            .and_then(|_| out.flush())
            .map_err(io_error)?;
        line.clear();
        if input.read_line(&mut line).map_err(io_error)? == 0 {
            return emit(out, format_args!(""));
        }
        let line = line.trim();
        match line {
            "" => continue,
            "quit" | "q" => return Ok(()),
            "suggest" => {
                match suggest_guess(game.history(), budget) {
                    Ok(s) => emit(
                        out,
                        format_args!("try {} (worst case {} left)", s.guess, s.worst_case),
                    )?,
                    Err(e) => emit(out, format_args!("error: {e}"))?,
                }
                continue;
            }
            _ => {}
        }
        if let Err(e) = turn(&mut game, line, budget, out) {
            match e {
                ServiceError::Journal(_) => return Err(e.into()),
                _ => emit(out, format_args!("error: {e}"))?,
            }
            continue;
        }
        match game.status() {
            Status::InProgress => {}
            Status::Solved => {
                let k = game.turns().len();
                let noun = if k == 1 { "guess" } else { "guesses" };
                emit(out, format_args!("solved in {k} {noun}"))?;
                return Ok(());
            }
            Status::Contradicted => {
                emit(
                    out,
                    format_args!("contradicted: no code fits these ratings"),
                )?;
                return Ok(());
            }
        }
    }
}

fn turn(
    game: &mut GameSession,
    line: &str,
    budget: Budget,
    out: &mut impl Write,
) -> Result<(), ServiceError> {
    let (guess, rating) = match line.split_once(char::is_whitespace) {
        Some((g, r)) => (g, Some(r.trim())),
        None => (line, None),
    };
    let pegs = parse_pegs(guess)?;
    let rating = match rating {
        Some(text) => Some(Rating::parse(text, game.shape().variant)?.into()),
        None => None,
    };
    let rating = game.submit(pegs, rating, budget)?;
    let t = game.turns().last().expect("turn was recorded");
    let _ = emit(
        out,
        format_args!(
            "turn {}: {} -> {}, {} left",
            t.turn, guess, rating, t.remaining
        ),
    );
    Ok(())
}

fn io_error(e: std::io::Error) -> CliError {
    CliError::Invalid(e.to_string())
}
