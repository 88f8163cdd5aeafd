//! `mastermind`: rate codes, count and list solutions, run the #3-SAT
//! reductions, suggest guesses, serve the HTTP API and play in the terminal.
//!
//! Exit status: 0 on success, 1 on invalid input, 2 when the enumeration
//! budget is exceeded, 3 when `verify` finds a count mismatch.

mod play;

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::net::{IpAddr, Ipv4Addr, SocketAddr};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use mastermind_core::{
    chvatal_bound, count_sat, count_solutions, enumerate_solutions, parse_dimacs, parse_pegs, rate,
    suggest_guess, Budget, Code, Instance, PlayHistory, ReductionTarget, Variant,
};
use mastermind_service::{Mode, SessionStore, Shape};

#[derive(Parser)]
#[command(
    name = "mastermind",
    version,
    about = "Mastermind solution counting, strategy and #3-SAT reductions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rate a guess against a secret.
    Rate {
        #[arg(long, default_value = "full")]
        variant: Variant,
        /// Comma-separated pegs, e.g. 0,1,2,3.
        #[arg(long)]
        secret: String,
        #[arg(long)]
        guess: String,
        /// Number of colors; defaults to one more than the largest peg.
        #[arg(long)]
        colors: Option<u32>,
    },
    /// Count the codes consistent with an instance file.
    Count {
        instance: PathBuf,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// List the codes consistent with an instance file.
    Enumerate {
        instance: PathBuf,
        #[arg(long, default_value_t = 100)]
        limit: usize,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Reduce a DIMACS 3-CNF formula to a Mastermind instance.
    Reduce {
        dimacs: PathBuf,
        #[arg(long)]
        target: ReductionTarget,
        /// Where to write the instance document.
        #[arg(long, requires = "layout")]
        instance: Option<PathBuf>,
        /// Where to write the layout document.
        #[arg(long, requires = "instance")]
        layout: Option<PathBuf>,
    },
    /// Check that every reduction preserves the model count of a formula.
    Verify {
        dimacs: PathBuf,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Minimax guess for an instance file.
    Suggest {
        instance: PathBuf,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Guess-count bound ceil(2n log2 c + 4n + ceil(c/n)).
    Bound {
        #[arg(short, long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(short, long, value_parser = clap::value_parser!(u32).range(1..))]
        c: u32,
    },
    /// Run the HTTP service.
    Serve {
        #[arg(long, env = "MASTERMIND_PORT", default_value_t = 7878)]
        port: u16,
        #[arg(long, env = "MASTERMIND_BIND", default_value_t = IpAddr::V4(Ipv4Addr::LOCALHOST))]
        bind: IpAddr,
        /// Append-only session journal, replayed on start.
        #[arg(long, env = "MASTERMIND_JOURNAL")]
        journal: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Play a game in the terminal.
    Play {
        #[arg(short, long, default_value_t = 4)]
        n: usize,
        #[arg(short, long, default_value_t = 6)]
        c: u32,
        #[arg(long, default_value = "full")]
        variant: Variant,
        #[arg(long, default_value = "engine-secret")]
        mode: Mode,
        /// Seed for the engine's secret; random when omitted.
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        budget: BudgetArg,
    },
}

#[derive(Args, Clone, Copy)]
struct BudgetArg {
    /// Largest search space to enumerate (exclusive).
    #[arg(long, default_value_t = Budget::DEFAULT.0)]
    budget: u64,
}

impl BudgetArg {
    fn get(self) -> Budget {
        Budget(self.budget)
    }
}

#[derive(Debug)]
enum CliError {
    Invalid(String),
    Budget(String),
    VerifyFailed,
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 1,
            CliError::Budget(_) => 2,
            CliError::VerifyFailed => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(m) | CliError::Budget(m) => f.write_str(m),
            CliError::VerifyFailed => f.write_str("verification failed"),
        }
    }
}

impl From<mastermind_core::Error> for CliError {
    fn from(e: mastermind_core::Error) -> Self {
        match e {
            mastermind_core::Error::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<mastermind_service::ServiceError> for CliError {
    fn from(e: mastermind_service::ServiceError) -> Self {
        match e {
            mastermind_service::ServiceError::Core(core) => core.into(),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

type CliResult<T = ()> = Result<T, CliError>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli.command, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = out.flush();
            if !matches!(e, CliError::VerifyFailed) {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command, out: &mut impl Write) -> CliResult {
    match command {
        Command::Rate {
            variant,
            secret,
            guess,
            colors,
        } => {
            let secret = parse_pegs(&secret)?;
            let guess = parse_pegs(&guess)?;
            let colors = colors.unwrap_or_else(|| {
                secret
                    .iter()
                    .chain(&guess)
                    .copied()
                    .max()
                    .map_or(1, |m| m + 1)
            });
            let rating = rate(
                &Code::new(secret, colors)?,
                &Code::new(guess, colors)?,
                variant,
            )?;
            emit(out, format_args!("{rating}"))
        }
        Command::Count { instance, budget } => {
            let inst = read_instance(&instance)?;
            emit(
                out,
                format_args!("{}", count_solutions(&inst, budget.get())?),
            )
        }
        Command::Enumerate {
            instance,
            limit,
            budget,
        } => {
            let inst = read_instance(&instance)?;
            let set = enumerate_solutions(&inst, limit, budget.get())?;
            for code in &set.solutions {
                emit(out, format_args!("{code}"))?;
            }
            if set.truncated {
                emit(
                    out,
                    format_args!("count: {} (first {} shown)", set.count, set.solutions.len()),
                )
            } else {
                emit(out, format_args!("count: {}", set.count))
            }
        }
        Command::Reduce {
            dimacs,
            target,
            instance,
            layout,
        } => {
            let formula = parse_dimacs(&read_text(&dimacs)?)?;
            let (inst, lay) = target.reduce(&formula)?;
            match (instance, layout) {
                (Some(ip), Some(lp)) => {
                    write_json(&ip, &inst)?;
                    write_json(&lp, &lay)?;
                    emit(
                        out,
                        format_args!(
                            "{target}: n={} c={} queries={} -> {}, {}",
                            inst.n(),
                            inst.colors(),
                            inst.queries().len(),
                            ip.display(),
                            lp.display()
                        ),
                    )
                }
                _ => {
                    let doc = serde_json::json!({ "instance": inst, "layout": lay });
                    emit(
                        out,
                        format_args!("{}", serde_json::to_string_pretty(&doc).unwrap()),
                    )
                }
            }
        }
        Command::Verify { dimacs, budget } => verify(&dimacs, budget.get(), out),
        Command::Suggest { instance, budget } => {
            let inst = read_instance(&instance)?;
            let s = suggest_guess(&PlayHistory::from(inst), budget.get())?;
            emit(
                out,
                format_args!("guess {} worst-case {}", s.guess, s.worst_case),
            )
        }
        Command::Bound { n, c } => emit(out, format_args!("{}", chvatal_bound(n as usize, c))),
        Command::Serve {
            port,
            bind,
            journal,
            budget,
        } => serve(SocketAddr::new(bind, port), journal, budget.get()),
        Command::Play {
            n,
            c,
            variant,
            mode,
            seed,
            budget,
        } => {
            let shape = Shape { n, c, variant };
            let stdin = io::stdin();
            play::run(shape, mode, seed, budget.get(), &mut stdin.lock(), out)
        }
    }
}

fn verify(path: &Path, budget: Budget, out: &mut impl Write) -> CliResult {
    let formula = parse_dimacs(&read_text(path)?)?;
    let expected = match count_sat(&formula) {
        Ok(k) => k,
        Err(mastermind_core::Error::BudgetExceeded { .. }) => {
            for target in ReductionTarget::ALL {
                emit(
                    out,
                    format_args!("{target}: SKIP (too many variables to count models)"),
                )?;
            }
            return Ok(());
        }
        Err(e) => return Err(e.into()),
    };
    let mut failed = false;
    for target in ReductionTarget::ALL {
        let (inst, _) = target.reduce(&formula)?;
        match count_solutions(&inst, budget) {
            Ok(k) if k == expected => emit(out, format_args!("{target}: {k}={expected} PASS"))?,
            Ok(k) => {
                failed = true;
                emit(out, format_args!("{target}: {k}={expected} FAIL"))?
            }
            Err(mastermind_core::Error::BudgetExceeded { required, .. }) => emit(
                out,
                format_args!("{target}: SKIP (search space {required} exceeds budget)"),
            )?,
            Err(e) => return Err(e.into()),
        }
    }
    if failed {
        Err(CliError::VerifyFailed)
    } else {
        Ok(())
    }
}

fn serve(addr: SocketAddr, journal: Option<PathBuf>, budget: Budget) -> CliResult {
    tracing_subscriber::fmt()
        .with_env_filter(
            tracing_subscriber::EnvFilter::try_from_default_env()
                .unwrap_or_else(|_| tracing_subscriber::EnvFilter::new("info")),
        )
        .with_writer(io::stderr)
        .init();
    let store = match journal {
        Some(path) => SessionStore::with_journal(path, budget)?,
        None => SessionStore::in_memory(budget),
    };
    let runtime = tokio::runtime::Runtime::new().map_err(|e| CliError::Invalid(e.to_string()))?;
    runtime
        .block_on(async {
            let listener = tokio::net::TcpListener::bind(addr).await?;
            mastermind_service::serve(listener, Arc::new(store)).await
        })
        .map_err(|e| CliError::Invalid(format!("{addr}: {e}")))
}

fn emit(out: &mut impl Write, line: fmt::Arguments<'_>) -> CliResult {
    writeln!(out, "{line}").map_err(|e| CliError::Invalid(e.to_string()))
}

fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
}

fn read_instance(path: &Path) -> CliResult<Instance> {
    serde_json::from_str(&read_text(path)?)
        .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
}

fn write_json(path: &Path, value: &impl serde::Serialize) -> CliResult {
    let mut text = serde_json::to_string_pretty(value).expect("documents serialize");
    text.push('\n');
    fs::write(path, text).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
}
