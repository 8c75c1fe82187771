//! `coalform`: command-line front end for coalition structure formation games.
//!
//! Exit codes: 0 success, 2 usage or parse error, 3 resource limit,
//! 4 analysis precondition failure.

mod commands;

use clap::{Args, Parser, Subcommand, ValueEnum};
use coalition_core::rational::{parse_rational, Rational};
use coalition_core::Error;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "coalform",
    version,
    about = "Coalition structure formation games Γ(K)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the partitions with blocks of at most K players.
    Partitions {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Find equilibria of Γ(K) and verify a candidate profile.
    Solve(SolveArgs),
    /// Check complete cooperation of a coalition under an equilibrium.
    Cooperate(CooperateArgs),
    /// Largest K for which a base equilibrium stays stable.
    Stability(StabilityArgs),
    /// Sample a trajectory of realized partitions.
    Simulate(SimulateArgs),
    /// Characteristic function, core and Shapley value.
    CoopTheory(CoopTheoryArgs),
    /// Print a built-in game spec or one of its candidate profiles as JSON.
    Fixture(FixtureArgs),
}

#[derive(Args, Clone)]
pub struct SourceArgs {
    /// Built-in game: dinner, lunch, bos, staghare.
    #[arg(long, conflicts_with = "spec", required_unless_present = "spec")]
    pub fixture: Option<String>,
    /// Game spec JSON file.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Args, Clone, Default)]
pub struct ParamArgs {
    /// BoS togetherness bonus, e.g. 1/10.
    #[arg(long, value_parser = rational_arg)]
    pub epsilon: Option<Rational>,
    /// BoS payoff when together at different venues.
    #[arg(long, value_enum)]
    pub miscoordination: Option<Miscoordination>,
    /// Lunch payoff for two-pair partitions.
    #[arg(long, value_parser = rational_arg)]
    pub two_pair: Option<Rational>,
}

#[derive(Copy, Clone, ValueEnum)]
pub enum Miscoordination {
    Epsilon,
    Zero,
}

#[derive(Args, Clone)]
pub struct ProfileArgs {
    /// Candidate profile JSON file.
    #[arg(long, conflicts_with = "profile")]
    pub candidate: Option<PathBuf>,
    /// Named candidate profile of the fixture.
    #[arg(long)]
    pub profile: Option<String>,
}

#[derive(Args, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long)]
    pub k: usize,
    /// Solve on one representative per outcome class.
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    pub reduce: bool,
    /// Iteratively remove weakly dominated strategies first.
    #[arg(long)]
    pub eliminate_dominated: bool,
    /// Check every pure equilibrium for profitable coalition deviations.
    #[arg(long)]
    pub strong: bool,
    /// Keep only the pure equilibria that pass the strong-Nash check.
    #[arg(long)]
    pub strong_only: bool,
    /// Largest support size tried by two-player support enumeration.
    #[arg(long, default_value_t = coalition_core::equilibrium::DEFAULT_MAX_SUPPORT)]
    pub max_support: usize,
    #[arg(long, value_parser = rational_arg, default_value = "0")]
    pub tolerance: Rational,
    #[command(flatten)]
    pub profile: ProfileArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args)]
pub struct CooperateArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Defaults to the K the candidate profile was written for.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub coalition: String,
    #[arg(long, value_parser = rational_arg, default_value = "0")]
    pub tolerance: Rational,
    #[command(flatten)]
    pub profile: ProfileArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args)]
pub struct StabilityArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long)]
    pub k0: usize,
    #[arg(long, value_enum, default_value = "forall")]
    pub policy: PolicyArg,
    #[command(flatten)]
    pub profile: ProfileArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Copy, Clone, ValueEnum)]
pub enum PolicyArg {
    Forall,
    Exists,
}

#[derive(Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = 100_000)]
    pub steps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of leading states to print.
    #[arg(long, default_value_t = 20)]
    pub head: usize,
    #[command(flatten)]
    pub profile: ProfileArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args)]
pub struct CoopTheoryArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, value_enum, default_value = "optimistic")]
    pub convention: ConventionArg,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Copy, Clone, ValueEnum)]
pub enum ConventionArg {
    Optimistic,
    Pessimistic,
}

#[derive(Args)]
pub struct FixtureArgs {
    /// Fixture name; omit with --list.
    #[arg(required_unless_present = "list")]
    pub name: Option<String>,
    /// Print this candidate profile instead of the spec.
    #[arg(long)]
    pub profile: Option<String>,
    /// List fixtures and their candidate profiles.
    #[arg(long)]
    pub list: bool,
    #[command(flatten)]
    pub params: ParamArgs,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("\"{s}\" is not a rational number (use p/q)"))
}

/// What a command produced: output text and the exit code to use.
pub struct Outcome {
    pub text: String,
    pub code: u8,
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Resource(_) => 3,
        Error::Precondition(_) => 4,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Partitions { source, k, out } => commands::partitions(&source, k, out.format),
        Command::Solve(a) => commands::solve(&a),
        Command::Cooperate(a) => commands::cooperate(&a),
        Command::Stability(a) => commands::stability(&a),
        Command::Simulate(a) => commands::simulate(&a),
        Command::CoopTheory(a) => commands::coop_theory(&a),
        Command::Fixture(a) => commands::fixture(&a),
    };
    match result {
        Ok(outcome) => {
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let mut out = std::io::stdout().lock();
            let _ = out
                .write_all(outcome.text.as_bytes())
                .and_then(|_| out.flush());
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
