mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use srkit_core::Error;

use report::{Outcome, RunReport, Status};

#[derive(Parser, Debug)]
#[command(name = "srkit", version, about = "Superregular Toeplitz matrices and MDP convolutional codes")]
struct Cli {
    /// Print a JSON run report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for searches (falls back to SRKIT_THREADS, then 1).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Test whether a matrix file is superregular.
    Check(CheckArgs),
    /// Search one field for a superregular matrix, or count them.
    Search(SearchArgs),
    /// Smallest field order admitting a superregular matrix of a given dimension.
    Minfield(MinfieldArgs),
    /// Search GF(2^(G-2)) for a G x G superregular matrix.
    Conjecture(ConjectureArgs),
    /// Orbit of a matrix under the superregularity-preserving actions.
    Orbit(OrbitArgs),
    /// Field-size bound N_G + 1 from the minor count.
    Bound(BoundArgs),
    /// Build [I | T'] from a superregular matrix.
    ConstructMdp(ConstructArgs),
    /// j-th column distance of a polynomial generator or parity-check matrix.
    Coldist(ColdistArgs),
    /// Column distance profile and MDP verdict of a generator matrix.
    Certify(CertifyArgs),
    /// Binomial Toeplitz matrix reduced modulo a prime.
    Pascal(PascalArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Check(_) => "check",
            Command::Search(_) => "search",
            Command::Minfield(_) => "minfield",
            Command::Conjecture(_) => "conjecture",
            Command::Orbit(_) => "orbit",
            Command::Bound(_) => "bound",
            Command::ConstructMdp(_) => "construct-mdp",
            Command::Coldist(_) => "coldist",
            Command::Certify(_) => "certify",
            Command::Pascal(_) => "pascal",
        }
    }
}

#[derive(Args, Debug, Serialize)]
struct BudgetArgs {
    /// Time budget per search, in seconds.
    #[arg(long, default_value_t = 60.0)]
    budget: f64,
    /// Remove the time budget.
    #[arg(long)]
    extended: bool,
}

impl BudgetArgs {
    fn duration(&self) -> Result<Option<Duration>, Error> {
        if self.extended {
            return Ok(None);
        }
        Duration::try_from_secs_f64(self.budget)
            .map(Some)
            .map_err(|_| Error::InvalidConfig(format!("bad budget {}", self.budget)))
    }
}

#[derive(Args, Debug, Serialize)]
struct CheckArgs {
    /// Matrix file (text or JSON).
    #[arg(long = "in")]
    input: PathBuf,
    /// Print the determinant of every proper submatrix.
    #[arg(long)]
    certificate: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum NormArg {
    None,
    A0,
    A0a1,
}

#[derive(Args, Debug, Serialize)]
struct SearchArgs {
    /// Matrix dimension minus one.
    #[arg(long)]
    gamma: usize,
    /// Field order.
    #[arg(long)]
    q: u64,
    /// Count every superregular matrix.
    #[arg(long, conflicts_with = "enumerate")]
    count: bool,
    /// List every superregular matrix.
    #[arg(long)]
    enumerate: bool,
    /// Entries fixed to 1 (default a0a1 for existence, none otherwise).
    #[arg(long, value_enum)]
    normalize: Option<NormArg>,
    #[command(flatten)]
    budget: BudgetArgs,
    /// Write the witness matrix here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum FamilyArg {
    Primes,
    PrimePowers,
}

#[derive(Args, Debug, Serialize)]
struct MinfieldArgs {
    /// Matrix dimension.
    #[arg(long)]
    gamma: usize,
    #[arg(long, value_enum, default_value = "prime-powers")]
    family: FamilyArg,
    /// Largest field order tried.
    #[arg(long, default_value_t = 128)]
    cap: u64,
    #[command(flatten)]
    budget: BudgetArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
struct ConjectureArgs {
    /// Matrix dimension (>= 5).
    #[arg(long)]
    gamma: usize,
    #[command(flatten)]
    budget: BudgetArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
struct OrbitArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Comma-separated generators: inverse, scale, frobenius, global-scale, all.
    #[arg(long, default_value = "inverse,scale,frobenius")]
    gens: String,
    /// Print only the orbit minimum.
    #[arg(long)]
    canonical: bool,
    /// Write the canonical form here (with --canonical).
    #[arg(long, requires = "canonical")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
#[group(required = true, multiple = false)]
struct BoundArgs {
    /// Matrix dimension.
    #[arg(long)]
    gamma: Option<u64>,
    /// Range of dimensions, e.g. 3..10.
    #[arg(long)]
    table: Option<String>,
}

#[derive(Args, Debug, Serialize)]
struct ConstructArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    delta: usize,
    /// Truncation level (default L).
    #[arg(long)]
    j: Option<usize>,
    /// Skip the superregularity check of the input.
    #[arg(long)]
    unchecked: bool,
    /// Write [I | T'] here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum MethodArg {
    Auto,
    Generator,
    Dual,
}

#[derive(Args, Debug, Serialize)]
struct ColdistArgs {
    /// Polynomial matrix file: generator (n x k) or, with --parity, H (n x (n-k)).
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    j: usize,
    #[arg(long)]
    parity: bool,
    /// Generator-side computation (ignored with --parity).
    #[arg(long, value_enum, default_value = "auto")]
    method: MethodArg,
    /// Maximum number of information words enumerated on the generator side.
    #[arg(long, default_value_t = 1 << 22)]
    enum_budget: u128,
}

#[derive(Args, Debug, Serialize)]
struct CertifyArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    delta: usize,
    #[arg(long, default_value_t = 1 << 22)]
    enum_budget: u128,
}

#[derive(Args, Debug, Serialize)]
struct PascalArgs {
    /// Matrix dimension.
    #[arg(long)]
    gamma: usize,
    #[arg(long, conflicts_with = "min_prime", required_unless_present = "min_prime")]
    prime: Option<u64>,
    /// Find the smallest prime making the reduction superregular.
    #[arg(long)]
    min_prime: bool,
    #[arg(long, default_value_t = 10000)]
    cap: u64,
    /// Print the determinant of every proper submatrix of the result.
    #[arg(long)]
    certificate: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn threads(flag: Option<usize>) -> Result<usize, Error> {
    if let Some(t) = flag {
        return Ok(t.max(1));
    }
    match std::env::var("SRKIT_THREADS") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(|t| t.max(1))
            .map_err(|_| Error::InvalidConfig(format!("SRKIT_THREADS={v} is not a number"))),
        Err(_) => Ok(1),
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, Error> {
    let threads = threads(cli.threads)?;
    match &cli.command {
        Command::Check(a) => commands::check(a),
        Command::Search(a) => commands::search(a, threads),
        Command::Minfield(a) => commands::minfield(a, threads),
        Command::Conjecture(a) => commands::conjecture(a, threads),
        Command::Orbit(a) => commands::orbit(a),
        Command::Bound(a) => commands::bound(a),
        Command::ConstructMdp(a) => commands::construct_mdp(a),
        Command::Coldist(a) => commands::coldist(a),
        Command::Certify(a) => commands::certify(a),
        Command::Pascal(a) => commands::pascal(a),
    }
}

/// Outcome for a library error.
fn failure(e: &Error) -> Outcome {
    let (status, label) = match e {
        Error::TimeBudgetExceeded { .. } | Error::BudgetExceeded { .. } => (Status::Error, "budget-exceeded"),
        Error::CapExceeded { .. } => (Status::VerifiedFalse, "cap-exceeded"),
        Error::NotSuperregular { .. } => (Status::VerifiedFalse, "not-superregular"),
        _ => (Status::Error, "error"),
    };
    let detail = match e {
        Error::TimeBudgetExceeded { deepest_level, .. } => json!({ "deepest_level": deepest_level }),
        Error::CapExceeded { cap, tried } => json!({ "cap": cap, "proven_empty": tried }),
        _ => json!(null),
    };
    let mut out = Outcome::new(status, label, e.to_string(), json!({ "error": e.to_string(), "detail": detail }));
    if let Error::TimeBudgetExceeded { nodes_visited, .. } = e {
        out.nodes_visited = Some(*nodes_visited);
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut outcome = dispatch(&cli).unwrap_or_else(|e| failure(&e));
    // Files are checked and written only once the command has finished.
    if let Some(e) = outcome.files.iter().find_map(|f| f.round_trips().err()) {
        outcome = failure(&e);
    }
    let mut written = Vec::new();
    for f in &outcome.files {
        if let Err(e) = std::fs::write(&f.path, &f.text) {
            outcome = failure(&Error::InvalidConfig(format!("cannot write {}: {e}", f.path.display())));
            break;
        }
        written.push(f.path.display().to_string());
    }
    // A closed stdout (e.g. a pipe into `head`) is not an error.
    let mut stdout = std::io::stdout().lock();
    if cli.json {
        let report = RunReport {
            subcommand: cli.command.name().into(),
            inputs: serde_json::to_value(&cli.command).expect("arguments serialize"),
            outcome: outcome.label.clone(),
            status: outcome.status,
            result: outcome.result,
            outputs: written,
            nodes_visited: outcome.nodes_visited,
            wall_seconds: start.elapsed().as_secs_f64(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            deterministic: true,
        };
        let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else if outcome.status == Status::Error {
        eprintln!("error: {}", outcome.text.trim_end());
    } else {
        let _ = writeln!(stdout, "{}", outcome.text.trim_end_matches('\n'));
    }
    ExitCode::from(outcome.status.code())
}
