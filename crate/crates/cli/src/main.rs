mod commands;
mod randomized;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use symtriple::{Error, Rational};

/// Exact constructions of tuples with shared symmetric-function values.
#[derive(Parser, Debug)]
#[command(name = "symtriple", version, about, allow_negative_numbers = true)]
struct Cli {
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Emit tuple values as CSV rows (generator commands only).
    #[arg(long, global = true)]
    csv: bool,

    /// Raise log verbosity (repeatable). The default level comes from
    /// SYMTRIPLE_LOG.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solutions of σ_i = σ_{2n-i}, σ_{2n} = 1 from the curve chain.
    GenSym(GenSymArgs),
    /// Solutions of the power-sum triples from the closed-form families.
    GenPower(GenPowerArgs),
    /// Recompute every constraint of the tuples in a JSON file.
    Verify(VerifyArgs),
    /// Run the identity suite.
    Identities(IdentitiesArgs),
    /// Weierstrass models of quartics and point multiples.
    Curve(CurveArgs),
}

#[derive(Args, Debug)]
pub struct GenSymArgs {
    #[arg(long)]
    pub i: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Comma-separated rationals t_1..t_{n-2} (empty for n = 2).
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub t: String,
    #[arg(long, value_parser = rational)]
    pub p: Option<Rational>,
    /// A rational value, or `symbolic` to work over Q(q).
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    #[arg(long)]
    pub count: usize,
    /// Largest accepted --count.
    #[arg(long, default_value_t = symtriple::families::DEFAULT_CHAIN_LIMIT)]
    pub limit: usize,
}

#[derive(Args, Debug)]
pub struct GenPowerArgs {
    #[arg(long, value_parser = ["123", "124", "m112", "24"])]
    pub triple: String,
    #[arg(long, value_parser = rational)]
    pub a: Option<Rational>,
    #[arg(long, value_parser = rational)]
    pub b: Option<Rational>,
    #[arg(long, value_parser = rational)]
    pub d: Option<Rational>,
    /// Comma-separated parameter values, one solution each.
    #[arg(long, allow_hyphen_values = true)]
    pub t: String,
    /// Comma-separated padding entries appended to every tuple.
    #[arg(long, allow_hyphen_values = true)]
    pub lift: Option<String>,
    /// Scale all tuples to one primitive family of integer tuples.
    #[arg(long)]
    pub integerize: bool,
    /// With --integerize, make the first common sum divisible by N.
    #[arg(long, requires = "integerize")]
    pub divisible_by: Option<String>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub file: PathBuf,
}

#[derive(Args, Debug)]
pub struct IdentitiesArgs {
    #[arg(long, value_parser = commands::IDENTITY_GROUPS)]
    pub only: Option<String>,
    /// Seed for the randomized checks.
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct CurveArgs {
    /// Coefficients h4,h3,h2,h1,h0 of S² = H(P).
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["mul", "point", "a", "b"])]
    pub quartic: Option<String>,
    /// Rational base point p0,s0.
    #[arg(long, allow_hyphen_values = true, requires = "quartic")]
    pub base: Option<String>,
    /// Coefficient field: `rational` or `q` for Q(q).
    #[arg(long, default_value = "rational", value_parser = ["rational", "q"])]
    pub field: String,
    #[arg(long, requires_all = ["point", "a", "b"])]
    pub mul: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub point: Option<String>,
    #[arg(long = "A", allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long = "B", allow_hyphen_values = true)]
    pub b: Option<String>,
}

fn rational(s: &str) -> Result<Rational, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// What a command hands back: a JSON document, an optional CSV rendering
/// and the exit status.
pub struct Outcome {
    pub json: serde_json::Value,
    pub csv: Option<String>,
    pub code: u8,
}

/// Failures reported as `{"error": code, "message": ..}` with exit 2.
#[derive(Debug)]
pub enum CliError {
    Math(Error),
    Usage(String),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Math(e)
    }
}

impl CliError {
    fn report(&self) -> serde_json::Value {
        match self {
            CliError::Math(e) => json!({"error": e.code(), "message": e.to_string()}),
            CliError::Usage(m) => json!({"error": "usage", "message": m}),
            CliError::Io(m) => json!({"error": "io", "message": m}),
        }
    }
}

fn emit(cli: &Cli, out: &Outcome) -> Result<(), CliError> {
    let text = match (&out.csv, cli.csv) {
        (Some(csv), true) => csv.clone(),
        _ => {
            if cli.csv {
                log::warn!("--csv has no effect for this command");
            }
            let mut s = serde_json::to_string_pretty(&out.json).expect("serializable");
            s.push('\n');
            s
        }
    };
    match &cli.output {
        Some(path) => {
            fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

fn fail(err: &CliError) -> ExitCode {
    eprintln!("{}", err.report());
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let message = e.render().to_string();
            return fail(&CliError::Usage(message.trim().to_string()));
        }
    };

    let mut logger =
        env_logger::Builder::from_env(env_logger::Env::new().filter_or("SYMTRIPLE_LOG", "warn"));
    match cli.verbose {
        0 => {}
        1 => {
            logger.filter_level(log::LevelFilter::Info);
        }
        2 => {
            logger.filter_level(log::LevelFilter::Debug);
        }
        _ => {
            logger.filter_level(log::LevelFilter::Trace);
        }
    }
    logger.init();

    let result = match &cli.command {
        Command::GenSym(a) => commands::gen_sym(a),
        Command::GenPower(a) => commands::gen_power(a),
        Command::Verify(a) => commands::verify(a),
        Command::Identities(a) => commands::identities(a),
        Command::Curve(a) => commands::curve(a),
    };
    match result.and_then(|out| emit(&cli, &out).map(|_| out.code)) {
        Ok(code) => ExitCode::from(code),
        Err(e) => fail(&e),
    }
}
