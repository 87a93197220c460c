//! `incidence`: command-line front end. Every subcommand prints JSON (JSON lines for streams).
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 malformed input, 3 budget exceeded.

mod commands;
mod input;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use input::{IdealInput, SpaceInput};

#[derive(Parser, Debug)]
#[command(name = "incidence", version, about = "Exact tools for point-line incidence structures")]
pub struct Cli {
    /// Worker threads (default: available cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Write the result here instead of standard output.
    #[arg(long, short, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    /// More log output on standard error (repeatable).
    #[arg(long, short, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the linear-space axioms for a line list.
    Validate(SpaceInput),
    /// Smallest linear space containing a collinearity family.
    Closure(SpaceInput),
    /// All linear spaces on n points up to isomorphism, one JSON line each.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Only spaces with every point on at least three full lines.
        #[arg(long)]
        superfigurations: bool,
    },
    /// Iterated Glynn reduction down to a superfiguration or a single point.
    Reduce(SpaceInput),
    /// Relabel a superfiguration around a V-shaped frame.
    Frame {
        #[command(flatten)]
        input: SpaceInput,
        /// Five points p1..p5; default is the first V-frame found.
        #[arg(long, value_delimiter = ',')]
        frame: Option<Vec<u32>>,
    },
    /// Determinantal ideal of the framed scheme.
    Ideal(IdealInput),
    /// Reduced Groebner basis.
    Gb {
        #[command(flatten)]
        input: IdealInput,
        #[arg(long, default_value = "degrevlex", value_parser = input::parse_order)]
        order: incidence::algebra::MonomialOrder,
        /// Maximum number of reduction steps.
        #[arg(long, default_value_t = incidence::gb::DEFAULT_BUDGET)]
        budget: u64,
        /// Eliminate variables occurring linearly first.
        #[arg(long)]
        simplify: bool,
    },
    /// Krull dimension of the scheme.
    Dim(SchemeArgs),
    /// Quotient dimension and minimal polynomials of a zero-dimensional scheme.
    Summary(SchemeArgs),
    /// Count realizations over a prime field.
    Count {
        #[command(flatten)]
        input: SpaceInput,
        #[arg(long)]
        q: u64,
        /// chart, framed-weak, framed-strong, strong-total or weak-total.
        #[arg(long, default_value = "chart")]
        mode: String,
        /// Five points (chart) or four points (other modes).
        #[arg(long, value_delimiter = ',')]
        frame: Option<Vec<u32>>,
    },
    /// Strong realizability over each listed prime.
    Scan {
        #[command(flatten)]
        input: SpaceInput,
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
    },
    /// Full pipeline over every superfiguration on n points, one JSON line each, then a summary.
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = incidence::gb::DEFAULT_BUDGET)]
        budget: u64,
        /// Ignore and do not write the on-disk cache.
        #[arg(long)]
        no_cache: bool,
    },
    /// Named spaces with known facts.
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(clap::Args, Debug)]
pub struct SchemeArgs {
    #[command(flatten)]
    input: IdealInput,
    /// A Groebner basis file produced by `gb`, instead of a space or ideal.
    #[arg(long, value_name = "PATH", conflicts_with_all = ["space", "json", "catalog", "ideal"])]
    gb: Option<PathBuf>,
    #[arg(long, default_value_t = incidence::gb::DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Subcommand, Debug)]
pub enum CatalogCommand {
    /// Entry names.
    List,
    /// One entry as JSON.
    Show { name: String },
    /// Recompute the expected facts of the named entries (all when none are given).
    Verify { names: Vec<String> },
}

/// A failed run: exit code plus message.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub const MISMATCH: u8 = 1;
    pub const MALFORMED: u8 = 2;
    pub const BUDGET: u8 = 3;

    pub fn malformed(msg: impl Into<String>) -> Self {
        Failure { code: Self::MALFORMED, message: msg.into() }
    }

    pub fn mismatch(msg: impl Into<String>) -> Self {
        Failure { code: Self::MISMATCH, message: msg.into() }
    }
}

impl From<incidence::Error> for Failure {
    fn from(e: incidence::Error) -> Self {
        let code = match e {
            incidence::Error::BudgetExceeded(_) => Self::BUDGET,
            _ => Self::MALFORMED,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::malformed(format!("i/o: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    if let Some(w) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(w.max(1)).build_global() {
            log::warn!("could not size the worker pool: {e}");
        }
    }
    let mut out: Box<dyn Write> = match &cli.output {
        Some(p) => match File::create(p) {
            Ok(f) => Box::new(BufWriter::new(f)),
            Err(e) => {
                eprintln!("error: {}: {e}", p.display());
                return ExitCode::from(Failure::MALFORMED);
            }
        },
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let result = commands::run(&cli.command, &mut out);
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(()), Ok(())) => ExitCode::SUCCESS,
        (Err(f), _) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
        (_, Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(Failure::MALFORMED)
        }
    }
}
