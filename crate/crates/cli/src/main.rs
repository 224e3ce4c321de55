//! `jonesasym`: cached exact computations and verification runs for the
//! colored Jones asymptotics library.

mod cache;
mod commands;
mod config;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{Artifact, Session, Suite};
use config::{AlphaItem, NItem, Overrides, RunConfig};
use error::CliError;

#[derive(Parser)]
#[command(name = "jonesasym", version, about = "Colored Jones polynomials and their small-angle asymptotics")]
struct Cli {
    /// Flat JSON file with any of the flags below; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// JSON-lines knot catalog (defaults to the built-in one).
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Largest cyclotomic index k.
    #[arg(long, global = true)]
    kmax: Option<usize>,
    /// Series order in x for the loop expansion checks.
    #[arg(long, global = true)]
    order: Option<usize>,
    /// Highest loop polynomial to reconstruct and test.
    #[arg(long, global = true)]
    loops: Option<usize>,
    /// Working precision in bits for numerical evaluation.
    #[arg(long, global = true)]
    precision: Option<u32>,
    #[arg(long, global = true, value_parser = ["standard", "mirrored"])]
    mirror: Option<String>,
    /// Complex angle "re,im"; repeatable.
    #[arg(long, global = true, allow_hyphen_values = true)]
    alpha: Vec<String>,
    /// Color, or "a..b..step"; repeatable.
    #[arg(long = "n", global = true)]
    n: Vec<String>,
    /// Output file (compute, report) or directory (verify).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute an artifact and cache it, checking any cached copy.
    Compute {
        knot: String,
        #[arg(value_enum)]
        what: Artifact,
    },
    /// Run a verification suite; exit 0 iff every check passes.
    Verify {
        knot: String,
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Summarize cached artifacts for the given knots.
    Report {
        knots: Vec<String>,
        /// Report on every catalog knot.
        #[arg(long)]
        all: bool,
    },
}

impl Cli {
    fn overrides(&self) -> Overrides {
        Overrides {
            catalog: self.catalog.clone(),
            cache: self.cache.clone(),
            kmax: self.kmax,
            order: self.order,
            loops: self.loops,
            precision: self.precision,
            mirror: self.mirror.clone(),
            alpha: (!self.alpha.is_empty()).then(|| self.alpha.iter().cloned().map(AlphaItem::Text).collect()),
            n: (!self.n.is_empty()).then(|| self.n.iter().cloned().map(NItem::Text).collect()),
            out: self.out.clone(),
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let file = cli.config.as_deref().map(Overrides::from_file).transpose()?;
    let cfg = RunConfig::resolve(file, cli.overrides())?;
    let session = Session::new(cfg)?;
    match cli.command {
        Command::Compute { knot, what } => session.compute(&knot, what),
        Command::Verify { knot, suite } => session.verify(&knot, suite),
        Command::Report { knots, all } => {
            let knots = if all { session.catalog_names() } else { knots };
            session.report(&knots)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
