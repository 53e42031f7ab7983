//! `catquant`: build finite categories, arrow-field monoids, and matrix
//! representations of the category quantisation monoid; validate every law
//! by exact computation.
//!
//! Exit codes: 0 all checks pass, 1 a law check failed, 2 input error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use catquant_cli::commands::{self, Caps, CheckParams, GenParams, InputError, Outcome, RepParams};

#[derive(Parser)]
#[command(
    name = "catquant",
    version,
    about = "Finite categories, arrow fields, and Hilbert-presheaf representations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a category document (and optionally a presheaf) against the axioms.
    Validate {
        /// Category document path or built-in name (isham-2obj,
        /// isham-2obj-antichain, fig1, fig1-injective, fig2, chain-N).
        category: String,
        /// Presheaf to validate on top: `set`, `trivial`, or a document path.
        #[arg(long)]
        presheaf: Option<String>,
        /// Also write the report as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Generate a category document.
    Gen {
        /// One of: poset, topology, group, chain, fig1, fig2, isham-2obj.
        kind: String,
        /// Chain length (chain only).
        #[arg(long)]
        n: Option<usize>,
        /// Restrict poset arrows to injective monotone maps.
        #[arg(long)]
        injective: bool,
        /// Drop the order on B in isham-2obj, adding the transposition p.
        #[arg(long)]
        forget_order: bool,
        /// Input file for poset/topology/group kinds.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build operators for one arrow field; emit matrices or check laws.
    Rep {
        /// Category document path or built-in name.
        category: String,
        /// Presheaf: `set`, `trivial`, or a document path.
        #[arg(long, default_value = "set")]
        presheaf: String,
        /// Arrow field from a JSON file.
        #[arg(long)]
        field: Option<PathBuf>,
        /// Delta field concentrated on the named arrow.
        #[arg(long)]
        delta: Option<String>,
        /// The identity field (default when nothing else is selected).
        #[arg(long)]
        iota: bool,
        /// Configuration function file for V and beta-hat.
        #[arg(long)]
        beta: Option<PathBuf>,
        /// Directory to write matrix JSON files into.
        #[arg(long)]
        emit: Option<PathBuf>,
        /// Run the representation checks on this input.
        #[arg(long)]
        check: bool,
        /// Also write the report as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Seed for the randomized configuration functions used by --check.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run law-check suites over a category and presheaf.
    Check {
        /// Category document path or built-in name.
        category: String,
        /// Presheaf: `set`, `trivial`, or a document path.
        #[arg(long, default_value = "set")]
        presheaf: String,
        /// Suite to run (repeatable); all suites when omitted.
        #[arg(long = "suite")]
        suites: Vec<String>,
        /// Sample size when the arrow-field count exceeds the cap.
        #[arg(long)]
        sample: Option<usize>,
        /// Seed for sampling and randomized configuration functions.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the report as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Reproduce a named end-to-end scenario into an output directory.
    Example {
        /// One of: isham-2obj, fig1, fig2, chain.
        name: String,
        /// Chain length (chain only, default 6).
        #[arg(long)]
        n: Option<usize>,
        /// Output directory (default `catquant-NAME`).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run() -> Result<Outcome, InputError> {
    let cli = Cli::parse();
    let caps = Caps::from_env()?;
    match cli.command {
        Command::Validate {
            category,
            presheaf,
            json,
        } => commands::cmd_validate(&category, presheaf.as_deref(), json.as_deref(), &caps),
        Command::Gen {
            kind,
            n,
            injective,
            forget_order,
            input,
            out,
        } => commands::cmd_gen(
            &kind,
            &GenParams {
                n,
                injective,
                forget_order,
                input,
                out,
            },
            &caps,
        ),
        Command::Rep {
            category,
            presheaf,
            field,
            delta,
            iota,
            beta,
            emit,
            check,
            json,
            seed,
        } => commands::cmd_rep(
            &RepParams {
                category,
                presheaf,
                field,
                delta,
                iota,
                beta,
                emit,
                check,
                json,
                seed,
            },
            &caps,
        ),
        Command::Check {
            category,
            presheaf,
            suites,
            sample,
            seed,
            json,
        } => commands::cmd_check(
            &CheckParams {
                category,
                presheaf,
                suites,
                sample,
                seed,
                json,
            },
            &caps,
        ),
        Command::Example { name, n, out } => commands::cmd_example(&name, n, out.as_deref(), &caps),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(Outcome::Clean) => ExitCode::SUCCESS,
        Ok(Outcome::LawViolation) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}
