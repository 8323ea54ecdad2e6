//! `liediam`: command-line front end. Every subcommand writes one JSON
//! document carrying the toolkit version, the seed and the budgets in effect.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "liediam", version, about = "Operator-norm geometry of compact Lie groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Numerical tolerance: solver tolerance for `beta`, halting norm for
    /// `contract`, dedup tolerance for `universality`.
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    /// Word-store cap for `universality`.
    #[arg(long, global = true)]
    pub budget_words: Option<usize>,

    /// Number of random probes or samples (`witness`, `schur`, `diameter`).
    #[arg(long, global = true)]
    pub budget_probes: Option<usize>,

    /// Net spacing for `universality`.
    #[arg(long, global = true)]
    pub spacing: Option<f64>,

    /// Built-in input for `diameter` (icosahedral, diagonal-so3) or
    /// `universality` (two-rotations, icosahedral).
    #[arg(long, global = true)]
    pub builtin: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve for β and report α, β and the residual.
    Beta,
    /// Operator norm of a group element (or of an algebra element with --algebra).
    Norm {
        file: PathBuf,
        #[arg(long)]
        algebra: bool,
    },
    /// Bi-invariant distance between two group elements.
    Dist { a: PathBuf, b: PathBuf },
    /// exp of an algebra element, or log of a group element with --log.
    Explog {
        file: PathBuf,
        #[arg(long)]
        log: bool,
    },
    /// The witness pair in SO(3), its 4β angle, and random perturbations.
    Witness,
    /// Iterated commutators h, [h,k], [[h,k],k], ...
    Contract {
        h: PathBuf,
        k: PathBuf,
        #[arg(long, default_value_t = 200)]
        max_iter: usize,
    },
    /// Largest principal angle between two subspaces.
    Angle { u: PathBuf, w: PathBuf },
    /// Haar average of projections onto translates of a subspace of the
    /// adjoint representation.
    Schur {
        /// Subspace file; defaults to the line through the first basis vector.
        subspace: Option<PathBuf>,
        /// Group, e.g. su2, su3, so4.
        #[arg(long, default_value = "su2")]
        group: String,
        /// Also search for an element moving the subspace by at least π/4.
        #[arg(long)]
        large_angle: bool,
    },
    /// Lower estimate of the diameter of G/H.
    Diameter {
        /// Subgroup file: a JSON array of matrices.
        file: Option<PathBuf>,
        /// The file holds a finite sample of H rather than all of it.
        #[arg(long)]
        sample: bool,
        /// Also run the brute-force grid on SO(3) at this step.
        #[arg(long)]
        resolution: Option<f64>,
    },
    /// Universality test of a gate set.
    Universality {
        /// Gate-set file.
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 12)]
        max_length: usize,
        #[arg(long, default_value_t = 1000)]
        spot_checks: usize,
    },
    /// Run the full property suite; exits 1 if any check fails.
    Verify,
}

/// Failure with its process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<liediam::Error> for Failure {
    fn from(e: liediam::Error) -> Self {
        use liediam::Error::*;
        let code = match e {
            Numerical(_) | SearchExhausted { .. } | NoBracket | CapacityExceeded(_) => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

/// What a subcommand produced: the result document, the budgets it used,
/// and whether it counts as a failed verification.
pub struct Output {
    pub result: Value,
    pub budgets: Value,
    pub failed: bool,
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    let start = Instant::now();
    let (name, out) = commands::dispatch(cli)?;
    let doc = json!({
        "command": name,
        "version": env!("CARGO_PKG_VERSION"),
        "seed": cli.seed,
        "budgets": out.budgets,
        "result": out.result,
        "timing": { "seconds": start.elapsed().as_secs_f64() },
    });
    let text = serde_json::to_string_pretty(&doc).map_err(|e| Failure::input(e.to_string()))? + "\n";
    match &cli.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(!out.failed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
