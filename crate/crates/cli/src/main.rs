use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;

/// Twisted Alexander-Lin polynomials of augmented group systems.
///
/// Inputs are `.agp` presentation files or `corpus:<name>` for a bundled file.
#[derive(Parser, Debug)]
#[command(name = "alexlin", version)]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Add a `generated_at` field to JSON output.
    #[arg(long, global = true)]
    pub timestamp: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RepSource {
    /// Representation JSON file (or `corpus:<name>`).
    #[arg(long)]
    pub rep: Option<String>,

    /// Degree `N` for enumeration.
    #[arg(long = "N", short = 'N')]
    pub n: Option<usize>,

    /// Period `r` for enumeration.
    #[arg(long, short = 'r')]
    pub r: Option<usize>,

    /// Accept (or enumerate) non-transitive representations.
    #[arg(long)]
    pub allow_reducible: bool,

    /// Search-node budget for enumeration; 0 means unlimited.
    #[arg(long, default_value_t = 10_000_000)]
    pub limit: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List periodic representations into S_N.
    Enumerate {
        input: String,
        #[arg(long = "N", short = 'N')]
        n: Option<usize>,
        #[arg(long, short = 'r')]
        r: usize,
        /// Cyclic representations into <(1 2 ... p)> instead (one base generator).
        #[arg(long)]
        p: Option<u64>,
        /// Skip canonicalization and list every solution.
        #[arg(long)]
        raw: bool,
        #[arg(long)]
        allow_reducible: bool,
        #[arg(long, default_value_t = 10_000_000)]
        limit: u64,
    },
    /// Compute D with the full check table.
    Invariant {
        input: String,
        #[command(flatten)]
        source: RepSource,
    },
    /// Print only the check table; exit 3 if any check fails.
    Checks {
        input: String,
        #[command(flatten)]
        source: RepSource,
    },
    /// Torsion of H_1 of the induced cover of the rn-fold branched cover.
    Torsion {
        input: String,
        #[arg(long)]
        rep: Option<String>,
        #[arg(long)]
        n: usize,
    },
    /// Torsion growth against the Mahler measure of D.
    Mahler {
        input: String,
        #[arg(long)]
        rep: Option<String>,
        #[arg(long = "n-max")]
        n_max: usize,
        /// CSV output (`n,b,b_pow`).
        #[arg(long)]
        csv: bool,
    },
    /// Randomized invariance checks on enumerated representations.
    Fuzz {
        input: String,
        #[arg(long = "N", short = 'N')]
        n: usize,
        #[arg(long, short = 'r')]
        r: usize,
        #[arg(long, default_value_t = 100)]
        cases: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// List the bundled corpus, or print one entry.
    Corpus { name: Option<String> },
}

/// Exit status: 0 ok, 1 input error, 2 internal failure, 3 failed check.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Internal(String),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let outcome = std::panic::catch_unwind(|| commands::run(&cli));
    match outcome {
        Ok(Ok(out)) => {
            print!("{}", out.text);
            ExitCode::from(if out.failed_check { 3 } else { 0 })
        }
        Ok(Err(Failure::Input(m))) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Ok(Err(Failure::Internal(m))) => {
            eprintln!("internal error: {m}");
            ExitCode::from(2)
        }
        Err(_) => ExitCode::from(2),
    }
}

pub fn read_source(spec: &str) -> Result<String, Failure> {
    if let Some(name) = spec.strip_prefix("corpus:") {
        return alexlin::corpus::get(name)
            .map(str::to_string)
            .ok_or_else(|| Failure::Input(format!("no corpus entry `{name}`")));
    }
    std::fs::read_to_string(PathBuf::from(spec)).map_err(|e| Failure::Input(format!("{spec}: {e}")))
}
