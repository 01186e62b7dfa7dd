//! `fsq`: batch runs of the finite-section and trace-model engines.
//!
//! Exit status: 0 on success, 1 when a verification suite reports a
//! violation, 2 on usage errors, 3 on domain errors from the engines.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(fsq_core::FsqError),
}

impl From<fsq_core::FsqError> for CliError {
    fn from(e: fsq_core::FsqError) -> Self {
        match e {
            fsq_core::FsqError::Parse(m) => CliError::Usage(m),
            other => CliError::Domain(other),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "fsq", version, about = "Finite-section spectra, trace-model verification and plot-data export")]
struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, env = "FSQ_THREADS")]
    threads: Option<usize>,
    /// Seed recorded in every output and used by randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output file. CSV commands also write a `.json` summary next to it.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ModelArgs {
    /// Model JSON file, or `preset:<name>`.
    #[arg(long)]
    pub model: String,
    /// `coordinate`, `arithmetic:start:step` or `explicit:d1,d2,...`.
    #[arg(long, default_value = "coordinate")]
    pub filtration: String,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Grid epsilon-pseudospectrum of the n-th truncation (CSV re, im, s_min, member).
    Pseudospec {
        #[command(flatten)]
        #[serde(flatten)]
        model: ModelArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        eps: f64,
        /// Real-axis range `min:max:step`.
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        /// Imaginary-axis range; defaults to the real-axis range.
        #[arg(long, allow_hyphen_values = true)]
        grid_im: Option<String>,
    },
    /// Run a seeded verification suite (JSON report).
    Verify {
        /// One of powers-stormer, ozawa, estimate, commutator,
        /// conditional-expectation, connecting-map, stage-plan, sanov.
        suite: String,
        #[arg(long)]
        trials: Option<usize>,
        /// Stage count for the stage-plan suite.
        #[arg(long, default_value_t = 5)]
        stages: usize,
    },
    /// Szego sequence (1/d_n) sum f(lambda) over n = 1..=N (CSV n, dim, value).
    Szego {
        #[command(flatten)]
        #[serde(flatten)]
        model: ModelArgs,
        #[arg(long)]
        n: usize,
        /// Polynomial coefficients `c0,c1,...` of f.
        #[arg(long, allow_hyphen_values = true, default_value = "0,1")]
        poly: String,
        /// Use the indicator of `[a,b)` instead of a polynomial.
        #[arg(long, allow_hyphen_values = true)]
        indicator: Option<String>,
    },
    /// Invertibility and inverse norms of the truncations (JSON).
    Stability {
        #[command(flatten)]
        #[serde(flatten)]
        model: ModelArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1e6)]
        cap: f64,
    },
    /// Finite-section solutions of T x = v (JSON).
    Solve {
        #[command(flatten)]
        #[serde(flatten)]
        model: ModelArgs,
        #[arg(long)]
        n: usize,
        /// `index=value` entries, value `re` or `re:im`.
        #[arg(long, allow_hyphen_values = true)]
        rhs: String,
    },
    /// Traces of congruence quotients on free words (CSV word, p, trace).
    GroupTrace {
        /// Comma-separated words over a, A, b, B; defaults to all reduced
        /// words up to `--max-len` and the identity.
        #[arg(long)]
        words: Option<String>,
        #[arg(long, default_value_t = 3)]
        max_len: usize,
        #[arg(long, default_value_t = 200)]
        max_prime: u64,
    },
    /// Essential-point verdicts from eigenvalue counts (JSON).
    Essential {
        #[command(flatten)]
        #[serde(flatten)]
        model: ModelArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        candidates: String,
        #[arg(long)]
        radii: Option<String>,
        #[arg(long, default_value_t = 10)]
        min_count: usize,
    },
    /// Eigenvalues of Hermitian truncations (CSV n, index, eigenvalue).
    Eigs {
        #[command(flatten)]
        #[serde(flatten)]
        model: ModelArgs,
        /// Truncation indices `n1,n2,...`.
        #[arg(long)]
        ns: String,
    },
    /// Set limits of truncation spectra or pseudospectra (JSON).
    Limits {
        #[command(flatten)]
        #[serde(flatten)]
        model: ModelArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1e-2)]
        delta: f64,
        #[arg(long, default_value_t = 0.5)]
        tail_fraction: f64,
        #[arg(long, default_value_t = 0.2)]
        limsup_threshold: f64,
        #[arg(long, default_value_t = 0.95)]
        liminf_threshold: f64,
        /// Use lattice epsilon-pseudospectra (needs --grid) instead of spectra.
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
    },
    /// Compression traces tr_n(P_n w(T, T*) P_n) for words in T, T* (CSV).
    Compress {
        #[command(flatten)]
        #[serde(flatten)]
        model: ModelArgs,
        #[arg(long)]
        ns: String,
        /// Comma-separated words such as `1,T,T*T`.
        #[arg(long, default_value = "1,T,T*T,TT*")]
        words: String,
    },
    /// Stage plan of an inductive system with exact rationals (JSON).
    Plan {
        /// Dimensions `k(1),...,k(J)`.
        #[arg(long)]
        k: String,
        /// Per-stage tolerances for a scaled schedule.
        #[arg(long)]
        scaled: Option<String>,
        /// Explicit multiplicities `n(1),...,n(J)`.
        #[arg(long)]
        explicit: Option<String>,
        #[arg(long, default_value_t = fsq_core::inductive::DEFAULT_BIT_BOUND)]
        bit_bound: u64,
    },
}

fn run(cli: Cli) -> Result<bool, CliError> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    }
    commands::dispatch(&cli.command, cli.seed, cli.out.as_deref())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(CliError::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
