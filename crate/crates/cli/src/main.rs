mod commands;
mod input;

use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand};

/// Quaternary Legendre pairs: verification, search, compression and
/// Hadamard certificates.
#[derive(Debug, Parser)]
#[command(name = "qlp", version)]
pub struct Cli {
    /// Emit JSON: to stdout when given alone, to a file when given a path.
    #[arg(long, global = true, num_args = 0..=1, value_name = "PATH")]
    pub json: Option<Option<PathBuf>>,

    /// Worker threads for searches (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub workers: usize,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

/// A pair given inline or in a file (two lines `A` and `B`, or a JSON pair
/// record).
#[derive(Debug, Args)]
pub struct PairInput {
    #[arg(long, requires = "b", conflicts_with_all = ["file", "length"])]
    pub a: Option<String>,
    #[arg(long, requires = "a")]
    pub b: Option<String>,
    #[arg(long, conflicts_with = "length")]
    pub file: Option<PathBuf>,
    /// Use the built-in pair of this length.
    #[arg(long)]
    pub length: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the pair condition exactly and report sums, PAF and PSD values.
    Verify(PairInput),
    /// Verify every built-in pair and its tabulated PSD values.
    CorpusCheck {
        /// Also normalize this many randomly transformed corpus pairs.
        #[arg(long, default_value_t = 0)]
        scramble: usize,
    },
    /// Search the decompressions of the seed pair for prime p.
    SearchSeed {
        #[arg(long)]
        p: u64,
        /// Stop at the first half-vector in enumeration order.
        #[arg(long)]
        first: bool,
        /// Leading symbols fixed per work unit.
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Search for pairs of even length.
    SearchEven(SearchEvenArgs),
    /// Compress a sequence to length k.
    Compress {
        #[arg(long)]
        seq: String,
        #[arg(long)]
        k: usize,
    },
    /// Enumerate the decompressions of a compressed sequence.
    Decompress {
        /// Compressed entries, e.g. "[2,0,-2]".
        #[arg(long)]
        compressed: String,
        /// Compression ratio m (the original length is m times the length).
        #[arg(long)]
        ratio: usize,
        /// Print at most this many decompressions.
        #[arg(long, default_value_t = 20)]
        limit: usize,
        /// Only print the number of decompressions.
        #[arg(long)]
        count: bool,
    },
    /// Eligible PSD pairs and integrality filters.
    PsdFilters {
        #[arg(long)]
        length: Option<usize>,
        /// A length-6 compression (ratio ℓ/6) to evaluate the integrality flags on.
        #[arg(long, requires = "length")]
        a6: Option<String>,
        /// Test a single PSD value against the mod-3 and two-squares criteria.
        #[arg(long)]
        value: Option<u64>,
    },
    /// Build and verify the quaternary and binary Hadamard matrices of a pair.
    Hadamard {
        #[command(flatten)]
        pair: PairInput,
        /// Directory for `quaternary.txt` and `binary.txt`.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct SearchEvenArgs {
    #[arg(long)]
    pub length: usize,
    /// Half-lag target `x,y` = (PSD(A, ℓ/2), PSD(B, ℓ/2)).
    #[arg(long, value_name = "X,Y", conflicts_with = "all_psd_pairs")]
    pub psd_pair: Option<String>,
    /// Quarter-lag target `x,y`, for 4 | ℓ.
    #[arg(long, value_name = "X,Y", requires = "psd_pair")]
    pub quarter_pair: Option<String>,
    /// Search every eligible target (the default without --psd-pair).
    #[arg(long)]
    pub all_psd_pairs: bool,
    /// Report only the least pair (the default).
    #[arg(long, conflicts_with = "all")]
    pub first: bool,
    /// Report every pair found.
    #[arg(long)]
    pub all: bool,
    /// Disable the rotation and conjugation reductions.
    #[arg(long)]
    pub no_reductions: bool,
    /// Disable the ℓ/3 and ℓ/6 integrality screen (6 | ℓ).
    #[arg(long)]
    pub no_mod6: bool,
    /// Restrict A to a 3-compression seed `[0, a+bi, -(a+bi)]`.
    #[arg(long, value_name = "A,B")]
    pub a3: Option<String>,
    /// Entries fixed per work unit.
    #[arg(long, default_value_t = 4)]
    pub depth: usize,
    /// A candidates held in memory by the join before spilling to disk.
    #[arg(long, default_value_t = 1 << 22)]
    pub join_cap: usize,
    #[arg(long)]
    pub spill_dir: Option<PathBuf>,
    /// Permit ℓ > 24.
    #[arg(long)]
    pub allow_large: bool,
}

/// `--json` takes an optional path, so `qlp --json verify …` would read
/// `verify` as the path. A bare `--json` directly before the subcommand name
/// is moved after it.
fn reorder_json_flag(mut args: Vec<OsString>) -> Vec<OsString> {
    let names: Vec<String> = Cli::command().get_subcommands().map(|c| c.get_name().to_string()).collect();
    let mut i = 0;
    while i + 1 < args.len() {
        if args[i] == "--json" && names.iter().any(|n| args[i + 1] == n.as_str()) {
            args.swap(i, i + 1);
            i += 2;
        } else {
            i += 1;
        }
    }
    args
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse_from(reorder_json_flag(std::env::args_os().collect())) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { commands::EXIT_INVALID } else { 0 });
        }
    };
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let code = commands::exit_code_for(&e);
            eprintln!("error: {e:#}");
            ExitCode::from(code)
        }
    }
}
