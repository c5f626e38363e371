mod commands;
mod config;
mod output;
mod pqsig;
mod units;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qthreat_core::attack::HashRateForm;
use qthreat_core::pow::Target;
use qthreat_core::qec::{DistanceMode, QubitFormula};

use crate::output::Format;
use crate::units::{parse_count, parse_number};

/// Quantum attack cost estimates, hardware forecasts and proof-of-work tools.
///
/// Exit status: 0 on success or a valid proof, 1 on an invalid proof or a
/// failed search, 2 on malformed input.
#[derive(Debug, Parser)]
#[command(name = "qthreat", version)]
pub struct Cli {
    /// TOML run configuration [env: QTHREAT_CONFIG]
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Output format (default: table)
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Error-corrected cost of a single attack.
    #[command(subcommand)]
    Estimate(EstimateCmd),
    /// Hardware and network extrapolation and crossover years.
    Forecast(ForecastArgs),
    /// Mine, verify and cost proofs-of-work.
    #[command(subcommand)]
    Pow(PowCmd),
    /// Key and signature sizes of post-quantum signature schemes.
    Pqsig(PqsigArgs),
    /// Chance that an attacker behind by k blocks ever catches up.
    Race(RaceArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ModelFlags {
    /// real | integer
    #[arg(long)]
    pub distance_mode: Option<DistanceMode>,
    /// linear | quadratic
    #[arg(long)]
    pub qubit_formula: Option<QubitFormula>,
    /// first-principles | closed-form
    #[arg(long)]
    pub hash_form: Option<HashRateForm>,
}

#[derive(Debug, Subcommand)]
pub enum EstimateCmd {
    /// Grover mining at a given difficulty.
    Mining(MiningArgs),
    /// Shor attack on an elliptic-curve signing key.
    Signature(SignatureArgs),
}

#[derive(Debug, Args)]
pub struct MiningArgs {
    /// Block difficulty D
    #[arg(long, short = 'D', value_parser = parse_number)]
    pub difficulty: f64,
    /// Quantum clock speed, Hz (SI suffixes allowed)
    #[arg(long, short = 's', value_parser = parse_number)]
    pub clock: f64,
    /// Physical gate error rate; not needed with --optimistic
    #[arg(long, short = 'p', value_parser = parse_number, required_unless_present = "optimistic")]
    pub gate_error: Option<f64>,
    /// Machines running in parallel
    #[arg(long, short = 'm', default_value_t = 1)]
    pub machines: u32,
    /// Only the transversal-gate model without distillation
    #[arg(long)]
    pub optimistic: bool,
    #[command(flatten)]
    pub model: ModelFlags,
}

#[derive(Debug, Args)]
pub struct SignatureArgs {
    /// Curve size in bits
    #[arg(long, short = 'n', default_value_t = 256)]
    pub key_bits: u32,
    /// Quantum clock speed, Hz
    #[arg(long, short = 's', value_parser = parse_number)]
    pub clock: f64,
    /// Physical gate error rate
    #[arg(long, short = 'p', value_parser = parse_number)]
    pub gate_error: f64,
    #[command(flatten)]
    pub model: ModelFlags,
}

#[derive(Debug, Args)]
pub struct ForecastArgs {
    /// optimistic | pessimistic | both
    #[arg(long)]
    pub scenario: Option<String>,
    #[arg(long, default_value_t = 2017.0)]
    pub from: f64,
    #[arg(long, default_value_t = 2042.0)]
    pub to: f64,
    /// Grid step, years
    #[arg(long, default_value_t = 1.0)]
    pub step: f64,
    /// Emit a series: fig1 | fig2 | fig3 | fig5 | appB | appC
    #[arg(long)]
    pub figure: Option<String>,
    /// Scale qubit requirements by the overhead factor
    #[arg(long)]
    pub overhead_on_qubits: Option<bool>,
    /// Require enough qubits before a signature counts as broken
    #[arg(long)]
    pub break_requires_qubits: Option<bool>,
    /// year,value CSV of qubit counts
    #[arg(long)]
    pub qubit_table: Option<PathBuf>,
    /// year,value CSV of gate times in seconds
    #[arg(long)]
    pub gate_time_table: Option<PathBuf>,
    /// year,value CSV of gate fidelities
    #[arg(long)]
    pub fidelity_table: Option<PathBuf>,
    /// year,value CSV of network hash rate, hashes/second
    #[arg(long)]
    pub network_history: Option<PathBuf>,
    /// First year of network history used for the trend fit
    #[arg(long)]
    pub network_fit_start: Option<f64>,
    #[command(flatten)]
    pub model: ModelFlags,
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct HeaderInput {
    /// File holding an 80-byte header
    #[arg(long)]
    pub header: Option<PathBuf>,
    /// Header bytes as hex
    #[arg(long)]
    pub header_hex: Option<String>,
}

#[derive(Debug, Clone, Args)]
#[group(multiple = false)]
pub struct TargetInput {
    /// Target as big-endian hex
    #[arg(long)]
    pub target: Option<Target>,
    /// Compact target encoding, hex
    #[arg(long, value_parser = parse_bits)]
    pub bits: Option<u32>,
    /// Difficulty, target = 2^224 / D
    #[arg(long, value_parser = parse_number)]
    pub difficulty: Option<f64>,
    /// Target = 2^x
    #[arg(long)]
    pub target_log2: Option<f64>,
}

fn parse_bits(s: &str) -> Result<u32, String> {
    u32::from_str_radix(s.trim().trim_start_matches("0x"), 16).map_err(|e| format!("bits: {e}"))
}

#[derive(Debug, Subcommand)]
pub enum PowCmd {
    /// Search nonces (then timestamp bits) for a header meeting the target.
    HashcashMine {
        #[command(flatten)]
        header: HeaderInput,
        /// Defaults to the header's compact bits field
        #[command(flatten)]
        target: TargetInput,
        #[arg(long, default_value_t = 0)]
        nonce_start: u32,
        #[arg(long, value_parser = parse_count, default_value = "4294967296")]
        nonce_count: u64,
        #[arg(long, default_value_t = 0)]
        timestamp_bits: u8,
        /// Scan in parallel batches of this size
        #[arg(long, value_parser = parse_count)]
        parallel_batch: Option<u64>,
        /// Write the mined 80-byte header here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a header against a target.
    HashcashVerify {
        #[command(flatten)]
        header: HeaderInput,
        /// Defaults to the header's compact bits field
        #[command(flatten)]
        target: TargetInput,
    },
    /// Find a Momentum collision for a header.
    MomentumMine {
        /// Header hash H as hex; alternative to --header/--header-hex
        #[arg(long, conflicts_with_all = ["header", "header_hex"])]
        header_hash: Option<String>,
        #[arg(long)]
        header: Option<PathBuf>,
        #[arg(long)]
        header_hex: Option<String>,
        /// Try up to this many headers `header || index` (index as 8 LE bytes)
        #[arg(long, value_parser = parse_count, conflicts_with = "header_hash")]
        headers: Option<u64>,
        #[arg(short = 'n', long)]
        n: u32,
        #[arg(long)]
        ell: u32,
        /// Acceptance threshold t on h1
        #[arg(short = 't', long = "target", value_parser = parse_count)]
        t: u64,
        /// log2 |S|
        #[arg(long)]
        subset_bits: u32,
        /// Parallel subset chunk size
        #[arg(long, value_parser = parse_count)]
        parallel_chunk: Option<u64>,
        /// Append the solution record to this file
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a textual Momentum solution record.
    MomentumVerify {
        #[arg(
            long,
            conflicts_with = "record_file",
            required_unless_present = "record_file"
        )]
        record: Option<String>,
        #[arg(long)]
        record_file: Option<PathBuf>,
    },
    /// Classical and quantum Momentum cost model.
    CostModel {
        #[arg(short = 'n', long)]
        n: u32,
        #[arg(long)]
        ell: u32,
        #[arg(short = 't', long = "target", value_parser = parse_count)]
        t: u64,
        /// log2 |S|; defaults to the largest allowed
        #[arg(long)]
        subset_bits: Option<u32>,
    },
}

#[derive(Debug, Args)]
pub struct PqsigArgs {
    #[arg(long, value_enum)]
    pub sort: Option<pqsig::SortKey>,
    #[arg(long)]
    pub descending: bool,
}

#[derive(Debug, Args)]
pub struct RaceArgs {
    /// Attacker share of the hash rate
    #[arg(short = 'q', long)]
    pub q: f64,
    /// Blocks the attacker starts behind
    #[arg(short = 'k', long)]
    pub k: u64,
    #[arg(long)]
    pub monte_carlo: bool,
    #[arg(long, value_parser = parse_count, default_value = "100000")]
    pub trials: u64,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 4)]
    pub workers: u32,
}

pub enum Failure {
    /// Exit 1: the input was well formed but is not a valid proof.
    Rejected(output::Output),
    /// Exit 2.
    Usage(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match config::RunConfig::discover(cli.config.as_deref()) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let format = cli.format.or(cfg.format).unwrap_or_default();
    match commands::run(&cli.command, &cfg) {
        Ok(out) => {
            emit(&out, format);
            ExitCode::SUCCESS
        }
        Err(Failure::Rejected(out)) => {
            emit(&out, format);
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit(out: &output::Output, format: Format) {
    let (text, side) = out.render(format);
    let _ = std::io::stdout().write_all(text.as_bytes());
    if let Some(side) = side {
        let _ = std::io::stderr().write_all(side.as_bytes());
    }
}
