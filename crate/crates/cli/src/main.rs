//! `zigzag`: encode, decode, and repair files with the (k+2, k) Zigzag code,
//! and run the verification and I/O-bound reports.

mod commands;
mod error;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "zigzag",
    version,
    about = "(k+2, k) Zigzag MSR code over GF(3)"
)]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Print every individual check, not just failures.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,

    /// Run on the calling thread only.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Split a file into k + 2 shard files plus a manifest.
    Encode {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Rebuild the original file from any k shard files.
    Decode {
        #[arg(long, num_args = 1.., required = true)]
        shards: Vec<PathBuf>,
        /// Defaults to manifest.json beside the first shard.
        #[arg(long)]
        manifest: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Rebuild one missing shard and report the disk I/O it took.
    Repair {
        #[arg(long, num_args = 1.., required = true)]
        shards: Vec<PathBuf>,
        #[arg(long)]
        rebuild: usize,
        #[arg(long)]
        manifest: Option<PathBuf>,
        /// Defaults to the manifest's directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Check every structural and repair condition over a range of k.
    Verify {
        /// Inclusive range such as `2..8`.
        #[arg(long, default_value = "2..8")]
        k_range: String,
        /// Random files per k for the encoder-equivalence check.
        #[arg(long, default_value_t = 100)]
        files: usize,
        /// Flip one sign of A_1 before checking.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Compare the disk-I/O lower bound with the constructed repair.
    Bound {
        #[arg(long)]
        k: usize,
    },
    /// Exhaustively search for the cheapest parity repair (k = 2 or 3).
    Bruteforce {
        #[arg(long)]
        k: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, CliError::VerifyFailed(_)) {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
