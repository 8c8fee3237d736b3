//! `trajzip`: compress trajectory CSV files, query containers, evaluate error
//! and generate synthetic corpora.
//!
//! Exit status: 0 success, 1 usage error, 2 data error, 3 format or
//! corruption error.

mod commands;
mod error;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "trajzip",
    version,
    about = "Error-bounded DCT trajectory compression"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compress a trajectory CSV, or every CSV in a directory, into .plc containers.
    Compress(CompressArgs),
    /// Decode a container at given timestamps or on its uniform grid.
    Decompress(DecompressArgs),
    /// Measure containers against their originals, or sweep error bounds.
    Eval(EvalArgs),
    /// Write a seeded synthetic corpus of trajectory CSV files.
    Synth(SynthArgs),
    /// List the built-in parameter profiles.
    Profiles,
}

/// Parameter profile and per-field overrides.
#[derive(Debug, Clone, Args)]
struct ParamArgs {
    /// Built-in profile: nuplan, geolife, geolife3d or mopsi.
    #[arg(long, default_value = "geolife")]
    profile: String,
    /// eps / eps_f ratio.
    #[arg(long = "a")]
    a: Option<f64>,
    /// Block-size slope: b_s = round(b * eps + c).
    #[arg(long = "b")]
    b: Option<f64>,
    /// Block-size offset.
    #[arg(long = "c")]
    c: Option<f64>,
    /// Retention constant: r_ret = min(1, d / sqrt(eps)).
    #[arg(long = "d")]
    d: Option<f64>,
    /// Maximum plausible speed, in coordinate units per second.
    #[arg(long)]
    vmax: Option<f64>,
    /// Timestamp precision in seconds.
    #[arg(long)]
    eps_t: Option<f64>,
    /// Varint payload bits per chunk (1-32).
    #[arg(long)]
    chunk_bits: Option<u8>,
    /// eps_p / eps ratio, in (0, 1].
    #[arg(long)]
    eps_p_factor: Option<f64>,
}

#[derive(Debug, Args)]
struct CompressArgs {
    /// Trajectory CSV file or directory of CSV files.
    input: PathBuf,
    /// Output file, or directory when the input is a directory.
    /// Defaults to the input path with a .plc extension.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Maximum synchronized Euclidean distance.
    #[arg(long)]
    epsilon: f64,
    #[command(flatten)]
    params: ParamArgs,
    /// Drop points whose timestamp repeats the previous one.
    #[arg(long)]
    dedup: bool,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("mode").required(true).args(["at", "grid"])))]
struct DecompressArgs {
    /// Container file.
    input: PathBuf,
    /// File with one timestamp per line.
    #[arg(long)]
    at: Option<PathBuf>,
    /// Emit the uniform series of every sub-trajectory.
    #[arg(long)]
    grid: bool,
    /// Output CSV; standard output when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Jsonl,
}

#[derive(Debug, Args)]
struct EvalArgs {
    /// Original trajectory CSV file or directory.
    originals: PathBuf,
    /// Container file or directory matched to the originals by file stem.
    #[arg(required_unless_present = "epsilon_list")]
    compressed: Option<PathBuf>,
    /// Measure at the original timestamps (the only evaluation mode).
    #[arg(long)]
    at_original_timestamps: bool,
    /// Compress the originals in memory at each bound and report the trend.
    #[arg(long, value_delimiter = ',', conflicts_with = "compressed")]
    epsilon_list: Option<Vec<f64>>,
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long)]
    dedup: bool,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Output table; standard output when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Smooth,
    Jittery,
    Irregular,
}

#[derive(Debug, Args)]
struct SynthArgs {
    /// Output directory.
    #[arg(short, long)]
    output: PathBuf,
    #[arg(long, default_value_t = 10)]
    count: usize,
    #[arg(long, default_value_t = 10_000)]
    points: usize,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long, value_enum, default_value = "smooth")]
    kind: Kind,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Compress(args) => commands::compress(args),
        Command::Decompress(args) => commands::decompress(args),
        Command::Eval(args) => commands::eval(args),
        Command::Synth(args) => commands::synth(args),
        Command::Profiles => commands::profiles(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("trajzip: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

impl ParamArgs {
    fn profile(&self) -> Result<trajzip::Profile, CliError> {
        let mut p = trajzip::Profile::by_name(&self.profile)
            .ok_or_else(|| CliError::Usage(format!("unknown profile {:?}", self.profile)))?;
        let c = &mut p.constants;
        for (slot, value) in [
            (&mut c.a, self.a),
            (&mut c.b, self.b),
            (&mut c.c, self.c),
            (&mut c.d, self.d),
        ] {
            if let Some(v) = value {
                *slot = v;
            }
        }
        if let Some(v) = self.vmax {
            p.v_max = v;
        }
        if let Some(v) = self.eps_t {
            p.eps_t = v;
        }
        if let Some(v) = self.chunk_bits {
            p.chunk_bits = v;
        }
        if let Some(v) = self.eps_p_factor {
            p.eps_p_factor = v;
        }
        p.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(p)
    }

    fn codec(&self, eps: f64) -> Result<trajzip::CodecParams, CliError> {
        trajzip::CodecParams::from_profile(eps, &self.profile()?)
            .map_err(|e| CliError::Usage(e.to_string()))
    }
}
