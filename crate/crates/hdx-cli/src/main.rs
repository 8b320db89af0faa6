use std::path::PathBuf;
use std::process::ExitCode as ProcessExit;

use clap::{Args, Parser, Subcommand};

use hdx_cli::commands::{
    cmd_analyze, cmd_generate, cmd_scan, cmd_verify, CommandError, CommandOutput, CommonOpts,
    ComplexSource,
};
use hdx_cli::{ExitCode, DEFAULT_SEED};
use hdx_core::budget::Budget;

/// Combinatorial and spectral expansion analysis of weighted simplicial
/// complexes, with exhaustive inequality verification.
#[derive(Parser)]
#[command(name = "hdx", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SourceArgs {
    /// Complex file (JSON).
    #[arg(long = "in", value_name = "PATH", conflicts_with = "gen")]
    input: Option<PathBuf>,
    /// Generator spec: complete:n:d, two_triangles, two_triangles_weighted,
    /// bowtie.
    #[arg(long, value_name = "SPEC")]
    gen: Option<String>,
}

impl SourceArgs {
    fn to_source(&self) -> Result<ComplexSource, CommandError> {
        match (&self.input, &self.gen) {
            (Some(path), None) => Ok(ComplexSource::File(path.clone())),
            (None, Some(spec)) => Ok(ComplexSource::Generator(spec.clone())),
            _ => Err(CommandError {
                exit: ExitCode::InputError,
                message: "exactly one of --in or --gen is required".into(),
            }),
        }
    }
}

#[derive(Args)]
struct CommonArgs {
    /// Write the report (or generated file) here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Tolerance for comparisons involving eigenvalues or Euler's constant.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Classify heavy faces with each link's own coboundary expansion.
    #[arg(long)]
    per_link_beta: bool,
    /// Use the raw uniform beta in theorem bounds instead of min(beta, 1).
    #[arg(long)]
    no_clamp_beta: bool,
}

impl CommonArgs {
    fn opts(&self) -> CommonOpts {
        CommonOpts {
            tol: self.tol,
            per_link_beta: self.per_link_beta,
            clamp_beta: !self.no_clamp_beta,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write a complex file for a generator spec.
    Generate {
        /// complete:n:d, two_triangles, two_triangles_weighted, bowtie.
        spec: String,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Expansion constants, link tables, and optional heavy-face tables.
    Analyze {
        #[command(flatten)]
        source: SourceArgs,
        /// Coefficient group, e.g. z2, z3, z2xz4.
        #[arg(long)]
        group: String,
        /// Cochain dimension (validated against the complex).
        #[arg(long)]
        k: Option<i32>,
        /// Optional cochain file for heavy-face tables.
        #[arg(long, value_name = "PATH")]
        cochain: Option<PathBuf>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run the full lemma/proposition/theorem chain on one cochain.
    Verify {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, value_name = "PATH")]
        cochain: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Scan the main theorem over bounded-support or sampled cochains.
    Scan {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        group: String,
        #[arg(long)]
        k: i32,
        /// Exhaustive over support sizes 1..=M (zero cochain skipped).
        #[arg(long, value_name = "M", conflicts_with = "sample")]
        max_support: Option<usize>,
        /// Seeded-sample N cochains instead of exhausting.
        #[arg(long, value_name = "N")]
        sample: Option<u64>,
        /// Seed for sampled mode (fixed default, printed).
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Worker threads for the scan (reports are worker-invariant).
        #[arg(long)]
        workers: Option<usize>,
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn write_or_print(out: &Option<PathBuf>, content: &str) -> Result<(), CommandError> {
    match out {
        Some(path) => std::fs::write(path, content).map_err(|e| CommandError {
            exit: ExitCode::InputError,
            message: format!("cannot write {}: {e}", path.display()),
        }),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn emit(output: CommandOutput, out: &Option<PathBuf>) -> Result<ExitCode, CommandError> {
    for line in &output.summary {
        eprintln!("{line}");
    }
    write_or_print(out, &output.report.to_json())?;
    if let Some(path) = out {
        eprintln!("report written to {}", path.display());
    }
    Ok(output.exit)
}

fn run() -> Result<ExitCode, CommandError> {
    let cli = Cli::try_parse().map_err(|e| CommandError {
        exit: ExitCode::InputError,
        message: e.to_string(),
    })?;
    let budget = Budget::from_env();
    match cli.command {
        Command::Generate { spec, out } => {
            let content = cmd_generate(&spec)?;
            write_or_print(&out, &content)?;
            if let Some(path) = &out {
                eprintln!("complex written to {}", path.display());
            }
            Ok(ExitCode::Ok)
        }
        Command::Analyze {
            source,
            group,
            k,
            cochain,
            common,
        } => {
            let output = cmd_analyze(
                &source.to_source()?,
                &group,
                k,
                cochain.as_deref(),
                &common.opts(),
                &budget,
            )?;
            emit(output, &common.out)
        }
        Command::Verify {
            source,
            cochain,
            common,
        } => {
            let output = cmd_verify(&source.to_source()?, &cochain, &common.opts(), &budget)?;
            emit(output, &common.out)
        }
        Command::Scan {
            source,
            group,
            k,
            max_support,
            sample,
            seed,
            workers,
            common,
        } => {
            let output = cmd_scan(
                &source.to_source()?,
                &group,
                k,
                max_support,
                sample,
                seed,
                workers,
                &common.opts(),
                &budget,
            )?;
            emit(output, &common.out)
        }
    }
}

fn main() -> ProcessExit {
    match run() {
        Ok(code) => ProcessExit::from(code.code() as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ProcessExit::from(e.exit.code() as u8)
        }
    }
}
