use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rnadist_core::{Format, Metric};

mod commands;
mod error;

use error::CliError;

/// Compare RNA secondary structures (pseudoknots allowed).
///
/// Structures given inline are read as dot-bracket; a path to an existing
/// file is read as a single-record file in either format.
#[derive(Debug, Parser)]
#[command(name = "rnadist", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check every record of a file and report violations.
    Validate { path: PathBuf },
    /// Distance between two structures.
    Dist {
        a: String,
        b: String,
        #[arg(long, value_enum, default_value_t = MetricArg::Inv)]
        metric: MetricArg,
        /// Also print the base-pair distance, Ω and rank details.
        #[arg(long, short)]
        verbose: bool,
    },
    /// Orbit decomposition of two structures.
    Orbits { a: String, b: String },
    /// Pairwise distance matrix of all records in a file, as TSV.
    Matrix {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = MetricArg::Inv)]
        metric: MetricArg,
    },
    /// Generate random structures.
    Gen {
        /// Structure length.
        #[arg(long, short = 'n')]
        length: usize,
        /// Contacts per structure.
        #[arg(long, short = 'k')]
        contacts: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = FormatArg::Dotbracket)]
        format: FormatArg,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MetricArg {
    Inv,
    Sgr,
    Sgr2,
    Mag,
}

impl From<MetricArg> for Metric {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::Inv => Metric::Inv,
            MetricArg::Sgr => Metric::Sgr,
            MetricArg::Sgr2 => Metric::Sgr2,
            MetricArg::Mag => Metric::Mag,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Pairlist,
    Dotbracket,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Pairlist => Format::PairList,
            FormatArg::Dotbracket => Format::DotBracket,
        }
    }
}

fn run(cli: Cli, out: &mut impl Write) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Validate { path } => commands::validate(&path, out),
        Command::Dist {
            a,
            b,
            metric,
            verbose,
        } => commands::dist(&a, &b, metric.into(), verbose, out),
        Command::Orbits { a, b } => commands::orbits(&a, &b, out),
        Command::Matrix { path, metric } => commands::matrix(&path, metric.into(), out),
        Command::Gen {
            length,
            contacts,
            count,
            seed,
            format,
        } => commands::generate(length, contacts, count, seed, format.into(), out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(cli, &mut out);
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(code), Ok(())) => code,
        (Ok(_), Err(e)) => CliError::Io(e.to_string()).report(),
        (Err(e), _) => e.report(),
    }
}
