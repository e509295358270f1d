//! Command-line front end: argument parsing, dispatch and report output.

pub mod commands;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use bwcert_core::field::FieldSpec;
use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use crate::commands::Options;
use crate::report::Report;

pub const EXIT_USAGE: i32 = 1;

#[derive(Debug, Parser)]
#[command(name = "bwcert", version, about = "Certify the osculating-tangent spread of Cayley's ruled cubic surface")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Print the JSON report instead of the text summary.
    #[arg(long, global = true)]
    pub json: bool,

    /// Also write the JSON report to this path.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads for the exhaustive scans.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Record per-check wall time (makes the JSON run-dependent).
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spread, covering, maximality and dual-spread certificates.
    Certify {
        #[arg(long, value_parser = parse_field)]
        field: FieldSpec,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Random spot checks over Q.
        #[arg(long, default_value_t = 100)]
        samples: u64,
    },
    /// Klein-image checks: the quadric intersection, reguli and projections.
    Klein {
        #[arg(long, value_parser = parse_field)]
        field: FieldSpec,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Random parameters over Q.
        #[arg(long, default_value_t = 100)]
        samples: u64,
    },
    /// The parabolic congruence in characteristic 3.
    Char3 {
        #[arg(long, value_parser = parse_field)]
        field: FieldSpec,
    },
    /// Vanishing-form probe over Q at a bounded degree.
    Ideal {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=3))]
        degree: u32,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    s.parse::<FieldSpec>().map_err(|e| e.to_string())
}

/// Parses `args`, runs the command and returns the exit code: 0 when every
/// check matched its prediction, 1 on usage errors, 2 on a violation.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{text}");
            } else {
                let _ = write!(stderr, "{text}");
            }
            return code;
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        builder = builder.num_threads(n);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let report = match pool.install(|| dispatch(&cli)) {
        Ok(r) => r,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let json = report.to_json();
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &json) {
            let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
            return EXIT_USAGE;
        }
    }
    let body = if cli.json { json } else { report.to_text() };
    let _ = stdout.write_all(body.as_bytes());
    report.exit_code()
}

fn dispatch(cli: &Cli) -> Result<Report, String> {
    let opts = Options { timings: cli.timings };
    match cli.command {
        Command::Certify { field, seed, samples } => Ok(commands::certify(field, seed, samples, opts)),
        Command::Klein { field, seed, samples } => Ok(commands::klein(field, seed, samples, opts)),
        Command::Char3 { field } => {
            if field.characteristic() != 3 {
                return Err(format!("char3 needs a field of characteristic 3, got {field}"));
            }
            commands::char3(field, opts).map_err(|e| e.to_string())
        }
        Command::Ideal { degree, samples, seed } => {
            let n = samples.unwrap_or_else(|| commands::default_samples(degree));
            if n == 0 {
                return Err("--samples must be at least 1".into());
            }
            commands::ideal(degree, n, seed, opts).map_err(|e| e.to_string())
        }
    }
}
