use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use defring_cli::bounds::{bounds, bounds_sweep_csv};
use defring_cli::fibre::fibre_count;
use defring_cli::ingest::ingest;
use defring_cli::report::{report, to_json};
use defring_cli::selftest::selftest;
use defring_cli::{CliError, CliResult};
use defring_core::genmatrix::verify_example_3_5;

/// Deformation bookkeeping for residual representations of local Galois groups.
///
/// Exit codes: 0 success, 1 invalid input, 2 internal failure.
/// DEFRING_CAP overrides the group closure cap.
#[derive(Parser)]
#[command(name = "defring", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full deformation report for a representation spec (JSON).
    Report {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Expected dimensions and partition bounds for given d and [F:Q_p].
    Bounds {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        degree: usize,
        /// Print the full partition table as CSV.
        #[arg(long)]
        sweep: bool,
    },
    /// Check the worked 2x2 example with parameters t and d.
    Example35,
    /// Enumerate the tuples over GF(q) sharing the target's coefficient laws.
    FibreCount {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        d: usize,
        /// JSON file with the target tuple: {"generators": [matrix, ...]}.
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Run the built-in regression checks.
    Selftest,
}

fn json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s
}

fn write(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|e| CliError::Write(format!("{}: {e}", path.display())))
}

fn run(cmd: Command) -> CliResult<()> {
    match cmd {
        Command::Report { input, out } => {
            let text = to_json(&report(&ingest(&input)?)?);
            match out {
                Some(path) => write(&path, &text)?,
                None => print!("{text}"),
            }
        }
        Command::Bounds { d, degree, sweep } => {
            if sweep {
                print!("{}", bounds_sweep_csv(d, degree)?);
            } else {
                print!("{}", json(&bounds(d, degree)?));
            }
        }
        Command::Example35 => {
            let r = verify_example_3_5();
            print!("{}", json(&r));
            if !r.passed() {
                return Err(CliError::Failed("example 3.5 did not reproduce".into()));
            }
        }
        Command::FibreCount { q, d, spec, csv } => {
            let (summary, result) = fibre_count(q, d, &spec)?;
            if let Some(path) = csv {
                write(&path, &result.to_csv())?;
            }
            print!("{}", json(&summary));
        }
        Command::Selftest => {
            let checks = selftest();
            for c in &checks {
                println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            let failed = checks.iter().filter(|c| !c.passed).count();
            if failed > 0 {
                return Err(CliError::Failed(format!("{failed} self-test checks failed")));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
