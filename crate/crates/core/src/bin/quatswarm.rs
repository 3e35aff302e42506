use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use quatswarm::harness::{self, execute, load_config, load_records};
use quatswarm::problems::{suite, DEFAULT_DIMENSION};

#[derive(Parser)]
#[command(version, about = "Run and report bat-algorithm benchmark experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run (or resume) the experiment described by a JSON config.
    Run { config: PathBuf },
    /// Summarize a results directory into summary.json and report.txt.
    Report { results: PathBuf },
    /// Write mean convergence curves as CSV.
    Plotdata { results: PathBuf, out: PathBuf },
    /// List the benchmark problems.
    ListProblems {
        #[arg(long, default_value_t = DEFAULT_DIMENSION)]
        dimension: usize,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse().command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> quatswarm::Result<bool> {
    match command {
        Command::Run { config } => {
            let cfg = load_config(&config)?;
            let outcome = execute(&cfg)?;
            println!(
                "{} records ({} executed) in {}",
                outcome.records.len(),
                outcome.executed,
                cfg.output_dir.display()
            );
            for f in &outcome.failures {
                eprintln!("cell {} / {} failed: {}", f.algorithm, f.problem, f.error);
            }
            if !outcome.records.is_empty() {
                harness::report(&outcome.records)?.write(&cfg.output_dir)?;
            }
            Ok(outcome.is_success())
        }
        Command::Report { results } => {
            let report = harness::report(&load_records(&results)?)?;
            report.write(&results)?;
            print!("{}", report.to_text());
            Ok(true)
        }
        Command::Plotdata { results, out } => {
            let written = harness::emit_convergence(&load_records(&results)?, &out)?;
            println!("{} files written to {}", written.len(), out.display());
            Ok(true)
        }
        Command::ListProblems { dimension } => {
            for problem in suite(dimension)? {
                println!("{}", problem.listing());
            }
            Ok(true)
        }
    }
}
