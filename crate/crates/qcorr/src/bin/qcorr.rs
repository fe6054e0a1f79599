use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qcorr::format::render;
use qcorr::{builtin_scenarios, find_builtin, run, Format, RunReport, Scenario};

/// Outcome probabilities and classical/quantum correlation splits of joint
/// observables.
#[derive(Parser)]
#[command(name = "qcorr", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in scenarios.
    List,
    /// Run a built-in scenario, or `all` of them, and print every table.
    Run {
        name: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a scenario described in a JSON file.
    Compute {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check every built-in scenario against its golden tables.
    Verify,
}

fn emit(text: &str, out: Option<&Path>) -> qcorr::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run_all(scenarios: &[Scenario]) -> qcorr::Result<Vec<RunReport>> {
    scenarios.iter().map(run).collect()
}

fn main_inner(cli: Cli) -> qcorr::Result<ExitCode> {
    match cli.command {
        Command::List => {
            for s in builtin_scenarios() {
                println!("{:<20} {}", s.name, s.description);
            }
        }
        Command::Run { name, format, out } => {
            let scenarios = if name == "all" {
                builtin_scenarios()
            } else {
                vec![find_builtin(&name)?]
            };
            emit(&render(&run_all(&scenarios)?, format), out.as_deref())?;
        }
        Command::Compute {
            config,
            format,
            out,
        } => {
            let report = run(&Scenario::from_path(&config)?)?;
            emit(&render(&[report], format), out.as_deref())?;
        }
        Command::Verify => {
            let reports = run_all(&builtin_scenarios())?;
            for r in &reports {
                println!(
                    "{} {:<20} max deviation {:.1e}",
                    if r.pass { "PASS" } else { "FAIL" },
                    r.name,
                    r.worst_deviation()
                );
            }
            let passed = reports.iter().filter(|r| r.pass).count();
            println!("{passed}/{} scenarios pass", reports.len());
            if passed != reports.len() {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match main_inner(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("qcorr: {e}");
            ExitCode::from(2)
        }
    }
}
