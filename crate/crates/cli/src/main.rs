use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use courant_cli::suites::{run_with, Bracket};
use courant_cli::{emit, load_file, render, Suite};
use courant_core::battery::DEFAULT_SEED;
use courant_core::{BatteryConfig, Status};

/// Exact checks of Courant algebroids built from Cartan geometry models.
#[derive(Parser)]
#[command(name = "courant", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a model file and check the algebraic preconditions.
    Validate { file: PathBuf },
    /// Run check suites on a model.
    Run {
        file: PathBuf,
        /// Suite to run; repeat the flag to combine suites.
        #[arg(long = "suite", value_enum, default_value = "all")]
        suites: Vec<Suite>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Smaller battery, same construction.
        #[arg(long)]
        quick: bool,
        /// Bracket variant; non-default values are corruptions for negative controls.
        #[arg(long, value_enum, default_value = "full")]
        bracket: Bracket,
        /// Also write the report as JSON to this path.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Write the components of the twisting 4-form as TOML.
    EmitH {
        file: PathBuf,
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

fn load(path: &Path) -> Result<courant_cli::LoadedModel, ExitCode> {
    load_file(path).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        ExitCode::from(2)
    })
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Validate { file } => {
            let loaded = match load(&file) {
                Ok(m) => m,
                Err(code) => return code,
            };
            for r in &loaded.validation.records {
                let tag = match &r.status {
                    Status::Pass => "PASS".to_string(),
                    Status::Fail(w) => format!("FAIL  {w}"),
                    Status::NotApplicable(w) => format!("n/a   {w}"),
                };
                println!("{:<24} {tag}", r.name);
            }
            if loaded.is_valid() {
                println!("{}: valid", loaded.name);
                ExitCode::SUCCESS
            } else {
                println!("{}: invalid", loaded.name);
                ExitCode::from(2)
            }
        }
        Command::Run {
            file,
            suites,
            seed,
            quick,
            bracket,
            json,
        } => {
            let loaded = match load(&file) {
                Ok(m) => m,
                Err(code) => return code,
            };
            let config = if quick {
                BatteryConfig::quick(seed)
            } else {
                BatteryConfig::with_seed(seed)
            };
            let report = run_with(&loaded, &suites, config, bracket);
            print!("{}", render::human(&report));
            if let Some(path) = json {
                if let Err(e) = std::fs::write(&path, render::json(&report)) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Command::EmitH { file, out, seed } => {
            let loaded = match load(&file) {
                Ok(m) => m,
                Err(code) => return code,
            };
            if !loaded.is_valid() {
                eprintln!("error: {} failed validation", file.display());
                return ExitCode::from(2);
            }
            let (checks, h) = emit::extract(&loaded, BatteryConfig::with_seed(seed));
            if let Some(bad) = checks.failures().next() {
                eprintln!("error: refusing to write H: {} failed: {:?}", bad.name, bad.status);
                return ExitCode::from(1);
            }
            if let Err(e) = std::fs::write(&out, emit::to_toml(&h)) {
                eprintln!("error: cannot write {}: {e}", out.display());
                return ExitCode::from(2);
            }
            println!("wrote {} components to {}", h.components.len(), out.display());
            ExitCode::SUCCESS
        }
    }
}
