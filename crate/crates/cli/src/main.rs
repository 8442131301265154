use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use galois_cli::exec::{load, run_text, RunError, RunOptions};
use galois_cli::{builtin, scenario::Scenario};

#[derive(Parser)]
#[command(name = "galois", version, about = "Verify scenarios over skew group rings of invariants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file, or a shipped suite given as builtin:NAME.
    Run {
        scenario: String,
        /// Worker threads for independent jobs.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Largest span dimension for growth profiles.
        #[arg(long)]
        cap_dim: Option<usize>,
        /// Largest order of a finite group the algebra may need.
        #[arg(long)]
        cap_group: Option<usize>,
    },
    /// List the shipped suites.
    ListSuites,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn fail(e: &RunError) -> ExitCode {
    eprintln!("galois: {e}");
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::ListSuites => {
            for name in builtin::names() {
                let text = builtin::get(name).expect("listed suite exists");
                let desc = serde_json::from_str::<Scenario>(text).ok().and_then(|s| s.description).unwrap_or_default();
                println!("{name:<14} {desc}");
            }
            ExitCode::SUCCESS
        }
        Command::Run { scenario, jobs, format, out, cap_dim, cap_group } => {
            let mut opts = RunOptions { jobs, ..RunOptions::default() };
            if let Some(d) = cap_dim {
                opts.cap_dim = d;
            }
            if let Some(g) = cap_group {
                opts.cap_group = g;
            }
            let outcome = match load(&scenario).and_then(|text| run_text(&text, &opts)) {
                Ok(o) => o,
                Err(e) => return fail(&e),
            };
            let rendered = match format {
                Format::Json => outcome.report.to_json(),
                Format::Text => outcome.report.to_text(),
            };
            match out {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, rendered) {
                        return fail(&RunError::Io(format!("{}: {e}", path.display())));
                    }
                }
                None => print!("{rendered}"),
            }
            ExitCode::from(outcome.exit_code as u8)
        }
    }
}
