use std::path::PathBuf;
use std::process::ExitCode;

use apartments_cli::commands;
use apartments_cli::{CliError, Outcome};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "apartments", version, about = "Orthogonal apartments of finite Grassmannians, checked exactly")]
struct Cli {
    /// Write the report here instead of standard output
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,

    /// Lift the default size bounds
    #[arg(long, global = true)]
    allow_large: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Member, complementary and intersection counts of one apartment shape
    ApartmentStats { n: usize, k: usize },
    /// Meet sizes whose complementary counts coincide
    DegeneracyScan {
        #[arg(default_value_t = 4)]
        k_max: usize,
        #[arg(default_value_t = 12)]
        n_max: usize,
    },
    /// Check a map fixture for preservation and run the apartment pipeline
    CheckMap { fixture: PathBuf },
    /// Decide whether a family of k-dimensional subspaces is an orthogonal apartment
    VerifyFamily { file: PathBuf, k: usize },
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::ApartmentStats { n, k } => commands::apartment_stats(*n, *k, cli.allow_large),
        Command::DegeneracyScan { k_max, n_max } => commands::degeneracy_scan(*k_max, *n_max, cli.allow_large),
        Command::CheckMap { fixture } => commands::check_map(fixture),
        Command::VerifyFamily { file, k } => commands::verify_family(file, *k),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let rendered = match cli.format {
        OutputFormat::Text => outcome.report.to_text(),
        OutputFormat::Structured => outcome.report.to_structured(),
    };
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{rendered}"),
    }
    ExitCode::from(outcome.exit_code() as u8)
}
