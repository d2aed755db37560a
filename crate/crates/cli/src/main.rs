use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use semifree_cli::{commands, CliError, Report};

/// Semi-free DGAs: validation, weak division, boundary bases and acyclicity
/// checks. File arguments accept a path or the name of a shipped fixture.
#[derive(Parser)]
#[command(name = "semifree", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the presentation conditions of one or more files
    Validate {
        #[arg(required = true)]
        files: Vec<String>,
        /// Worker threads for checking several files
        #[arg(long, short, default_value_t = 1)]
        jobs: usize,
    },
    /// Apply the differential to an element
    Diff { file: String, poly: String },
    /// Print the degree function and the value on an element
    Nu { file: String, poly: String },
    /// Weak division of an element by a family
    Divide {
        file: String,
        poly: String,
        #[arg(long, required = true, num_args = 1..)]
        by: Vec<String>,
    },
    /// Complete a family of boundaries to a weakly free basis
    Basis {
        file: String,
        /// Either `y` or `y:g` with `g = d(y)`
        #[arg(long, required = true, num_args = 1..)]
        pairs: Vec<String>,
    },
    /// Bounded search for membership in the two-sided boundary ideal
    Member {
        file: String,
        poly: String,
        #[arg(long, default_value_t = 6)]
        cap: u64,
    },
    /// Turn a two-sided certificate for a cycle into a preimage
    Witness {
        file: String,
        poly: String,
        #[arg(long)]
        cert: String,
    },
    /// Bounded acyclicity check
    Acyclic {
        file: String,
        #[arg(long, default_value_t = 6)]
        cap: u64,
    },
    /// Brute-force preimage search in the truncated complex
    Oracle {
        file: String,
        poly: String,
        #[arg(long, default_value_t = 6)]
        cap: u64,
    },
    /// Checks on a graded-commutative presentation
    ScCheck {
        file: String,
        /// Longest monomial considered by the searches
        #[arg(long, default_value_t = 4)]
        cap: usize,
    },
    /// List or print the shipped fixtures
    Fixtures {
        #[command(subcommand)]
        action: FixtureAction,
    },
}

#[derive(Subcommand)]
enum FixtureAction {
    List,
    Show { name: String },
}

fn run(cmd: Command) -> Result<Report, CliError> {
    match cmd {
        Command::Validate { files, jobs } => commands::validate(&files, jobs),
        Command::Diff { file, poly } => commands::diff(&file, &poly),
        Command::Nu { file, poly } => commands::nu(&file, &poly),
        Command::Divide { file, poly, by } => commands::divide(&file, &poly, &by),
        Command::Basis { file, pairs } => commands::basis(&file, &pairs),
        Command::Member { file, poly, cap } => commands::member(&file, &poly, cap),
        Command::Witness { file, poly, cert } => commands::witness(&file, &poly, &cert),
        Command::Acyclic { file, cap } => commands::acyclic(&file, cap),
        Command::Oracle { file, poly, cap } => commands::oracle(&file, &poly, cap),
        Command::ScCheck { file, cap } => commands::sc_check(&file, cap),
        Command::Fixtures { action: FixtureAction::List } => commands::fixtures_list(),
        Command::Fixtures { action: FixtureAction::Show { name } } => commands::fixtures_show(&name),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) => {
            let _ = std::io::stdout().write_all(report.text.as_bytes());
            ExitCode::from(report.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
