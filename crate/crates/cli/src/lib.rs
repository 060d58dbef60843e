//! Command-line front end for the QM decision engine.

pub mod commands;
pub mod problem;
pub mod report;

use clap::{Parser, Subcommand};

use commands::{CliError, PathMode};
use report::Report;

#[derive(Parser, Debug)]
#[command(name = "qmdecide", version, about = "Decide quaternionic multiplication on abelian varieties over finite fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a Weil polynomial, or enumerate all of a given degree.
    Weil {
        #[arg(long)]
        q: u64,
        /// Coefficients, constant term first.
        #[arg(long, allow_hyphen_values = true)]
        poly: Option<String>,
        #[arg(long)]
        enumerate: Option<usize>,
        /// Write the enumerated corpus here.
        #[arg(long)]
        output: Option<String>,
    },
    /// Places of a number field above p, or its archimedean places.
    Places {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        precision_cap: Option<u32>,
    },
    /// Endomorphism algebra of a simple isogeny class.
    Endalg {
        #[arg(long)]
        q: u64,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        precision_cap: Option<u32>,
    },
    /// Decide QM by D for the problem files given.
    Qm {
        #[arg(long, required = true)]
        problem: Vec<String>,
        #[arg(long, value_enum, default_value = "auto")]
        path: PathMode,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        precision_cap: Option<u32>,
    },
    /// Abelian surfaces with QM by a quaternion algebra over Q.
    Surface {
        #[arg(long)]
        problem: String,
        #[arg(long)]
        precision_cap: Option<u32>,
    },
    /// Check a raw Yu feasibility instance.
    Yu {
        #[arg(long)]
        problem: String,
    },
}

/// Output of one invocation: exit code, stdout, stderr.
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn render(reports: Vec<Report>) -> String {
    if reports.len() == 1 {
        return reports[0].to_json();
    }
    let vals: Vec<serde_json::Value> = reports
        .iter()
        .map(|r| serde_json::to_value(r).expect("report serializes"))
        .collect();
    serde_json::to_string_pretty(&vals).expect("reports serialize")
}

pub fn execute(cli: Cli) -> Outcome {
    let res: Result<Vec<Report>, CliError> = match cli.command {
        Command::Weil { q, poly, enumerate, output } => {
            commands::cmd_weil(q, poly.as_deref(), enumerate, output.as_deref()).map(|r| vec![r])
        }
        Command::Places { poly, p, precision_cap } => commands::cmd_places(&poly, p, precision_cap).map(|r| vec![r]),
        Command::Endalg { q, poly, precision_cap } => commands::cmd_endalg(q, &poly, precision_cap).map(|r| vec![r]),
        Command::Qm { problem, path, jobs, precision_cap } => commands::cmd_qm(&problem, path, jobs, precision_cap),
        Command::Surface { problem, precision_cap } => commands::cmd_surface(&problem, precision_cap).map(|r| vec![r]),
        Command::Yu { problem } => commands::cmd_yu(&problem).map(|r| vec![r]),
    };
    match res {
        Ok(rs) => Outcome { code: 0, stdout: render(rs) + "\n", stderr: String::new() },
        Err(e) => Outcome { code: e.code, stdout: String::new(), stderr: format!("error: {}\n", e.message) },
    }
}
