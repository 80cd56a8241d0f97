//! Command line front-end for `thomforge-core`.
//!
//! Every subcommand produces a [`Report`] that renders either as a text table
//! or as a versioned JSON document. Exit codes: `0` success, `2` a negative
//! mathematical verdict (an obstruction, an invalid presentation, an impure
//! Euler class), `1` bad input.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub mod checks;
pub mod commands;
pub mod presentation;

pub const REPORT_SCHEMA: &str = "thomforge.report";
pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{message}")]
    Invalid { code: &'static str, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Invalid { .. } => 2,
        }
    }

    fn code(&self) -> &'static str {
        match self {
            CliError::Input(_) => "input_error",
            CliError::Invalid { code, .. } => code,
        }
    }
}

/// Core errors caused by what the user passed in.
pub(crate) fn input(e: thomforge_core::Error) -> CliError {
    CliError::Input(e.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "thomforge", version, about = "Thom-space models, weights, Massey products and Quillen models")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Seed for the sampled property checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Truncation degree, overriding the one in the input file.
    #[arg(long, global = true)]
    pub truncate: Option<u32>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a presentation: degrees, d² = 0, weights, Hodge types.
    Validate {
        file: PathBuf,
        /// Number of random triples used to sample the algebra laws.
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
    /// Betti numbers and representatives.
    Cohomology {
        file: PathBuf,
        #[arg(long)]
        up_to: Option<u32>,
    },
    /// Cohomology and ring structure of the Thom model A[e].
    Thom {
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        euler: String,
        #[arg(long)]
        rank: u32,
        #[arg(long)]
        up_to: Option<u32>,
    },
    /// Formality certificate from the weights (natural weights if none are given).
    Formality {
        file: PathBuf,
        /// Certify the Thom model A[e] instead of A.
        #[arg(long, requires = "rank")]
        euler: Option<String>,
        #[arg(long, requires = "euler")]
        rank: Option<u32>,
        #[arg(long)]
        up_to: Option<u32>,
    },
    /// Bigraded minimal model of a simply connected presentation.
    MinimalModel {
        file: PathBuf,
        #[arg(long)]
        up_to: Option<u32>,
    },
    /// Triple Massey product <x, y, z>.
    Massey {
        file: PathBuf,
        x: String,
        y: String,
        z: String,
        /// Also compare with <w_x, w_y, w_z> in the Thom model A[e].
        #[arg(long, requires = "rank")]
        euler: Option<String>,
        #[arg(long, requires = "euler")]
        rank: Option<u32>,
    },
    /// Quillen model of the Thom space over a formal base.
    Quillen {
        #[arg(long)]
        cohomology: PathBuf,
        #[arg(long)]
        euler: String,
        #[arg(long)]
        rank: u32,
    },
    /// Tate-twisted Thom model of a split mixed Hodge presentation.
    HodgeThom {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        euler: String,
        #[arg(long)]
        chern_rank: u32,
        #[arg(long)]
        up_to: Option<u32>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Cohomology { .. } => "cohomology",
            Command::Thom { .. } => "thom",
            Command::Formality { .. } => "formality",
            Command::MinimalModel { .. } => "minimal-model",
            Command::Massey { .. } => "massey",
            Command::Quillen { .. } => "quillen",
            Command::HodgeThom { .. } => "hodge-thom",
        }
    }
}

/// Settings shared by all subcommands.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub seed: u64,
    pub truncate: Option<u32>,
    /// Default truncation when neither the file nor `--truncate` gives one.
    pub default_truncate: Option<u32>,
}

/// Result of a subcommand.
#[derive(Clone, Debug)]
pub struct Report {
    pub text: String,
    pub json: Value,
    /// A negative verdict: rendered normally, but exits with 2.
    pub finding: bool,
}

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn envelope(command: &str, status: &str, key: &str, body: Value) -> Value {
    json!({
        "schema": REPORT_SCHEMA,
        "version": REPORT_VERSION,
        "command": command,
        "status": status,
        key: body,
    })
}

pub fn render(cli: &Cli, result: Result<Report, CliError>) -> Outcome {
    let command = cli.command.name();
    match result {
        Ok(r) => {
            let code = if r.finding { 2 } else { 0 };
            let stdout = match cli.format {
                Format::Text => r.text,
                Format::Json => {
                    let status = if r.finding { "finding" } else { "ok" };
                    pretty(&envelope(command, status, "result", r.json))
                }
            };
            Outcome {
                code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => {
            let stdout = match cli.format {
                Format::Text => String::new(),
                Format::Json => pretty(&envelope(
                    command,
                    "error",
                    "error",
                    json!({ "code": e.code(), "message": e.to_string() }),
                )),
            };
            Outcome {
                code: e.exit_code(),
                stdout,
                stderr: format!("error: {e}\n"),
            }
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

pub fn run_cli(cli: &Cli, default_truncate: Option<u32>) -> Outcome {
    let cfg = RunConfig {
        seed: cli.seed,
        truncate: cli.truncate,
        default_truncate,
    };
    render(cli, commands::dispatch(&cli.command, &cfg))
}

/// Parse `argv` (including the program name) and run.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let default_truncate = match std::env::var("THOMFORGE_TRUNCATE") {
        Ok(v) => match v.trim().parse() {
            Ok(n) => Some(n),
            Err(_) => {
                return render(
                    &cli,
                    Err(CliError::Input(format!("THOMFORGE_TRUNCATE=`{v}` is not a degree"))),
                )
            }
        },
        Err(_) => None,
    };
    run_cli(&cli, default_truncate)
}
