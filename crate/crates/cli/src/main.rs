//! `m2z4`: factor tables, code construction, duals, self-dual search and Gray parameters
//! for cyclic codes over `M2(Z4)` and `M2(Z2)`.

mod commands;
mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{Format, RawOptions, RunConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl From<m2z4_core::Error> for CliError {
    fn from(e: m2z4_core::Error) -> CliError {
        match e {
            m2z4_core::Error::EvenLength(n) => CliError::Usage(format!("n must be odd (got {n})")),
            e => CliError::Usage(e.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "m2z4", version, about = "Cyclic codes over M2(Z4) and M2(Z2)")]
struct Cli {
    /// Config file with key=value lines; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Length: 7, 3,5,7 or a range 3..9 (odd values only).
    #[arg(long, global = true)]
    n: Option<String>,
    /// m2z4 or m2z2.
    #[arg(long, global = true)]
    ring: Option<String>,
    /// euclidean or hermitian.
    #[arg(long, global = true)]
    kind: Option<String>,
    /// Units m tried for 2+Um factors: one or all-units.
    #[arg(long = "m-policy", global = true)]
    m_policy: Option<String>,
    /// Most codewords enumerated for an exact minimum distance.
    #[arg(long, global = true)]
    budget: Option<String>,
    /// text, json or csv.
    #[arg(long, global = true)]
    format: Option<String>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,
    /// Include the exhaustive length-7 distance scans.
    #[arg(long, global = true)]
    slow: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Irreducible factors of x^n-1 with dual partners and Hensel lifts.
    Factor,
    /// Build the code of an assignment such as "n=7; f0:u; f1:zero; f2:one".
    Build { assignment: String },
    /// Kernel dual next to the assignment dual.
    Dual { assignment: String },
    /// Size, cyclicity, self-duality and Gray parameters of an assignment's code.
    Check { assignment: String },
    /// All self-dual codes among factor assignments.
    Search,
    /// Gray image parameters and a minimum-weight codeword.
    Gray { assignment: String },
    /// Re-run every published example and structural check.
    VerifyPaper,
}

fn write_output(cfg: &RunConfig, out: &commands::Output) -> Result<(), CliError> {
    let body = match cfg.format {
        Format::Text => out.text.clone(),
        Format::Json => serde_json::to_string_pretty(&out.json).expect("json") + "\n",
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&out.csv_header)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            for row in &out.csv_rows {
                w.write_record(row)
                    .map_err(|e| CliError::Usage(e.to_string()))?;
            }
            String::from_utf8(w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?)
                .expect("utf8")
        }
    };
    match &cfg.out {
        Some(p) => std::fs::write(p, body)?,
        None => std::io::stdout().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let flags = RawOptions {
        n: cli.n,
        ring: cli.ring,
        kind: cli.kind,
        m_policy: cli.m_policy,
        budget: cli.budget,
        format: cli.format,
        out: cli.out,
        slow: cli.slow.then_some(true),
    };
    let file = match &cli.config {
        Some(p) => RawOptions::from_file(p)?,
        None => RawOptions::default(),
    };
    let cfg = RunConfig::resolve(flags.or(file))?;
    let out = match &cli.command {
        Command::Factor => commands::factor(&cfg)?,
        Command::Build { assignment } => commands::build(&cfg, assignment)?,
        Command::Dual { assignment } => commands::dual(&cfg, assignment)?,
        Command::Check { assignment } => commands::check(&cfg, assignment)?,
        Command::Search => commands::search(&cfg)?,
        Command::Gray { assignment } => commands::gray_cmd(&cfg, assignment)?,
        Command::VerifyPaper => commands::verify_paper(&cfg)?,
    };
    write_output(&cfg, &out)?;
    Ok(!out.failed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
