//! `aniso`: command-line front end for the anisotropic perimeter library.

mod commands;
mod repro;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;
use thiserror::Error;

use aniso_core::io::to_canonical_string;
use aniso_core::Tol;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Input { path: PathBuf, source: aniso_core::Error },
    #[error(transparent)]
    Core(#[from] aniso_core::Error),
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "aniso", version, about = "Anisotropic perimeters, Steiner symmetrization and rigidity checks")]
pub struct Cli {
    /// Comparison tolerance; overrides ANISO_TOL.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Write the report to a file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Support, gauge, polar body and normals of a body.
    Body {
        #[arg(long)]
        body: PathBuf,
        /// Point `x,y[,...]` at which to evaluate support and gauge.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_list)]
        query: Option<Coords>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Steiner symmetral of a planar body.
    Steiner {
        #[arg(long)]
        body: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Anisotropic perimeter of a polygon set, or of W[v, b] given as `v.json b.json`.
    Perimeter {
        #[arg(long)]
        body: PathBuf,
        #[arg(long, num_args = 1..=2, required = true)]
        set: Vec<PathBuf>,
        /// Strip `a,b` of abscissae; the whole line by default.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_strip)]
        strip: Option<(f64, f64)>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Equality conditions and rigidity-equivalence verdict.
    Rigidity {
        #[arg(long)]
        body: PathBuf,
        #[arg(long)]
        profile: PathBuf,
        #[arg(long)]
        barycenter: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Total and anisotropic total variation of a vector measure.
    Tvk {
        #[arg(long)]
        body: PathBuf,
        #[arg(long)]
        measure: PathBuf,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_strip)]
        strip: Option<(f64, f64)>,
        /// Dyadic depth of the partition oracle.
        #[arg(long, default_value_t = 12)]
        depth: u32,
    },
    /// Reproduce worked examples and run the randomized checks.
    Repro {
        #[command(subcommand)]
        which: repro::Which,
    },
}

/// Comma-separated coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Coords(pub Vec<f64>);

fn parse_list(s: &str) -> Result<Coords, String> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}")))
        .collect::<Result<_, _>>()
        .map(Coords)
}

fn parse_strip(s: &str) -> Result<(f64, f64), String> {
    match parse_list(s)?.0.as_slice() {
        &[a, b] if a < b => Ok((a, b)),
        _ => Err(format!("expected `a,b` with a < b, got `{s}`")),
    }
}

fn tolerance(flag: Option<f64>) -> Result<Tol<f64>, CliError> {
    let value = match flag {
        Some(t) => Some(t),
        None => match std::env::var("ANISO_TOL") {
            Ok(s) => Some(s.trim().parse::<f64>().map_err(|e| CliError::Usage(format!("ANISO_TOL: {e}")))?),
            Err(_) => None,
        },
    };
    match value {
        None => Ok(Tol::default()),
        Some(t) if t > 0.0 && t.is_finite() => Ok(Tol::new(t)),
        Some(t) => Err(CliError::Usage(format!("tolerance must be positive, got {t}"))),
    }
}

/// Result of a subcommand: a JSON report, an exit code and optional SVG.
pub struct Outcome {
    pub report: Value,
    pub code: u8,
    pub svg: Option<(PathBuf, String)>,
}

impl Outcome {
    pub fn ok(report: Value) -> Self {
        Outcome { report, code: 0, svg: None }
    }
}

/// `path = value` lines for every leaf of a JSON document.
fn flatten(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&p, x, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        _ => {
            out.push_str(prefix);
            out.push_str(" = ");
            out.push_str(&v.to_string());
            out.push('\n');
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let tol = tolerance(cli.tol)?;
    let outcome = commands::dispatch(cli.command, tol)?;
    let text = match cli.format {
        Format::Json => to_canonical_string(&outcome.report),
        Format::Text => {
            let mut s = String::new();
            flatten("", &aniso_core::io::canonicalize(&outcome.report), &mut s);
            s
        }
    };
    match &cli.output {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Write { path: path.clone(), source })?,
        None => print!("{text}"),
    }
    if let Some((path, svg)) = &outcome.svg {
        std::fs::write(path, svg).map_err(|source| CliError::Write { path: path.clone(), source })?;
    }
    Ok(outcome.code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
