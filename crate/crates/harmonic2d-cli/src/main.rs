//! `harmonic2d` command-line tool.
//!
//! Exit codes: 0 success, 2 symmetry or harmonicity failure, 3 malformed input,
//! 4 failed consistency check.

mod commands;
mod document;
mod error;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use harmonic2d::verify::Suite;
use harmonic2d::{Basis, Formulation, GroupElement};
use serde::Serialize;

use crate::commands::RotateOutput;
use crate::document::{parse_document, Document, Space};
use crate::error::{CliError, EXIT_CONSISTENCY, EXIT_OK, EXIT_PARSE};

#[derive(Parser)]
#[command(
    name = "harmonic2d",
    version,
    about = "Harmonic decompositions of 2D elasticity tensors"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Split a tensor document into labelled harmonic components.
    Decompose {
        input: PathBuf,
        /// Override the space declared in the document.
        #[arg(long, value_parser = parse_space)]
        space: Option<Space>,
        #[arg(long, value_parser = parse_basis, default_value = "sr")]
        basis: Basis,
        #[arg(long, value_parser = parse_formulation)]
        formulation: Option<Formulation>,
        #[command(flatten)]
        tol: TolArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Rebuild the tensor from a harmonics document.
    Reconstruct {
        input: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Act on a tensor or harmonics document by a rotation or reflection.
    Rotate {
        input: PathBuf,
        /// Rotation angle in radians.
        #[arg(
            long,
            allow_hyphen_values = true,
            conflicts_with = "reflect",
            required_unless_present = "reflect"
        )]
        angle: Option<f64>,
        /// Normal of the mirror line, as `nx,ny`.
        #[arg(long, allow_hyphen_values = true)]
        reflect: Option<String>,
        #[command(flatten)]
        tol: TolArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Run the built-in self-checks and print a JSON report.
    Verify {
        #[arg(long, value_parser = parse_suite, default_value = "all")]
        suite: Suite,
    },
    /// Report the symmetry classes an elasticity tensor is consistent with.
    Classify {
        input: PathBuf,
        #[arg(long, value_parser = parse_basis, default_value = "sr")]
        basis: Basis,
        #[command(flatten)]
        tol: TolArg,
        /// Relative threshold below which a component counts as zero.
        #[arg(long)]
        vanishing: Option<f64>,
    },
}

#[derive(Args)]
struct TolArg {
    /// Absolute tolerance for symmetry validation.
    #[arg(long = "tol", env = "HARMONIC2D_TOL", default_value_t = 1e-10)]
    value: f64,
}

#[derive(Args)]
struct OutArg {
    /// Write to this file instead of stdout.
    #[arg(short = 'o', long = "output")]
    path: Option<PathBuf>,
}

fn parse_space(s: &str) -> Result<Space, String> {
    serde_json::from_value(serde_json::Value::String(s.to_ascii_lowercase()))
        .map_err(|_| format!("unknown space {s:?}"))
}

fn parse_basis(s: &str) -> Result<Basis, String> {
    match s.to_ascii_lowercase().as_str() {
        "sr" => Ok(Basis::StretchRotation),
        "dh" => Ok(Basis::DeviatoricHydrostatic),
        _ => Err(format!("unknown basis {s:?}, expected sr or dh")),
    }
}

fn parse_formulation(s: &str) -> Result<Formulation, String> {
    match s.to_ascii_lowercase().as_str() {
        "type2" | "typeii" => Ok(Formulation::TypeII),
        "type1" | "typei" => Ok(Formulation::TypeI),
        _ => Err(format!(
            "unknown formulation {s:?}, expected type2 or type1"
        )),
    }
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: harmonic2d::Error| e.to_string())
}

fn read_document(path: &Path) -> Result<Document, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
    parse_document(&text)
}

fn write_json(value: &impl Serialize, out: &OutArg) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::consistency(format!("serialization failed: {e}")))?;
    text.push('\n');
    match &out.path {
        Some(p) => fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Decompose {
            input,
            space,
            basis,
            formulation,
            tol,
            out,
        } => {
            let mut doc = read_document(&input)?;
            if let (Some(space), Document::Tensor(d)) = (space, &mut doc) {
                d.space = space;
            }
            let h = commands::decompose(&doc, basis, formulation, tol.value)?;
            write_json(&h, &out)?;
        }
        Command::Reconstruct { input, out } => {
            let t = commands::reconstruct(&read_document(&input)?)?;
            write_json(&t, &out)?;
        }
        Command::Rotate {
            input,
            angle,
            reflect,
            tol,
            out,
        } => {
            let g = match (angle, reflect) {
                (Some(theta), None) => GroupElement::rotation(theta),
                (None, Some(axis)) => commands::parse_axis(&axis)?,
                _ => return Err(CliError::parse("give exactly one of --angle and --reflect")),
            };
            match commands::rotate(&read_document(&input)?, &g, tol.value)? {
                RotateOutput::Tensor(t) => write_json(&t, &out)?,
                RotateOutput::Harmonics(h) => write_json(&h, &out)?,
            }
        }
        Command::Verify { suite } => {
            let report = commands::verify(suite);
            write_json(&report, &OutArg { path: None })?;
            if !report.passed {
                return Ok(EXIT_CONSISTENCY);
            }
        }
        Command::Classify {
            input,
            basis,
            tol,
            vanishing,
        } => {
            let report = commands::classify(&read_document(&input)?, basis, tol.value, vanishing)?;
            write_json(&report, &OutArg { path: None })?;
        }
    }
    Ok(EXIT_OK)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_PARSE } else { EXIT_OK });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
