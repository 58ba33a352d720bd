//! `skewring <command> [--in FILE] [--out FILE] [--seed INT]`
//!
//! Reads one JSON document (from `--in` or standard input), runs the command
//! and writes a JSON object with sorted keys (to `--out` or standard output).
//!
//! Exit status: 0 on success, 2 when the library rejects the input (the
//! object then holds `"error"` and `"witness"`), 1 on malformed input.

mod commands;

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use skewring::json::SpecError;

#[derive(Parser, Debug)]
#[command(name = "skewring", version, about = "Exact arithmetic and classification of skew polynomial rings over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Input JSON file (standard input when absent).
    #[arg(long = "in", global = true, value_name = "FILE")]
    input: Option<PathBuf>,

    /// Output file (standard output when absent).
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Seed for commands that sample random inputs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Print a one-line summary on standard error.
    #[arg(short, long, global = true)]
    verbose: bool,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Validate a morphism given by `S` or `exps`.
    VerifyMorphism,
    /// Validate a (sigma, tau)-derivation given by its value at the primitive element.
    VerifyDerivation,
    /// Diagonalize a morphism: `sigma(a) = A diag(a^{p^j}) A^{-1}`.
    Diagonalize,
    /// The vector lambda of an inner derivation.
    InnerVector,
    /// Canonical form `{A, lambda, exps}` of a ring.
    Canonicalize,
    /// Compare two rings `{"rings": [r1, r2]}`.
    Classify,
    /// Evaluate `{"ring", "poly", "point"}`.
    Evaluate,
    /// Multiply `{"ring", "left", "right"}`.
    Multiply,
    /// Build and apply an affine transform `{"src", "A", "lambda", "tgt"?, "poly"?}`.
    Transform,
    /// Decide whether `{"ring", "poly"}` vanishes at every point.
    Vanishing,
}

fn read_input(path: &Option<PathBuf>) -> io::Result<String> {
    match path {
        Some(p) => fs::read_to_string(p),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn write_output(path: &Option<PathBuf>, value: &Value) -> io::Result<()> {
    let mut text = serde_json::to_string(value).expect("values serialize");
    text.push('\n');
    match path {
        Some(p) => fs::write(p, text),
        None => io::stdout().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (value, code) = match read_input(&cli.input) {
        Err(e) => (json!({ "error": "MalformedInput", "message": e.to_string() }), 1),
        Ok(text) => match commands::run(cli.command, &text, cli.seed) {
            Ok(v) => (v, 0),
            Err(SpecError::Malformed(msg)) => (json!({ "error": "MalformedInput", "message": msg }), 1),
            Err(SpecError::Domain(e)) => {
                (json!({ "error": e.code(), "witness": e.witness(), "message": e.to_string() }), 2)
            }
        },
    };
    if cli.verbose || code != 0 {
        let summary = match code {
            0 => format!("{:?}: ok", cli.command),
            _ => format!("{:?}: {}", cli.command, value["message"].as_str().unwrap_or("failed")),
        };
        eprintln!("{summary}");
    }
    if let Err(e) = write_output(&cli.out, &value) {
        eprintln!("cannot write output: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(code)
}
