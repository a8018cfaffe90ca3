//! Command-line front end: `analyze`, `twist-check`, `eval` and `selftest`.
//!
//! Exit codes: 0 on success, 1 on bad input (parse errors, unreadable
//! files, bad flags), 2 when an internal invariant fails.

use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use twistcheck::obstruction::analyze_text;
use twistcheck::{abelianize, ell, parse_word, selftest, twist_consistency, Error, HVec, Wedge2};

#[derive(Debug, Parser)]
#[command(name = "twistcheck", version, about = "Twist obstructions for curves on a surface with one boundary component")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide the obstruction for a pair of words, or for every line of a pairs file.
    Analyze {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        genus: Option<u32>,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        /// File with one `genus<TAB>a<TAB>b` per line; emits JSON lines.
        #[arg(long, conflicts_with_all = ["genus", "a", "b"])]
        pairs: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Compare the degree-2 twist action with its closed form.
    TwistCheck {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        genus: u32,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the homology class and ℓ-value of a word.
    Eval {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        genus: u32,
        word: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run the seeded property suites of every module.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        iterations: u64,
    },
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Internal(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "error: {m}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            CliError::Input(e.to_string())
        } else {
            CliError::Internal(e.to_string())
        }
    }
}

/// Parses `argv` (including the program name) and runs it, writing to the
/// given streams. Returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    match execute(&cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            e.exit_code()
        }
    }
}

fn io(e: std::io::Error) -> CliError {
    CliError::Internal(format!("write failed: {e}"))
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string(value).map_err(|e| CliError::Internal(e.to_string()))
}

fn execute(command: &Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Analyze {
            pairs: Some(path), ..
        } => analyze_batch(path, out),
        Command::Analyze {
            genus, a, b, format, ..
        } => {
            let missing = |name: &str| CliError::Input(format!("missing --{name} (or use --pairs FILE)"));
            let genus = genus.ok_or_else(|| missing("genus"))?;
            let a = a.as_deref().ok_or_else(|| missing("a"))?;
            let b = b.as_deref().ok_or_else(|| missing("b"))?;
            let report = analyze_text(genus, a, b)?;
            report.check_invariants()?;
            match format {
                Format::Json => writeln!(out, "{}", report.to_json()).map_err(io)?,
                Format::Text => writeln!(out, "{report}").map_err(io)?,
            }
            Ok(0)
        }
        Command::TwistCheck { genus, a, b, format } => {
            let wa = parse_word(a, *genus)?;
            let wb = parse_word(b, *genus)?;
            let check = twist_consistency(*genus, &wa, &wb)?;
            match format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct TwistJson<'a> {
                        genus: u32,
                        a: String,
                        b: String,
                        consistent: bool,
                        twisted_difference: &'a twistcheck::TruncTensor,
                        predicted: &'a twistcheck::TruncTensor,
                        predicted_wedge: &'a Wedge2,
                    }
                    let json = to_json(&TwistJson {
                        genus: *genus,
                        a: wa.to_string(),
                        b: wb.to_string(),
                        consistent: check.consistent,
                        twisted_difference: &check.twisted_difference,
                        predicted: &check.predicted,
                        predicted_wedge: &check.predicted_wedge,
                    })?;
                    writeln!(out, "{json}").map_err(io)?;
                }
                Format::Text => {
                    writeln!(out, "a              {wa}").map_err(io)?;
                    writeln!(out, "b              {wb}").map_err(io)?;
                    writeln!(out, "{check}").map_err(io)?;
                }
            }
            if check.consistent {
                Ok(0)
            } else {
                Err(CliError::Internal("twist action disagrees with the closed form".into()))
            }
        }
        Command::Eval { genus, word, format } => {
            let w = parse_word(word, *genus)?;
            let abs = abelianize(&w);
            let value = ell(&w);
            match format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct EvalJson<'a> {
                        genus: u32,
                        word: String,
                        abs: &'a HVec,
                        ell: &'a Wedge2,
                        expansion: &'static str,
                    }
                    let json = to_json(&EvalJson {
                        genus: *genus,
                        word: w.to_string(),
                        abs: &abs,
                        ell: &value,
                        expansion: twistcheck::ell::EXPANSION_NAME,
                    })?;
                    writeln!(out, "{json}").map_err(io)?;
                }
                Format::Text => {
                    writeln!(out, "w      {w}").map_err(io)?;
                    writeln!(out, "|w|    {abs}").map_err(io)?;
                    writeln!(out, "l(w)   {value}").map_err(io)?;
                }
            }
            Ok(0)
        }
        Command::Selftest { seed, iterations } => {
            let summary = selftest::run(*seed, *iterations as usize);
            writeln!(out, "{summary}").map_err(io)?;
            if summary.all_passed() {
                Ok(0)
            } else {
                Err(CliError::Internal(format!("{} property checks failed", summary.total_failed())))
            }
        }
    }
}

#[derive(Serialize)]
struct LineError {
    line: usize,
    error: String,
}

fn analyze_line(line: &str) -> Result<twistcheck::Report, CliError> {
    let fields: Vec<&str> = line.split('\t').collect();
    let [genus, a, b] = fields.as_slice() else {
        return Err(CliError::Input(format!(
            "expected 3 tab-separated fields, found {}",
            fields.len()
        )));
    };
    let genus: u32 = genus
        .trim()
        .parse()
        .map_err(|_| CliError::Input(format!("bad genus `{}`", genus.trim())))?;
    let report = analyze_text(genus, a, b)?;
    report.check_invariants()?;
    Ok(report)
}

fn analyze_batch(path: &PathBuf, out: &mut dyn Write) -> Result<i32, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .collect();
    let results: Vec<(usize, Result<twistcheck::Report, CliError>)> =
        lines.par_iter().map(|&(n, l)| (n, analyze_line(l))).collect();
    let mut code = 0;
    for (n, result) in results {
        match result {
            Ok(report) => writeln!(out, "{}", report.to_json()).map_err(io)?,
            Err(e) => {
                code = code.max(e.exit_code());
                let msg = match e {
                    CliError::Input(m) | CliError::Internal(m) => m,
                };
                writeln!(out, "{}", to_json(&LineError { line: n, error: msg })?).map_err(io)?;
            }
        }
    }
    Ok(code)
}
