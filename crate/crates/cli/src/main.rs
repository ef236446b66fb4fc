//! `sepaut`: automorphism groups of hypersurfaces with separated variables.

mod report;

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};

use sepaut_core::autassembly::{aut_group, fermat_aut, to_ascii};
use sepaut_core::polyio::{parse_polynomial, recognize_separated, SeparationError};
use sepaut_core::{smith_normal_form, CanonicalForm, IntMatrix};

use report::{build_report, default_modulus, oracle_generators, oracle_perms, oracle_torsion, OracleStatus};

#[derive(Parser)]
#[command(name = "sepaut", version, about = "Automorphism groups of hypersurfaces with separated variables")]
struct Cli {
    /// Force ASCII symbols in text output.
    #[arg(long, global = true)]
    ascii: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full analysis of a polynomial (inline expression or file).
    Analyze {
        input: String,
        #[arg(long)]
        json: bool,
        /// Also run the brute-force oracles.
        #[arg(long)]
        verify: bool,
    },
    /// Run one verification oracle against the computed description.
    Verify {
        input: String,
        #[arg(long, value_enum)]
        oracle: Oracle,
        /// Modulus for the torsion oracle (default: largest torsion divisor, or 2).
        #[arg(long = "mod")]
        modulus: Option<u64>,
    },
    /// Smith normal form of a matrix file ("rows cols" then row-major entries).
    Snf { matrix_file: String },
    /// Automorphism group of y1^alpha + ... + yn^alpha.
    Fermat {
        n: usize,
        alpha: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Oracle {
    Perms,
    Torsion,
    Generators,
}

enum Failure {
    NotSeparated(anyhow::Error),
    Other(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Other(e.into())
    }
}

/// Treats `input` as a file path if one exists, otherwise as an expression.
fn read_input(input: &str) -> anyhow::Result<String> {
    let path = Path::new(input);
    if path.is_file() {
        std::fs::read_to_string(path).with_context(|| format!("reading {input}"))
    } else {
        Ok(input.to_string())
    }
}

fn caret(text: &str, position: usize) -> String {
    let line = text.trim_end_matches('\n');
    format!("  {line}\n  {}^", " ".repeat(position.min(line.len())))
}

fn load(input: &str) -> Result<(String, CanonicalForm), Failure> {
    let text = read_input(input)?;
    let poly = parse_polynomial(&text).map_err(|e| match e.position() {
        Some(pos) => anyhow!("{e}\n{}", caret(&text, pos)),
        None => anyhow!(e),
    })?;
    match recognize_separated(&poly) {
        Ok(cf) => Ok((text, cf)),
        Err(e @ SeparationError::NotSeparated(_)) => Err(Failure::NotSeparated(e.into())),
        Err(e) => Err(e.into()),
    }
}

/// Writes to stdout, treating a closed pipe as success.
fn emit(text: &str) -> anyhow::Result<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn locale_is_utf8() -> bool {
    ["LC_ALL", "LC_CTYPE", "LANG"]
        .iter()
        .filter_map(|k| std::env::var(k).ok())
        .find(|v| !v.is_empty())
        .is_some_and(|v| {
            let v = v.to_ascii_lowercase();
            v.contains("utf-8") || v.contains("utf8")
        })
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    let ascii = cli.ascii || !locale_is_utf8();
    let text_out = |s: String| if ascii { to_ascii(&s) } else { s };
    match cli.command {
        Command::Analyze { input, json, verify } => {
            let (text, cf) = load(&input)?;
            let report = build_report(&text, &cf, verify)?;
            if json {
                emit(&format!("{}\n", serde_json::to_string_pretty(&report)?))?;
            } else {
                emit(&report.to_text(ascii))?;
            }
            Ok(if report.verification.passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Verify { input, oracle, modulus } => {
            let (_, cf) = load(&input)?;
            let aut = aut_group(&cf)?;
            let result = match oracle {
                Oracle::Perms => oracle_perms(&cf, &aut).map_err(|e| anyhow!(e))?,
                Oracle::Torsion => {
                    let m = modulus.unwrap_or_else(|| default_modulus(&aut));
                    oracle_torsion(&cf, &aut, m).map_err(|e| anyhow!(e))?
                }
                Oracle::Generators => oracle_generators(&cf, &aut),
            };
            emit(&format!("{}: {} ({})\n", result.name, result.status.label(), result.detail))?;
            Ok(if result.status == OracleStatus::Pass { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Snf { matrix_file } => {
            let src = std::fs::read_to_string(&matrix_file).with_context(|| format!("reading {matrix_file}"))?;
            let a: IntMatrix = src.parse().with_context(|| format!("parsing {matrix_file}"))?;
            let r = smith_normal_form(&a);
            let divisors: Vec<String> = r.divisors.iter().map(ToString::to_string).collect();
            emit(&format!(
                "rank: {}\ndivisors: {}\nS:\n{}\nU:\n{}\nV:\n{}",
                r.rank(),
                divisors.join(" "),
                r.s,
                r.u,
                r.v
            ))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Fermat { n, alpha, json } => {
            let aut = fermat_aut(n, alpha)?;
            if json {
                let cf = CanonicalForm::fermat(n, alpha);
                let report = build_report(&cf.render(), &cf, false)?;
                emit(&format!("{}\n", serde_json::to_string_pretty(&report)?))?;
            } else {
                emit(&format!("{}\n", text_out(aut.structure.clone())))?;
                if aut.conditional {
                    emit(&text_out(format!(
                        "conditional on rigidity: criterion gives {} ({})\n",
                        report::ratio(&aut.rigidity.reciprocal_sum),
                        aut.rigidity.verdict
                    )))?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(Failure::NotSeparated(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Other(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
