//! Command-line interface.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::pipeline::{self, Overrides};
use crate::report::{self, DEFAULT_APPROX_DIGITS};

#[derive(Debug, Parser)]
#[command(name = "scheme-forge", version, about = "Translation association schemes and their duals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the construction hypotheses and the scheme axioms.
    Check {
        config: PathBuf,
        #[command(flatten)]
        flags: Flags,
    },
    /// Emit the full scheme report.
    Build {
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        flags: Flags,
    },
    /// Emit a duality certificate; with one config, against its natural partner.
    Dual {
        config: PathBuf,
        dual_config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        flags: Flags,
    },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct Flags {
    #[arg(long, value_name = "N")]
    pub matrix_bound: Option<usize>,
    #[arg(long, value_name = "N")]
    pub size_bound: Option<usize>,
    #[arg(long)]
    pub no_verify_representatives: bool,
}

impl Flags {
    fn overrides(self) -> Overrides {
        Overrides {
            matrix_bound: self.matrix_bound,
            size_bound: self.size_bound,
            verify_representatives: self.no_verify_representatives.then_some(false),
        }
    }
}

/// Exit code for an error: 3 for resource bounds, 1 for failed
/// verification, 2 for everything the user can fix in the input.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Resource { .. } => 3,
        Error::Integrity(_) | Error::InvalidState(_) => 1,
        _ => 2,
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn write_out(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))
}

/// Runs a command, writing to `stdout`; returns the exit code.
pub fn run(cli: Cli, stdout: &mut dyn std::io::Write) -> Result<i32> {
    let mut emit = |s: &str| {
        stdout
            .write_all(s.as_bytes())
            .map_err(|e| Error::Config(format!("cannot write output: {e}")))
    };
    match cli.command {
        Command::Check { config, flags } => {
            let config = RunConfig::from_path(&config)?;
            let r = pipeline::check(&config, flags.overrides())?;
            emit(&to_json(&r))?;
            Ok(r.exit_code())
        }
        Command::Build { config, out, flags } => {
            let config = RunConfig::from_path(&config)?;
            let r = pipeline::build(&config, flags.overrides())?;
            let text = to_json(&r);
            match out {
                Some(path) => {
                    write_out(&path, &text)?;
                    emit(&format!("{}: {} (d = {})\n", r.check.status, r.check.scheme, r.check.d))?;
                }
                None => emit(&text)?,
            }
            Ok(r.check.exit_code())
        }
        Command::Dual { config, dual_config, out, flags } => {
            let a = RunConfig::from_path(&config)?;
            let b = dual_config.as_ref().map(RunConfig::from_path).transpose()?;
            let cert = pipeline::dual(&a, b.as_ref(), flags.overrides())?;
            let digits = a.approx_digits.unwrap_or(DEFAULT_APPROX_DIGITS);
            match out {
                Some(path) => {
                    write_out(&path, &to_json(&cert))?;
                    emit(&format!("{}\n", report::certificate_summary(&cert)))?;
                    emit(&report::certificate_tables(&cert, digits))?;
                }
                None => emit(&to_json(&cert))?,
            }
            Ok(if cert.pass { 0 } else { 1 })
        }
    }
}

/// Entry point used by the binary.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if let Some(n) = std::env::var("SCHEME_FORGE_THREADS").ok().and_then(|v| v.parse().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let mut stdout = std::io::stdout().lock();
    match run(cli, &mut stdout) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("scheme-forge: {e}");
            exit_code(&e)
        }
    }
}
