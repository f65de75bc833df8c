//! Command-line front end.
//!
//! Exit status:
//!
//! | status | meaning |
//! |--------|---------|
//! | 0 | success; for `inverse`/`imt` the matrix is invertible and every check agrees |
//! | 1 | internal disagreement between checks that must agree |
//! | 2 | a negative answer was correctly detected: singular matrix, infeasible system |
//! | 3 | usage error, unreadable or malformed input |

use std::ffi::OsString;
use std::io::Read;
use std::num::NonZeroU32;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use thiserror::Error;

use crate::format::{parse_matrix_file, parse_vector_file};
use crate::generate::{random_invertible, random_with_rank, GenConfig, DEFAULT_ENTRY_BOUND};
use crate::imt::{imt_report_with, two_sided_check, ImtOptions, DEFAULT_PROBES};
use crate::matrix::Matrix;
use crate::report::{
    GenResult, InverseResult, ReportBody, ReportDocument, RrefResult, SolveResult,
};
use crate::rref::rref;
use crate::solver::{right_inverse, solve, RightInverse};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DISAGREEMENT: i32 = 1;
pub const EXIT_NEGATIVE: i32 = 2;
pub const EXIT_ERROR: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "twosided",
    version,
    about = "Exact rational RREF, one-sided inverses and invertible-matrix checks"
)]
pub struct Cli {
    /// Emit the machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Seed for random probes (imt) and generated matrices (gen).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Number of random right-hand sides probed by `imt`.
    #[arg(long, global = true, default_value_t = DEFAULT_PROBES)]
    pub probes: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduced row-echelon form, pivot columns and rank.
    Rref {
        /// Matrix file, or `-` for stdin.
        file: PathBuf,
        /// List the row operations.
        #[arg(long)]
        trace: bool,
    },
    /// Solve Ax = b.
    Solve {
        matrix: PathBuf,
        /// Right-hand side: a single-column or single-row matrix file.
        rhs: PathBuf,
    },
    /// Right inverse via the unit systems Ax = e_i, then check AX and XA.
    Inverse { file: PathBuf },
    /// Evaluate the eight statements of the invertible matrix theorem.
    Imt {
        file: PathBuf,
        /// Evaluate predicates on separate threads.
        #[arg(long)]
        parallel: bool,
    },
    /// Print a seeded random matrix in matrix-file format.
    Gen {
        #[arg(long)]
        size: usize,
        /// Exact rank; omitted means invertible.
        #[arg(long)]
        rank: Option<usize>,
        /// Row operations applied to the identity (default 8 * size).
        #[arg(long)]
        ops: Option<usize>,
        #[arg(long, default_value_t = NonZeroU32::new(DEFAULT_ENTRY_BOUND).unwrap())]
        bound: NonZeroU32,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Usage(#[from] clap::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Input { path: String, source: crate::Error },
    #[error(transparent)]
    Engine(#[from] crate::Error),
}

#[derive(Debug, Clone)]
pub struct CommandOutput {
    pub status: i32,
    pub document: ReportDocument,
    /// What goes to stdout: the JSON report or the text rendering.
    pub stdout: String,
}

fn read_input(path: &Path, stdin: &mut dyn Read) -> Result<String, CliError> {
    let display = path.display().to_string();
    let io_err = |source| CliError::Io {
        path: display.clone(),
        source,
    };
    if path.as_os_str() == "-" {
        let mut s = String::new();
        stdin.read_to_string(&mut s).map_err(io_err)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io_err)
    }
}

fn load_matrix(path: &Path, stdin: &mut dyn Read) -> Result<Matrix, CliError> {
    parse_matrix_file(&read_input(path, stdin)?).map_err(|source| CliError::Input {
        path: path.display().to_string(),
        source,
    })
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_command<I, T>(args: I, stdin: &mut dyn Read) -> Result<CommandOutput, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)?;
    execute(&cli, stdin)
}

pub fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<CommandOutput, CliError> {
    let (status, document) = match &cli.command {
        Command::Rref { file, trace } => {
            let a = load_matrix(file, stdin)?;
            let d = rref(&a);
            let body = ReportBody::Rref(RrefResult {
                reduced: d.reduced,
                pivot_cols: d.pivot_cols,
                rank: d.rank,
                trace: trace.then_some(d.trace),
            });
            (EXIT_OK, ReportDocument::new(&[&a], body))
        }
        Command::Solve { matrix, rhs } => {
            let a = load_matrix(matrix, stdin)?;
            let b =
                parse_vector_file(&read_input(rhs, stdin)?).map_err(|source| CliError::Input {
                    path: rhs.display().to_string(),
                    source,
                })?;
            let outcome = solve(&a, &b)?;
            let status = if outcome.is_feasible() {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            };
            let body = ReportBody::Solve(SolveResult { outcome });
            (status, ReportDocument::new(&[&a, &b.to_matrix()], body))
        }
        Command::Inverse { file } => {
            let a = load_matrix(file, stdin)?;
            let ri = right_inverse(&a)?;
            let (status, two_sided) = match &ri {
                RightInverse::Exists { inverse } => {
                    let check = two_sided_check(&a, inverse)?;
                    let status = if check.ab_is_identity && check.ba_is_identity {
                        EXIT_OK
                    } else {
                        EXIT_DISAGREEMENT
                    };
                    (status, Some(check))
                }
                RightInverse::Missing { .. } => (EXIT_NEGATIVE, None),
            };
            let body = ReportBody::Inverse(InverseResult {
                right_inverse: ri,
                two_sided,
            });
            (status, ReportDocument::new(&[&a], body))
        }
        Command::Imt { file, parallel } => {
            let a = load_matrix(file, stdin)?;
            let opts = ImtOptions {
                probes: cli.probes,
                seed: cli.seed,
                parallel: *parallel,
            };
            let report = imt_report_with(&a, &opts)?;
            let status = match (report.consistent(), report.invertible) {
                (false, _) => EXIT_DISAGREEMENT,
                (true, true) => EXIT_OK,
                (true, false) => EXIT_NEGATIVE,
            };
            (
                status,
                ReportDocument::new(&[&a], ReportBody::Imt(Box::new(report))),
            )
        }
        Command::Gen {
            size,
            rank,
            ops,
            bound,
        } => {
            let mut cfg = GenConfig::new(cli.seed, *size).with_entry_bound(*bound);
            if let Some(ops) = ops {
                cfg = cfg.with_op_count(*ops);
            }
            let matrix = match rank {
                Some(r) => random_with_rank(&cfg, *r)?,
                None => random_invertible(&cfg),
            };
            let body = ReportBody::Gen(GenResult {
                seed: cfg.seed,
                size: cfg.size,
                rank: *rank,
                op_count: cfg.op_count,
                entry_bound: cfg.entry_bound.get(),
                matrix: matrix.clone(),
            });
            (EXIT_OK, ReportDocument::new(&[&matrix], body))
        }
    };
    let stdout = if cli.json {
        document.to_json()
    } else {
        document.render_text()
    };
    Ok(CommandOutput {
        status,
        document,
        stdout,
    })
}

/// Full entry point: runs the command, writes its output, and returns the
/// process exit status.
pub fn main_with<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn std::io::Write,
    stderr: &mut dyn std::io::Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match run_command(args, stdin) {
        Ok(out) => {
            if stdout.write_all(out.stdout.as_bytes()).is_err() {
                return EXIT_ERROR;
            }
            out.status
        }
        Err(CliError::Usage(e)) if !e.use_stderr() => {
            // --help and --version
            let _ = write!(stdout, "{e}");
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_ERROR
        }
    }
}
