//! Command-line front end.
//!
//! Exit codes: 0 success, 1 internal numerical failure, 2 usage, input or
//! I/O error, 3 radius bracket not converged, 4 a campaign found a
//! VIOLATED verdict, 5 too many INCONCLUSIVE verdicts.

pub mod campaign;
pub mod commands;
pub mod io;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::error::Error;
use crate::genmat::GeneratorSpec;
use crate::inequalities::InequalityId;
use crate::matcore::OperatorClass;
use io::MatrixFormat;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_CONVERGED: i32 = 3;
pub const EXIT_VIOLATED: i32 = 4;
pub const EXIT_INCONCLUSIVE: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "numrad", version, about = "Numerical radius brackets and inequality checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certified bracket for the numerical radius of a matrix file.
    Radius {
        path: PathBuf,
        /// Absolute bracket width to reach [default: 1e-8 * max(1, ||A||_F)].
        #[arg(long)]
        tol: Option<f64>,
        /// Input format: mm or json [default: from extension].
        #[arg(long)]
        format: Option<MatrixFormat>,
        #[arg(long)]
        json: bool,
    },
    /// Table of single-operator bounds on the numerical radius.
    Bounds {
        path: PathBuf,
        #[arg(long)]
        format: Option<MatrixFormat>,
        #[arg(long)]
        json: bool,
    },
    /// Run a verification campaign and write its JSON report.
    Verify {
        /// Campaign configuration (JSON); omitted fields take their defaults.
        config: Option<PathBuf>,
        /// Report path [default: the config's `output`, else stdout].
        #[arg(long)]
        out: Option<PathBuf>,
        /// Master seed; overrides the configuration file.
        #[arg(long, env = "NUMRAD_SEED")]
        seed: Option<u64>,
        /// Trials per (inequality, class, dimension) cell.
        #[arg(long)]
        trials: Option<usize>,
        /// Comma-separated dimensions, e.g. 2,3,5.
        #[arg(long, value_delimiter = ',')]
        dims: Option<Vec<usize>>,
        /// Comma-separated inequality ids, e.g. KITTANEH,SUBMULT.
        #[arg(long, value_delimiter = ',')]
        inequalities: Option<Vec<InequalityId>>,
        /// Suppress the summary table.
        #[arg(long, short)]
        quiet: bool,
    },
    /// Sample the boundary of the numerical range as CSV.
    Fov {
        path: PathBuf,
        /// Number of equispaced boundary angles (at least 3).
        #[arg(long, default_value_t = 360, value_parser = clap::value_parser!(u64).range(3..))]
        samples: u64,
        /// CSV path [default: stdout].
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        format: Option<MatrixFormat>,
    },
    /// Generate a seeded random matrix of a given class.
    Gen {
        /// general, self-adjoint, positive, normal, accretive-dissipative or unitary.
        #[arg(long)]
        class: OperatorClass,
        /// Dimension.
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
        /// Output path [default: stdout].
        #[arg(long)]
        out: Option<PathBuf>,
        /// Output format: mm or json [default: from extension, else json].
        #[arg(long)]
        format: Option<MatrixFormat>,
    },
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::NoConvergence { .. } | Error::IdentityCheck { .. } => EXIT_FAILURE,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Radius { path, tol, format, json } => commands::radius(path, *format, *tol, *json, out),
        Command::Bounds { path, format, json } => commands::bounds(path, *format, *json, out),
        Command::Verify {
            config,
            out: out_path,
            seed,
            trials,
            dims,
            inequalities,
            quiet,
        } => {
            let ov = commands::VerifyOverrides {
                seed: *seed,
                trials: *trials,
                dims: dims.clone(),
                inequalities: inequalities.clone(),
                output: out_path.clone(),
            };
            match commands::load_config(config.as_deref(), &ov) {
                Ok(c) => {
                    let mut sink = std::io::sink();
                    let log: &mut dyn Write = if *quiet { &mut sink } else { err };
                    commands::verify(&c, out, log)
                }
                Err(e) => {
                    let _ = writeln!(err, "error: invalid campaign config: {e}");
                    return EXIT_USAGE;
                }
            }
        }
        Command::Fov {
            path,
            samples,
            out: out_path,
            format,
        } => commands::fov(path, *format, *samples as usize, out_path.as_deref(), out),
        Command::Gen {
            class,
            n,
            seed,
            scale,
            out: out_path,
            format,
        } => {
            let spec = GeneratorSpec::new(*class, *n, *seed).with_scale(*scale);
            commands::gen(&spec, *format, out_path.as_deref(), out)
        }
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code_for(&e)
        }
    }
}
