//! Command-line front end: `point`, `scan`, `boundary`, `dominant`.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 argument error, 3 resource guard.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::dipolar::CouplingParams;
use crate::error::Error;
use crate::scan::{
    dominant_map, evaluate_point, scan_grid_with_workers, trace_boundary, write_contour_csv, write_dominant_csv,
    write_scan_csv, AxisRange, GridSpec, Quantity, DEFAULT_ROOT_TOL,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "dipolar-channel",
    version,
    about = "Phase diagrams of a thermal dipolar spin pair used as a teleportation channel"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a single (u, v) point.
    Point {
        /// Δ/k_BT
        #[arg(long, allow_hyphen_values = true)]
        u: f64,
        /// ε/k_BT
        #[arg(long, allow_hyphen_values = true)]
        v: f64,
        /// Report negativity doubled so a Bell state reads 1.
        #[arg(long)]
        normalized_negativity: bool,
    },
    /// Sweep a grid and write one CSV row per point.
    Scan {
        /// u axis as min:max:count
        #[arg(long, allow_hyphen_values = true)]
        u: AxisRange<f64>,
        /// v axis as min:max:count
        #[arg(long, allow_hyphen_values = true)]
        v: AxisRange<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads (0 = all cores).
        #[arg(long, default_value_t = 0)]
        workers: usize,
        #[arg(long)]
        normalized_negativity: bool,
    },
    /// Trace a critical boundary (B = 2, N = 0 or F = 2/3).
    Boundary {
        /// chsh, negativity or fidelity
        #[arg(long)]
        quantity: Quantity,
        #[arg(long, allow_hyphen_values = true)]
        u: AxisRange<f64>,
        #[arg(long, allow_hyphen_values = true)]
        v: AxisRange<f64>,
        /// Root tolerance.
        #[arg(long, default_value_t = DEFAULT_ROOT_TOL)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dominant Boltzmann weight per grid point.
    Dominant {
        #[arg(long, allow_hyphen_values = true)]
        u: AxisRange<f64>,
        #[arg(long, allow_hyphen_values = true)]
        v: AxisRange<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Domain(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

/// Runs the CLI against the process stdout/stderr.
pub fn run_cli<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_cli_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the CLI with explicit output sinks; `--out` files are still written to disk.
pub fn run_cli_with<I, S>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, stdout) {
        Ok(()) => EXIT_OK,
        Err(Failure::Domain(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            match e {
                Error::ResourceGuard { .. } => EXIT_RESOURCE,
                _ => EXIT_USAGE,
            }
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_IO
        }
    }
}

fn with_output(
    out: Option<PathBuf>,
    stdout: &mut dyn Write,
    body: impl FnOnce(&mut dyn Write) -> io::Result<()>,
) -> io::Result<()> {
    match out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            body(&mut w)?;
            w.flush()
        }
        None => {
            let mut w = BufWriter::new(stdout);
            body(&mut w)?;
            w.flush()
        }
    }
}

fn execute(command: Command, stdout: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Point { u, v, normalized_negativity } => {
            let record = evaluate_point(&CouplingParams::new(u, v)?);
            with_output(None, stdout, |w| write_scan_csv(w, &[record], normalized_negativity))?;
        }
        Command::Scan { u, v, out, workers, normalized_negativity } => {
            let grid = GridSpec::new(u, v)?;
            let records = scan_grid_with_workers(&grid, workers)?;
            with_output(out, stdout, |w| write_scan_csv(w, &records, normalized_negativity))?;
        }
        Command::Boundary { quantity, u, v, tol, out } => {
            let grid = GridSpec::new(u, v)?;
            let contours = trace_boundary(quantity, &grid, tol)?;
            with_output(out, stdout, |w| write_contour_csv(w, &contours))?;
        }
        Command::Dominant { u, v, out } => {
            let grid = GridSpec::new(u, v)?;
            let points = dominant_map(&grid);
            with_output(out, stdout, |w| write_dominant_csv(w, &points))?;
        }
    }
    Ok(())
}
