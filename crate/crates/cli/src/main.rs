use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use double_delta::numerics::Tolerances;

mod commands;
mod error;
mod table;

use error::CliError;
use table::Format;

/// Spectra and scattering coefficients of the double Dirac delta potential
/// V(x) = v1 δ(x) + v2 δ(x - a), in units 2m = ħ² = 1.
#[derive(Debug, Parser)]
#[command(name = "double-delta", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, value_enum, default_value = "csv", global = true)]
    format: Format,

    /// Output file (default: standard output).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(flatten)]
    tol: TolArgs,
}

#[derive(Debug, Args)]
struct TolArgs {
    #[arg(long, global = true)]
    tol_x: Option<f64>,
    #[arg(long, global = true)]
    tol_residual: Option<f64>,
    #[arg(long, global = true)]
    tol_merge: Option<f64>,
    #[arg(long, global = true)]
    max_iter: Option<usize>,
}

impl TolArgs {
    fn resolve(&self) -> Result<Tolerances, CliError> {
        let d = Tolerances::default();
        let t = Tolerances {
            tol_x: self.tol_x.unwrap_or(d.tol_x),
            tol_residual: self.tol_residual.unwrap_or(d.tol_residual),
            tol_merge: self.tol_merge.unwrap_or(d.tol_merge),
            max_iter: self.max_iter.unwrap_or(d.max_iter),
        };
        for (name, value) in [("tol-x", t.tol_x), ("tol-residual", t.tol_residual), ("tol-merge", t.tol_merge)] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(CliError::Usage(format!("--{name} must be positive, got {value}")));
            }
        }
        if t.max_iter == 0 {
            return Err(CliError::Usage("--max-iter must be at least 1".into()));
        }
        Ok(t)
    }
}

#[derive(Debug, Args)]
pub struct Strengths {
    #[arg(long, allow_negative_numbers = true)]
    pub v1: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub v2: f64,
    /// Separation of the two deltas.
    #[arg(long, allow_negative_numbers = true)]
    pub a: f64,
}

#[derive(Debug, Args)]
pub struct Depths {
    /// Depth of the left well (negative for a barrier).
    #[arg(long, allow_negative_numbers = true)]
    pub u1: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub u2: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub a: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SweepParam {
    A,
    U2,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// R(E) and T(E) on a uniform energy grid; below zero only T is given.
    Scan {
        #[command(flatten)]
        pot: Strengths,
        #[arg(long, allow_negative_numbers = true)]
        emin: f64,
        #[arg(long, allow_negative_numbers = true)]
        emax: f64,
        #[arg(long, default_value_t = 200)]
        n: usize,
    },
    /// Bound-state energies of two wells.
    Bound {
        #[command(flatten)]
        wells: Depths,
    },
    /// Lowest resonances E = 𝓔 - iΓ/2.
    Resonances {
        #[command(flatten)]
        pot: Strengths,
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
    /// Lowest perfect-transmission energies.
    Pt {
        #[command(flatten)]
        pot: Strengths,
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
    /// Zero-energy reflection of two wells.
    R0 {
        #[command(flatten)]
        wells: Depths,
    },
    /// Bound levels while sweeping the separation or the second depth.
    Sweep {
        #[arg(long, allow_negative_numbers = true)]
        u1: f64,
        /// Required unless sweeping u2.
        #[arg(long, allow_negative_numbers = true)]
        u2: Option<f64>,
        /// Required unless sweeping a.
        #[arg(long, allow_negative_numbers = true)]
        a: Option<f64>,
        #[arg(long, value_enum)]
        param: SweepParam,
        #[arg(long, allow_negative_numbers = true)]
        lo: f64,
        #[arg(long, allow_negative_numbers = true)]
        hi: f64,
        #[arg(long, default_value_t = 200)]
        n: usize,
    },
    /// Recompute the reference table and compare cell by cell.
    Table1,
    /// Even-parity levels of a delta centered between rigid walls at ±a.
    Hardbox {
        #[arg(long, allow_negative_numbers = true)]
        v0: f64,
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
}

fn run(cli: &Cli) -> Result<Option<CliError>, CliError> {
    let tol = cli.tol.resolve()?;
    let output = match &cli.command {
        Command::Scan { pot, emin, emax, n } => commands::scan(pot, *emin, *emax, *n)?,
        Command::Bound { wells } => commands::bound(wells, &tol)?,
        Command::Resonances { pot, n } => commands::resonances(pot, *n, &tol)?,
        Command::Pt { pot, n } => commands::pt(pot, *n, &tol)?,
        Command::R0 { wells } => commands::r0(wells)?,
        Command::Sweep { u1, u2, a, param, lo, hi, n } => commands::sweep(*u1, *u2, *a, *param, *lo, *hi, *n)?,
        Command::Table1 => commands::table1()?,
        Command::Hardbox { v0, a, n } => commands::hardbox(*v0, *a, *n)?,
    };
    match &cli.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            output.table.write(cli.format, &mut w)?;
            w.flush()?;
        }
        None => {
            let mut w = BufWriter::new(io::stdout().lock());
            output.table.write(cli.format, &mut w)?;
            w.flush()?;
        }
    }
    Ok(output.failure.map(CliError::Verification))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(None) => ExitCode::SUCCESS,
        Err(e) if e.is_broken_pipe() => ExitCode::SUCCESS,
        Ok(Some(failure)) | Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}
