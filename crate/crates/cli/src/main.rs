//! `vortexline`: batch driver for vortex experiments on flat tori.
//!
//! Exit codes: 0 when every check passes, 2 for configuration or input
//! errors, 3 for numerical failure (non-convergence or a failed check).

mod commands;
mod config;
mod error;
mod render;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::commands::Field;
use crate::config::Overrides;
use crate::error::CliError;
use crate::report::Report;

#[derive(Parser)]
#[command(name = "vortexline", version, about = "Abelian vortices on flat tori")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Print the report as JSON instead of a summary.
    #[arg(long, global = true)]
    json: bool,

    /// Output directory, overriding `output.dir`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    config: PathBuf,

    /// Grid size N, overriding `geometry.grid`.
    #[arg(long)]
    grid: Option<usize>,

    /// Newton tolerance, overriding `run.tol`.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the Taubes equation and write `solution.vtx` with a report.
    Solve(RunArgs),
    /// One-vortex volume over the `τA` sweep against `2πτA`.
    Volume(RunArgs),
    /// Centred-difference `dVol/dτ` against `2πA`.
    Dh(RunArgs),
    /// Exact cohomology data for `Sym^r` of a genus-`g` surface.
    Coh {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        g: u32,
        /// `τA` as a rational multiple of π, e.g. `21/10`.
        #[arg(long = "tau-area")]
        tau_area: String,
    },
    /// Write a field of a stored solution as PGM and CSV.
    Render {
        #[arg(long)]
        solution: PathBuf,
        #[arg(long, value_enum)]
        field: Field,
    },
    /// Recompute the residual certificates of a stored solution.
    Verify {
        #[arg(long)]
        solution: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
    },
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("VORTEXLINE_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        CliError::Config(format!(
            "VORTEXLINE_THREADS must be a positive integer, got {v:?}"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Config(e.to_string()))
}

fn emit(report: &Report, json: bool) -> Result<i32, CliError> {
    if json {
        println!("{}", serde_json::to_string_pretty(report)?);
    } else {
        print!("{}", report.summary());
    }
    Ok(if report.pass { 0 } else { 3 })
}

fn run(cli: Cli) -> Result<i32, CliError> {
    configure_threads()?;
    let overrides = |a: &RunArgs| Overrides {
        grid: a.grid,
        tol: a.tol,
        out: cli.out.clone(),
    };
    match &cli.command {
        Command::Solve(a) => emit(
            &commands::cmd_solve(&config::load(&a.config, &overrides(a))?)?,
            cli.json,
        ),
        Command::Volume(a) => emit(
            &commands::cmd_volume(&config::load(&a.config, &overrides(a))?)?,
            cli.json,
        ),
        Command::Dh(a) => emit(
            &commands::cmd_dh(&config::load(&a.config, &overrides(a))?)?,
            cli.json,
        ),
        Command::Coh { r, g, tau_area } => {
            let report = commands::cmd_coh(*r, *g, tau_area)?;
            let text = serde_json::to_string_pretty(&report)? + "\n";
            if let Some(dir) = &cli.out {
                std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
                let path = dir.join("coh.json");
                std::fs::write(&path, &text).map_err(|e| CliError::io(&path, e))?;
            }
            print!("{text}");
            Ok(0)
        }
        Command::Render { solution, field } => {
            let dir = cli.out.clone().unwrap_or_else(|| PathBuf::from("."));
            for p in commands::cmd_render(solution, *field, &dir)? {
                println!("wrote {}", p.display());
            }
            Ok(0)
        }
        Command::Verify { solution, tol } => emit(&commands::cmd_verify(solution, *tol)?, cli.json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("vortexline: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
