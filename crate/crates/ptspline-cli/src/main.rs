use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ptspline_cli::commands::{self, DimMethod, StrategyArg};

/// Exact spline bases on T-meshes.
#[derive(Parser)]
#[command(name = "ptspline", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a mesh file and print its l-edge census.
    Validate { mesh: PathBuf },
    /// Print the spline-space dimension.
    Dim {
        mesh: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        method: DimMethod,
    },
    /// Build a basis and write it as a basis file.
    Basis {
        mesh: PathBuf,
        #[arg(long, value_enum, default_value = "greedy")]
        strategy: StrategyArg,
        /// Shift members to nonnegative functions.
        #[arg(long)]
        nonneg: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check smoothness, independence and completeness of a basis file.
    Verify { mesh: PathBuf, basis: PathBuf },
    /// Evaluate a basis on a regular grid of points.
    Sample {
        mesh: PathBuf,
        basis: PathBuf,
        #[arg(long, default_value_t = 20)]
        nx: usize,
        #[arg(long, default_value_t = 20)]
        ny: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate { mesh } => commands::validate(mesh),
        Command::Dim { mesh, method } => commands::dim(mesh, *method),
        Command::Basis {
            mesh,
            strategy,
            nonneg,
            out,
        } => commands::basis(mesh, *strategy, *nonneg, out),
        Command::Verify { mesh, basis } => commands::verify(mesh, basis),
        Command::Sample {
            mesh,
            basis,
            nx,
            ny,
            out,
        } => commands::sample(mesh, basis, *nx, *ny, out),
    };
    let error = match result {
        Ok(outcome) => {
            print!("{}", outcome.report);
            outcome.error
        }
        Err(e) => Some(e),
    };
    match error {
        None => ExitCode::SUCCESS,
        Some(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
