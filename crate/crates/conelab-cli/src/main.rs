//! conelab: harmonic analysis on rotationally symmetric cones.
//!
//! Subcommands wrap the library operations one-to-one; every command prints
//! a human-readable table and, with `--out DIR`, writes the same report in
//! a deterministic structured format (`--format csv|json`).
//!
//! Exit codes: 0 success, 1 failed check or runtime failure, 2 usage or
//! configuration error.

mod commands;
mod config;
mod output;

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "conelab", version, about = "Harmonic growth on warped cones: modes, volumes, Liouville verdicts, barriers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    /// Configuration file with `key = value` defaults; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Catalog warp name (also searches --warp-file definitions).
    #[arg(long)]
    warp: Option<String>,
    /// Warping function as an expression in r, e.g. "(r + sin(r))/2".
    #[arg(long, conflicts_with = "warp")]
    expr: Option<String>,
    /// Plain-text file with extra warp definitions.
    #[arg(long)]
    warp_file: Option<PathBuf>,
    /// Cone dimension n >= 2.
    #[arg(long)]
    n: Option<u32>,
    /// Outer radius for integrations and scans.
    #[arg(long)]
    r_max: Option<f64>,
    /// Quadrature / ODE tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Structured output format: csv or json.
    #[arg(long)]
    format: Option<String>,
    /// Directory for structured reports and exported series.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Link spectrum: "round" (default) or a spectrum file path.
    #[arg(long)]
    link: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the built-in warp catalog.
    Catalog {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Radial curvature −φ″/φ along a log grid (plus total curvature at n = 2).
    Curvature {
        #[command(flatten)]
        common: CommonArgs,
        /// Number of sample radii.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Geodesic ball volumes at the given radii.
    Volume {
        #[command(flatten)]
        common: CommonArgs,
        /// Comma-separated list of radii, e.g. 1,2,4.
        #[arg(long)]
        radii: Option<String>,
    },
    /// Volume doubling ratios Vol(B_2R)/Vol(B_R) with a verdict.
    Doubling {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        radii: Option<String>,
    },
    /// Divergence test for ∫ 1/φ and the minimal growth function.
    Liouville {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Integrate radial modes, export series, and fit growth classes.
    Modes {
        #[command(flatten)]
        common: CommonArgs,
        /// Mode range, e.g. 1..3 or a single index.
        #[arg(long)]
        modes: Option<String>,
        /// Growth fit window "r_lo,r_hi" (defaults to the last decade).
        #[arg(long)]
        window: Option<String>,
    },
    /// Dimension count of harmonic functions growing at most like r^d.
    Slp {
        #[command(flatten)]
        common: CommonArgs,
        /// Growth degree d.
        #[arg(long)]
        d: Option<f64>,
        /// Largest mode index examined.
        #[arg(long)]
        modes_max: Option<u32>,
    },
    /// Harmonic extension from circle Fourier data with an independent
    /// finite-difference cross-check.
    Dirichlet {
        #[command(flatten)]
        common: CommonArgs,
        /// Boundary Fourier data file (rows: m a b; m = 0 row is the mean).
        #[arg(long)]
        boundary: Option<PathBuf>,
        /// Boundary circle radius.
        #[arg(long)]
        radius: Option<f64>,
        /// Radial grid size of the finite-difference solve.
        #[arg(long)]
        nr: Option<usize>,
        /// Angular grid size of the finite-difference solve.
        #[arg(long)]
        ntheta: Option<usize>,
    },
    /// Barrier pair diagnostics for the p-Laplacian.
    Pbarrier {
        #[command(flatten)]
        common: CommonArgs,
        /// Exponent p >= 2.
        #[arg(long)]
        p: Option<f64>,
        /// Inner radius R of the barrier.
        #[arg(long)]
        barrier_r: Option<f64>,
    },
    /// Run the verification suite (all groups, or one with --only).
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// Restrict to one check group: warp, geometry, modes, liouville,
        /// spectral, pbarrier.
        #[arg(long)]
        only: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Catalog { common } => commands::catalog(&common),
        Command::Curvature { common, samples } => commands::curvature(&common, samples),
        Command::Volume { common, radii } => commands::volume(&common, radii.as_deref()),
        Command::Doubling { common, radii } => commands::doubling(&common, radii.as_deref()),
        Command::Liouville { common } => commands::liouville(&common),
        Command::Modes { common, modes, window } => {
            commands::modes(&common, modes.as_deref(), window.as_deref())
        }
        Command::Slp { common, d, modes_max } => commands::slp(&common, d, modes_max),
        Command::Dirichlet { common, boundary, radius, nr, ntheta } => {
            commands::dirichlet(&common, boundary.as_deref(), radius, nr, ntheta)
        }
        Command::Pbarrier { common, p, barrier_r } => commands::pbarrier(&common, p, barrier_r),
        Command::Verify { common, only } => commands::verify(&common, only.as_deref()),
    };
    match outcome {
        Ok(commands::CmdStatus::Clean) => ExitCode::SUCCESS,
        Ok(commands::CmdStatus::ChecksFailed) => ExitCode::from(1),
        Err(commands::CliError::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(commands::CliError::Run(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
