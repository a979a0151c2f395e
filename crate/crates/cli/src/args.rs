use clap::{Parser, Subcommand};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(
    name = "kcapture",
    about = "Scenario-driven simulator for multi-pursuer k-capture games",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one scenario file; writes trace.json and report.json.
    Simulate {
        /// Scenario JSON file.
        scenario: PathBuf,
        /// Output directory (default: alongside the scenario).
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Override the scenario seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Override the step limit.
        #[arg(long)]
        step_limit: Option<u64>,
        /// Also write an SVG trajectory plot (2D scenarios).
        #[arg(long)]
        svg: bool,
        /// Override the capture distance threshold.
        #[arg(long)]
        eps_cap: Option<f64>,
        /// Override the closest-set clustering tolerance.
        #[arg(long)]
        eps_closest: Option<f64>,
    },
    /// k-Hull queries on a points file: boundary polygon, or depth and
    /// membership of a query point.
    Khull {
        /// JSON file holding an array of points.
        points: PathBuf,
        #[arg(long)]
        k: usize,
        /// Query point coordinates, comma separated; omit for the polygon.
        #[arg(long, value_delimiter = ',', num_args = 1.., allow_hyphen_values = true)]
        query: Option<Vec<f64>>,
    },
    /// Worst-case approach angle beta_max for a query point.
    Beta {
        /// JSON file holding an array of points.
        points: PathBuf,
        #[arg(long)]
        k: usize,
        /// Query point coordinates, comma separated.
        #[arg(long, value_delimiter = ',', num_args = 1.., allow_hyphen_values = true)]
        query: Vec<f64>,
    },
    /// Run every scenario in a directory (or a generator spec file);
    /// writes per-run artifacts and an aggregate CSV.
    Batch {
        /// Directory of scenario JSON files, or a generator spec file.
        input: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
        /// Override the generator master seed.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        step_limit: Option<u64>,
        /// Also write SVG plots per run.
        #[arg(long)]
        svg: bool,
        #[arg(long)]
        eps_cap: Option<f64>,
        #[arg(long)]
        eps_closest: Option<f64>,
    },
    /// Recompute the bound audit of a recorded trace.
    Audit {
        /// Trace JSON file.
        trace: PathBuf,
    },
}
