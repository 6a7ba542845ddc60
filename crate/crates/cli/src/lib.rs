//! Command-line front end: problem and region selection, searches,
//! experiments and structured outputs.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

pub mod commands;
pub mod config;
pub mod problem;

/// Invalid command-line or configuration input (exit code 2).
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// Exit code when a search leaves unconverged records.
pub const EXIT_UNCONVERGED: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "aaanep",
    version,
    about = "Eigenvalue and resonance search through AAA fits of a scalarized resolvent"
)]
pub struct Cli {
    /// Increase log verbosity (-v info, -vv debug).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Find eigenvalues in a region.
    Search(SearchArgs),
    /// Evaluate an eigenfunction on a grid.
    Field(FieldArgs),
    /// Track the open-circle modes near j_{1,1} as the aperture shrinks.
    GapStudy(GapStudyArgs),
    /// Convergence comparison against contour-integral solvers.
    Compare(CompareArgs),
    /// Reference eigenvalues.
    Oracle(OracleArgs),
    /// Summarize a matrix polynomial file.
    PolyInfo(PolyInfoArgs),
}

#[derive(Debug, Default, Clone, Args)]
pub struct SearchArgs {
    /// TOML configuration file; flags override its entries.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Builtin geometry: circle, kite, rocket, open-circle, open-rocket, slit.
    #[arg(long)]
    pub geometry: Option<String>,
    /// interior, exterior or open-arc (default: interior for closed curves,
    /// open-arc for arcs).
    #[arg(long)]
    pub kind: Option<String>,
    /// Discretization nodes (default from the region's largest |Re k|).
    #[arg(long)]
    pub n: Option<usize>,
    /// Angular width of the open-circle gap.
    #[arg(long)]
    pub aperture: Option<f64>,
    /// Parameter fraction removed from the open rocket.
    #[arg(long)]
    pub fraction: Option<f64>,
    /// Matrix polynomial: `butterfly` or a path to a polynomial file.
    #[arg(long)]
    pub poly: Option<String>,
    /// Real interval `a,b`.
    #[arg(long, allow_hyphen_values = true)]
    pub region: Option<String>,
    /// Rectangle `x0,y0,x1,y1`.
    #[arg(long, allow_hyphen_values = true)]
    pub rect: Option<String>,
    /// Strip `x0,x1,ymin` below the real axis.
    #[arg(long, allow_hyphen_values = true)]
    pub strip: Option<String>,
    /// Samples per rectangle side (default 32).
    #[arg(long)]
    pub per_side: Option<usize>,
    /// Samples on an interval (default 64).
    #[arg(long)]
    pub samples: Option<usize>,
    /// AAA tolerance relative to the largest sample.
    #[arg(long)]
    pub rel_tol: Option<f64>,
    #[arg(long)]
    pub max_depth: Option<usize>,
    /// Seed of the random probe vectors.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Single AAA fit over the whole region, without subdivision.
    #[arg(long)]
    pub no_adapt: bool,
    /// Worker threads (1 gives byte-identical output across runs).
    #[arg(long)]
    pub threads: Option<usize>,
    /// Results file (JSON).
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct FieldArgs {
    /// Results file written by `search`.
    #[arg(long)]
    pub results: PathBuf,
    /// Record index in the results file.
    #[arg(long)]
    pub index: usize,
    /// Which null vector for a multiple eigenvalue.
    #[arg(long, default_value_t = 0)]
    pub vector: usize,
    /// Grid `x0,x1,nx,y0,y1,ny`.
    #[arg(
        long,
        allow_hyphen_values = true,
        default_value = "-1.5,1.5,61,-1.5,1.5,61"
    )]
    pub grid: String,
    /// Use a zero density (for checking the grid pipeline).
    #[arg(long)]
    pub zero_density: bool,
    /// Output CSV (default stdout).
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct GapStudyArgs {
    /// generic or aligned.
    #[arg(long, default_value = "generic")]
    pub mode: String,
    /// Descending apertures in (0, π/2].
    #[arg(long, default_value = "0.4,0.3,0.2,0.15,0.1,0.07,0.05")]
    pub apertures: String,
    #[arg(long, default_value_t = 256)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub threads: Option<usize>,
    /// Output CSV of the tracked poles (default stdout).
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// JSON file with the tracked poles and fitted slopes.
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[arg(long, default_value = "kite")]
    pub geometry: String,
    #[arg(long, default_value = "exterior")]
    pub kind: String,
    #[arg(long)]
    pub aperture: Option<f64>,
    #[arg(long, default_value_t = 96)]
    pub n: usize,
    /// Matrix polynomial instead of a geometry.
    #[arg(long)]
    pub poly: Option<String>,
    /// Contour center `re,im`.
    #[arg(long, allow_hyphen_values = true, default_value = "3,-1.5")]
    pub center: String,
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    /// Contour point counts.
    #[arg(long, default_value = "8,16,24,32,40,48,56,64,72,80,88,96")]
    pub points: String,
    /// Methods: `<solver>[+secant<k>|+local_aaa]` with solver algorithm1,
    /// beyn1 or block_ss.
    #[arg(
        long,
        default_value = "algorithm1,algorithm1+secant4,algorithm1+local_aaa,beyn1,beyn1+secant4,block_ss,block_ss+secant4"
    )]
    pub methods: String,
    /// Reference eigenvalue `re,im`; default: secant refinement of --guess.
    #[arg(long, allow_hyphen_values = true)]
    pub reference: Option<String>,
    /// Starting point for the reference secant run.
    #[arg(long, allow_hyphen_values = true, default_value = "2.299,-1.597")]
    pub guess: String,
    /// Probe columns for Beyn's method.
    #[arg(long, default_value_t = 8)]
    pub beyn_probes: usize,
    /// Probe columns for block SS.
    #[arg(long, default_value_t = 1)]
    pub block_probes: usize,
    /// Hankel block rows for block SS (default: chosen by rank doubling).
    #[arg(long)]
    pub hankel_blocks: Option<usize>,
    #[arg(long, default_value_t = aaanep::baselines::DEFAULT_RANK_TOL)]
    pub rank_tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub threads: Option<usize>,
    /// Output CSV (default stdout).
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    /// Reference problem; only disk-dirichlet is available.
    #[arg(long, default_value = "disk-dirichlet")]
    pub kind: String,
    /// Interval `a,b` within [0.5, 200].
    #[arg(long, allow_hyphen_values = true)]
    pub interval: String,
    /// Output CSV (default stdout).
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct PolyInfoArgs {
    /// `butterfly` or a path to a polynomial file.
    pub poly: String,
    /// Also compute all eigenvalues from the companion linearization.
    #[arg(long)]
    pub eigenvalues: bool,
    /// Write the polynomial in the text format (e.g. to export the builtin).
    #[arg(long)]
    pub export: Option<PathBuf>,
    /// Output for the eigenvalue CSV (default stdout).
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

pub fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Search(a) => commands::search::run(a),
        Command::Field(a) => commands::field::run(a),
        Command::GapStudy(a) => commands::gap::run(a),
        Command::Compare(a) => commands::compare::run(a),
        Command::Oracle(a) => commands::oracle::run(a),
        Command::PolyInfo(a) => commands::poly::run(a),
    }
}

/// Writes `text` to `path`, or to stdout when `path` is `None`.
pub(crate) fn emit(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| anyhow::anyhow!("writing {}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Sizes the global worker pool; later calls are ignored.
pub(crate) fn set_threads(threads: Option<usize>) -> anyhow::Result<()> {
    if let Some(t) = threads {
        if t == 0 {
            return Err(UsageError("--threads must be at least 1".into()).into());
        }
        if rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .is_err()
        {
            log::debug!("worker pool already initialized");
        }
    }
    Ok(())
}
