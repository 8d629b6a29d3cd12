//! Command-line grammar. Angles are degrees here and radians inside.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use seesaw_core::{DisplacementConvention, ThicknessAssignment, ORACLE_ELEMENTS_PER_SEGMENT};

#[derive(Parser, Debug)]
#[command(
    name = "seesaw",
    version,
    about = "Design and verification tools for a printable seesaw focus lever"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve one load case against the closed-form lever model
    Analyze(AnalyzeArgs),
    /// Compare closed-form and frame-oracle ratios against the reference data
    Adjudicate(AdjudicateArgs),
    /// Convert a screw rotation into a focus step
    Tuning(TuningArgs),
    /// Tabulate the focus step over rotation and pitch ranges as CSV
    Surface(SurfaceArgs),
    /// Line width and line pairs of a 1951 resolution-target element
    Usaf(UsafArgs),
    /// Grid-search lever geometries against constraints
    Optimize(OptimizeArgs),
    /// Patch tests and mesh-refinement checks of the frame oracle
    FemValidate(FemValidateArgs),
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    /// Run configuration file
    #[arg(long, value_name = "FILE")]
    pub config: PathBuf,

    /// Force pressed on the active tip (N); 1 N when no load is given
    #[arg(long, value_name = "N", conflicts_with = "active_mm")]
    pub force: Option<f64>,

    /// Prescribed active-tip displacement (mm) instead of a force
    #[arg(long, value_name = "MM")]
    pub active_mm: Option<f64>,

    /// Active-side displacement convention
    #[arg(long, default_value = "bending-only")]
    pub convention: DisplacementConvention,

    /// Override the configured thickness assignment
    #[arg(long)]
    pub assignment: Option<ThicknessAssignment>,

    /// Write a sweep of prescribed active displacements to this CSV file
    #[arg(long, value_name = "FILE")]
    pub csv: Option<PathBuf>,

    /// Sweep range for --csv as lo:hi:count (mm of active displacement)
    #[arg(long, value_name = "LO:HI:N", requires = "csv", default_value = "1:6:6")]
    pub sweep: String,

    /// Add a frame-oracle cross-check to the report and the sweep
    #[arg(long)]
    pub with_fem: bool,
}

#[derive(Args, Debug)]
pub struct AdjudicateArgs {
    /// Run configuration file
    #[arg(long, value_name = "FILE")]
    pub config: PathBuf,

    /// Elements per beam segment in the frame oracle
    #[arg(long, default_value_t = ORACLE_ELEMENTS_PER_SEGMENT)]
    pub elements: usize,

    /// Also write the comparison table to this CSV file
    #[arg(long, value_name = "FILE")]
    pub csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct TuningArgs {
    /// Screw rotation (degrees)
    #[arg(long, value_name = "DEG", default_value_t = 5.0)]
    pub angle_deg: f64,

    /// Thread pitch (mm per turn)
    #[arg(long, value_name = "MM", default_value_t = 2.0)]
    pub pitch_mm: f64,

    /// Thread diameter (mm), informational
    #[arg(long, value_name = "MM", default_value_t = 6.0)]
    pub diameter_mm: f64,

    /// Displacement ratio to assume
    #[arg(long, conflicts_with = "config")]
    pub ratio: Option<f64>,

    /// Take the ratio (and optics) from this configuration's geometry
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Convention for the from-geometry ratio
    #[arg(long, default_value = "bending-only")]
    pub convention: DisplacementConvention,

    /// Override the configured thickness assignment
    #[arg(long)]
    pub assignment: Option<ThicknessAssignment>,
}

#[derive(Args, Debug)]
pub struct SurfaceArgs {
    /// Rotation range as lo:hi (degrees)
    #[arg(long, value_name = "LO:HI", default_value = "0.5:30")]
    pub rotation_deg: String,

    /// Pitch range as lo:hi (mm per turn)
    #[arg(long, value_name = "LO:HI", default_value = "0.5:3")]
    pub pitch_mm: String,

    /// Samples per axis
    #[arg(long, default_value_t = 25)]
    pub samples: usize,

    /// Displacement ratio
    #[arg(long, default_value_t = 11.0)]
    pub ratio: f64,

    /// Write the CSV here instead of standard output
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct UsafArgs {
    /// Target group, -2 through 9
    #[arg(allow_hyphen_values = true)]
    pub group: i32,

    /// Element within the group, 1 through 6
    pub element: i32,
}

#[derive(Args, Debug)]
pub struct OptimizeArgs {
    /// Run configuration file with [search] and [constraints]
    #[arg(long, value_name = "FILE")]
    pub config: PathBuf,

    /// Ranked candidates to print
    #[arg(long, default_value_t = 10)]
    pub top: usize,

    /// Ranked candidates to cross-check with the frame oracle
    #[arg(long, default_value_t = 5)]
    pub fem_check: usize,

    /// Polish the best candidate by coordinate descent
    #[arg(long)]
    pub refine: bool,

    /// Sweep limit for --refine
    #[arg(long, default_value_t = 100)]
    pub max_sweeps: usize,

    /// Write the ranked list to this CSV file
    #[arg(long, value_name = "FILE")]
    pub csv: Option<PathBuf>,

    /// Largest number of rows to write with --csv
    #[arg(long, default_value_t = 10_000)]
    pub csv_limit: usize,
}

#[derive(Args, Debug)]
pub struct FemValidateArgs {
    /// Configuration supplying the lever geometry (stock when absent)
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Finest subdivision in the refinement table, doubling up from 1
    #[arg(long, default_value_t = 64)]
    pub max_elements: usize,
}
