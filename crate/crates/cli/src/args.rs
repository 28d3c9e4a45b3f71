use clap::{Args, Parser, Subcommand, ValueEnum};
use lattice_casimir::massexp::DEFAULT_ORDERS;
use lattice_casimir::{BoundaryCondition, QuadratureConfig, Thresholds};

/// Lattice-regularized Casimir energies for power-law dispersions.
///
/// All quantities are in lattice units: `am` is the mass times the lattice
/// spacing and `nz` the slab thickness in sites.
#[derive(Debug, Parser)]
#[command(name = "lattice-casimir", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub output: OutputArgs,

    #[command(flatten)]
    pub quadrature: QuadratureArgs,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Zero-point and Casimir energies for a single thickness.
    Compute(ComputeArgs),
    /// Casimir energies over a range of thicknesses.
    Sweep(SweepArgs),
    /// Classify the thickness dependence as NoEffect, Remnant, Lasting or Damping.
    Classify(ClassifyArgs),
    /// Massive energy against partial sums of massless remnants.
    MassExpansion(MassExpansionArgs),
    /// Mode-sum rectangles against the continuous dispersion curve.
    Rectangles(RectanglesArgs),
    /// Continuum closed-form Casimir energy.
    Reference(ReferenceArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Table)]
    pub format: OutputFormat,

    /// Output file, `-` for stdout.
    #[arg(long, global = true, default_value = "-")]
    pub out: String,
}

#[derive(Debug, Args)]
pub struct QuadratureArgs {
    /// Grid points per axis on the first level.
    #[arg(long, global = true, env = "LATTICE_CASIMIR_BASE_POINTS")]
    pub base_points: Option<usize>,

    /// Grid doublings allowed after the first level.
    #[arg(long, global = true, env = "LATTICE_CASIMIR_MAX_REFINEMENTS")]
    pub max_refinements: Option<u32>,

    /// Relative quadrature tolerance.
    #[arg(long, global = true, env = "LATTICE_CASIMIR_REL_TOL")]
    pub rel_tol: Option<f64>,

    /// Absolute quadrature tolerance.
    #[arg(long, global = true, env = "LATTICE_CASIMIR_ABS_TOL")]
    pub abs_tol: Option<f64>,
}

impl QuadratureArgs {
    pub fn config(&self) -> QuadratureConfig {
        let d = QuadratureConfig::default();
        QuadratureConfig {
            base_points: self.base_points.unwrap_or(d.base_points),
            max_refinements: self.max_refinements.unwrap_or(d.max_refinements),
            rel_tol: self.rel_tol.unwrap_or(d.rel_tol),
            abs_tol: self.abs_tol.unwrap_or(d.abs_tol),
        }
    }
}

/// Dispersion order, mass and branch count.
#[derive(Debug, Args)]
pub struct DispersionArgs {
    /// Dispersion order: aω = (ak̃² + am²)^{s/2}.
    #[arg(long, value_parser = clap::value_parser!(u32).range(0..=64))]
    pub s: u32,

    /// Mass in lattice units.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub am: f64,

    /// Number of degenerate branches.
    #[arg(long, default_value_t = 1)]
    pub g: u32,
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub dispersion: DispersionArgs,

    /// Spatial dimension (1 to 3).
    #[arg(long, default_value_t = 3)]
    pub d: usize,

    /// Slab thickness in sites.
    #[arg(long)]
    pub nz: usize,

    /// Boundary condition: periodic, antiperiodic or phenomenological.
    #[arg(long, default_value = "periodic")]
    pub bc: BoundaryCondition,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub dispersion: DispersionArgs,

    #[arg(long, default_value_t = 3)]
    pub d: usize,

    #[arg(long, default_value = "periodic")]
    pub bc: BoundaryCondition,

    /// First thickness of the sweep.
    #[arg(long, default_value_t = 1)]
    pub nz_min: usize,

    /// Last thickness of the sweep.
    #[arg(long, default_value_t = 30)]
    pub nz_max: usize,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub dispersion: DispersionArgs,

    #[arg(long, default_value_t = 3)]
    pub d: usize,

    #[arg(long, default_value = "periodic")]
    pub bc: BoundaryCondition,

    /// Largest thickness of the sweep (at least 8).
    #[arg(long, default_value_t = 30)]
    pub nz_max: usize,

    /// Magnitude below which an energy counts as zero.
    #[arg(long, default_value_t = Thresholds::default().eps_zero)]
    pub eps_zero: f64,

    /// Relative tolerance on the coefficient tail.
    #[arg(long, default_value_t = Thresholds::default().delta_tail)]
    pub delta_tail: f64,
}

#[derive(Debug, Args)]
pub struct MassExpansionArgs {
    /// Mass in lattice units (> 0).
    #[arg(long, allow_negative_numbers = true)]
    pub am: f64,

    #[arg(long, default_value_t = 3)]
    pub d: usize,

    #[arg(long, default_value = "periodic")]
    pub bc: BoundaryCondition,

    #[arg(long)]
    pub nz: usize,

    /// Number of expansion orders.
    #[arg(long, default_value_t = DEFAULT_ORDERS)]
    pub orders: u32,
}

#[derive(Debug, Args)]
pub struct RectanglesArgs {
    #[command(flatten)]
    pub dispersion: DispersionArgs,

    #[arg(long)]
    pub nz: usize,

    #[arg(long, default_value = "periodic")]
    pub bc: BoundaryCondition,

    /// Transverse momenta ak_x, ak_y (comma separated, default none).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub k_perp: Vec<f64>,

    /// Number of samples of the continuous curve.
    #[arg(long, default_value_t = 256)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct ReferenceArgs {
    #[arg(long)]
    pub s: u32,

    #[arg(long, default_value_t = 3)]
    pub d: u32,

    /// Period length.
    #[arg(long = "L", default_value_t = 1.0, allow_negative_numbers = true)]
    pub l: f64,

    /// Branch factor.
    #[arg(long, default_value_t = 2)]
    pub g: u32,
}
