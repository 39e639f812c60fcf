use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "kdbound",
    version,
    about = "Kolmogorov-distance bounds from smooth-metric distances",
    disable_help_subcommand = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json, display_order = 100)]
    pub format: Format,

    /// Write output to FILE instead of standard output
    #[arg(long, global = true, value_name = "FILE", display_order = 101)]
    pub out: Option<PathBuf>,

    /// Seed for every random draw
    #[arg(long, global = true, default_value_t = 0, display_order = 102)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Construct and certify the base smoothing spline
    #[command(subcommand)]
    Spline(SplineCmd),
    /// Closed-form constants
    #[command(subcommand)]
    Constants(ConstantsCmd),
    /// Evaluate Kolmogorov bounds
    #[command(subcommand)]
    Bound(BoundCmd),
    /// Run end-to-end validation experiments
    #[command(subcommand)]
    Validate(ValidateCmd),
}

#[derive(Debug, Subcommand)]
pub enum SplineCmd {
    /// Print the base spline of order m as JSON
    Build {
        /// Smoothness order
        #[arg(long)]
        m: usize,
    },
    /// Check continuity, range, symmetry and the perfect-spline property
    Verify {
        /// Smoothness order
        #[arg(long)]
        m: usize,
        /// Certification tolerance
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Verify a serialised spline instead of constructing one
        #[arg(long, value_name = "FILE")]
        input: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ConstantsCmd {
    /// Table of spline, norm, Favard and Landau-Kolmogorov constants
    Dump {
        /// Largest order in the table
        #[arg(long, default_value_t = 8)]
        m: usize,
        /// Tolerance for the Favard series
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct Strictness {
    /// Use the strict-envelope form (default)
    #[arg(long, overrides_with = "no_strict")]
    pub strict: bool,
    /// Use the offset-tolerant form
    #[arg(long = "no-strict", overrides_with = "strict")]
    pub no_strict: bool,
}

impl Strictness {
    pub fn value(self) -> bool {
        !self.no_strict
    }
}

#[derive(Debug, Subcommand)]
pub enum BoundCmd {
    /// Univariate bound for an explicit density envelope
    Compute(ComputeArgs),
    /// Univariate bound for a named target distribution
    Target(TargetArgs),
    /// Multivariate normal bounds
    Mvn {
        /// Smoothness order
        #[arg(long)]
        m: usize,
        /// Smooth-metric distance d_m
        #[arg(long)]
        dm: f64,
        /// Dimension
        #[arg(long, default_value_t = 1)]
        dim: usize,
        /// Standard-deviation floor of the covariance diagonal
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
    },
    /// Exchangeable-pair bounds of orders three and two
    Pair(PairArgs),
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    /// Envelope family: bounded, log, power, log-power
    #[arg(long)]
    pub profile: String,
    /// Smoothness order
    #[arg(long)]
    pub m: usize,
    /// Smooth-metric distance d_m
    #[arg(long)]
    pub dm: f64,
    /// Envelope scale
    #[arg(long = "A")]
    pub amplitude: f64,
    /// Logarithm scale (log, log-power)
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    /// Power exponent (power, log-power)
    #[arg(long, default_value_t = 0.0)]
    pub a: f64,
    /// Logarithm exponent (log-power)
    #[arg(long, default_value_t = 0.0)]
    pub b: f64,
    /// Neighbourhood radius [default: min(1/2, 1/c)]
    #[arg(long)]
    pub eps: Option<f64>,
    /// Additive envelope offset for the offset-tolerant form
    #[arg(long = "B", default_value_t = 0.0)]
    pub offset: f64,
    #[command(flatten)]
    pub strictness: Strictness,
}

#[derive(Debug, Args)]
pub struct TargetArgs {
    /// Target kind: beta, exponential, normal, uniform, vg
    #[arg(long, required_unless_present = "config")]
    pub kind: Option<String>,
    /// JSON target description {"kind": ..., "params": {...}}
    #[arg(long, value_name = "FILE", conflicts_with = "kind")]
    pub config: Option<PathBuf>,
    /// Smoothness order
    #[arg(long)]
    pub m: usize,
    /// Smooth-metric distance d_m
    #[arg(long)]
    pub dm: f64,
    /// Beta first shape
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Beta second shape
    #[arg(long)]
    pub beta: Option<f64>,
    /// Variance-gamma shape
    #[arg(long)]
    pub r: Option<f64>,
    /// Variance-gamma skew
    #[arg(long)]
    pub theta: Option<f64>,
    /// Scale (normal, variance-gamma)
    #[arg(long)]
    pub sigma: Option<f64>,
    /// Location (normal, variance-gamma)
    #[arg(long)]
    pub mu: Option<f64>,
    /// Exponential rate
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Uniform lower end
    #[arg(long)]
    pub a: Option<f64>,
    /// Uniform upper end
    #[arg(long)]
    pub b: Option<f64>,
    /// Additive envelope offset for the offset-tolerant form
    #[arg(long = "B", default_value_t = 0.0)]
    pub offset: f64,
    #[command(flatten)]
    pub strictness: Strictness,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    /// First aggregate input
    #[arg(long = "A")]
    pub a: f64,
    /// Second aggregate input
    #[arg(long = "B")]
    pub b: f64,
    /// Third aggregate input
    #[arg(long = "C")]
    pub c: f64,
    /// Dimension
    #[arg(long)]
    pub dim: usize,
    /// Standard-deviation floor of the covariance diagonal
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    /// Row-norm floor of the scaled covariance
    #[arg(long = "sigma-star", default_value_t = 1.0)]
    pub sigma_star: f64,
    /// Operator norm of the covariance
    #[arg(long = "cov-norm", default_value_t = 1.0)]
    pub cov_norm: f64,
    /// Override the computed order-three distance
    #[arg(long)]
    pub d3: Option<f64>,
    /// Override the computed order-two distance
    #[arg(long)]
    pub d2: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum ValidateCmd {
    /// Polya urn against its beta limit
    Urn {
        /// Initial white balls
        #[arg(long, default_value_t = 1)]
        alpha: u64,
        /// Initial black balls
        #[arg(long, default_value_t = 1)]
        beta: u64,
        /// Balls added per draw
        #[arg(long, default_value_t = 1)]
        t: u64,
        /// Numbers of draws, comma separated
        #[arg(long, value_delimiter = ',', default_values_t = [10u64, 100, 1000, 10000])]
        n: Vec<u64>,
        /// Smoothness order
        #[arg(long, default_value_t = 1)]
        m: usize,
    },
    /// Normalised sums against the standard normal
    Clt {
        /// Summand law: rademacher, uniform, exponential-centered
        #[arg(long, default_value = "rademacher")]
        dist: String,
        /// Numbers of summands, comma separated
        #[arg(long, value_delimiter = ',', default_values_t = [25u64, 100, 400, 1600, 6400])]
        n: Vec<u64>,
        /// Smoothness order
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Monte Carlo sample size for non-lattice summands
        #[arg(long, default_value_t = 20000)]
        samples: usize,
        #[command(flatten)]
        strictness: Strictness,
    },
    /// Box-increment anti-concentration probe for N(0, sigma^2 I)
    Nazarov {
        /// Dimensions, comma separated
        #[arg(long, value_delimiter = ',', default_values_t = [1usize, 2, 5, 10, 50])]
        dim: Vec<usize>,
        /// Coordinate standard deviation
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        /// Probe points per dimension
        #[arg(long, default_value_t = 10000)]
        grid: usize,
    },
    /// Lattice rounding of a standard normal vector
    MvnDisc {
        /// Dimension
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Lattice steps, comma separated
        #[arg(long, alias = "step", value_delimiter = ',', default_values_t = [0.2, 0.05, 0.01])]
        h: Vec<f64>,
        /// Smoothness order
        #[arg(long, default_value_t = 1)]
        m: usize,
    },
}
