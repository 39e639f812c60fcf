//! Distance oracles: exact Kolmogorov and Wasserstein distances in one
//! dimension, spline-witness lower bounds for smooth metrics, and seeded
//! Monte Carlo Kolmogorov estimates.

mod discrete;
mod estimate;
mod kolmogorov;
mod monte_carlo;
mod wasserstein;
mod witness;

pub use discrete::{DiscreteDistribution, MASS_TOL};
pub use estimate::{MetricEstimate, MetricKind};
pub use kolmogorov::kolmogorov_exact;
pub use monte_carlo::{
    dkw_halfwidth, draw, monte_carlo_kolmogorov, QuantileSampler, Sampler, CHUNK, CONFIDENCE, MIN_SAMPLES,
};
pub use wasserstein::{wasserstein1d_exact, wasserstein_discrete};
pub use witness::{witness_dm_lower_bound, Law, WitnessFamily, WitnessGrid, WitnessOutcome};
