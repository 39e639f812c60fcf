//! Kolmogorov-distance bounds from smooth-metric distances.

mod mvn;
mod optimize;
mod profile;
mod rate;
mod registry;
mod result;
mod univariate;

pub use mvn::{anti_concentration_factor, bound_mvn, exchangeable_pair_bounds, ExchangeablePairInputs, MvnTarget};
pub use optimize::{optimize_alpha_numeric, AlphaOptimum};
pub use profile::{ProfileKind, SingularityProfile};
pub use rate::{bound_multivariate_rate, rate_exponent_label, RateCoefficients, RateEnvelope};
pub use registry::{BoundRegistry, BoundStrategy};
pub use result::BoundResult;
pub use univariate::{
    bound_bounded, bound_for_profile, bound_log, bound_log_power, bound_power, smoothing_objective, SmoothingObjective,
    UNRESTRICTED_ALPHA_MAX,
};
