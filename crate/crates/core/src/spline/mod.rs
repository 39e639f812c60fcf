//! Perfect-spline smoothing kernel: the base spline, its scaled and product
//! forms, certification and serialisation.

mod base;
mod certify;
mod identities;
mod indicator;
mod json;
mod piecewise;
pub mod roots;

pub use base::{chebyshev_knots, BaseSpline, MAX_ORDER};
pub use certify::{certify_membership, CertificationReport};
pub use identities::{verify_knot_identities, KnotIdentityReport};
pub use indicator::{ProductIndicator, SmoothedIndicator};
pub use json::{from_json, to_json, JSON_DIGITS};
pub use piecewise::PiecewisePolynomial;
