//! Bounds on the Kolmogorov distance obtained from distances defined by
//! classes of smooth test functions, together with the numerical tooling to
//! check them: an extended-precision spline kernel, closed-form constants,
//! a registry of bound strategies, target distributions, exact and Monte
//! Carlo distance metrics, and reproducible validation experiments.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod bounds;
pub mod cli;
pub mod constants;
pub mod dd;
pub mod error;
pub mod experiments;
pub mod format;
pub mod metrics;
pub mod quad;
pub mod special;
pub mod spline;
pub mod targets;

pub use error::{Error, Result};
