//! End-to-end checks of the Kolmogorov bounds against exact or certified
//! distances.

mod clt;
mod mvn_disc;
mod nazarov;
mod report;
mod urn;

pub use clt::{rademacher_sum_law, validate_clt, CltSummand, McSettings};
pub use mvn_disc::{lattice_kolmogorov, validate_mvn_discretization, MAX_SWEEP_DIM};
pub use nazarov::{box_increment, nazarov_probe, NazarovReport, MAX_DIM};
pub use report::{write_csv, ExperimentReport, CSV_HEADER};
pub use urn::{urn_exact_pmf, urn_log_pmf, validate_urn, UrnSpec};
