use std::io::Write;

use serde::Serialize;

use crate::bounds::BoundResult;
use crate::error::Result;
use crate::format::{fmt_num, fmt_opt};
use crate::metrics::{MetricEstimate, MetricKind};

/// CSV header shared by all experiments.
pub const CSV_HEADER: [&str; 9] = [
    "experiment",
    "params",
    "n",
    "dm_input",
    "alpha",
    "bound",
    "exact_dK",
    "margin",
    "valid",
];

/// One experiment point: the measured Kolmogorov distance against the bound.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentReport {
    pub experiment: &'static str,
    /// `key=value` pairs joined by `;`.
    pub params: String,
    pub n: Option<u64>,
    pub exact_dk: MetricEstimate,
    pub exact_or_measured_dw: Option<MetricEstimate>,
    pub bound: BoundResult,
    pub inequality_holds: bool,
    /// `bound - d_K`.
    pub margin: f64,
}

#[derive(Serialize)]
#[allow(non_snake_case)]
struct Doc<'a> {
    experiment: &'a str,
    params: &'a str,
    n: Option<u64>,
    exact_dK: serde_json::Value,
    exact_or_measured_dW: Option<serde_json::Value>,
    bound: serde_json::Value,
    inequality_holds: bool,
    margin: String,
}

impl ExperimentReport {
    pub fn new(
        experiment: &'static str,
        params: String,
        n: Option<u64>,
        exact_dk: MetricEstimate,
        exact_or_measured_dw: Option<MetricEstimate>,
        bound: BoundResult,
    ) -> Self {
        // a Monte Carlo value only counts against the bound beyond its band
        let lower = match exact_dk.kind {
            MetricKind::MonteCarlo => exact_dk.value - exact_dk.stderr.unwrap_or(0.0),
            _ => exact_dk.value,
        };
        let inequality_holds = lower <= bound.bound;
        let margin = bound.bound - exact_dk.value;
        ExperimentReport {
            experiment,
            params,
            n,
            exact_dk,
            exact_or_measured_dw,
            bound,
            inequality_holds,
            margin,
        }
    }

    /// The bound's gate passed and the distance still exceeds it.
    pub fn soundness_violation(&self) -> bool {
        self.bound.valid && !self.inequality_holds
    }

    pub fn dm_input(&self) -> f64 {
        self.bound.d_m
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(Doc {
            experiment: self.experiment,
            params: &self.params,
            n: self.n,
            exact_dK: self.exact_dk.to_json_value(),
            exact_or_measured_dW: self.exact_or_measured_dw.as_ref().map(|e| e.to_json_value()),
            bound: self.bound.to_json_value(),
            inequality_holds: self.inequality_holds,
            margin: fmt_num(self.margin),
        })
        .expect("report fields serialise")
    }

    pub fn csv_record(&self) -> [String; 9] {
        [
            self.experiment.to_string(),
            self.params.clone(),
            self.n.map(|n| n.to_string()).unwrap_or_default(),
            fmt_num(self.bound.d_m),
            fmt_opt(self.bound.alpha).unwrap_or_default(),
            fmt_num(self.bound.bound),
            fmt_num(self.exact_dk.value),
            fmt_num(self.margin),
            self.bound.valid.to_string(),
        ]
    }
}

pub fn write_csv<W: Write>(reports: &[ExperimentReport], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in reports {
        w.write_record(r.csv_record())?;
    }
    w.flush()?;
    Ok(())
}

pub(crate) fn params_string(pairs: &[(&str, String)]) -> String {
    pairs
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}
