use serde::Serialize;

use crate::format::{fmt_num, fmt_opt};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MetricKind {
    Exact,
    MonteCarlo,
    WitnessLowerBound,
}

impl MetricKind {
    pub fn name(self) -> &'static str {
        match self {
            MetricKind::Exact => "exact",
            MetricKind::MonteCarlo => "monte_carlo",
            MetricKind::WitnessLowerBound => "witness_lower_bound",
        }
    }
}

/// A distance value and how it was obtained.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricEstimate {
    pub value: f64,
    pub kind: MetricKind,
    /// Present exactly for Monte Carlo estimates.
    pub stderr: Option<f64>,
    pub n_samples: Option<u64>,
    pub seed: Option<u64>,
}

#[derive(Serialize)]
struct Doc {
    value: String,
    kind: &'static str,
    stderr: Option<String>,
    n: Option<u64>,
    seed: Option<u64>,
}

impl MetricEstimate {
    pub fn exact(value: f64) -> Self {
        MetricEstimate {
            value,
            kind: MetricKind::Exact,
            stderr: None,
            n_samples: None,
            seed: None,
        }
    }

    pub fn witness(value: f64) -> Self {
        MetricEstimate {
            kind: MetricKind::WitnessLowerBound,
            ..Self::exact(value)
        }
    }

    pub fn monte_carlo(value: f64, stderr: f64, n: u64, seed: u64) -> Self {
        MetricEstimate {
            value,
            kind: MetricKind::MonteCarlo,
            stderr: Some(stderr),
            n_samples: Some(n),
            seed: Some(seed),
        }
    }

    /// Largest value consistent with the estimate: the value itself, plus
    /// the stderr proxy for Monte Carlo.
    pub fn upper(&self) -> f64 {
        self.value + self.stderr.unwrap_or(0.0)
    }

    fn doc(&self) -> Doc {
        Doc {
            value: fmt_num(self.value),
            kind: self.kind.name(),
            stderr: fmt_opt(self.stderr),
            n: self.n_samples,
            seed: self.seed,
        }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.doc()).expect("plain fields serialise")
    }

    /// Keys in the order `value, kind, stderr, n, seed`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.doc()).expect("plain fields serialise")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let e = MetricEstimate::monte_carlo(0.25, 0.01, 100, 7);
        assert_eq!(
            e.to_json(),
            r#"{"value":"0.25","kind":"monte_carlo","stderr":"0.01","n":100,"seed":7}"#
        );
        assert_eq!(
            MetricEstimate::exact(0.5).to_json_value()["stderr"],
            serde_json::Value::Null
        );
    }
}
