use serde::Serialize;

use crate::error::{invalid, Result};
use crate::format::fmt_num;
use crate::metrics::{kolmogorov_exact, wasserstein1d_exact, DiscreteDistribution};
use crate::targets::BetaTarget;

use super::report::{params_string, ExperimentReport};

/// Polya urn: `alpha0` white and `beta0` black balls, `t` balls of the
/// drawn colour added after each of `n` draws.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct UrnSpec {
    pub alpha0: u64,
    pub beta0: u64,
    pub t: u64,
    pub n: u64,
}

impl UrnSpec {
    pub fn new(alpha0: u64, beta0: u64, t: u64, n: u64) -> Result<Self> {
        if alpha0 < 1 || beta0 < 1 || t < 1 || n < 1 {
            return invalid("urn parameters must all be at least 1");
        }
        Ok(UrnSpec { alpha0, beta0, t, n })
    }

    /// Limiting law of the white-draw fraction.
    pub fn limit(&self) -> Result<BetaTarget> {
        BetaTarget::new(self.alpha0 as f64 / self.t as f64, self.beta0 as f64 / self.t as f64)
    }
}

fn log_sum_exp(xs: &[f64]) -> f64 {
    let top = xs.iter().fold(f64::NEG_INFINITY, |a, b| a.max(*b));
    top + xs.iter().map(|x| (x - top).exp()).sum::<f64>().ln()
}

/// Log-probabilities of the white-draw count `S_n = 0..=n`, normalised.
pub fn urn_log_pmf(spec: &UrnSpec) -> Vec<f64> {
    let (a, b, t, n) = (spec.alpha0 as f64, spec.beta0 as f64, spec.t as f64, spec.n as f64);
    let len = spec.n as usize + 1;
    let mut logs = vec![0.0; len];
    // P(k+1) / P(k) = (n-k)/(k+1) * (a + k t) / (b + (n-k-1) t)
    for k in 0..len - 1 {
        let kf = k as f64;
        let ratio = ((n - kf) / (kf + 1.0)).ln() + (a + kf * t).ln() - (b + (n - kf - 1.0) * t).ln();
        logs[k + 1] = logs[k] + ratio;
    }
    let norm = log_sum_exp(&logs);
    logs.iter_mut().for_each(|l| *l -= norm);
    logs
}

/// Law of `S_n`; atoms whose mass underflows are dropped.
pub fn urn_exact_pmf(spec: &UrnSpec) -> Result<DiscreteDistribution> {
    let logs = urn_log_pmf(spec);
    let points: Vec<f64> = (0..logs.len()).map(|k| k as f64).collect();
    let weights: Vec<f64> = logs.iter().map(|l| l.exp()).collect();
    DiscreteDistribution::from_weighted(&points, &weights)
}

/// Compares `W_n = S_n / n` with its beta limit, feeding the exact
/// Wasserstein distance to the shape-uniform beta bound.
pub fn validate_urn(spec: &UrnSpec, m: usize) -> Result<ExperimentReport> {
    let target = spec.limit()?;
    let w = urn_exact_pmf(spec)?.affine(0.0, 1.0 / spec.n as f64)?;
    let dk = kolmogorov_exact(&w, &target);
    let dw = wasserstein1d_exact(&w, &target)?;
    let bound = target.universal_bound(m, dw.value)?;
    let params = params_string(&[
        ("alpha", spec.alpha0.to_string()),
        ("beta", spec.beta0.to_string()),
        ("t", spec.t.to_string()),
        ("m", m.to_string()),
        ("dW", fmt_num(dw.value)),
    ]);
    Ok(ExperimentReport::new("urn", params, Some(spec.n), dk, Some(dw), bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn small_cases() {
        let p = urn_exact_pmf(&UrnSpec::new(3, 5, 2, 1).unwrap()).unwrap();
        assert_relative_eq!(p.masses()[1], 3.0 / 8.0, max_relative = 1e-14);
        let p = urn_exact_pmf(&UrnSpec::new(1, 1, 1, 2).unwrap()).unwrap();
        for m in p.masses() {
            assert_relative_eq!(*m, 1.0 / 3.0, max_relative = 1e-14);
        }
        assert!(UrnSpec::new(0, 1, 1, 1).is_err());
    }
}
