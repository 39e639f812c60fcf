use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::bound_bounded;
use crate::error::{invalid, Error, Result};
use crate::metrics::{kolmogorov_exact, monte_carlo_kolmogorov, DiscreteDistribution};
use crate::targets::Normal;

use super::report::{params_string, ExperimentReport};

/// Standardised summand law.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CltSummand {
    Rademacher,
    Uniform,
    ExponentialCentered,
}

impl CltSummand {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "rademacher" => Ok(CltSummand::Rademacher),
            "uniform" => Ok(CltSummand::Uniform),
            "exponential-centered" => Ok(CltSummand::ExponentialCentered),
            other => Err(Error::Unknown {
                kind: "summand law",
                name: other.to_string(),
            }),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CltSummand::Rademacher => "rademacher",
            CltSummand::Uniform => "uniform",
            CltSummand::ExponentialCentered => "exponential-centered",
        }
    }

    /// `E |X|^3` for the mean-zero, unit-variance version.
    pub fn third_absolute_moment(self) -> f64 {
        match self {
            CltSummand::Rademacher => 1.0,
            CltSummand::Uniform => 0.75 * 3f64.sqrt(),
            CltSummand::ExponentialCentered => 12.0 / std::f64::consts::E - 2.0,
        }
    }

    fn draw(self, rng: &mut ChaCha8Rng) -> f64 {
        match self {
            CltSummand::Rademacher => {
                if rng.gen::<bool>() {
                    1.0
                } else {
                    -1.0
                }
            }
            CltSummand::Uniform => 3f64.sqrt() * (2.0 * rng.gen::<f64>() - 1.0),
            CltSummand::ExponentialCentered => -(1.0 - rng.gen::<f64>()).ln() - 1.0,
        }
    }
}

/// Monte Carlo settings for the summand laws without an exact oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct McSettings {
    pub samples: usize,
    pub seed: u64,
}

impl Default for McSettings {
    fn default() -> Self {
        McSettings {
            samples: 20_000,
            seed: 0,
        }
    }
}

/// Law of `(2 S - n) / sqrt(n)` with `S ~ Bin(n, 1/2)`.
pub fn rademacher_sum_law(n: u64) -> Result<DiscreteDistribution> {
    if n == 0 {
        return invalid("n must be at least 1");
    }
    let nf = n as f64;
    let mut logs = vec![0.0f64; n as usize + 1];
    for k in 0..n as usize {
        logs[k + 1] = logs[k] + ((nf - k as f64) / (k as f64 + 1.0)).ln();
    }
    let top = logs.iter().fold(f64::NEG_INFINITY, |a, b| a.max(*b));
    let weights: Vec<f64> = logs.iter().map(|l| (l - top).exp()).collect();
    let points: Vec<f64> = (0..=n).map(|k| (2.0 * k as f64 - nf) / nf.sqrt()).collect();
    DiscreteDistribution::from_weighted(&points, &weights)
}

/// Kolmogorov distance of a standardised sum to the standard normal,
/// against the bounded-density bound fed with `(2 + E|X|^3) / sqrt(n)`.
pub fn validate_clt(law: CltSummand, n: u64, m: usize, strict: bool, mc: McSettings) -> Result<ExperimentReport> {
    if n == 0 {
        return invalid("n must be at least 1");
    }
    let normal = Normal::standard();
    let d_w = (2.0 + law.third_absolute_moment()) / (n as f64).sqrt();
    let amplitude = 1.0 / (2.0 * std::f64::consts::PI).sqrt();
    let bound = bound_bounded(amplitude, m, d_w, strict)?;
    let dk = match law {
        CltSummand::Rademacher => kolmogorov_exact(&rademacher_sum_law(n)?, &normal),
        _ => {
            let scale = 1.0 / (n as f64).sqrt();
            let sampler = move |rng: &mut ChaCha8Rng| (0..n).map(|_| law.draw(rng)).sum::<f64>() * scale;
            monte_carlo_kolmogorov(&sampler, &normal, mc.samples, mc.seed)?
        }
    };
    let params = params_string(&[("dist", law.name().to_string()), ("m", m.to_string())]);
    Ok(ExperimentReport::new("clt", params, Some(n), dk, None, bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn worked_bound_at_one_hundred() {
        let r = validate_clt(CltSummand::Rademacher, 100, 1, true, McSettings::default()).unwrap();
        // 2 (A d / 2)^(1/2) with A = (2 pi)^(-1/2), d = 3/10
        let expected = 2.0 * (0.15 / (2.0 * std::f64::consts::PI).sqrt()).sqrt();
        assert_relative_eq!(r.bound.bound, expected, max_relative = 1e-13);
        assert_relative_eq!(r.bound.bound, 0.4892498, epsilon = 1e-7);
        assert!(r.inequality_holds && r.margin > 0.3);
        assert!(!r.bound.valid);
    }

    #[test]
    fn sum_law_is_symmetric() {
        let d = rademacher_sum_law(9).unwrap();
        assert_eq!(d.len(), 10);
        assert_relative_eq!(d.masses()[0], 2f64.powi(-9), max_relative = 1e-13);
        assert_relative_eq!(d.mean(), 0.0, epsilon = 1e-15);
    }
}
