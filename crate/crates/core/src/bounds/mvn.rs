use serde::Serialize;

use crate::constants::{multivariate_norm_constant, multivariate_spline_constant};
use crate::error::{invalid, Result};

use super::result::BoundResult;

/// Multivariate normal target with a diagonal covariance floor.
///
/// `sigma` is the square root of the smallest diagonal variance, the scale
/// that enters the anti-concentration factor `(sqrt(2 ln d) + 2) / sigma`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MvnTarget {
    pub covariance_diag: Vec<f64>,
}

impl MvnTarget {
    pub fn new(covariance_diag: Vec<f64>) -> Result<Self> {
        if covariance_diag.is_empty() {
            return invalid("dimension must be at least 1");
        }
        if covariance_diag.iter().any(|v| !(*v > 0.0) || !v.is_finite()) {
            return invalid("diagonal variances must be positive");
        }
        Ok(MvnTarget { covariance_diag })
    }

    /// Isotropic target with standard deviation `sigma` in every coordinate.
    pub fn isotropic(dim: usize, sigma: f64) -> Result<Self> {
        if !(sigma > 0.0) || !sigma.is_finite() {
            return invalid(format!("sigma must be positive, got {sigma}"));
        }
        Self::new(vec![sigma * sigma; dim])
    }

    pub fn dim(&self) -> usize {
        self.covariance_diag.len()
    }

    pub fn sigma(&self) -> f64 {
        self.covariance_diag.iter().fold(f64::INFINITY, |a, v| a.min(*v)).sqrt()
    }
}

/// `sqrt(2 ln d) + 2`.
pub fn anti_concentration_factor(dim: usize) -> f64 {
    (2.0 * (dim as f64).ln()).sqrt() + 2.0
}

fn check(m: usize, d_m: f64) -> Result<()> {
    if m == 0 {
        return invalid("smoothness order must be at least 1");
    }
    if !(d_m >= 0.0) || !d_m.is_finite() {
        return invalid(format!("d_m must be non-negative and finite, got {d_m}"));
    }
    Ok(())
}

/// Returns `(conditional, unconditional)`: the sharper bound gated on
/// `d_m`, and the always-valid bound carrying the extra `M'_m d_m` term.
pub fn bound_mvn(target: &MvnTarget, m: usize, d_m: f64) -> Result<(BoundResult, BoundResult)> {
    check(m, d_m)?;
    let sigma = target.sigma();
    let dim = target.dim();
    let f = anti_concentration_factor(dim);
    let mp = multivariate_spline_constant(m).value();
    let np = multivariate_norm_constant(m).value();
    let threshold = if m == 1 {
        f / (sigma * np)
    } else {
        2.0 * f / (sigma * mp)
    };
    let strict = BoundResult::new("mvn-strict", m, d_m, threshold, d_m <= threshold);
    let loose = BoundResult::new("mvn", m, d_m, f64::INFINITY, true);
    if d_m == 0.0 {
        return Ok((strict, loose));
    }
    let e = m as f64 + 1.0;
    let alpha = (sigma * np * d_m / f).powf(1.0 / e);
    let main = 2.0 * (f / sigma).powf(m as f64 / e) * (np * d_m).powf(1.0 / e);
    Ok((strict.with_value(alpha, main), loose.with_value(alpha, main + mp * d_m)))
}

/// Aggregate inputs for a multivariate exchangeable-pair approximation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExchangeablePairInputs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub dim: usize,
    /// Standard-deviation floor of the target covariance.
    pub sigma: f64,
    pub sigma_star: f64,
    /// Operator norm of the target covariance.
    pub sup_norm_sigma: f64,
}

impl ExchangeablePairInputs {
    fn validate(&self) -> Result<()> {
        if [self.a, self.b, self.c].iter().any(|v| !(*v >= 0.0) || !v.is_finite()) {
            return invalid("A, B, C must be non-negative");
        }
        if self.dim == 0 {
            return invalid("dimension must be at least 1");
        }
        if [self.sigma, self.sigma_star, self.sup_norm_sigma]
            .iter()
            .any(|v| !(*v > 0.0) || !v.is_finite())
        {
            return invalid("sigma, sigma_star and the covariance norm must be positive");
        }
        Ok(())
    }

    fn remainder_scale(&self) -> f64 {
        1.0 + self.dim as f64 * self.sup_norm_sigma.sqrt() / 2.0
    }

    /// Smooth-metric distance of order three with unit test-function norms.
    pub fn third_order_distance(&self) -> f64 {
        self.a / 4.0 + self.b / 12.0 + self.remainder_scale() * self.c
    }

    /// Smooth-metric distance of order two with unit test-function norms.
    pub fn second_order_distance(&self) -> f64 {
        let root_two_pi = (2.0 * std::f64::consts::PI).sqrt();
        self.a / 4.0 + root_two_pi * self.sigma_star * self.b / 16.0 + self.remainder_scale() * self.c
    }
}

/// Returns `(third-order bound, second-order bound)`.
pub fn exchangeable_pair_bounds(
    inp: &ExchangeablePairInputs,
    d3: Option<f64>,
    d2: Option<f64>,
) -> Result<(BoundResult, BoundResult)> {
    inp.validate()?;
    let d3 = d3.unwrap_or_else(|| inp.third_order_distance());
    let d2 = d2.unwrap_or_else(|| inp.second_order_distance());
    check(3, d3)?;
    check(2, d2)?;
    let f = anti_concentration_factor(inp.dim);
    let g = 2.0 * f;
    let s = inp.sigma;

    let t3 = f / (2.0 * s);
    let mut r3 = BoundResult::new("pair-third-order", 3, d3, t3, d3 <= t3);
    if d3 > 0.0 {
        let alpha = (s * multivariate_norm_constant(3).value() * d3 / f).powf(0.25);
        let raw = 2.0 * 2f64.sqrt() * (g / s).powf(0.75) * d3.powf(0.25);
        r3 = r3.with_value(alpha, raw);
    }
    let t2 = g / s;
    let mut r2 = BoundResult::new("pair-second-order", 2, d2, t2, d2 <= t2);
    if d2 > 0.0 {
        let alpha = (s * multivariate_norm_constant(2).value() * d2 / f).powf(1.0 / 3.0);
        let raw = 2.0 * (g / s).powf(2.0 / 3.0) * d2.powf(1.0 / 3.0);
        r2 = r2.with_value(alpha, raw);
    }
    Ok((r3, r2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn one_dimensional_worked_value() {
        let t = MvnTarget::isotropic(1, 1.0).unwrap();
        let (s, l) = bound_mvn(&t, 1, 0.001).unwrap();
        assert_relative_eq!(s.bound, 2.0 * 2f64.sqrt() * 0.001f64.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(l.bound, s.bound + 0.5 * 0.001, max_relative = 1e-14);
        assert!(s.valid && l.valid);
    }

    #[test]
    fn sigma_is_the_standard_deviation_floor() {
        let t = MvnTarget::new(vec![4.0, 0.25, 9.0]).unwrap();
        assert_eq!(t.sigma(), 0.5);
        assert!(MvnTarget::new(vec![1.0, 0.0]).is_err());
    }

    #[test]
    fn pair_forms_agree_with_the_generic_mvn_form() {
        let inp = ExchangeablePairInputs {
            a: 0.01,
            b: 0.02,
            c: 0.005,
            dim: 4,
            sigma: 0.8,
            sigma_star: 1.1,
            sup_norm_sigma: 1.5,
        };
        let (r3, r2) = exchangeable_pair_bounds(&inp, None, None).unwrap();
        let t = MvnTarget::isotropic(4, 0.8).unwrap();
        let (g3, _) = bound_mvn(&t, 3, r3.d_m).unwrap();
        let (g2, _) = bound_mvn(&t, 2, r2.d_m).unwrap();
        assert_relative_eq!(r3.raw_bound, g3.raw_bound, max_relative = 1e-13);
        assert_relative_eq!(r2.raw_bound, g2.raw_bound, max_relative = 1e-13);
        assert_relative_eq!(r3.validity_threshold, g3.validity_threshold, max_relative = 1e-13);
        assert_relative_eq!(r2.validity_threshold, g2.validity_threshold, max_relative = 1e-13);
    }
}
