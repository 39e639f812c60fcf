use serde::Serialize;
use statrs::function::beta::{beta_reg, ln_beta};

use crate::bounds::{BoundResult, SingularityProfile};
use crate::constants::smoothing_norm_constant;
use crate::error::{invalid, Result};

use super::{Cdf, Univariate};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BetaTarget {
    pub alpha_p: f64,
    pub beta_p: f64,
    #[serde(skip)]
    ln_b: f64,
}

/// Which envelope regime the shapes fall into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BetaCase {
    /// Both shapes at least 1.
    Bounded,
    /// Exactly one shape below 1.
    OneSingularity,
    /// Both shapes below 1.
    TwoSingularities,
}

/// Regime profile plus the parameters of the shape-uniform bound.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BetaProfiles {
    pub case: BetaCase,
    pub profile: SingularityProfile,
    /// `min(alpha, beta, 1)`.
    pub universal_exponent: f64,
    /// `4^(1-mu) / (B(alpha, beta) mu)`.
    pub universal_scale: f64,
}

impl BetaTarget {
    pub fn new(alpha_p: f64, beta_p: f64) -> Result<Self> {
        for (v, n) in [(alpha_p, "alpha"), (beta_p, "beta")] {
            if !(v > 0.0) || !v.is_finite() {
                return invalid(format!("{n} must be positive and finite, got {v}"));
            }
        }
        Ok(BetaTarget {
            alpha_p,
            beta_p,
            ln_b: ln_beta(alpha_p, beta_p),
        })
    }

    pub fn beta_function(&self) -> f64 {
        self.ln_b.exp()
    }

    pub fn case(&self) -> BetaCase {
        match (self.alpha_p < 1.0, self.beta_p < 1.0) {
            (false, false) => BetaCase::Bounded,
            (true, true) => BetaCase::TwoSingularities,
            _ => BetaCase::OneSingularity,
        }
    }

    /// Density maximum for shapes at least 1, attained at the mode.
    pub fn mode_density(&self) -> f64 {
        let (a, b) = (self.alpha_p, self.beta_p);
        if a == 1.0 && b == 1.0 {
            return 1.0;
        }
        let xlogx = |x: f64| if x == 0.0 { 0.0 } else { x * x.ln() };
        (xlogx(a - 1.0) + xlogx(b - 1.0) - xlogx(a + b - 2.0) - self.ln_b).exp()
    }

    pub fn profiles(&self) -> BetaProfiles {
        let (a, b) = (self.alpha_p, self.beta_p);
        let inv_b = (-self.ln_b).exp();
        let profile = match self.case() {
            BetaCase::Bounded => SingularityProfile::bounded(self.mode_density()),
            BetaCase::OneSingularity => {
                let (small, at) = if a < 1.0 { (a, 0.0) } else { (b, 1.0) };
                SingularityProfile::power(inv_b, 1.0 - small, 0.5).with_singularities(vec![at])
            }
            BetaCase::TwoSingularities => {
                let small = a.min(b);
                SingularityProfile::power(2f64.powf(1.0 - small) * inv_b, 1.0 - small, 0.5)
                    .with_singularities(vec![0.0, 1.0])
            }
        };
        let mu = a.min(b).min(1.0);
        BetaProfiles {
            case: self.case(),
            profile,
            universal_exponent: mu,
            universal_scale: 4f64.powf(1.0 - mu) * inv_b / mu,
        }
    }

    pub fn universal_bound(&self, m: usize, d_m: f64) -> Result<BoundResult> {
        beta_universal_bound(self, m, d_m)
    }
}

/// Bound valid for every pair of shapes, with exponent `mu / (m + mu)`.
pub fn beta_universal_bound(target: &BetaTarget, m: usize, d_m: f64) -> Result<BoundResult> {
    if m == 0 {
        return invalid("smoothness order must be at least 1");
    }
    if !(d_m >= 0.0) || !d_m.is_finite() {
        return invalid(format!("d_m must be non-negative and finite, got {d_m}"));
    }
    let p = target.profiles();
    let (mu, k) = (p.universal_exponent, p.universal_scale);
    let nn = smoothing_norm_constant(m).value();
    let threshold = 2f64.powf(-mu) / (nn * target.beta_function() * mu);
    let res = BoundResult::new("beta-universal", m, d_m, threshold, d_m <= threshold);
    if d_m == 0.0 {
        return Ok(res);
    }
    let e = m as f64 + mu;
    let alpha = (nn * d_m / k).powf(1.0 / e);
    let raw = 2.0 * k.powf(m as f64 / e) * (nn * d_m).powf(mu / e);
    Ok(res.with_value(alpha, raw))
}

impl Cdf for BetaTarget {
    fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            0.0
        } else if x >= 1.0 {
            1.0
        } else {
            beta_reg(self.alpha_p, self.beta_p, x)
        }
    }
}

impl Univariate for BetaTarget {
    fn kind(&self) -> &'static str {
        "beta"
    }
    fn params(&self) -> Vec<(&'static str, f64)> {
        vec![("alpha", self.alpha_p), ("beta", self.beta_p)]
    }
    fn support(&self) -> (f64, f64) {
        (0.0, 1.0)
    }
    fn density(&self, y: f64) -> f64 {
        if !(0.0..=1.0).contains(&y) {
            return 0.0;
        }
        let (a, b) = (self.alpha_p, self.beta_p);
        let term = |shape: f64, v: f64| {
            if shape == 1.0 {
                0.0
            } else if v == 0.0 {
                if shape > 1.0 {
                    f64::NEG_INFINITY
                } else {
                    f64::INFINITY
                }
            } else {
                (shape - 1.0) * v.ln()
            }
        };
        (term(a, y) + term(b, 1.0 - y) - self.ln_b).exp()
    }
    fn mean(&self) -> f64 {
        self.alpha_p / (self.alpha_p + self.beta_p)
    }
    fn profile(&self) -> Result<SingularityProfile> {
        Ok(self.profiles().profile)
    }
    fn lower_partial(&self, x: f64) -> f64 {
        if x <= 0.0 {
            0.0
        } else if x >= 1.0 {
            x - self.mean()
        } else {
            let first = self.mean() * beta_reg(self.alpha_p + 1.0, self.beta_p, x);
            x * self.cdf(x) - first
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn regime_examples() {
        let t = BetaTarget::new(2.0, 2.0).unwrap();
        let p = t.profiles();
        assert_eq!(p.case, BetaCase::Bounded);
        assert_relative_eq!(p.profile.amplitude, 1.5, max_relative = 1e-14);
        assert_relative_eq!(p.universal_exponent, 1.0);

        let t = BetaTarget::new(1.0, 1.0).unwrap();
        assert_eq!(t.profiles().profile.amplitude, 1.0);

        let t = BetaTarget::new(0.5, 2.0).unwrap();
        let p = t.profiles();
        assert_eq!(p.case, BetaCase::OneSingularity);
        assert_relative_eq!(p.profile.exponent, 0.5);
        // B(1/2, 2) = 4/3
        assert_relative_eq!(p.profile.amplitude, 0.75, max_relative = 1e-13);
        assert_eq!(p.profile.singularities, vec![0.0]);
        assert_eq!(p.profile.radius, 0.5);
    }

    #[test]
    fn density_edges() {
        let t = BetaTarget::new(1.0, 3.0).unwrap();
        assert_relative_eq!(t.density(0.0), 3.0, max_relative = 1e-14);
        assert_eq!(t.density(1.0), 0.0);
        assert!(BetaTarget::new(0.3, 2.0).unwrap().density(0.0).is_infinite());
    }

    #[test]
    fn universal_bound_matches_power_limit() {
        let t = BetaTarget::new(0.4, 0.7).unwrap();
        let r = beta_universal_bound(&t, 2, 1e-6).unwrap();
        let via_power = crate::bounds::bound_for_profile(&t.profile().unwrap(), 2, 1e-6, true).unwrap();
        assert_relative_eq!(r.bound, via_power.bound, max_relative = 1e-12);
        assert_relative_eq!(
            r.validity_threshold * 2f64.powf(1.6),
            via_power.validity_threshold,
            max_relative = 1e-12
        );
    }
}
