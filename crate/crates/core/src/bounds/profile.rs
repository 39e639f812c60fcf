use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::special::upper_incomplete_gamma;

/// Shape of the density envelope near its singular points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProfileKind {
    /// `p <= A` everywhere.
    Bounded,
    /// `p(y) <= -A log|c (y - y_i)|` near each `y_i`.
    Log,
    /// `p(y) <= A |y - y_i|^(-a)` near each `y_i`.
    Power,
    /// `p(y) <= A |y - y_i|^(-a) (-log|c (y - y_i)|)^b` near each `y_i`.
    LogPower,
}

impl ProfileKind {
    pub fn name(self) -> &'static str {
        match self {
            ProfileKind::Bounded => "bounded",
            ProfileKind::Log => "log",
            ProfileKind::Power => "power",
            ProfileKind::LogPower => "log-power",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "bounded" => Ok(ProfileKind::Bounded),
            "log" => Ok(ProfileKind::Log),
            "power" => Ok(ProfileKind::Power),
            "log-power" => Ok(ProfileKind::LogPower),
            other => Err(Error::Unknown {
                kind: "profile",
                name: other.to_string(),
            }),
        }
    }
}

/// Envelope parameters for a target density.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SingularityProfile {
    pub kind: ProfileKind,
    /// Envelope scale `A`.
    pub amplitude: f64,
    /// Logarithm scale `c` (log-type envelopes).
    pub log_scale: f64,
    /// Power exponent `a`.
    pub exponent: f64,
    /// Logarithm exponent `b`.
    pub log_exponent: f64,
    /// Neighbourhood radius around each singular point.
    pub radius: f64,
    /// Locations of the singular points, when known.
    pub singularities: Vec<f64>,
    /// Additive envelope constant for the non-strict forms.
    pub offset: f64,
}

impl SingularityProfile {
    fn base(kind: ProfileKind, amplitude: f64) -> Self {
        SingularityProfile {
            kind,
            amplitude,
            log_scale: 1.0,
            exponent: 0.0,
            log_exponent: 0.0,
            radius: f64::INFINITY,
            singularities: Vec::new(),
            offset: 0.0,
        }
    }

    pub fn bounded(amplitude: f64) -> Self {
        Self::base(ProfileKind::Bounded, amplitude)
    }

    pub fn log(amplitude: f64, log_scale: f64, radius: f64) -> Self {
        SingularityProfile {
            log_scale,
            radius,
            ..Self::base(ProfileKind::Log, amplitude)
        }
    }

    pub fn power(amplitude: f64, exponent: f64, radius: f64) -> Self {
        SingularityProfile {
            exponent,
            radius,
            ..Self::base(ProfileKind::Power, amplitude)
        }
    }

    pub fn log_power(amplitude: f64, log_scale: f64, exponent: f64, log_exponent: f64, radius: f64) -> Self {
        SingularityProfile {
            log_scale,
            exponent,
            log_exponent,
            radius,
            ..Self::base(ProfileKind::LogPower, amplitude)
        }
    }

    pub fn with_offset(mut self, offset: f64) -> Self {
        self.offset = offset;
        self
    }

    pub fn with_singularities(mut self, at: Vec<f64>) -> Self {
        self.singularities = at;
        self
    }

    pub fn singularity_count(&self) -> usize {
        self.singularities.len().max(1)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64, what: &str| -> Result<()> {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                invalid(format!("{what} must be positive and finite, got {v}"))
            }
        };
        positive(self.amplitude, "A")?;
        if !(self.offset >= 0.0) || !self.offset.is_finite() {
            return invalid(format!("offset B must be non-negative, got {}", self.offset));
        }
        if self.kind == ProfileKind::Bounded {
            return Ok(());
        }
        if !(self.radius > 0.0) {
            return invalid(format!("radius must be positive, got {}", self.radius));
        }
        match self.kind {
            ProfileKind::Power => {
                if !(self.exponent > 0.0 && self.exponent < 1.0) {
                    return invalid(format!("power exponent a must lie in (0,1), got {}", self.exponent));
                }
            }
            ProfileKind::LogPower => {
                if !(self.exponent >= 0.0 && self.exponent < 1.0) {
                    return invalid(format!("power exponent a must lie in [0,1), got {}", self.exponent));
                }
                if !(self.log_exponent >= 0.0) || !self.log_exponent.is_finite() {
                    return invalid(format!(
                        "log exponent b must be non-negative, got {}",
                        self.log_exponent
                    ));
                }
            }
            _ => {}
        }
        if matches!(self.kind, ProfileKind::Log | ProfileKind::LogPower) {
            positive(self.log_scale, "c")?;
            if self.radius * self.log_scale > 1.0 + 1e-12 {
                return invalid(format!("radius {} exceeds 1/c = {}", self.radius, 1.0 / self.log_scale));
            }
        }
        if self.singularities.len() >= 2 {
            let mut s = self.singularities.clone();
            s.sort_by(f64::total_cmp);
            let gap = s.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
            if self.radius > 0.5 * gap * (1.0 + 1e-12) {
                return invalid(format!("radius {} exceeds half the singularity gap {gap}", self.radius));
            }
        }
        Ok(())
    }

    pub fn expect_kind(&self, kind: ProfileKind) -> Result<()> {
        if self.kind != kind {
            return Err(Error::VariantMismatch {
                expected: kind.name(),
                found: self.kind.name().to_string(),
            });
        }
        self.validate()
    }

    /// Pointwise envelope at distance `r > 0` from a singular point (no offset).
    pub fn envelope(&self, r: f64) -> f64 {
        let a = self.amplitude;
        let neg_log = || (-(self.log_scale * r).ln()).max(0.0);
        match self.kind {
            ProfileKind::Bounded => a,
            ProfileKind::Log => a * neg_log(),
            ProfileKind::Power => a * r.powf(-self.exponent),
            ProfileKind::LogPower => a * r.powf(-self.exponent) * neg_log().powf(self.log_exponent),
        }
    }

    /// `int_{-delta}^{delta}` of the envelope (plus offset), the mass allowed
    /// on any interval of length `2 delta`.
    pub fn interval_mass(&self, delta: f64) -> f64 {
        let a = self.amplitude;
        let base = match self.kind {
            ProfileKind::Bounded => 2.0 * a * delta,
            ProfileKind::Log => {
                let u = delta.min(1.0 / self.log_scale);
                2.0 * a * u * (1.0 + (1.0 / (self.log_scale * u)).ln())
            }
            ProfileKind::Power => 2.0 * a * delta.powf(1.0 - self.exponent) / (1.0 - self.exponent),
            ProfileKind::LogPower => {
                let c = self.log_scale;
                let u = delta.min(1.0 / c);
                let s0 = -(c * u).ln();
                let one_minus = 1.0 - self.exponent;
                let tail = upper_incomplete_gamma(self.log_exponent + 1.0, one_minus * s0).unwrap_or(f64::INFINITY);
                2.0 * a * c.powf(-one_minus) * one_minus.powf(-(self.log_exponent + 1.0)) * tail
            }
        };
        base + 2.0 * self.offset * delta
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn validation_rules() {
        assert!(SingularityProfile::bounded(1.0).validate().is_ok());
        assert!(SingularityProfile::bounded(0.0).validate().is_err());
        assert!(SingularityProfile::power(1.0, 0.0, 0.5).validate().is_err());
        assert!(SingularityProfile::log_power(1.0, 1.0, 0.0, 1.0, 0.5)
            .validate()
            .is_ok());
        assert!(SingularityProfile::log(1.0, 2.0, 0.6).validate().is_err());
        let p = SingularityProfile::power(1.0, 0.5, 0.6).with_singularities(vec![0.0, 1.0]);
        assert!(p.validate().is_err());
    }

    #[test]
    fn interval_mass_matches_quadrature() {
        let cases = [
            SingularityProfile::log(1.3, 2.0, 0.5),
            SingularityProfile::power(0.7, 0.4, 1.0),
            SingularityProfile::log_power(1.1, 1.5, 0.3, 1.7, 0.6),
        ];
        for p in cases {
            for delta in [0.01, 0.2, 0.5] {
                let q = crate::quad::integrate(|r| p.envelope(r), 0.0, delta, 1e-13, 1e-12).unwrap();
                assert_relative_eq!(p.interval_mass(delta), 2.0 * q.value, max_relative = 1e-8);
            }
        }
    }

    #[test]
    fn kind_names_round_trip() {
        for k in [
            ProfileKind::Bounded,
            ProfileKind::Log,
            ProfileKind::Power,
            ProfileKind::LogPower,
        ] {
            assert_eq!(ProfileKind::parse(k.name()).unwrap(), k);
        }
        assert!(ProfileKind::parse("gaussian").is_err());
    }
}
