use std::f64::consts::{PI, SQRT_2};

use serde::Serialize;
use statrs::function::erf::{erfc, erfc_inv};

use crate::bounds::SingularityProfile;
use crate::error::{invalid, Result};

use super::{Cdf, Univariate};

fn positive(v: f64, name: &str) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        invalid(format!("{name} must be positive and finite, got {v}"))
    }
}

/// Standard normal CDF.
pub fn std_normal_cdf(z: f64) -> f64 {
    0.5 * erfc(-z / SQRT_2)
}

pub fn std_normal_pdf(z: f64) -> f64 {
    (-0.5 * z * z).exp() / (2.0 * PI).sqrt()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Normal {
    pub mu: f64,
    pub sigma: f64,
}

impl Normal {
    pub fn new(mu: f64, sigma: f64) -> Result<Self> {
        positive(sigma, "sigma")?;
        if !mu.is_finite() {
            return invalid("mu must be finite");
        }
        Ok(Normal { mu, sigma })
    }

    pub fn standard() -> Self {
        Normal { mu: 0.0, sigma: 1.0 }
    }
}

impl Cdf for Normal {
    fn cdf(&self, x: f64) -> f64 {
        std_normal_cdf((x - self.mu) / self.sigma)
    }
}

impl Univariate for Normal {
    fn kind(&self) -> &'static str {
        "normal"
    }
    fn params(&self) -> Vec<(&'static str, f64)> {
        vec![("mu", self.mu), ("sigma", self.sigma)]
    }
    fn support(&self) -> (f64, f64) {
        (f64::NEG_INFINITY, f64::INFINITY)
    }
    fn density(&self, y: f64) -> f64 {
        std_normal_pdf((y - self.mu) / self.sigma) / self.sigma
    }
    fn mean(&self) -> f64 {
        self.mu
    }
    fn profile(&self) -> Result<SingularityProfile> {
        Ok(SingularityProfile::bounded(1.0 / (self.sigma * (2.0 * PI).sqrt())))
    }
    fn lower_partial(&self, x: f64) -> f64 {
        let z = (x - self.mu) / self.sigma;
        self.sigma * (z * std_normal_cdf(z) + std_normal_pdf(z))
    }
    fn quantile(&self, u: f64) -> f64 {
        if u <= 0.0 {
            return f64::NEG_INFINITY;
        }
        if u >= 1.0 {
            return f64::INFINITY;
        }
        let mut z = -SQRT_2 * erfc_inv(2.0 * u);
        // one Newton step polishes the inverse
        let pdf = std_normal_pdf(z);
        if pdf > 0.0 {
            z -= (std_normal_cdf(z) - u) / pdf;
        }
        self.mu + self.sigma * z
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Exponential {
    pub lambda: f64,
}

impl Exponential {
    pub fn new(lambda: f64) -> Result<Self> {
        positive(lambda, "lambda")?;
        Ok(Exponential { lambda })
    }
}

impl Cdf for Exponential {
    fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            0.0
        } else {
            -(-self.lambda * x).exp_m1()
        }
    }
}

impl Univariate for Exponential {
    fn kind(&self) -> &'static str {
        "exponential"
    }
    fn params(&self) -> Vec<(&'static str, f64)> {
        vec![("lambda", self.lambda)]
    }
    fn support(&self) -> (f64, f64) {
        (0.0, f64::INFINITY)
    }
    fn density(&self, y: f64) -> f64 {
        if y < 0.0 {
            0.0
        } else {
            self.lambda * (-self.lambda * y).exp()
        }
    }
    fn mean(&self) -> f64 {
        1.0 / self.lambda
    }
    fn profile(&self) -> Result<SingularityProfile> {
        Ok(SingularityProfile::bounded(self.lambda))
    }
    fn lower_partial(&self, x: f64) -> f64 {
        if x <= 0.0 {
            0.0
        } else {
            x - self.cdf(x) / self.lambda
        }
    }
    fn upper_partial(&self, x: f64) -> f64 {
        if x <= 0.0 {
            self.mean() - x
        } else {
            (-self.lambda * x).exp() / self.lambda
        }
    }
    fn quantile(&self, u: f64) -> f64 {
        if u <= 0.0 {
            0.0
        } else if u >= 1.0 {
            f64::INFINITY
        } else {
            -(-u).ln_1p() / self.lambda
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Uniform {
    pub a: f64,
    pub b: f64,
}

impl Uniform {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a < b) || !a.is_finite() || !b.is_finite() {
            return invalid(format!("uniform needs finite a < b, got a={a}, b={b}"));
        }
        Ok(Uniform { a, b })
    }

    fn width(&self) -> f64 {
        self.b - self.a
    }
}

impl Cdf for Uniform {
    fn cdf(&self, x: f64) -> f64 {
        ((x - self.a) / self.width()).clamp(0.0, 1.0)
    }
}

impl Univariate for Uniform {
    fn kind(&self) -> &'static str {
        "uniform"
    }
    fn params(&self) -> Vec<(&'static str, f64)> {
        vec![("a", self.a), ("b", self.b)]
    }
    fn support(&self) -> (f64, f64) {
        (self.a, self.b)
    }
    fn density(&self, y: f64) -> f64 {
        if y < self.a || y > self.b {
            0.0
        } else {
            1.0 / self.width()
        }
    }
    fn mean(&self) -> f64 {
        0.5 * (self.a + self.b)
    }
    fn profile(&self) -> Result<SingularityProfile> {
        Ok(SingularityProfile::bounded(1.0 / self.width()))
    }
    fn lower_partial(&self, x: f64) -> f64 {
        if x <= self.a {
            0.0
        } else if x < self.b {
            (x - self.a).powi(2) / (2.0 * self.width())
        } else {
            x - self.mean()
        }
    }
    fn quantile(&self, u: f64) -> f64 {
        self.a + u.clamp(0.0, 1.0) * self.width()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn normal_quantile_inverts() {
        let n = Normal::new(1.0, 2.0).unwrap();
        for u in [1e-9, 1e-3, 0.3, 0.5, 0.9, 1.0 - 1e-7] {
            assert_relative_eq!(n.cdf(n.quantile(u)), u, max_relative = 1e-12);
        }
        assert_eq!(n.cdf(1.0), 0.5);
    }

    #[test]
    fn partials_are_consistent() {
        let e = Exponential::new(2.0).unwrap();
        for x in [0.1, 1.0, 3.0] {
            assert_relative_eq!(e.upper_partial(x), e.mean() - x + e.lower_partial(x), epsilon = 1e-14);
        }
        let u = Uniform::new(-1.0, 3.0).unwrap();
        assert_relative_eq!(u.lower_partial(3.0), 2.0);
        assert_relative_eq!(u.upper_partial(-1.0), 2.0);
    }
}
