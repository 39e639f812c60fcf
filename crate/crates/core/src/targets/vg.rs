use std::f64::consts::PI;

use serde::Serialize;
use statrs::function::gamma::{gamma, ln_gamma};

use crate::bounds::SingularityProfile;
use crate::error::{invalid, Result};
use crate::quad;
use crate::special::bessel_k_scaled;

use super::{Cdf, Univariate};

/// Radius factor of the logarithmic envelope at `r = 1`.
pub const LOG_ENVELOPE_RADIUS: f64 = 0.645;

const PANEL_TOL: f64 = 1e-14;
const MAX_PANELS_PER_SIDE: usize = 4000;
/// Panels stop once the density times the decay length falls below this.
const TAIL_CUTOFF: f64 = 1e-18;

/// Variance-gamma law with shape `r`, skew `theta`, scale `sigma` and
/// location `mu`. CDF values are cached on a node grid at construction.
#[derive(Clone, Debug, Serialize)]
pub struct VarianceGammaTarget {
    pub r: f64,
    pub theta: f64,
    pub sigma: f64,
    pub mu: f64,
    #[serde(skip)]
    cache: Cache,
}

#[derive(Clone, Debug, Default)]
struct Cache {
    nodes: Vec<f64>,
    /// `P(Y <= node)`.
    mass: Vec<f64>,
    /// `int_{-inf}^{node} (t - mu) p(t) dt`.
    moment: Vec<f64>,
    center: usize,
    total: f64,
    total_moment: f64,
    left_remainder: f64,
    right_remainder: f64,
}

impl VarianceGammaTarget {
    pub fn new(r: f64, theta: f64, sigma: f64, mu: f64) -> Result<Self> {
        if !(r > 0.0) || !r.is_finite() {
            return invalid(format!("r must be positive, got {r}"));
        }
        if !(sigma > 0.0) || !sigma.is_finite() {
            return invalid(format!("sigma must be positive, got {sigma}"));
        }
        if !theta.is_finite() || !mu.is_finite() {
            return invalid("theta and mu must be finite");
        }
        let mut t = VarianceGammaTarget {
            r,
            theta,
            sigma,
            mu,
            cache: Cache::default(),
        };
        t.cache = t.build_cache()?;
        Ok(t)
    }

    fn root(&self) -> f64 {
        self.theta.hypot(self.sigma)
    }

    fn nu(&self) -> f64 {
        0.5 * (self.r - 1.0)
    }

    /// Density bound for `r > 1`.
    pub fn bounded_amplitude(&self) -> f64 {
        let (s2, nu) = (self.sigma * self.sigma, self.nu());
        let base = gamma(nu) / (2.0 * self.sigma * PI.sqrt() * gamma(0.5 * self.r))
            * (s2 / (self.theta * self.theta + s2)).powf(nu);
        if self.r > 2.0 {
            base * (self.theta * self.theta / s2 * (self.r - 2.0)).exp()
        } else {
            base
        }
    }

    /// Probability mass captured by the cache plus its tail quadratures.
    pub fn total_mass(&self) -> f64 {
        self.cache.total
    }

    /// Mass beyond the outermost nodes, `(left, right)`.
    pub fn tail_remainders(&self) -> (f64, f64) {
        (self.cache.left_remainder, self.cache.right_remainder)
    }

    fn weighted(&self, x: f64, power: i32) -> f64 {
        let p = self.density(x);
        if power == 0 {
            p
        } else {
            p * (x - self.mu)
        }
    }

    /// Signed `int_mu^{mu + dx}` of the density (power 0) or of `(t - mu) p`,
    /// with a substitution that removes the singularity at `mu`.
    fn integral_from_center(&self, dx: f64, power: i32) -> f64 {
        if dx == 0.0 {
            return 0.0;
        }
        let k = (2.0 / self.r).max(1.0);
        let f = |u: f64| {
            if u <= 0.0 {
                return 0.0;
            }
            let t = self.mu + dx * u.powf(k);
            self.weighted(t, power) * dx * k * u.powf(k - 1.0)
        };
        quad::integrate(f, 0.0, 1.0, PANEL_TOL, 1e-13)
            .map(|q| q.value)
            .unwrap_or(f64::NAN)
    }

    fn panel(&self, a: f64, b: f64, power: i32) -> f64 {
        quad::integrate(|t| self.weighted(t, power), a, b, PANEL_TOL, 1e-13)
            .map(|q| q.value)
            .unwrap_or(f64::NAN)
    }

    fn side_nodes(&self, sign: f64) -> Vec<f64> {
        let s2 = self.sigma * self.sigma;
        let rate = (self.root() - sign * self.theta) / s2;
        let step = 0.5 / (self.root() / s2).min(20.0 * rate).max(rate);
        let mean_offset = (self.r * self.theta * sign).max(0.0);
        let mut out = Vec::new();
        for j in 1..=MAX_PANELS_PER_SIDE {
            let off = j as f64 * step;
            let x = self.mu + sign * off;
            out.push(x);
            if off > mean_offset && self.density(x) / rate < TAIL_CUTOFF {
                break;
            }
        }
        out
    }

    fn build_cache(&self) -> Result<Cache> {
        let right = self.side_nodes(1.0);
        let left = self.side_nodes(-1.0);
        let mut nodes: Vec<f64> = left.iter().rev().copied().collect();
        let center = nodes.len();
        nodes.push(self.mu);
        nodes.extend(right.iter().copied());

        let first = nodes[0];
        let last = *nodes.last().expect("nodes are non-empty");
        let tail = |power: i32, upper: bool| -> Result<f64> {
            let q = if upper {
                quad::integrate_upper_tail(|t| self.weighted(t, power), last, 1e-16, 1e-12)?
            } else {
                quad::integrate_lower_tail(|t| self.weighted(t, power), first, 1e-16, 1e-12)?
            };
            Ok(q.value)
        };
        let left_remainder = tail(0, false)?;
        let right_remainder = tail(0, true)?;
        let mut mass = vec![left_remainder];
        let mut moment = vec![tail(1, false)?];
        for i in 0..nodes.len() - 1 {
            let (a, b) = (nodes[i], nodes[i + 1]);
            let (dm, dmo) = if i + 1 == center {
                (
                    -self.integral_from_center(a - self.mu, 0),
                    -self.integral_from_center(a - self.mu, 1),
                )
            } else if i == center {
                (
                    self.integral_from_center(b - self.mu, 0),
                    self.integral_from_center(b - self.mu, 1),
                )
            } else {
                (self.panel(a, b, 0), self.panel(a, b, 1))
            };
            mass.push(mass[i] + dm);
            moment.push(moment[i] + dmo);
        }
        let total = mass.last().copied().unwrap_or(0.0) + right_remainder;
        let total_moment = moment.last().copied().unwrap_or(0.0) + tail(1, true)?;
        if !total.is_finite() {
            return invalid("variance-gamma CDF cache is not finite");
        }
        Ok(Cache {
            nodes,
            mass,
            moment,
            center,
            total,
            total_moment,
            left_remainder,
            right_remainder,
        })
    }

    /// `P(Y <= x)` for power 0, `int_{-inf}^x (t - mu) p(t) dt` for power 1.
    fn cumulative(&self, x: f64, power: i32) -> f64 {
        let c = &self.cache;
        let table = if power == 0 { &c.mass } else { &c.moment };
        let first = c.nodes[0];
        let last = *c.nodes.last().expect("nodes are non-empty");
        if x < first {
            return quad::integrate_lower_tail(|t| self.weighted(t, power), x, 1e-17, 1e-12)
                .map(|q| q.value)
                .unwrap_or(0.0);
        }
        if x >= last {
            let full = if power == 0 { c.total } else { c.total_moment };
            return full
                - quad::integrate_upper_tail(|t| self.weighted(t, power), x, 1e-17, 1e-12)
                    .map(|q| q.value)
                    .unwrap_or(0.0);
        }
        let i = c.nodes.partition_point(|n| *n <= x) - 1;
        if i == c.center || i + 1 == c.center {
            table[c.center] + self.integral_from_center(x - self.mu, power)
        } else {
            table[i] + self.panel(c.nodes[i], x, power)
        }
    }
}

impl Cdf for VarianceGammaTarget {
    fn cdf(&self, x: f64) -> f64 {
        if x == f64::INFINITY {
            return 1.0;
        }
        if x == f64::NEG_INFINITY {
            return 0.0;
        }
        self.cumulative(x, 0).clamp(0.0, 1.0)
    }
}

impl Univariate for VarianceGammaTarget {
    fn kind(&self) -> &'static str {
        "vg"
    }
    fn params(&self) -> Vec<(&'static str, f64)> {
        vec![
            ("r", self.r),
            ("theta", self.theta),
            ("sigma", self.sigma),
            ("mu", self.mu),
        ]
    }
    fn support(&self) -> (f64, f64) {
        (f64::NEG_INFINITY, f64::INFINITY)
    }
    fn density(&self, y: f64) -> f64 {
        let x = y - self.mu;
        let (s, nu) = (self.root(), self.nu());
        let s2 = self.sigma * self.sigma;
        let ln_norm = -(self.sigma * PI.sqrt()).ln() - ln_gamma(0.5 * self.r);
        if x == 0.0 {
            if self.r > 1.0 {
                return (ln_norm + ln_gamma(nu) - 2f64.ln() + nu * (s2 / (s * s)).ln()).exp();
            }
            return f64::INFINITY;
        }
        let z = s * x.abs() / s2;
        let k = match bessel_k_scaled(nu, z) {
            Ok(v) => v,
            Err(_) => return 0.0,
        };
        (ln_norm + self.theta * x / s2 + nu * (x.abs() / (2.0 * s)).ln() + k.ln() - z).exp()
    }
    fn mean(&self) -> f64 {
        self.mu + self.r * self.theta
    }
    fn profile(&self) -> Result<SingularityProfile> {
        let s2 = self.sigma * self.sigma;
        let s = self.root();
        let p = if self.r > 1.0 {
            SingularityProfile::bounded(self.bounded_amplitude())
        } else if self.r == 1.0 {
            SingularityProfile::log(1.0 / self.sigma, s / s2, LOG_ENVELOPE_RADIUS * s2 / s)
        } else {
            let amp = gamma(0.5 * (1.0 - self.r)) / ((2.0 * self.sigma).powf(self.r) * PI.sqrt() * gamma(0.5 * self.r));
            SingularityProfile::power(amp, 1.0 - self.r, f64::INFINITY)
        };
        Ok(p.with_singularities(vec![self.mu]))
    }
    fn lower_partial(&self, x: f64) -> f64 {
        let f = self.cumulative(x, 0);
        let m = self.cumulative(x, 1);
        ((x - self.mu) * f - m).max(0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn log_case_density_is_bessel_zero() {
        let t = VarianceGammaTarget::new(1.0, 0.0, 1.0, 0.0).unwrap();
        let k0 = crate::special::bessel_k(0.0, 0.1).unwrap();
        assert_relative_eq!(t.density(0.1), k0 / PI, max_relative = 1e-12);
    }

    #[test]
    fn laplace_special_case() {
        // r = 2, theta = 0 is the Laplace law with scale sigma
        let t = VarianceGammaTarget::new(2.0, 0.0, 1.5, 0.5).unwrap();
        for y in [-3.0, 0.0, 0.5, 1.2, 6.0] {
            let x: f64 = y - 0.5;
            assert_relative_eq!(t.density(y), (-x.abs() / 1.5).exp() / 3.0, max_relative = 1e-12);
            let f = if x < 0.0 {
                0.5 * (x / 1.5).exp()
            } else {
                1.0 - 0.5 * (-x / 1.5).exp()
            };
            assert_relative_eq!(t.cdf(y), f, epsilon = 1e-11);
        }
        assert_relative_eq!(t.total_mass(), 1.0, epsilon = 1e-11);
    }

    #[test]
    fn profile_regimes() {
        let p = VarianceGammaTarget::new(2.0, 0.0, 1.0, 0.0).unwrap().profile().unwrap();
        assert_relative_eq!(p.amplitude, 0.5, max_relative = 1e-13);
        let p = VarianceGammaTarget::new(1.0, 0.0, 1.0, 0.0).unwrap().profile().unwrap();
        assert_eq!((p.amplitude, p.log_scale, p.radius), (1.0, 1.0, 0.645));
        let p = VarianceGammaTarget::new(0.5, 0.0, 1.0, 0.0).unwrap().profile().unwrap();
        let direct = gamma(0.25) / (2f64.sqrt() * PI.sqrt() * gamma(0.25));
        assert_relative_eq!(p.amplitude, direct, max_relative = 1e-13);
        assert_relative_eq!(p.exponent, 0.5);
    }
}
