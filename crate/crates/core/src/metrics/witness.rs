use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::quad;
use crate::spline::{BaseSpline, PiecewisePolynomial};
use crate::targets::{Cdf, Univariate};

use super::discrete::DiscreteDistribution;
use super::estimate::MetricEstimate;

/// A law whose smoothed-indicator expectations can be computed.
#[derive(Clone, Copy, Debug)]
pub enum Law<'a> {
    Discrete(&'a DiscreteDistribution),
    Continuous(&'a dyn Univariate),
}

impl Law<'_> {
    pub fn cdf(&self, x: f64) -> f64 {
        match self {
            Law::Discrete(d) => d.cdf(x),
            Law::Continuous(t) => t.cdf(x),
        }
    }

    pub fn quantile(&self, u: f64) -> f64 {
        match self {
            Law::Discrete(d) => d.quantile(u),
            Law::Continuous(t) => t.quantile(u),
        }
    }
}

/// Candidate locations (as probability levels of either law) and widths.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessGrid {
    pub levels: Vec<f64>,
    pub alphas: Vec<f64>,
    pub refine: bool,
}

impl Default for WitnessGrid {
    fn default() -> Self {
        WitnessGrid {
            levels: (1..=99).map(|i| i as f64 / 100.0).collect(),
            alphas: (-12..=1).map(|k| 2f64.powi(k)).collect(),
            refine: true,
        }
    }
}

impl WitnessGrid {
    /// Smaller grid for bulk property checks.
    pub fn coarse() -> Self {
        WitnessGrid {
            levels: (1..=19).map(|i| i as f64 / 20.0).collect(),
            alphas: (-8..=1).map(|k| 2f64.powi(k)).collect(),
            refine: false,
        }
    }
}

/// Best witness found: location, width and the normalised gap.
#[derive(Clone, Debug, PartialEq)]
pub struct WitnessOutcome {
    pub estimate: MetricEstimate,
    pub z: f64,
    pub alpha: f64,
    /// `E g(X) - E g(Y)` at the best candidate.
    pub signed_gap: f64,
}

/// Evaluates `E h_{m,z,alpha}` for either kind of law.
pub struct WitnessFamily {
    base: BaseSpline,
    slope: PiecewisePolynomial,
    knots: Vec<f64>,
}

impl WitnessFamily {
    pub fn new(m: usize) -> Result<Self> {
        let base = BaseSpline::new(m)?;
        let slope = base.piecewise().derivative(1);
        let knots = base.knots().iter().map(|k| k.to_f64()).collect();
        Ok(WitnessFamily { base, slope, knots })
    }

    pub fn order(&self) -> usize {
        self.base.order()
    }

    /// `max_i (2/alpha)^i ||h_m^(i)||`.
    pub fn normaliser(&self, alpha: f64) -> f64 {
        let ratio = 2.0 / alpha;
        self.base
            .derivative_norms()
            .iter()
            .enumerate()
            .fold(0.0, |acc, (i, n)| acc.max(n * ratio.powi(i as i32)))
    }

    fn unit(&self, z: f64, alpha: f64, x: f64) -> f64 {
        2.0 * (x - z) / alpha - 1.0
    }

    pub fn value(&self, z: f64, alpha: f64, x: f64) -> f64 {
        if x <= z {
            1.0
        } else if x >= z + alpha {
            0.0
        } else {
            self.base.piecewise().evaluate_fast(self.unit(z, alpha, x))
        }
    }

    /// `E h_{m,z,alpha}(W)`.
    pub fn expectation(&self, law: &Law, z: f64, alpha: f64) -> f64 {
        match law {
            Law::Discrete(d) => {
                let lo = d.rank(z);
                let hi = d.atoms().partition_point(|a| *a < z + alpha);
                let inside: f64 = (lo..hi)
                    .map(|i| d.masses()[i] * self.value(z, alpha, d.atoms()[i]))
                    .sum();
                d.cumulative_at_rank(lo) + inside
            }
            Law::Continuous(t) => {
                // E h(Y) = -int F(y) h'(y) dy over [z, z + alpha], in unit coordinates
                let half = 0.5 * alpha;
                let f = |u: f64| -t.cdf(z + half * (u + 1.0)) * self.slope.evaluate_fast(u);
                self.knots
                    .windows(2)
                    .map(|w| {
                        quad::integrate(f, w[0], w[1], 1e-13, 1e-12)
                            .map(|q| q.value)
                            .unwrap_or(f64::NAN)
                    })
                    .sum()
            }
        }
    }

    /// `(E g(X) - E g(Y))` with `g` normalised into the unit ball.
    pub fn normalised_gap(&self, x: &Law, y: &Law, z: f64, alpha: f64) -> f64 {
        (self.expectation(x, z, alpha) - self.expectation(y, z, alpha)) / self.normaliser(alpha)
    }
}

/// Certified lower bound on `d_m(X, Y)` from explicit members of the unit
/// ball of the smooth class.
pub fn witness_dm_lower_bound(x: Law, y: Law, m: usize, grid: &WitnessGrid) -> Result<WitnessOutcome> {
    if grid.levels.is_empty() || grid.alphas.is_empty() {
        return invalid("witness grid is empty");
    }
    if grid.alphas.iter().any(|a| !(*a > 0.0) || !a.is_finite()) {
        return invalid("witness widths must be positive");
    }
    let family = WitnessFamily::new(m)?;
    let mut anchors: Vec<f64> = grid
        .levels
        .iter()
        .flat_map(|u| [y.quantile(*u), x.quantile(*u)])
        .filter(|v| v.is_finite())
        .collect();
    anchors.sort_by(f64::total_cmp);
    anchors.dedup();
    let mut candidates: Vec<(f64, f64)> = Vec::new();
    for &alpha in &grid.alphas {
        for &q in &anchors {
            candidates.push((q, alpha));
            candidates.push((q - 0.5 * alpha, alpha));
        }
    }
    let score = |(z, a): (f64, f64)| (z, a, family.normalised_gap(&x, &y, z, a));
    let pick = |v: Vec<(f64, f64, f64)>| {
        v.into_iter()
            .filter(|c| c.2.is_finite())
            .fold((0.0f64, 1.0f64, 0.0f64), |best, c| {
                if c.2.abs() > best.2.abs() {
                    c
                } else {
                    best
                }
            })
    };
    let mut best = pick(candidates.par_iter().map(|c| score(*c)).collect());
    if grid.refine && best.2 != 0.0 {
        let (z0, a0) = (best.0, best.1);
        let local: Vec<(f64, f64)> = (-3..=3)
            .flat_map(|j| {
                let a = a0 * 2f64.powf(j as f64 / 4.0);
                (-8..=8).map(move |k| (z0 + k as f64 * a0 / 8.0, a))
            })
            .collect();
        let refined = pick(local.par_iter().map(|c| score(*c)).collect());
        if refined.2.abs() > best.2.abs() {
            best = refined;
        }
    }
    Ok(WitnessOutcome {
        estimate: MetricEstimate::witness(best.2.abs()),
        z: best.0,
        alpha: best.1,
        signed_gap: best.2,
    })
}
