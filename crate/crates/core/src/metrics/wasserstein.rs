use crate::error::{invalid, Result};
use crate::targets::{Cdf, Univariate};

use super::discrete::DiscreteDistribution;
use super::estimate::MetricEstimate;

/// Point in `[a, b]` where the continuous CDF crosses level `c`.
fn crossing(target: &dyn Univariate, a: f64, b: f64, c: f64) -> f64 {
    if target.cdf(a) >= c {
        return a;
    }
    if target.cdf(b) <= c {
        return b;
    }
    let (mut lo, mut hi) = (a, b);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if target.cdf(mid) < c {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `int |F_p - F|` against a continuous target, split at the atoms of `p`
/// and at the level crossings inside each gap.
pub fn wasserstein1d_exact(p: &DiscreteDistribution, target: &dyn Univariate) -> Result<MetricEstimate> {
    if !target.mean().is_finite() {
        return invalid("target has no finite first moment");
    }
    let atoms = p.atoms();
    let g = |x: f64| target.lower_partial(x);
    let first = atoms[0];
    let last = *atoms.last().expect("non-empty");
    let mut total = g(first) + target.upper_partial(last);
    let mut g_prev = g(first);
    for (k, w) in atoms.windows(2).enumerate() {
        let (a, b) = (w[0], w[1]);
        let c = p.cumulative_at_rank(k + 1);
        let q = crossing(target, a, b, c);
        let (g_q, g_b) = (g(q), g(b));
        let below = c * (q - a) - (g_q - g_prev);
        let above = (g_b - g_q) - c * (b - q);
        total += below.max(0.0) + above.max(0.0);
        g_prev = g_b;
    }
    if !total.is_finite() {
        return invalid("Wasserstein integral is not finite");
    }
    Ok(MetricEstimate::exact(total))
}

/// `int |F_p - F_q|` for two discrete laws.
pub fn wasserstein_discrete(p: &DiscreteDistribution, q: &DiscreteDistribution) -> MetricEstimate {
    let mut points: Vec<f64> = p.atoms().iter().chain(q.atoms()).copied().collect();
    points.sort_by(f64::total_cmp);
    points.dedup();
    let total = points
        .windows(2)
        .map(|w| (p.cdf(w[0]) - q.cdf(w[0])).abs() * (w[1] - w[0]))
        .sum();
    MetricEstimate::exact(total)
}
