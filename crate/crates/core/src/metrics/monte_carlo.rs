use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::targets::{Cdf, Univariate};

use super::discrete::DiscreteDistribution;
use super::estimate::MetricEstimate;
use super::kolmogorov::kolmogorov_exact;

/// Smallest admissible Monte Carlo sample size.
pub const MIN_SAMPLES: usize = 100;
/// Samples drawn from one random stream.
pub const CHUNK: usize = 1 << 15;
/// Confidence level behind the stderr proxy.
pub const CONFIDENCE: f64 = 0.95;

/// Source of independent draws.
pub trait Sampler: Sync {
    fn sample(&self, rng: &mut ChaCha8Rng) -> f64;
}

impl<F: Fn(&mut ChaCha8Rng) -> f64 + Sync> Sampler for F {
    fn sample(&self, rng: &mut ChaCha8Rng) -> f64 {
        self(rng)
    }
}

/// Inverse-CDF sampling from a target.
pub struct QuantileSampler<'a>(pub &'a dyn Univariate);

impl Sampler for QuantileSampler<'_> {
    fn sample(&self, rng: &mut ChaCha8Rng) -> f64 {
        let u: f64 = rng.gen();
        self.0.quantile(u)
    }
}

/// `sqrt(ln(2 / (1 - level)) / (2 n))`, the DKW band half-width.
pub fn dkw_halfwidth(n: usize) -> f64 {
    ((2.0 / (1.0 - CONFIDENCE)).ln() / (2.0 * n as f64)).sqrt()
}

/// `n` draws split into fixed chunks; chunk `c` uses stream `c` of the
/// seeded generator, so the output does not depend on the thread count.
pub fn draw(sampler: &dyn Sampler, n: usize, seed: u64) -> Result<Vec<f64>> {
    let chunks = n.div_ceil(CHUNK);
    let parts: Vec<Result<Vec<f64>>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let len = CHUNK.min(n - c * CHUNK);
            let mut out = Vec::with_capacity(len);
            for _ in 0..len {
                let v = sampler.sample(&mut rng);
                if !v.is_finite() {
                    return Err(Error::NonFinite(format!("sampler returned {v}")));
                }
                out.push(v);
            }
            Ok(out)
        })
        .collect();
    let mut all = Vec::with_capacity(n);
    for p in parts {
        all.extend(p?);
    }
    Ok(all)
}

/// One-sample Kolmogorov statistic against `target`.
pub fn monte_carlo_kolmogorov(sampler: &dyn Sampler, target: &dyn Cdf, n: usize, seed: u64) -> Result<MetricEstimate> {
    if n < MIN_SAMPLES {
        return invalid(format!("need at least {MIN_SAMPLES} samples, got {n}"));
    }
    let xs = draw(sampler, n, seed)?;
    let empirical = DiscreteDistribution::from_samples(&xs)?;
    let d = kolmogorov_exact(&empirical, target).value;
    Ok(MetricEstimate::monte_carlo(d, dkw_halfwidth(n), n as u64, seed))
}
