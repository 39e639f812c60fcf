use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::anti_concentration_factor;
use crate::error::{invalid, Result};
use crate::targets::std_normal_cdf;

/// Largest supported dimension.
pub const MAX_DIM: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NazarovReport {
    pub dim: usize,
    pub sigma: f64,
    pub points: usize,
    /// `max (lhs - rhs)` over the grid; non-positive when the inequality holds.
    pub max_violation: f64,
    pub violations: usize,
}

/// `P(Y <= z + alpha 1) - P(Y <= z)` for `Y ~ N(0, sigma^2 I)`.
pub fn box_increment(z: &[f64], alpha: f64, sigma: f64) -> f64 {
    let upper: f64 = z.iter().map(|zi| std_normal_cdf((zi + alpha) / sigma)).product();
    let lower: f64 = z.iter().map(|zi| std_normal_cdf(zi / sigma)).product();
    upper - lower
}

/// Checks the box-increment inequality on `grid` points: half place every
/// coordinate at the same level, half draw coordinates from the seeded
/// generator; widths run geometrically over `[0.01, 1] sigma` plus zero.
pub fn nazarov_probe(dim: usize, sigma: f64, grid: usize, seed: u64) -> Result<NazarovReport> {
    if dim == 0 || dim > MAX_DIM {
        return invalid(format!("dimension must be in 1..={MAX_DIM}, got {dim}"));
    }
    if !(sigma > 0.0) || !sigma.is_finite() {
        return invalid(format!("sigma must be positive, got {sigma}"));
    }
    if grid < 2 {
        return invalid("grid needs at least two points");
    }
    let n_alpha = 21;
    let alphas: Vec<f64> = std::iter::once(0.0)
        .chain((0..n_alpha - 1).map(|k| sigma * 10f64.powf(-2.0 + 2.0 * k as f64 / (n_alpha - 2) as f64)))
        .collect();
    let per_alpha = grid.div_ceil(alphas.len());
    let diagonal = per_alpha / 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let factor = anti_concentration_factor(dim);
    let mut z = vec![0.0; dim];
    let mut worst = f64::NEG_INFINITY;
    let mut violations = 0;
    let mut points = 0;
    for &alpha in &alphas {
        for i in 0..per_alpha {
            if points == grid {
                break;
            }
            if i < diagonal {
                let level = sigma * (-6.0 + 12.0 * i as f64 / (diagonal.max(2) - 1) as f64);
                z.iter_mut().for_each(|v| *v = level);
            } else {
                z.iter_mut().for_each(|v| *v = sigma * (6.0 * rng.gen::<f64>() - 3.0));
            }
            let gap = box_increment(&z, alpha, sigma) - alpha / sigma * factor;
            worst = worst.max(gap);
            if gap > 0.0 {
                violations += 1;
            }
            points += 1;
        }
    }
    Ok(NazarovReport {
        dim,
        sigma,
        points,
        max_violation: worst,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn one_dimensional_example() {
        assert_relative_eq!(
            box_increment(&[0.0], 0.1, 1.0),
            0.039_827_837_277_029,
            max_relative = 1e-12
        );
        assert_eq!(box_increment(&[0.3, -1.0], 0.0, 1.0), 0.0);
    }

    #[test]
    fn small_probe_has_no_violations() {
        let r = nazarov_probe(10, 1.0, 2000, 5).unwrap();
        assert_eq!(r.violations, 0);
        assert_eq!(r.points, 2000);
        assert!(nazarov_probe(51, 1.0, 10, 0).is_err());
    }
}
