use crate::targets::Cdf;

use super::discrete::DiscreteDistribution;
use super::estimate::MetricEstimate;

/// `sup_z |F_p(z) - F(z)|`, evaluated at every jump of either CDF from
/// both sides. Exact when `F` is continuous between its own jumps.
pub fn kolmogorov_exact(p: &DiscreteDistribution, f: &dyn Cdf) -> MetricEstimate {
    let mut points = p.atoms().to_vec();
    points.extend(f.jump_points());
    points.sort_by(f64::total_cmp);
    points.dedup();
    let worst = points.iter().fold(0.0f64, |acc, &x| {
        let right = (p.cdf(x) - f.cdf(x)).abs();
        let left = (p.cdf_left(x) - f.cdf_left(x)).abs();
        acc.max(right).max(left)
    });
    MetricEstimate::exact(worst.min(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::targets::Uniform;

    #[test]
    fn worked_values() {
        let u = Uniform::new(0.0, 1.0).unwrap();
        let p = DiscreteDistribution::point_mass(0.0).unwrap();
        assert_eq!(kolmogorov_exact(&p, &u).value, 1.0);
        let q = DiscreteDistribution::new(vec![0.0, 1.0, 2.0], vec![0.2, 0.3, 0.5]).unwrap();
        assert_eq!(kolmogorov_exact(&q, &q).value, 0.0);
    }

    #[test]
    fn midpoint_discretisation_of_uniform() {
        let u = Uniform::new(0.0, 1.0).unwrap();
        for n in [1usize, 4, 10, 37] {
            let atoms: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect();
            let p = DiscreteDistribution::new(atoms, vec![1.0 / n as f64; n]).unwrap();
            approx::assert_relative_eq!(kolmogorov_exact(&p, &u).value, 0.5 / n as f64, max_relative = 1e-12);
        }
    }
}
