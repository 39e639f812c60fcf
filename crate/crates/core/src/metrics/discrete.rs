use serde::Serialize;

use crate::error::{invalid, Result};
use crate::targets::Cdf;

/// Tolerance on the total mass of a discrete law.
pub const MASS_TOL: f64 = 1e-12;

/// Finitely supported law with strictly increasing atoms.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiscreteDistribution {
    atoms: Vec<f64>,
    masses: Vec<f64>,
    #[serde(skip)]
    cumulative: Vec<f64>,
}

impl DiscreteDistribution {
    pub fn new(atoms: Vec<f64>, masses: Vec<f64>) -> Result<Self> {
        if atoms.is_empty() || atoms.len() != masses.len() {
            return invalid("atoms and masses must be non-empty and of equal length");
        }
        if atoms.iter().any(|a| !a.is_finite()) {
            return invalid("atoms must be finite");
        }
        if atoms.windows(2).any(|w| !(w[0] < w[1])) {
            return invalid("atoms must be strictly increasing");
        }
        if masses.iter().any(|m| !(*m > 0.0) || !m.is_finite()) {
            return invalid("masses must be positive");
        }
        let total: f64 = masses.iter().sum();
        if (total - 1.0).abs() > MASS_TOL {
            return invalid(format!("masses sum to {total}, not 1"));
        }
        Ok(Self::assemble(atoms, masses))
    }

    /// Sort, merge repeated points, drop zero weights and normalise.
    pub fn from_weighted(points: &[f64], weights: &[f64]) -> Result<Self> {
        if points.len() != weights.len() {
            return invalid("points and weights differ in length");
        }
        let mut pairs: Vec<(f64, f64)> = points
            .iter()
            .copied()
            .zip(weights.iter().copied())
            .filter(|(_, w)| *w > 0.0)
            .collect();
        if pairs.iter().any(|(x, w)| !x.is_finite() || !w.is_finite()) {
            return invalid("points and weights must be finite");
        }
        if pairs.is_empty() {
            return invalid("no positive weights");
        }
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut atoms: Vec<f64> = Vec::with_capacity(pairs.len());
        let mut masses: Vec<f64> = Vec::with_capacity(pairs.len());
        for (x, w) in pairs {
            if atoms.last() == Some(&x) {
                *masses.last_mut().expect("paired with atoms") += w;
            } else {
                atoms.push(x);
                masses.push(w);
            }
        }
        let total: f64 = masses.iter().sum();
        masses.iter_mut().for_each(|m| *m /= total);
        Ok(Self::assemble(atoms, masses))
    }

    /// Empirical law of a sample.
    pub fn from_samples(samples: &[f64]) -> Result<Self> {
        Self::from_weighted(samples, &vec![1.0; samples.len()])
    }

    pub fn point_mass(x: f64) -> Result<Self> {
        Self::new(vec![x], vec![1.0])
    }

    fn assemble(atoms: Vec<f64>, masses: Vec<f64>) -> Self {
        let mut cumulative = Vec::with_capacity(masses.len());
        let mut acc = 0.0;
        let mut comp = 0.0;
        for m in &masses {
            // Kahan summation keeps the running CDF accurate for long tails
            let y = m - comp;
            let t = acc + y;
            comp = (t - acc) - y;
            acc = t;
            cumulative.push(acc);
        }
        DiscreteDistribution {
            atoms,
            masses,
            cumulative,
        }
    }

    pub fn atoms(&self) -> &[f64] {
        &self.atoms
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn mean(&self) -> f64 {
        self.atoms.iter().zip(&self.masses).map(|(a, m)| a * m).sum()
    }

    /// Image under an increasing affine map `x -> shift + scale * x`.
    pub fn affine(&self, shift: f64, scale: f64) -> Result<Self> {
        if !(scale > 0.0) {
            return invalid("scale must be positive");
        }
        let atoms: Vec<f64> = self.atoms.iter().map(|a| shift + scale * a).collect();
        if atoms.windows(2).any(|w| !(w[0] < w[1])) {
            return invalid("affine image merges atoms");
        }
        Ok(Self::assemble(atoms, self.masses.clone()))
    }

    /// `sum_i m_i f(x_i)`.
    pub fn expect<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.atoms.iter().zip(&self.masses).map(|(a, m)| m * f(*a)).sum()
    }

    /// Smallest atom whose CDF reaches `u`.
    pub fn quantile(&self, u: f64) -> f64 {
        let i = self.cumulative.partition_point(|c| *c < u);
        self.atoms[i.min(self.atoms.len() - 1)]
    }

    /// Number of atoms `<= x`.
    pub(crate) fn rank(&self, x: f64) -> usize {
        self.atoms.partition_point(|a| *a <= x)
    }

    pub(crate) fn cumulative_at_rank(&self, k: usize) -> f64 {
        if k == 0 {
            0.0
        } else {
            self.cumulative[k - 1]
        }
    }
}

impl Cdf for DiscreteDistribution {
    fn cdf(&self, x: f64) -> f64 {
        self.cumulative_at_rank(self.rank(x))
    }

    fn cdf_left(&self, x: f64) -> f64 {
        self.cumulative_at_rank(self.atoms.partition_point(|a| *a < x))
    }

    fn jump_points(&self) -> Vec<f64> {
        self.atoms.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(DiscreteDistribution::new(vec![0.0, 1.0], vec![0.5, 0.5]).is_ok());
        assert!(DiscreteDistribution::new(vec![1.0, 0.0], vec![0.5, 0.5]).is_err());
        assert!(DiscreteDistribution::new(vec![0.0, 1.0], vec![0.5, 0.6]).is_err());
        assert!(DiscreteDistribution::new(vec![0.0, 1.0], vec![1.0, 0.0]).is_err());
    }

    #[test]
    fn merging_and_cdf() {
        let d = DiscreteDistribution::from_samples(&[2.0, 1.0, 2.0, 3.0]).unwrap();
        assert_eq!(d.atoms(), &[1.0, 2.0, 3.0]);
        assert_eq!(d.masses(), &[0.25, 0.5, 0.25]);
        assert_eq!(d.cdf(2.0), 0.75);
        assert_eq!(d.cdf_left(2.0), 0.25);
        assert_eq!(d.quantile(0.5), 2.0);
        assert_eq!(d.quantile(0.8), 3.0);
    }
}
