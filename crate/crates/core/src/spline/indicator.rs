use crate::dd::Dd;
use crate::error::{invalid, Result};

use super::base::BaseSpline;
use super::piecewise::PiecewisePolynomial;

/// `x -> h_m((2/alpha)(x - z - alpha/2))`: equals 1 left of `z`, 0 right of
/// `z + alpha`.
#[derive(Clone, Debug)]
pub struct SmoothedIndicator {
    m: usize,
    z: f64,
    alpha: f64,
    pp: PiecewisePolynomial,
    norms: Vec<f64>,
}

impl SmoothedIndicator {
    pub fn new(base: &BaseSpline, z: f64, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return invalid(format!("alpha must be positive and finite, got {alpha}"));
        }
        if !z.is_finite() {
            return invalid("z must be finite");
        }
        let half = Dd::from_f64(alpha).mul_f64(0.5);
        let pp = base.piecewise().rescaled(Dd::from_f64(z) + half, half);
        let ratio = 2.0 / alpha;
        let norms = base
            .derivative_norms()
            .iter()
            .enumerate()
            .map(|(i, n)| n * ratio.powi(i as i32))
            .collect();
        Ok(SmoothedIndicator {
            m: base.order(),
            z,
            alpha,
            pp,
            norms,
        })
    }

    pub fn order(&self) -> usize {
        self.m
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn piecewise(&self) -> &PiecewisePolynomial {
        &self.pp
    }

    pub fn value(&self, x: f64) -> f64 {
        if x <= self.z {
            1.0
        } else if x >= self.z + self.alpha {
            0.0
        } else {
            self.pp.evaluate_fast(x)
        }
    }

    pub fn derivative(&self, x: f64, order: usize) -> f64 {
        if order == 0 {
            return self.value(x);
        }
        self.pp.derivative(order).evaluate(x)
    }

    /// `(2/alpha)^i * ||h_m^(i)||` for `i = 0..=m`.
    pub fn derivative_norms(&self) -> &[f64] {
        &self.norms
    }

    /// `max_i ||h^(i)||`, the normaliser that puts the function in the unit ball.
    pub fn max_derivative_norm(&self) -> f64 {
        self.norms.iter().fold(0.0, |a, b| a.max(*b))
    }
}

/// Tensor product of smoothed indicators, one per coordinate.
#[derive(Clone, Debug)]
pub struct ProductIndicator {
    factors: Vec<SmoothedIndicator>,
}

impl ProductIndicator {
    pub fn new(base: &BaseSpline, z: &[f64], alpha: f64) -> Result<Self> {
        if z.is_empty() {
            return invalid("product indicator needs at least one coordinate");
        }
        let factors = z
            .iter()
            .map(|zi| SmoothedIndicator::new(base, *zi, alpha))
            .collect::<Result<Vec<_>>>()?;
        Ok(ProductIndicator { factors })
    }

    pub fn dim(&self) -> usize {
        self.factors.len()
    }

    pub fn value(&self, x: &[f64]) -> Result<f64> {
        self.check_dim(x.len())?;
        Ok(self.factors.iter().zip(x).map(|(f, xi)| f.value(*xi)).product())
    }

    /// Mixed partial derivative with per-coordinate orders.
    pub fn partial(&self, x: &[f64], orders: &[usize]) -> Result<f64> {
        self.check_dim(x.len())?;
        self.check_dim(orders.len())?;
        Ok(self
            .factors
            .iter()
            .zip(x.iter().zip(orders))
            .map(|(f, (xi, k))| f.derivative(*xi, *k))
            .product())
    }

    /// Bound on the sup norm of the mixed partial with the given orders.
    pub fn partial_norm_bound(&self, orders: &[usize]) -> Result<f64> {
        self.check_dim(orders.len())?;
        let mut acc = 1.0;
        for (f, k) in self.factors.iter().zip(orders) {
            match f.derivative_norms().get(*k) {
                Some(v) => acc *= v,
                None => return invalid(format!("order {k} exceeds spline order")),
            }
        }
        Ok(acc)
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        if n != self.factors.len() {
            return invalid(format!("expected {} coordinates, got {n}", self.factors.len()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn indicator_limits_and_scaling() {
        let base = BaseSpline::new(3).unwrap();
        let h = SmoothedIndicator::new(&base, 0.5, 0.25).unwrap();
        assert_eq!(h.value(0.4), 1.0);
        assert_eq!(h.value(0.8), 0.0);
        assert_relative_eq!(h.value(0.625), 0.5, epsilon = 1e-15);
        assert_relative_eq!(h.derivative_norms()[1], 8.0, max_relative = 1e-12);
        assert!(SmoothedIndicator::new(&base, 0.0, 0.0).is_err());
    }

    #[test]
    fn product_is_separable() {
        let base = BaseSpline::new(2).unwrap();
        let p = ProductIndicator::new(&base, &[0.0, 1.0], 0.5).unwrap();
        let a = SmoothedIndicator::new(&base, 0.0, 0.5).unwrap();
        let b = SmoothedIndicator::new(&base, 1.0, 0.5).unwrap();
        let x = [0.2, 1.3];
        assert_relative_eq!(p.value(&x).unwrap(), a.value(0.2) * b.value(1.3));
        assert_relative_eq!(
            p.partial(&x, &[1, 1]).unwrap(),
            a.derivative(0.2, 1) * b.derivative(1.3, 1)
        );
        assert!(p.value(&[0.0]).is_err());
    }
}
