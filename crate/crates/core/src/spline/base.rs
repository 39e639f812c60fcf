use crate::dd::Dd;
use crate::error::{invalid, Result};

use super::piecewise::PiecewisePolynomial;

/// Largest supported smoothness order.
pub const MAX_ORDER: usize = 24;

/// The perfect spline of degree `m` that falls from 1 to 0 across [-1, 1],
/// with interior knots at the Chebyshev extrema `cos(pi k / m)`.
#[derive(Clone, Debug)]
pub struct BaseSpline {
    m: usize,
    pp: PiecewisePolynomial,
    norms: Vec<f64>,
}

/// Chebyshev extrema `cos(pi k / m)` for `k = 0..=m`, descending, built so
/// that the set is exactly symmetric about zero.
pub fn chebyshev_knots(m: usize) -> Vec<Dd> {
    let mut xs = vec![Dd::ZERO; m + 1];
    for k in 0..=m {
        if 2 * k < m {
            xs[k] = Dd::cos_pi_ratio(k as i64, m as i64);
        } else if 2 * k == m {
            xs[k] = Dd::ZERO;
        } else {
            xs[k] = -xs[m - k];
        }
    }
    xs
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Coefficients of `weight * (center + sign * x)^m` expanded in `t = x - anchor`.
fn add_power_term(out: &mut [Dd], m: usize, weight: Dd, center: Dd, sign: f64, anchor: Dd) {
    // center + sign * (anchor + t) = base + sign * t
    let base = center + anchor.mul_f64(sign);
    let mut base_pows = vec![Dd::ONE; m + 1];
    for j in 1..=m {
        base_pows[j] = base_pows[j - 1] * base;
    }
    for j in 0..=m {
        let s = if j % 2 == 1 { sign } else { 1.0 };
        let coef = base_pows[m - j].mul_f64(binomial(m, j) * s);
        out[j] = out[j] + weight * coef;
    }
}

impl BaseSpline {
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 || m > MAX_ORDER {
            return invalid(format!("spline order must be in 1..={MAX_ORDER}, got {m}"));
        }
        let xs = chebyshev_knots(m);
        let scale = Dd::from_f64(2f64.powi(m as i32 - 2)).div_f64(m as f64);
        let two_scale = scale.mul_f64(2.0);

        let mut breaks: Vec<Dd> = xs.iter().rev().copied().collect();
        breaks.dedup_by(|a, b| a == b);
        let mut pieces = Vec::with_capacity(m + 2);
        pieces.push(vec![Dd::ONE]);
        for p in 1..=m {
            // piece spans (x_{k+1}, x_k]
            let k = m - p;
            let anchor = xs[k + 1];
            let mut c = vec![Dd::ZERO; m + 1];
            let right_half = 2 * (k + 1) <= m || (m % 2 == 1 && 2 * k + 1 == m);
            if right_half {
                add_power_term(&mut c, m, scale, Dd::ONE, -1.0, anchor);
                for j in 1..=k {
                    let w = if j % 2 == 1 { -two_scale } else { two_scale };
                    add_power_term(&mut c, m, w, xs[j], -1.0, anchor);
                }
            } else {
                let kk = m - k - 1;
                c[0] = Dd::ONE;
                add_power_term(&mut c, m, -scale, Dd::ONE, 1.0, anchor);
                for j in 1..=kk {
                    let w = if j % 2 == 1 { two_scale } else { -two_scale };
                    add_power_term(&mut c, m, w, xs[j], 1.0, anchor);
                }
            }
            pieces.push(c);
        }
        pieces.push(vec![Dd::ZERO]);
        let pp = PiecewisePolynomial::new(breaks, pieces)?;
        Ok(Self::from_piecewise_unchecked(m, pp))
    }

    /// Wrap an arbitrary piecewise polynomial as an order-`m` candidate
    /// without checking it; pair with certification.
    pub fn from_piecewise_unchecked(m: usize, pp: PiecewisePolynomial) -> Self {
        let norms = (0..=m).map(|i| pp.derivative(i).sup_norm()).collect();
        BaseSpline { m, pp, norms }
    }

    pub fn order(&self) -> usize {
        self.m
    }

    pub fn piecewise(&self) -> &PiecewisePolynomial {
        &self.pp
    }

    /// Finite knots in ascending order, from -1 to 1.
    pub fn knots(&self) -> &[Dd] {
        self.pp.breaks()
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        self.pp.evaluate(x)
    }

    pub fn derivative_at(&self, x: f64, order: usize) -> f64 {
        if order == 0 {
            return self.evaluate(x);
        }
        self.pp.derivative(order).evaluate(x)
    }

    /// Sup norm of the `i`-th derivative, `0 <= i <= m`.
    pub fn sup_norm_derivative(&self, i: usize) -> Result<f64> {
        match self.norms.get(i) {
            Some(v) => Ok(*v),
            None => invalid(format!("derivative order {i} exceeds spline order {}", self.m)),
        }
    }

    pub fn derivative_norms(&self) -> &[f64] {
        &self.norms
    }
}
