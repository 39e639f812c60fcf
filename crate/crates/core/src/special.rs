//! Special functions not covered by `statrs`: the non-regularised upper
//! incomplete gamma and the modified Bessel function of the second kind.

use statrs::function::gamma::ln_gamma;

use crate::error::{invalid, Result};

const EPS: f64 = 1e-16;
const TINY: f64 = 1e-300;

/// `Gamma(r, x) = int_x^inf t^(r-1) e^(-t) dt` for `r > 0`, `x >= 0`.
pub fn upper_incomplete_gamma(r: f64, x: f64) -> Result<f64> {
    if !(r > 0.0) || !r.is_finite() {
        return invalid(format!("shape must be positive, got {r}"));
    }
    if !(x >= 0.0) {
        return invalid(format!("lower limit must be non-negative, got {x}"));
    }
    let full = ln_gamma(r).exp();
    if x == 0.0 {
        return Ok(full);
    }
    if x.is_infinite() {
        return Ok(0.0);
    }
    let log_prefactor = r * x.ln() - x;
    if x < r + 1.0 {
        // series for the lower part
        let mut ap = r;
        let mut del = 1.0 / r;
        let mut sum = del;
        for _ in 0..10_000 {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if del.abs() < sum.abs() * EPS {
                break;
            }
        }
        Ok(full - sum * log_prefactor.exp())
    } else {
        // modified Lentz continued fraction
        let mut b = x + 1.0 - r;
        let mut c = 1.0 / TINY;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..10_000 {
            let an = -(i as f64) * (i as f64 - r);
            b += 2.0;
            d = an * d + b;
            if d.abs() < TINY {
                d = TINY;
            }
            c = b + an / c;
            if c.abs() < TINY {
                c = TINY;
            }
            d = 1.0 / d;
            let del = d * c;
            h *= del;
            if (del - 1.0).abs() < EPS {
                break;
            }
        }
        Ok(log_prefactor.exp() * h)
    }
}

/// Outcome of testing `Gamma(b+1, y) <= 2^(b+1) y^b e^(-y)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IncompleteGammaCheck {
    /// Whether `e^y > 2^(b+1)`, the regime where the inequality is claimed.
    pub applicable: bool,
    pub lhs: f64,
    pub rhs: f64,
}

impl IncompleteGammaCheck {
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs
    }
}

pub fn check_incomplete_gamma_bound(b: f64, y: f64) -> Result<IncompleteGammaCheck> {
    if !(b >= 0.0) || !(y > 0.0) {
        return invalid(format!("need b >= 0 and y > 0, got b={b}, y={y}"));
    }
    let lhs = upper_incomplete_gamma(b + 1.0, y)?;
    let rhs = ((b + 1.0) * std::f64::consts::LN_2 + b * y.ln() - y).exp();
    Ok(IncompleteGammaCheck {
        applicable: y > (b + 1.0) * std::f64::consts::LN_2,
        lhs,
        rhs,
    })
}

const GAM1_CHEB: [f64; 7] = [
    -1.142022680371168e0,
    6.5165112670737e-3,
    3.087090173086e-4,
    -3.4706269649e-6,
    6.9437664e-9,
    3.67795e-11,
    -1.356e-13,
];
const GAM2_CHEB: [f64; 8] = [
    1.843740587300905e0,
    -7.68528408447867e-2,
    1.2719271366546e-3,
    -4.9717367042e-6,
    -3.31261198e-8,
    2.423096e-10,
    -1.702e-13,
    -1.49e-15,
];

fn chebyshev_sum(c: &[f64], y: f64) -> f64 {
    let y2 = 2.0 * y;
    let (mut d, mut dd) = (0.0, 0.0);
    for cj in c[1..].iter().rev() {
        let sv = d;
        d = y2 * d - dd + cj;
        dd = sv;
    }
    y * d - dd + 0.5 * c[0]
}

/// `(gam1, gam2, 1/Gamma(1+mu), 1/Gamma(1-mu))` for `|mu| <= 1/2`.
fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    let y = 8.0 * mu * mu - 1.0;
    let g1 = chebyshev_sum(&GAM1_CHEB, y);
    let g2 = chebyshev_sum(&GAM2_CHEB, y);
    (g1, g2, g2 - mu * g1, g2 + mu * g1)
}

/// `(K_mu(x), K_{mu+1}(x))` for `|mu| <= 1/2`, times `e^x` when `scaled`.
fn bessel_k_pair(mu: f64, x: f64, scaled: bool) -> (f64, f64) {
    let pi = std::f64::consts::PI;
    if x <= 2.0 {
        let half = 0.5 * x;
        let pimu = pi * mu;
        let fact = if pimu.abs() < 1e-15 { 1.0 } else { pimu / pimu.sin() };
        let dlog = -half.ln();
        let e = mu * dlog;
        let fact2 = if e.abs() < 1e-15 { 1.0 } else { e.sinh() / e };
        let (g1, g2, gpl, gmi) = temme_gammas(mu);
        let mut ff = fact * (g1 * e.cosh() + g2 * fact2 * dlog);
        let mut sum = ff;
        let ee = e.exp();
        let mut p = 0.5 * ee / gpl;
        let mut q = 0.5 / (ee * gmi);
        let mut c = 1.0;
        let dsq = half * half;
        let mut sum1 = p;
        for i in 1..1000 {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - mu * mu);
            c *= dsq / fi;
            p /= fi - mu;
            q /= fi + mu;
            let del = c * ff;
            sum += del;
            sum1 += c * (p - fi * ff);
            if del.abs() < sum.abs() * EPS {
                break;
            }
        }
        let w = if scaled { x.exp() } else { 1.0 };
        (sum * w, sum1 * 2.0 / x * w)
    } else {
        // Steed's continued fraction
        let mut b = 2.0 * (1.0 + x);
        let mut d = 1.0 / b;
        let mut h = d;
        let mut delh = d;
        let (mut q1, mut q2) = (0.0, 1.0);
        let a1 = 0.25 - mu * mu;
        let mut q = a1;
        let mut c = a1;
        let mut a = -a1;
        let mut s = 1.0 + q * delh;
        for i in 2..100_000 {
            let fi = i as f64;
            a -= 2.0 * (fi - 1.0);
            c = -a * c / fi;
            let qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2.0;
            d = 1.0 / (b + a * d);
            delh *= b * d - 1.0;
            h += delh;
            let dels = q * delh;
            s += dels;
            if (dels / s).abs() < EPS {
                break;
            }
        }
        h *= a1;
        let w = if scaled { 1.0 } else { (-x).exp() };
        let kmu = (pi / (2.0 * x)).sqrt() * w / s;
        let k1 = kmu * (mu + x + 0.5 - h) / x;
        (kmu, k1)
    }
}

/// Modified Bessel function of the second kind `K_nu(x)` for real `nu`, `x > 0`.
pub fn bessel_k(nu: f64, x: f64) -> Result<f64> {
    bessel_k_impl(nu, x, false)
}

/// `e^x K_nu(x)`, free of underflow for large `x`.
pub fn bessel_k_scaled(nu: f64, x: f64) -> Result<f64> {
    bessel_k_impl(nu, x, true)
}

fn bessel_k_impl(nu: f64, x: f64, scaled: bool) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return invalid(format!("argument must be positive and finite, got {x}"));
    }
    if !nu.is_finite() {
        return invalid("order must be finite");
    }
    let nu = nu.abs();
    let steps = (nu + 0.5).floor();
    let mu = nu - steps;
    let (mut k0, mut k1) = bessel_k_pair(mu, x, scaled);
    for i in 1..=(steps as usize) {
        let next = 2.0 * (mu + i as f64) / x * k1 + k0;
        k0 = k1;
        k1 = next;
    }
    Ok(k0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn half_order_closed_form() {
        for x in [0.01, 0.5, 1.0, 2.0, 3.5, 20.0, 50.0] {
            let expect = (std::f64::consts::PI / (2.0 * x)).sqrt() * (-x).exp();
            assert_relative_eq!(bessel_k(0.5, x).unwrap(), expect, max_relative = 1e-13);
            assert_relative_eq!(bessel_k(-0.5, x).unwrap(), expect, max_relative = 1e-13);
            let k32 = expect * (1.0 + 1.0 / x);
            assert_relative_eq!(bessel_k(1.5, x).unwrap(), k32, max_relative = 1e-13);
        }
    }

    #[test]
    fn scaled_matches_unscaled() {
        for (nu, x) in [(0.0, 0.3), (0.3, 1.9), (2.7, 2.1), (4.5, 30.0)] {
            let k = bessel_k(nu, x).unwrap();
            assert_relative_eq!(bessel_k_scaled(nu, x).unwrap(), k * x.exp(), max_relative = 1e-13);
        }
        assert!(bessel_k_scaled(0.0, 900.0).unwrap() > 0.0);
    }

    #[test]
    fn incomplete_gamma_integer_shape() {
        // Gamma(2, x) = (1 + x) e^-x
        for x in [0.1, 1.0, 2.5, 10.0, 40.0] {
            let v = upper_incomplete_gamma(2.0, x).unwrap();
            assert_relative_eq!(v, (1.0 + x) * (-x).exp(), max_relative = 1e-13);
        }
        assert_relative_eq!(
            upper_incomplete_gamma(0.5, 0.0).unwrap(),
            std::f64::consts::PI.sqrt(),
            max_relative = 1e-14
        );
        assert!(upper_incomplete_gamma(-1.0, 1.0).is_err());
    }
}
