//! Closed-form constants that the bounds are built from.

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::spline::BaseSpline;

/// A constant of the form `2^log2_factor * factorial_arg!`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PowTwoFactorial {
    pub log2_factor: f64,
    pub factorial_arg: u32,
}

impl PowTwoFactorial {
    pub fn ln_value(&self) -> f64 {
        let ln_fact: f64 = (2..=self.factorial_arg).map(|k| (k as f64).ln()).sum();
        self.log2_factor * std::f64::consts::LN_2 + ln_fact
    }

    pub fn value(&self) -> f64 {
        if self.factorial_arg <= 20 {
            let fact: f64 = (2..=self.factorial_arg).map(|k| k as f64).product();
            self.log2_factor.exp2() * fact
        } else {
            self.ln_value().exp()
        }
    }

    fn scaled_pow2(self, extra: f64) -> PowTwoFactorial {
        PowTwoFactorial {
            log2_factor: self.log2_factor + extra,
            factorial_arg: self.factorial_arg,
        }
    }
}

fn check_order(m: usize) -> Result<()> {
    if m == 0 {
        return invalid("smoothness order must be at least 1");
    }
    Ok(())
}

/// `|h_m^(m)| = 2^(m-2) (m-1)!`.
pub fn perfect_spline_constant(m: usize) -> PowTwoFactorial {
    assert!(m >= 1, "smoothness order must be at least 1");
    PowTwoFactorial {
        log2_factor: m as f64 - 2.0,
        factorial_arg: m as u32 - 1,
    }
}

/// `2^m` times the perfect-spline constant.
pub fn smoothing_norm_constant(m: usize) -> PowTwoFactorial {
    perfect_spline_constant(m).scaled_pow2(m as f64)
}

/// Constant controlling all mixed partials of a product of `m`-smooth
/// indicators; equals the univariate one for `m <= 4`.
pub fn multivariate_spline_constant(m: usize) -> PowTwoFactorial {
    assert!(m >= 1, "smoothness order must be at least 1");
    if m <= 4 {
        perfect_spline_constant(m)
    } else {
        PowTwoFactorial {
            log2_factor: 1.5 * m as f64 - 2.0,
            factorial_arg: m as u32 - 1,
        }
    }
}

pub fn multivariate_norm_constant(m: usize) -> PowTwoFactorial {
    multivariate_spline_constant(m).scaled_pow2(m as f64)
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstantsRow {
    pub m: usize,
    pub spline: f64,
    pub norm: f64,
    pub spline_multivariate: f64,
    pub norm_multivariate: f64,
}

pub fn constants_table(m_max: usize) -> Result<Vec<ConstantsRow>> {
    check_order(m_max)?;
    Ok((1..=m_max)
        .map(|m| ConstantsRow {
            m,
            spline: perfect_spline_constant(m).value(),
            norm: smoothing_norm_constant(m).value(),
            spline_multivariate: multivariate_spline_constant(m).value(),
            norm_multivariate: multivariate_norm_constant(m).value(),
        })
        .collect())
}

/// `max_{0<=i<=m} ||h_{m,z,alpha}^(i)||`, bounded by the tightest closed form.
pub fn max_derivative_bound(m: usize, alpha: f64, multivariate: bool) -> Result<f64> {
    check_order(m)?;
    if !(alpha > 0.0) || !alpha.is_finite() {
        return invalid(format!("alpha must be positive, got {alpha}"));
    }
    let (spline, norm) = if multivariate {
        (multivariate_spline_constant(m), multivariate_norm_constant(m))
    } else {
        (perfect_spline_constant(m), smoothing_norm_constant(m))
    };
    let am = alpha.powi(m as i32);
    Ok(if alpha <= 1.0 {
        norm.value() / am
    } else {
        spline.value() * (1.0 + 2f64.powi(m as i32) / am)
    })
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct FavardValue {
    pub r: usize,
    pub value: f64,
    pub truncation_error: f64,
    pub terms: usize,
}

/// `K_r = (4/pi) sum_j ((-1)^j / (2j+1))^(r+1)`.
pub fn favard_constant(r: usize, tol: f64) -> Result<FavardValue> {
    if !(tol > 0.0) {
        return invalid("tolerance must be positive");
    }
    let scale = 4.0 / std::f64::consts::PI;
    let s = (r + 1) as i32;
    if r == 0 {
        return Ok(FavardValue {
            r,
            value: 1.0,
            truncation_error: 0.0,
            terms: 0,
        });
    }
    let term = |j: usize| (2.0 * j as f64 + 1.0).powi(-s);
    if r.is_multiple_of(2) {
        // alternating: remainder below the first omitted term
        let mut sum = 0.0;
        let mut j = 0;
        loop {
            let t = term(j);
            if scale * t < tol / 2.0 {
                return Ok(FavardValue {
                    r,
                    value: scale * sum,
                    truncation_error: scale * t,
                    terms: j,
                });
            }
            sum += if j % 2 == 0 { t } else { -t };
            j += 1;
        }
    }
    // positive terms: partial sum plus an Euler-Maclaurin tail estimate
    let sf = s as f64;
    let tail = |jj: usize| {
        let x = 2.0 * jj as f64 + 1.0;
        let int = x.powf(1.0 - sf) / (2.0 * (sf - 1.0));
        let slope = 2.0 * sf * x.powf(-sf - 1.0);
        (int + 0.5 * x.powf(-sf) + slope / 12.0, slope / 12.0)
    };
    let mut sum = 0.0;
    let mut j = 0;
    loop {
        let (est, err) = tail(j);
        if scale * err < tol / 2.0 && j >= 8 {
            return Ok(FavardValue {
                r,
                value: scale * (sum + est),
                truncation_error: scale * err,
                terms: j,
            });
        }
        sum += term(j);
        j += 1;
    }
}

/// `C_{m,k} = K_{m-k} K_m^{-1 + k/m}`.
pub fn landau_kolmogorov_constant(m: usize, k: usize, tol: f64) -> Result<f64> {
    check_order(m)?;
    if k > m {
        return invalid(format!("derivative order {k} exceeds {m}"));
    }
    let outer = favard_constant(m - k, tol)?.value;
    let top = favard_constant(m, tol)?.value;
    Ok(outer * top.powf(-1.0 + k as f64 / m as f64))
}

/// Integer partitions of `total` into at most `max_parts` positive parts.
fn partitions(total: usize, max_parts: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, cap: usize, parts_left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        if parts_left == 0 {
            return;
        }
        for p in (1..=cap.min(rest)).rev() {
            cur.push(p);
            go(rest - p, p, parts_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, total, max_parts, &mut Vec::new(), &mut out);
    out
}

/// Largest product `prod_j ||h_m^(n_j)||` over multi-indices of total order
/// `m` in `dim` coordinates; bounds every order-`m` mixed partial of the
/// product indicator.
pub fn mixed_partial_norm_bound(spline: &BaseSpline, dim: usize) -> Result<f64> {
    let m = spline.order();
    if dim == 0 {
        return invalid("dimension must be at least 1");
    }
    let norms = spline.derivative_norms();
    Ok(partitions(m, dim)
        .iter()
        .map(|p| p.iter().map(|n| norms[*n]).product::<f64>())
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn small_constants() {
        assert_eq!(perfect_spline_constant(1).value(), 0.5);
        assert_eq!(perfect_spline_constant(3).value(), 4.0);
        assert_eq!(smoothing_norm_constant(2).value(), 4.0);
        assert_eq!(multivariate_spline_constant(4).value(), 24.0);
        assert_relative_eq!(multivariate_spline_constant(6).value(), 128.0 * 120.0);
        assert_relative_eq!(
            perfect_spline_constant(25).value(),
            perfect_spline_constant(25).ln_value().exp(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn partition_counts() {
        assert_eq!(partitions(4, 4).len(), 5);
        assert_eq!(partitions(4, 2).len(), 3);
        assert_eq!(partitions(6, 6).len(), 11);
    }

    #[test]
    fn derivative_bound_switches_at_one() {
        let below = max_derivative_bound(2, 0.5, false).unwrap();
        assert_relative_eq!(below, 16.0);
        let above = max_derivative_bound(2, 2.0, false).unwrap();
        assert_relative_eq!(above, 2.0);
        assert!(max_derivative_bound(2, 0.0, false).is_err());
    }
}
