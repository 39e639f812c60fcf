use crate::constants::{multivariate_norm_constant, multivariate_spline_constant};
use crate::error::{invalid, Result};

use super::optimize::optimize_alpha_numeric;
use super::result::BoundResult;
use super::univariate::UNRESTRICTED_ALPHA_MAX;

/// Envelope family for the multivariate rate bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RateEnvelope {
    /// Terms `C_i alpha^i`.
    Bounded,
    /// Terms `alpha^i (C_i log+(2 / (c alpha)) + D_i)`.
    Log { log_scale: f64 },
    /// Terms `C_i alpha^(i - a)`.
    Power { exponent: f64 },
}

/// Per-order envelope coefficients `C_1..C_k` (and `D_1..D_k` for the log family).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RateCoefficients {
    pub c: Vec<f64>,
    pub d: Vec<f64>,
}

pub fn rate_exponent_label(envelope: RateEnvelope, m: usize) -> String {
    match envelope {
        RateEnvelope::Bounded => format!("d_m^(1/{})", m + 1),
        RateEnvelope::Log { .. } => format!("d_m^(1/{}) log(1/d_m)", m + 1),
        RateEnvelope::Power { exponent } => {
            format!("d_m^({}/{})", 1.0 - exponent, m as f64 + 1.0 - exponent)
        }
    }
}

/// Concrete multivariate bound with explicit envelope coefficients,
/// minimised numerically over alpha.
pub fn bound_multivariate_rate(
    coeffs: &RateCoefficients,
    envelope: RateEnvelope,
    m: usize,
    d_m: f64,
) -> Result<BoundResult> {
    if m == 0 {
        return invalid("smoothness order must be at least 1");
    }
    if !(d_m >= 0.0) || !d_m.is_finite() {
        return invalid(format!("d_m must be non-negative and finite, got {d_m}"));
    }
    if coeffs.c.is_empty() {
        return invalid("envelope coefficients are required");
    }
    if coeffs
        .c
        .iter()
        .chain(coeffs.d.iter())
        .any(|v| !(*v >= 0.0) || !v.is_finite())
    {
        return invalid("envelope coefficients must be non-negative");
    }
    let (id, extra) = match envelope {
        RateEnvelope::Bounded => ("rate-bounded", Vec::new()),
        RateEnvelope::Log { log_scale } => {
            if !(log_scale > 0.0) {
                return invalid("log scale c must be positive");
            }
            if coeffs.d.len() != coeffs.c.len() {
                return invalid("log envelope needs one D coefficient per C coefficient");
            }
            ("rate-log", coeffs.d.clone())
        }
        RateEnvelope::Power { exponent } => {
            if !(exponent > 0.0 && exponent < 1.0) {
                return invalid("power exponent must lie in (0,1)");
            }
            ("rate-power", Vec::new())
        }
    };
    let label = rate_exponent_label(envelope, m);
    let res = BoundResult::new(id, m, d_m, f64::INFINITY, true).note(format!("rate {label}"));
    if d_m == 0.0 {
        return Ok(res);
    }
    let mp = multivariate_spline_constant(m).value();
    let np = multivariate_norm_constant(m).value();
    let mi = m as i32;
    let cs = coeffs.c.clone();
    let objective = move |x: f64| {
        let mut v = (mp + np / x.powi(mi)) * d_m;
        for (i, ci) in cs.iter().enumerate() {
            let order = (i + 1) as i32;
            v += match envelope {
                RateEnvelope::Bounded => ci * x.powi(order),
                RateEnvelope::Log { log_scale } => {
                    x.powi(order) * (ci * (2.0 / (log_scale * x)).ln().max(0.0) + extra[i])
                }
                RateEnvelope::Power { exponent } => ci * x.powf(order as f64 - exponent),
            };
        }
        v
    };
    let opt = optimize_alpha_numeric(objective, UNRESTRICTED_ALPHA_MAX)?;
    Ok(res.with_value(opt.alpha, opt.value))
}
