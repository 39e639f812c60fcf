use crate::error::{invalid, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlphaOptimum {
    pub alpha: f64,
    pub value: f64,
}

const GRID_POINTS: usize = 640;
/// Decades searched below `alpha_max`.
const DECADES: f64 = 40.0;
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Minimise a smoothing objective over `alpha` in `(0, alpha_max]`.
///
/// A log-spaced scan brackets the minimum, golden-section search refines it
/// in `log(alpha)`. Ties resolve towards larger `alpha`.
pub fn optimize_alpha_numeric<F: Fn(f64) -> f64>(objective: F, alpha_max: f64) -> Result<AlphaOptimum> {
    if !(alpha_max > 0.0) || !alpha_max.is_finite() {
        return invalid(format!("alpha_max must be positive and finite, got {alpha_max}"));
    }
    let eval = |t: f64| -> Result<f64> {
        let v = objective(t.exp().min(alpha_max));
        if v.is_nan() || v == f64::NEG_INFINITY {
            return Err(Error::NonFinite(format!("objective at alpha={}", t.exp())));
        }
        Ok(v)
    };
    let t_hi = alpha_max.ln();
    let t_lo = t_hi - DECADES * std::f64::consts::LN_10;
    let step = (t_hi - t_lo) / GRID_POINTS as f64;
    let ts: Vec<f64> = (0..=GRID_POINTS).map(|i| t_hi - step * i as f64).collect();
    let mut vals = Vec::with_capacity(ts.len());
    for t in &ts {
        vals.push(eval(*t)?);
    }
    let mut best = 0;
    for i in 1..vals.len() {
        if vals[i] < vals[best] {
            best = i;
        }
    }
    let mut out = AlphaOptimum {
        alpha: alpha_max,
        value: vals[0],
    };
    if best == 0 {
        // minimum at the upper end: refine only inside the first cell
        let refined = golden(&eval, ts[1], ts[0])?;
        if refined.1 < out.value {
            out = AlphaOptimum {
                alpha: refined.0.exp().min(alpha_max),
                value: refined.1,
            };
        }
        return Ok(out);
    }
    let lo = ts[(best + 1).min(ts.len() - 1)];
    let hi = ts[best - 1];
    let (t, v) = golden(&eval, lo, hi)?;
    out = AlphaOptimum {
        alpha: ts[best].exp(),
        value: vals[best],
    };
    if v < out.value {
        out = AlphaOptimum {
            alpha: t.exp(),
            value: v,
        };
    }
    Ok(out)
}

fn golden<G: Fn(f64) -> Result<f64>>(eval: &G, mut a: f64, mut b: f64) -> Result<(f64, f64)> {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = eval(c)?;
    let mut fd = eval(d)?;
    for _ in 0..300 {
        if (b - a).abs() <= 1e-14 * (1.0 + a.abs().max(b.abs())) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = eval(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = eval(d)?;
        }
    }
    Ok(if fc < fd { (c, fc) } else { (d, fd) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn classical_wasserstein_smoothing() {
        let opt = optimize_alpha_numeric(|a| 0.005 / a + a / 2.0, 1.0).unwrap();
        assert_relative_eq!(opt.alpha, 0.1, max_relative = 1e-6);
        assert_relative_eq!(opt.value, 0.1, max_relative = 1e-12);
    }

    #[test]
    fn constant_objective_returns_upper_end() {
        let opt = optimize_alpha_numeric(|_| 3.0, 0.7).unwrap();
        assert_eq!(opt.alpha, 0.7);
        assert_eq!(opt.value, 3.0);
    }

    #[test]
    fn nan_is_an_error() {
        assert!(optimize_alpha_numeric(|_| f64::NAN, 1.0).is_err());
        assert!(optimize_alpha_numeric(|a| a, 0.0).is_err());
    }
}
