use crate::bounds::{bound_mvn, MvnTarget};
use crate::error::{invalid, Result};
use crate::format::fmt_num;
use crate::metrics::MetricEstimate;
use crate::targets::std_normal_cdf;

use super::report::{params_string, ExperimentReport};

/// Largest dimension for the exact sweep.
pub const MAX_SWEEP_DIM: usize = 3;
/// Lattice levels beyond this many standard deviations are not enumerated.
const SPAN: f64 = 9.0;

/// Upper concave hull of points sorted by `x`, for maximising `y - lambda x`.
struct Hull {
    pts: Vec<(f64, f64)>,
}

impl Hull {
    fn new(mut pts: Vec<(f64, f64)>) -> Self {
        pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(b.1.total_cmp(&a.1)));
        let mut hull: Vec<(f64, f64)> = Vec::new();
        for p in pts {
            if hull.last().is_some_and(|q| q.0 == p.0) {
                continue;
            }
            while hull.len() >= 2 {
                let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
                let cross = (a.0 - o.0) * (p.1 - o.1) - (a.1 - o.1) * (p.0 - o.0);
                if cross >= 0.0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        Hull { pts: hull }
    }

    /// `max_i (y_i - lambda x_i)` for `lambda >= 0`.
    fn query(&self, lambda: f64) -> f64 {
        let h = &self.pts;
        let (mut lo, mut hi) = (0, h.len() - 1);
        // edge slopes decrease along the hull
        while lo < hi {
            let mid = (lo + hi) / 2;
            let slope = (h[mid + 1].1 - h[mid].1) / (h[mid + 1].0 - h[mid].0);
            if slope > lambda {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        let best = h[lo].1 - lambda * h[lo].0;
        // guard against rounding at the chosen vertex
        let left = if lo > 0 {
            h[lo - 1].1 - lambda * h[lo - 1].0
        } else {
            f64::NEG_INFINITY
        };
        let right = h.get(lo + 1).map_or(f64::NEG_INFINITY, |p| p.1 - lambda * p.0);
        best.max(left).max(right)
    }
}

/// `max over z` of `prod_j a(z_j) - prod_j b(z_j)` where each coordinate
/// picks one of `cands` (pairs `(a, b)`).
fn sweep(cands: &[(f64, f64)], dim: usize) -> f64 {
    if dim == 1 {
        return cands.iter().map(|(a, b)| a - b).fold(0.0, f64::max);
    }
    // points (x = b, y = a): maximise P a - Q b = P (a - (Q/P) b)
    let hull = Hull::new(cands.iter().map(|(a, b)| (*b, *a)).collect());
    let mut best = 0.0f64;
    let mut idx = vec![0usize; dim - 1];
    loop {
        let (p, q) = idx
            .iter()
            .fold((1.0, 1.0), |(p, q), &i| (p * cands[i].0, q * cands[i].1));
        if p > 0.0 {
            best = best.max(p * hull.query(q / p));
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return best;
            }
            idx[k] += 1;
            if idx[k] < cands.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Exact `sup_z |F_X(z) - Phi_d(z)|` for `X` the coordinatewise rounding of
/// `Y ~ N(0, I_d)` to the lattice `h Z^d`.
pub fn lattice_kolmogorov(dim: usize, h: f64) -> Result<f64> {
    if dim == 0 || dim > MAX_SWEEP_DIM {
        return invalid(format!("dimension must be in 1..={MAX_SWEEP_DIM}, got {dim}"));
    }
    if !(h >= 0.0) || !h.is_finite() {
        return invalid(format!("grid step must be non-negative, got {h}"));
    }
    if h == 0.0 {
        return Ok(0.0);
    }
    let k_max = (SPAN / h).ceil() as i64;
    // P(X_j <= z) = Phi((floor(z/h) + 1/2) h) is constant on [kh, (k+1)h)
    let level = |k: i64| std_normal_cdf((k as f64 + 0.5) * h);
    let at = |k: i64| std_normal_cdf(k as f64 * h);
    let mut right: Vec<(f64, f64)> = (-k_max..=k_max).map(|k| (level(k), at(k))).collect();
    let mut left: Vec<(f64, f64)> = (-k_max..=k_max).map(|k| (at(k + 1), level(k))).collect();
    right.push((1.0, 1.0));
    left.push((1.0, 1.0));
    // lattice above normal: right limits; normal above lattice: left limits
    Ok(sweep(&right, dim).max(sweep(&left, dim)))
}

/// Lattice rounding of a standard normal against the multivariate normal
/// bound, fed with the coupling estimate `d h / 2` of the smooth distance.
pub fn validate_mvn_discretization(dim: usize, h: f64, m: usize) -> Result<ExperimentReport> {
    let dk = lattice_kolmogorov(dim, h)?;
    let d_m = dim as f64 * h / 2.0;
    let target = MvnTarget::isotropic(dim, 1.0)?;
    let (conditional, unconditional) = bound_mvn(&target, m, d_m)?;
    let bound = if conditional.valid { conditional } else { unconditional };
    let params = params_string(&[("dim", dim.to_string()), ("h", fmt_num(h)), ("m", m.to_string())]);
    Ok(ExperimentReport::new(
        "mvn-disc",
        params,
        None,
        MetricEstimate::exact(dk),
        None,
        bound,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn brute(dim: usize, h: f64) -> f64 {
        let k_max = (SPAN / h).ceil() as i64;
        let mut cands = vec![];
        for k in -k_max..=k_max {
            let l = std_normal_cdf((k as f64 + 0.5) * h);
            cands.push((l, std_normal_cdf(k as f64 * h)));
            cands.push((l, std_normal_cdf((k + 1) as f64 * h)));
        }
        cands.push((1.0, 1.0));
        let mut best = 0.0f64;
        let n = cands.len();
        let mut idx = vec![0usize; dim];
        'outer: loop {
            let a: f64 = idx.iter().map(|i| cands[*i].0).product();
            let b: f64 = idx.iter().map(|i| cands[*i].1).product();
            best = best.max((a - b).abs());
            for k in 0..dim {
                idx[k] += 1;
                if idx[k] < n {
                    continue 'outer;
                }
                idx[k] = 0;
            }
            break;
        }
        best
    }

    #[test]
    fn sweep_matches_brute_force() {
        for (dim, h) in [(1, 0.3), (2, 0.5), (2, 0.9), (3, 1.5)] {
            assert_relative_eq!(lattice_kolmogorov(dim, h).unwrap(), brute(dim, h), epsilon = 1e-14);
        }
    }

    #[test]
    fn zero_step_is_exact() {
        let r = validate_mvn_discretization(2, 0.0, 2).unwrap();
        assert_eq!(r.exact_dk.value, 0.0);
        assert_eq!(r.bound.bound, 0.0);
    }
}
