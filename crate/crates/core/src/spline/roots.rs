//! Real-root isolation for small dense polynomials (ascending coefficients).

pub fn eval(coeffs: &[f64], t: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c)
}

pub fn derivative(coeffs: &[f64]) -> Vec<f64> {
    coeffs.iter().enumerate().skip(1).map(|(j, c)| c * j as f64).collect()
}

fn trimmed(coeffs: &[f64]) -> &[f64] {
    let scale = coeffs.iter().fold(0.0f64, |a, c| a.max(c.abs()));
    let mut n = coeffs.len();
    while n > 0 && coeffs[n - 1].abs() <= scale * 1e-28 {
        n -= 1;
    }
    &coeffs[..n]
}

/// Roots strictly inside `(lo, hi)`, isolated through the critical points of
/// the polynomial and refined by bisection.
pub fn real_roots_in(coeffs: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    let p = trimmed(coeffs);
    if p.len() <= 1 || !(lo < hi) {
        return Vec::new();
    }
    if p.len() == 2 {
        let r = -p[0] / p[1];
        return if r > lo && r < hi { vec![r] } else { Vec::new() };
    }
    let mut marks = vec![lo];
    marks.extend(real_roots_in(&derivative(p), lo, hi));
    marks.push(hi);
    let mut roots = Vec::new();
    for (i, w) in marks.windows(2).enumerate() {
        let (a, b) = (w[0], w[1]);
        let fa = eval(p, a);
        let fb = eval(p, b);
        if i > 0 && fa == 0.0 {
            roots.push(a);
            continue;
        }
        if fa.signum() * fb.signum() < 0.0 {
            roots.push(bisect(p, a, b, fa));
        }
    }
    roots.dedup();
    roots
}

fn bisect(p: &[f64], mut a: f64, mut b: f64, mut fa: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = eval(p, mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_roots() {
        // (t - 0.2)(t - 0.5)(t - 0.9)
        let p = [-0.09, 0.73, -1.6, 1.0];
        let r = real_roots_in(&p, 0.0, 1.0);
        assert_eq!(r.len(), 3);
        for (x, e) in r.iter().zip([0.2, 0.5, 0.9]) {
            assert!((x - e).abs() < 1e-14);
        }
        assert!(real_roots_in(&p, 0.6, 0.8).is_empty());
    }

    #[test]
    fn double_root_is_found_through_critical_point() {
        // (t - 0.3)^2
        let p = [0.09, -0.6, 1.0];
        let r = real_roots_in(&derivative(&p), 0.0, 1.0);
        assert_eq!(r.len(), 1);
        assert!((r[0] - 0.3).abs() < 1e-15);
    }
}
